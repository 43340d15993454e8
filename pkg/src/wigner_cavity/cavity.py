"""Ray-transfer (ABCD) algebra of a cavity with two identical concave mirrors.

One round trip starting just after a mirror is ``M T M T`` with ``T`` a free
translation over the mirror separation ``d`` and ``M`` reflection from a
mirror of radius ``R``.  Conjugating by a half translation and a length
scaling splits it as

    round_trip = E @ C @ C @ inv(E)

where the escort ``E = T(-d/2) @ diag(sqrt(d), 1/sqrt(d))`` carries the units
and the core ``C`` is dimensionless.  For ``0 < d < 2R`` the core is a
rotation by ``phi`` sandwiched between a squeeze and its inverse, so every
round trip advances the beam by a rotation of ``2*phi`` in the squeezed frame.

Lengths ``d``, ``R`` and the ray height ``y`` share one arbitrary unit; ray
slopes are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .lorentz import _finite

STABLE = "stable"
MARGINAL = "marginal"
UNSTABLE = "unstable"
DEGENERATE = "degenerate"


class CavityStabilityError(ValueError):
    """The cavity has no real core canonical form.

    ``phi`` is the core angle where ``cos(phi) = 1 - d/R`` still has a real
    solution, otherwise ``None``.
    """

    verdict = UNSTABLE

    def __init__(self, message: str, phi: float | None = None):
        super().__init__(message)
        self.phi = phi


class UnstableCavityError(CavityStabilityError):
    verdict = UNSTABLE


class MarginalCavityError(CavityStabilityError):
    verdict = MARGINAL


class DegenerateCavityError(CavityStabilityError):
    verdict = DEGENERATE


@dataclass(frozen=True)
class CavityConfig:
    """Mirror separation ``d`` and mirror radius of curvature ``radius``.

    ``radius=math.inf`` describes flat mirrors.
    """

    d: float
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0):
            raise ValueError(f"mirror separation must be positive and finite, got {self.d!r}")
        if math.isnan(self.radius) or not self.radius > 0:
            raise ValueError(f"mirror radius must be positive, got {self.radius!r}")

    @property
    def ratio(self) -> float:
        """``d / R``."""
        return self.d / self.radius


class RayState(NamedTuple):
    """Paraxial ray: height ``y`` above the axis and ``slope``."""

    y: float
    slope: float


@dataclass(frozen=True)
class CoreDecomp:
    """Escort/core split of the round trip plus the core's canonical parameters.

    The core equals ``[[cos phi, -e^xi sin phi], [e^-xi sin phi, cos phi]]``.
    """

    phi: float
    xi: float
    escort: np.ndarray
    core: np.ndarray

    @property
    def exp_2xi(self) -> float:
        return math.exp(2 * self.xi)


def mirror_matrix(radius: float) -> np.ndarray:
    if math.isnan(radius) or not radius > 0:
        raise ValueError(f"mirror radius must be positive, got {radius!r}")
    return np.array([[1.0, 0.0], [-2.0 / radius, 1.0]])


def translation_matrix(length: float) -> np.ndarray:
    _finite(length)
    return np.array([[1.0, length], [0.0, 1.0]])


def scaling_matrix(d: float) -> np.ndarray:
    """``diag(sqrt(d), 1/sqrt(d))``."""
    r = math.sqrt(d)
    return np.array([[r, 0.0], [0.0, 1.0 / r]])


def round_trip(cfg: CavityConfig) -> np.ndarray:
    """``M @ T @ M @ T``, evaluated left to right."""
    m = mirror_matrix(cfg.radius)
    t = translation_matrix(cfg.d)
    return ((m @ t) @ m) @ t


def half_cycle(cfg: CavityConfig) -> np.ndarray:
    """Mirror-to-mirror matrix seen from the cavity midpoint.

    ``T(d/2) @ M @ T(d/2)``; its square conjugated by ``T(-d/2)`` is the round trip.
    """
    d, r = cfg.d, cfg.radius
    return np.array([[1 - d / r, d - d * d / (2 * r)], [-2 / r, 1 - d / r]])


def core_matrix(cfg: CavityConfig) -> np.ndarray:
    """Dimensionless core ``[[1 - d/R, 1 - d/2R], [-2d/R, 1 - d/R]]``."""
    q = cfg.ratio
    return np.array([[1 - q, 1 - q / 2], [-2 * q, 1 - q]])


def escort_matrix(cfg: CavityConfig) -> np.ndarray:
    return translation_matrix(-cfg.d / 2) @ scaling_matrix(cfg.d)


def inverse2(m: np.ndarray) -> np.ndarray:
    """Inverse of a unit-determinant 2x2 matrix."""
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def stability(cfg: CavityConfig) -> str:
    """One of ``'stable'``, ``'marginal'``, ``'unstable'``, ``'degenerate'``.

    Stable means ``0 < d < 2R``; ``d == 2R`` is marginal and flat mirrors are
    degenerate (the core's squeeze parameter diverges).
    """
    if math.isinf(cfg.radius):
        return DEGENERATE
    q = cfg.ratio
    if q < 2:
        return STABLE
    return MARGINAL if q == 2 else UNSTABLE


def _check_stable(cfg: CavityConfig) -> None:
    verdict = stability(cfg)
    if verdict == STABLE:
        return
    q = cfg.ratio
    phi = -math.acos(1 - q) if q <= 2 else None
    if verdict == DEGENERATE:
        raise DegenerateCavityError("flat mirrors: core squeeze parameter is unbounded", phi)
    if verdict == MARGINAL:
        raise MarginalCavityError(f"marginal cavity d = 2R ({cfg.d} = 2*{cfg.radius}): e^(2 xi) = 0", phi)
    raise UnstableCavityError(f"unstable cavity d > 2R ({cfg.d} > 2*{cfg.radius}): |cos phi| > 1", phi)


def core_canonical(cfg: CavityConfig) -> tuple[float, float]:
    """``(phi, xi)`` with ``cos phi = 1 - d/R`` and ``e^{2 xi} = R/(2d) - 1/4``.

    The sign of ``phi`` comes from the core's off-diagonal entries (it is
    negative for every stable cavity), not from ``acos``.
    """
    _check_stable(cfg)
    c = core_matrix(cfg)
    q = cfg.ratio
    exp_2xi = 1 / (2 * q) - 0.25
    xi = 0.5 * math.log(exp_2xi)
    # de-squeeze the off-diagonal pair: e^xi * c[1,0] and -e^-xi * c[0,1] both equal sin(phi)
    sin_phi = math.copysign(math.sqrt(-c[0, 1] * c[1, 0]), c[1, 0])
    phi = math.atan2(sin_phi, c[0, 0])
    return phi, xi


def canonical_core(phi: float, xi: float) -> np.ndarray:
    """Rebuild the core from its canonical parameters."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -math.exp(xi) * s], [math.exp(-xi) * s, c]])


def escort_core(cfg: CavityConfig) -> CoreDecomp:
    """Split the round trip of a stable cavity into escort and core."""
    phi, xi = core_canonical(cfg)
    return CoreDecomp(phi=phi, xi=xi, escort=escort_matrix(cfg), core=core_matrix(cfg))


def wigner_decomposition(phi: float, xi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Squeeze, rotation and inverse squeeze whose product is the canonical core."""
    _finite(phi, xi)
    h = math.exp(xi / 2)
    c, s = math.cos(phi), math.sin(phi)
    return (
        np.diag([h, 1 / h]),
        np.array([[c, -s], [s, c]]),
        np.diag([1 / h, h]),
    )


def core_power(phi: float, xi: float, k: int) -> np.ndarray:
    """``C**k`` in closed form: the canonical core with angle ``k*phi``."""
    return canonical_core(k * phi, xi)


def n_round_trips(cfg: CavityConfig, n: int) -> np.ndarray:
    """ABCD matrix of ``n`` round trips, ``E @ C**(2n) @ inv(E)``, via the closed form."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"trip count must be a nonnegative integer, got {n!r}")
    dec = escort_core(cfg)
    return dec.escort @ core_power(dec.phi, dec.xi, 2 * int(n)) @ inverse2(dec.escort)


def iterated_round_trips(cfg: CavityConfig, n: int) -> np.ndarray:
    """``round_trip(cfg)**n`` by repeated squaring; works for any cavity."""
    return np.linalg.matrix_power(round_trip(cfg), int(n))


def propagate_ray(m: np.ndarray, ray: RayState) -> RayState:
    _finite(*ray)
    y, slope = np.asarray(m, dtype=float) @ np.asarray(ray, dtype=float)
    return RayState(float(y), float(slope))


def trace_orbit(cfg: CavityConfig, ray: RayState, trips: int) -> list[RayState]:
    """Ray at the reference mirror after 0, 1, ..., ``trips`` round trips."""
    m = round_trip(cfg)
    out = [RayState(*map(float, ray))]
    for _ in range(trips):
        out.append(propagate_ray(m, out[-1]))
    return out


def orbit_invariant(cfg: CavityConfig, ray: RayState) -> float:
    """Quadratic form conserved by the round trip of a stable cavity.

    In core coordinates ``u = inv(E) @ ray`` it is ``e^-xi u0^2 + e^xi u1^2``,
    the squared radius of the circle the de-squeezed ray moves on.
    """
    dec = escort_core(cfg)
    u = inverse2(dec.escort) @ np.asarray(ray, dtype=float)
    return float(math.exp(-dec.xi) * u[0] ** 2 + math.exp(dec.xi) * u[1] ** 2)


def orbit_height_bound(cfg: CavityConfig, ray: RayState) -> float:
    """Largest ``|y|`` on the invariant ellipse through ``ray``."""
    dec = escort_core(cfg)
    h = math.exp(dec.xi / 2)
    row = (dec.escort @ np.diag([h, 1 / h]))[0]
    return float(np.hypot(*row) * math.sqrt(orbit_invariant(cfg, ray)))
