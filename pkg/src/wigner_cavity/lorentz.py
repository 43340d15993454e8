"""Four-by-four Lorentz matrices for the closed three-boost triangle.

Components are ordered ``(ct, z, x, y)`` and the metric is
``diag(1, -1, -1, -1)``.  All boosts and rotations live in the ``(ct, z, x)``
block; the ``y`` axis is the rotation axis throughout.

A particle at rest, ``P_a = (m, 0, 0, 0)``, is boosted along ``z`` (``B1``),
then boosted again (``B2``) so that its momentum turns by ``theta`` in the
``zx`` plane, then boosted back to rest (``B3``).  The product ``B3 B2 B1``
fixes ``P_a`` but is not the identity: it is a rotation about ``y`` by the
Wigner angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _exact

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# Index of each component in the (ct, z, x, y) ordering.
CT, Z, X, Y = 0, 1, 2, 3

ROTATION_TOL = 1e-9


class NotARotationError(ValueError):
    """Raised when a matrix is not a pure rotation about the y axis."""


class FourVector(NamedTuple):
    """A four-momentum or event with components ``(ct, z, x, y)``."""

    ct: float
    z: float
    x: float
    y: float

    @property
    def norm2(self) -> float:
        """Minkowski square ``ct**2 - z**2 - x**2 - y**2``."""
        return self.ct**2 - self.z**2 - self.x**2 - self.y**2

    @classmethod
    def at_rest(cls, mass: float = 1.0) -> "FourVector":
        return cls(float(mass), 0.0, 0.0, 0.0)


def _finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"expected a finite real number, got {v!r}")


def boost_z(eta: float) -> np.ndarray:
    """Pure boost along ``z`` with rapidity ``eta``."""
    _finite(eta)
    m = np.eye(4)
    m[CT, CT] = m[Z, Z] = math.cosh(eta)
    m[CT, Z] = m[Z, CT] = math.sinh(eta)
    return m


def rotation_y(theta: float) -> np.ndarray:
    """Rotation of the ``(z, x)`` plane by ``theta`` (z towards x)."""
    _finite(theta)
    c, s = math.cos(theta), math.sin(theta)
    m = np.eye(4)
    m[Z, Z] = m[X, X] = c
    m[Z, X] = -s
    m[X, Z] = s
    return m


def lambda_param(eta: float, theta: float) -> float:
    """Rapidity of the second boost, ``2 atanh(sin(theta/2) tanh(eta))``."""
    _finite(eta, theta)
    arg = math.sin(theta / 2) * math.tanh(eta)
    # |arg| < 1 analytically; tanh saturates to 1.0 in floating point for eta > ~19
    if not abs(arg) < 1.0:
        raise ValueError(f"rapidity too large to resolve in double precision: eta={eta}")
    return 2.0 * math.atanh(arg)


def boost_b2(eta: float, theta: float) -> np.ndarray:
    """Second boost of the triangle, carrying ``P_b`` onto ``P_c``.

    Its direction in the ``zx`` plane makes the angle ``(pi + theta)/2`` with
    the ``z`` axis and its rapidity is :func:`lambda_param`.
    """
    lam = lambda_param(eta, theta)
    s, c = math.sin(theta / 2), math.cos(theta / 2)
    ch, sh = math.cosh(lam), math.sinh(lam)
    cross = -math.sin(theta) * math.sinh(lam / 2) ** 2
    m = np.eye(4)
    m[CT, CT] = ch
    m[CT, Z] = m[Z, CT] = -s * sh
    m[CT, X] = m[X, CT] = c * sh
    m[Z, Z] = 1.0 + s * s * (ch - 1.0)
    m[Z, X] = m[X, Z] = cross
    m[X, X] = 1.0 + c * c * (ch - 1.0)
    return m


def boost_b3(eta: float, theta: float) -> np.ndarray:
    """Third boost, ``R(theta) B1^-1 R(-theta)``, bringing ``P_c`` back to rest."""
    return rotation_y(theta) @ boost_z(-eta) @ rotation_y(-theta)


def closure_product(eta: float, theta: float) -> np.ndarray:
    """``B3 B2 B1``: a rotation about ``y`` that fixes the rest momentum."""
    return boost_b3(eta, theta) @ (boost_b2(eta, theta) @ boost_z(eta))


def wigner_angle(eta: float, theta: float) -> float:
    """Closed-form Wigner angle of the triangle with parameters ``(eta, theta)``.

    The result agrees with ``extract_rotation_angle(closure_product(eta, theta))``.
    """
    _finite(eta, theta)
    num = math.sin(theta) * math.sinh(eta / 2) ** 2
    den = math.sqrt(math.cosh(eta) ** 2 - math.sinh(eta) ** 2 * math.sin(theta / 2) ** 2)
    arg = num / den
    if abs(arg) > 1.0 + 1e-12:
        raise ArithmeticError(f"arcsine argument {arg} outside [-1, 1]")
    return 2.0 * math.asin(max(-1.0, min(1.0, arg)))


def little_group_conjugate(eta: float, big_theta: float) -> np.ndarray:
    """``B1 R(big_theta) B1^-1``, which leaves ``P_b`` invariant for any angle."""
    return boost_z(eta) @ rotation_y(big_theta) @ boost_z(-eta)


def stabilizer_product(eta: float, theta: float) -> np.ndarray:
    """``B2^-1 R(theta)``, the other route from ``P_b`` back to itself.

    With ``big_theta = omega - theta`` this equals
    ``little_group_conjugate(eta, -big_theta)``; its inverse ``R(-theta) B2`` is
    ``little_group_conjugate(eta, big_theta)``.  Both are consistent with
    ``R(theta) R(big_theta) = B3 B2 B1``.
    """
    return inverse(boost_b2(eta, theta)) @ rotation_y(theta)


def inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse of a metric-preserving matrix, ``g M^T g``."""
    return METRIC @ np.asarray(m).T @ METRIC


def rotation_residual(m: np.ndarray) -> float:
    """Max deviation of ``m`` from the block form of a rotation about ``y``."""
    m = np.asarray(m, dtype=float)
    diff = m - np.eye(4)
    fixed = [CT, Y]
    block = m[Z:X + 1, Z:X + 1]
    return float(max(
        np.abs(diff[fixed, :]).max(),
        np.abs(diff[:, fixed]).max(),
        np.abs(block.T @ block - np.eye(2)).max(),
        abs(block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0] - 1.0),
    ))


def extract_rotation_angle(m: np.ndarray, tol: float = ROTATION_TOL) -> float:
    """Angle in ``(-pi, pi]`` of a rotation about ``y``.

    Raises
    ------
    NotARotationError
        If ``m`` departs from the rotation block form by more than ``tol``.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise NotARotationError(f"expected a 4x4 matrix, got shape {m.shape}")
    res = rotation_residual(m)
    if not res <= tol:
        raise NotARotationError(f"not a rotation about y (residual {res:.3g} > {tol:.3g})")
    angle = math.atan2(m[X, Z], m[Z, Z])
    return math.pi if angle == -math.pi else angle


def apply(m: np.ndarray, v: FourVector) -> FourVector:
    """Matrix-vector product in the ``(ct, z, x, y)`` ordering."""
    return FourVector(*(float(c) for c in np.asarray(m, dtype=float) @ np.asarray(v, dtype=float)))


def metric_residual(m: np.ndarray) -> float:
    """``max |M^T g M - g|``, evaluated exactly on the stored entries."""
    return _exact.form_residual(m, METRIC)


def det_residual(m: np.ndarray) -> float:
    """``|det M - 1|``, evaluated exactly on the stored entries."""
    return _exact.det_residual(m)


@dataclass(frozen=True)
class BoostTriangle:
    """Kinematics of the closed triangle ``P_a -> P_b -> P_c -> P_a``.

    ``eta`` is the rapidity of the first boost and ``theta`` the angle between
    ``P_b`` and ``P_c``.  ``lam``, ``omega`` and ``big_theta`` are derived: the
    second boost's rapidity, the Wigner angle and the angle of the equivalent
    rotation seen in the moving frame of ``P_b``.
    """

    eta: float
    theta: float
    mass: float = 1.0
    lam: float = field(init=False)
    omega: float = field(init=False)
    big_theta: float = field(init=False)

    def __post_init__(self):
        _finite(self.eta, self.theta, self.mass)
        object.__setattr__(self, "lam", lambda_param(self.eta, self.theta))
        object.__setattr__(self, "omega", wigner_angle(self.eta, self.theta))
        object.__setattr__(self, "big_theta", self.omega - self.theta)

    @property
    def p_a(self) -> FourVector:
        return FourVector.at_rest(self.mass)

    @property
    def p_b(self) -> FourVector:
        return FourVector(self.mass * math.cosh(self.eta), self.mass * math.sinh(self.eta), 0.0, 0.0)

    @property
    def p_c(self) -> FourVector:
        sh = self.mass * math.sinh(self.eta)
        return FourVector(self.mass * math.cosh(self.eta), sh * math.cos(self.theta), sh * math.sin(self.theta), 0.0)

    def boosts(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return boost_z(self.eta), boost_b2(self.eta, self.theta), boost_b3(self.eta, self.theta)

    def oracle_omega(self) -> float:
        """Wigner angle read off the matrix product instead of the closed form."""
        return extract_rotation_angle(closure_product(self.eta, self.theta))
