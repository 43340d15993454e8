"""Invariant sweeps over parameter grids for the three kernels.

Each check records the worst residual over its grid and the grid point where
it occurred.  Tolerances follow three classes: ``SINGLE`` for identities of one
constructed matrix, ``COMPOSED`` for products of several, ``POWER`` for high
matrix powers.  Checks of kind ``"bound"`` (ratios against an analytic bound,
counts of failed steps) keep their own tolerance under a global override.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import cavity, lorentz, sp2

SINGLE = 1e-12
COMPOSED = 1e-10
POWER = 1e-9
DET2 = 1e-13
SP2_REPR = 1e-11
ANGLE_ROUND_TRIP = 1e-14

ETA_MAX = 3.0
SANDWICH_ETA_MAX = 2.0
SANDWICH_N_MAX = 64
POWER_EXPONENTS = [2**k for k in range(14)]  # 1 .. 8192
ORBIT_TRIPS = 1000
UNSTABLE_RATIO = 2.5
UNSTABLE_TRIPS = 50
THOMAS_RAPIDITIES = (0.001, 0.005, 0.01)


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    kind: str = "absolute"
    where: dict | None = None

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class Suite:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks if c.kind == "absolute"), default=0.0)


def boost_grid(density: int) -> tuple[np.ndarray, np.ndarray]:
    """Rapidities ``0, 3/n, ..., 3`` and angles ``0, pi/n, ..., (n-1) pi/n``.

    ``density=12`` gives the canonical 13 x 12 grid with steps 0.25 and pi/12.
    """
    etas = np.linspace(0.0, ETA_MAX, density + 1)
    thetas = np.arange(density) * math.pi / density
    return etas, thetas


def cavity_ratios(density: int) -> np.ndarray:
    """``d/R`` values evenly spaced over ``[0.1, 1.9]``; 19 values at density 12."""
    return np.linspace(0.1, 1.9, 3 * density // 2 + 1)


def _worst(name: str, tol: float, points: Iterable, fn: Callable[..., float], kind: str = "absolute",
           labels: tuple[str, ...] = ()) -> Check:
    worst, at = -math.inf, None
    for p in points:
        p = p if isinstance(p, tuple) else (p,)
        r = float(fn(*p))
        if math.isnan(r):
            r = math.inf
        if r > worst:
            worst, at = r, p
    where = None if at is None else {k: float(v) for k, v in zip(labels, at)}
    return Check(name, worst, tol, kind, where)


def _maxabs(a, b) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max())


def lorentz_suite(density: int, tol: float | None = None) -> Suite:
    etas, thetas = boost_grid(density)
    pts = [(float(e), float(t)) for e in etas for t in thetas]
    lab = ("eta", "theta")
    single = tol if tol is not None else SINGLE
    composed = tol if tol is not None else COMPOSED
    s = Suite("lorentz")

    def single_metric(e, t):
        mats = (lorentz.boost_z(e), lorentz.rotation_y(t), lorentz.boost_b2(e, t), lorentz.boost_b3(e, t))
        return max(max(lorentz.metric_residual(m), lorentz.det_residual(m)) for m in mats)

    def composed_metric(e, t):
        mats = (lorentz.closure_product(e, t), lorentz.stabilizer_product(e, t),
                lorentz.little_group_conjugate(e, t))
        return max(max(lorentz.metric_residual(m), lorentz.det_residual(m)) for m in mats)

    def closure(e, t):
        return _maxabs(lorentz.closure_product(e, t), lorentz.rotation_y(lorentz.wigner_angle(e, t)))

    def triangle(e, t):
        tri = lorentz.BoostTriangle(e, t)
        b1, b2, b3 = tri.boosts()
        return max(_maxabs(lorentz.apply(b1, tri.p_a), tri.p_b),
                   _maxabs(lorentz.apply(b2, tri.p_b), tri.p_c),
                   _maxabs(lorentz.apply(b3, tri.p_c), tri.p_a)) / tri.mass

    def stabilizer(e, t):
        # B1 R(Omega - theta) B1^-1 equals R(-theta) B2, the inverse of B2^-1 R(theta)
        big = lorentz.wigner_angle(e, t) - t
        return _maxabs(lorentz.little_group_conjugate(e, big),
                       lorentz.inverse(lorentz.stabilizer_product(e, t)))

    def extraction(a):
        return abs(lorentz.extract_rotation_angle(lorentz.rotation_y(a)) - a)

    def thomas(e, t):
        return abs(lorentz.wigner_angle(e, t) - e * e / 2 * math.sin(t)) / (10 * e**4)

    s.checks += [
        _worst("single-matrix metric and det", single, pts, single_metric, labels=lab),
        _worst("composed-matrix metric and det", composed, pts, composed_metric, labels=lab),
        _worst("closure B3 B2 B1 = R(Omega)", composed, pts, closure, labels=lab),
        _worst("triangle P_a -> P_b -> P_c -> P_a", single, pts, triangle, labels=lab),
        _worst("stabilizer B1 R(Omega - theta) B1^-1 = R(-theta) B2", composed, pts, stabilizer, labels=lab),
        _worst("rotation angle round trip", tol if tol is not None else ANGLE_ROUND_TRIP,
               np.linspace(-math.pi, math.pi, 4 * density + 1)[1:], extraction, labels=("angle",)),
        _worst("small-rapidity limit / 10 eta^4", 1.0,
               [(e, float(t)) for e in THOMAS_RAPIDITIES for t in thetas], thomas, kind="bound", labels=lab),
    ]
    return s


def sp2_suite(density: int, tol: float | None = None) -> Suite:
    etas, thetas = boost_grid(density)
    pts = [(float(e), float(t)) for e in etas for t in thetas]
    lab = ("eta", "theta")
    pick = (lambda default: tol if tol is not None else default)
    s = Suite("sp2")

    def gens(e, t):
        return (sp2.squeeze_z(e), sp2.rot2(t), sp2.s2(e, t), sp2.s3(e, t))

    def unimodular(e, t):
        return max(sp2.det_residual(g) for g in (*gens(e, t), sp2.closure2(e, t), sp2.sandwich(e, t)))

    def homomorphism(e, t):
        g = gens(e, t)
        cm = sp2.covering_map
        return max(_maxabs(cm(a @ b), cm(a) @ cm(b)) for a in g for b in g)

    def generators(e, t):
        cm = sp2.covering_map
        return max(_maxabs(cm(sp2.squeeze_z(e)), lorentz.boost_z(e)),
                   _maxabs(cm(sp2.rot2(t)), lorentz.rotation_y(t)))

    def representation(e, t):
        cm = sp2.covering_map
        return max(_maxabs(cm(sp2.s2(e, t)), lorentz.boost_b2(e, t)),
                   _maxabs(cm(sp2.s3(e, t)), lorentz.boost_b3(e, t)))

    def closure_cover(e, t):
        return _maxabs(sp2.covering_map(sp2.closure2(e, t)), lorentz.closure_product(e, t))

    def closure2(e, t):
        return _maxabs(sp2.sign_normalize(sp2.closure2(e, t)), sp2.rot2(lorentz.wigner_angle(e, t)))

    def power(e, t):
        base = sp2.sandwich(e, t)
        acc = np.eye(2)
        worst = 0.0
        for n in range(1, SANDWICH_N_MAX + 1):
            acc = acc @ base
            worst = max(worst, _maxabs(acc, sp2.sandwich(e, n * t)))
        return worst

    s.checks += [
        _worst("unit determinant", pick(DET2), pts, unimodular, labels=lab),
        _worst("covering map of squeeze and rotation", pick(DET2), pts, generators, labels=lab),
        _worst("covering map of S2, S3 = B2, B3", pick(SP2_REPR), pts, representation, labels=lab),
        _worst("covering map of S3 S2 S1 = B3 B2 B1", pick(COMPOSED), pts, closure_cover, labels=lab),
        _worst("homomorphism on generator pairs", pick(COMPOSED), pts, homomorphism, labels=lab),
        _worst("S3 S2 S1 = rot2(Omega) up to sign", pick(SP2_REPR), pts, closure2, labels=lab),
        _worst("sandwich power law", pick(POWER),
               [p for p in pts if p[0] <= SANDWICH_ETA_MAX], power, labels=("eta", "big_theta")),
    ]
    return s


def _cavity_points(density: int) -> list[tuple[float, float]]:
    return [(1.0, 1.0 / float(q)) for q in cavity_ratios(density)]


def cavity_suite(density: int, tol: float | None = None) -> Suite:
    pts = _cavity_points(density)
    lab = ("d", "radius")
    pick = (lambda default: tol if tol is not None else default)
    s = Suite("cavity")
    cfg_of = cavity.CavityConfig

    def reassembly(d, r):
        dec = cavity.escort_core(cfg_of(d, r))
        e = dec.escort
        return _maxabs(e @ dec.core @ dec.core @ cavity.inverse2(e), cavity.round_trip(cfg_of(d, r)))

    def conjugation(d, r):
        cfg = cfg_of(d, r)
        h = cavity.half_cycle(cfg)
        return _maxabs(cavity.translation_matrix(-d / 2) @ h @ h @ cavity.translation_matrix(d / 2),
                       cavity.round_trip(cfg))

    def scaling(d, r):
        cfg = cfg_of(d, r)
        return _maxabs(cavity.scaling_matrix(d) @ cavity.core_matrix(cfg) @ cavity.inverse2(cavity.scaling_matrix(d)),
                       cavity.half_cycle(cfg))

    def canonical(d, r):
        cfg = cfg_of(d, r)
        phi, xi = cavity.core_canonical(cfg)
        q = cfg.ratio
        return max(_maxabs(cavity.canonical_core(phi, xi), cavity.core_matrix(cfg)),
                   abs(math.cos(phi) - (1 - q)),
                   abs(math.exp(2 * xi) / (1 / (2 * q) - 0.25) - 1))

    def closed_power(d, r):
        dec = cavity.escort_core(cfg_of(d, r))
        return max(_maxabs(cavity.core_power(dec.phi, dec.xi, 2 * n), np.linalg.matrix_power(dec.core, 2 * n))
                   for n in POWER_EXPONENTS)

    def n_trips(d, r):
        cfg = cfg_of(d, r)
        return max(_maxabs(cavity.n_round_trips(cfg, n), cavity.iterated_round_trips(cfg, n))
                   for n in (1, 2, 3, 10, 100))

    def stable_trace(d, r):
        return max(0.0, abs(np.trace(cavity.round_trip(cfg_of(d, r)))) - 2.0)

    def bounded_orbit(d, r):
        cfg = cfg_of(d, r)
        ray = cavity.RayState(1e-3, 1e-3)
        peak = max(abs(p.y) for p in cavity.trace_orbit(cfg, ray, ORBIT_TRIPS))
        return max(0.0, peak / cavity.orbit_height_bound(cfg, ray) - 1.0)

    def unstable_growth(d, r):
        # counts trips where |ray| fails to increase, plus one if it never passes 1e6 * |ray0|
        cfg = cfg_of(d, d / UNSTABLE_RATIO)
        orbit = cavity.trace_orbit(cfg, cavity.RayState(1e-3, 1e-3), UNSTABLE_TRIPS)
        norms = [math.hypot(*p) for p in orbit]
        misses = sum(b <= a for a, b in zip(norms, norms[1:]))
        trace_ok = abs(np.trace(cavity.round_trip(cfg))) > 2
        return float(misses + (norms[-1] < 1e6 * norms[0]) + (not trace_ok))

    s.checks += [
        _worst("reassembly E C^2 E^-1 = round trip", pick(SINGLE), pts, reassembly, labels=lab),
        _worst("half-translation conjugation", pick(SINGLE), pts, conjugation, labels=lab),
        _worst("dimensionless scaling", pick(DET2), pts, scaling, labels=lab),
        _worst("canonical form (phi, xi)", pick(DET2), pts, canonical, labels=lab),
        _worst("closed-form C^2N vs repeated squaring", pick(POWER), pts, closed_power, labels=lab),
        _worst("N round trips closed form vs iteration", pick(POWER), pts, n_trips, labels=lab),
        _worst("identity after two trips at d = R", pick(SINGLE), [(1.0, 1.0)],
               lambda d, r: _maxabs(cavity.n_round_trips(cfg_of(d, r), 2), np.eye(2)), labels=lab),
        _worst("stable |trace| - 2 excess", 0.0, pts, stable_trace, kind="bound", labels=lab),
        _worst("stable orbit / invariant ellipse bound - 1", 1e-9, pts, bounded_orbit, kind="bound", labels=lab),
        _worst("unstable growth failures at d = 2.5R", 0.0, [(1.0, 0.4)], unstable_growth, kind="bound",
               labels=lab),
    ]
    return s


SUITES: dict[str, Callable[[int, float | None], Suite]] = {
    "lorentz": lorentz_suite,
    "sp2": sp2_suite,
    "cavity": cavity_suite,
}


def run_all(density: int = 12, tol: float | None = None) -> list[Suite]:
    if density < 2:
        raise ValueError(f"grid density must be at least 2, got {density}")
    if tol is not None and not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return [build(density, tol) for build in SUITES.values()]


def iter_checks(suites: Iterable[Suite]) -> Iterator[tuple[Suite, Check]]:
    for suite in suites:
        for check in suite.checks:
            yield suite, check
