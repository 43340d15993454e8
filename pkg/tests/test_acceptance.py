"""Exit criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see only these lines; the
lines are printed regardless of capture.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from wigner_cavity import cavity as C
from wigner_cavity import lorentz as L
from wigner_cavity import sp2 as S

from conftest import ETAS, GRID, RATIOS, THETAS, maxabs


def criterion(capsys, number, title, ok, detail):
    line = f"AC{number:02d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def worst_over(points, fn):
    worst, at = -1.0, None
    for p in points:
        r = fn(*p)
        if r > worst:
            worst, at = r, p
    return worst, at


def test_ac01_closure_identity(capsys):
    t0 = time.perf_counter()
    worst, at = worst_over(GRID, lambda e, t: maxabs(L.closure_product(e, t), L.rotation_y(L.wigner_angle(e, t))))
    elapsed = time.perf_counter() - t0
    criterion(capsys, 1, "closure B3 B2 B1 = R(Omega)", worst < 1e-10 and elapsed < 1.0,
              f"max residual {worst:.3e} < 1e-10 (worst at eta={at[0]}, theta={at[1]:.4f}); {elapsed:.3f}s < 1s")


@pytest.mark.parametrize("mass", [1.0, 0.938272])
def test_ac02_kinematic_triangle(capsys, mass):
    def residual(e, t):
        tri = L.BoostTriangle(e, t, mass=mass)
        b1, b2, b3 = tri.boosts()
        return max(maxabs(L.apply(b1, tri.p_a), tri.p_b),
                   maxabs(L.apply(b2, tri.p_b), tri.p_c),
                   maxabs(L.apply(b3, tri.p_c), tri.p_a))

    worst, at = worst_over(GRID, residual)
    criterion(capsys, 2, f"triangle P_a -> P_b -> P_c -> P_a (m={mass})", worst < 1e-12 * mass,
              f"max residual {worst:.3e} < {1e-12 * mass:.3e}")


def test_ac03_theta_relation(capsys):
    def residual(e, t):
        omega = L.wigner_angle(e, t)
        lhs = L.boost_z(e) @ L.rotation_y(omega - t) @ L.boost_z(-e)
        rhs = L.inverse(L.boost_b2(e, t)) @ L.rotation_y(t)
        return maxabs(lhs, rhs)

    worst, at = worst_over(GRID, residual)
    criterion(capsys, 3, "B1 R(Omega - theta) B1^-1 = B2^-1 R(theta)", worst < 1e-10,
              f"max residual {worst:.3e} < 1e-10 (worst at eta={at[0]}, theta={at[1]:.4f})")


def test_ac04_covering_consistency(capsys):
    def reproduce(e, t):
        cm = S.covering_map
        return max(maxabs(cm(S.squeeze_z(e)), L.boost_z(e)),
                   maxabs(cm(S.rot2(t)), L.rotation_y(t)),
                   maxabs(cm(S.s2(e, t)), L.boost_b2(e, t)),
                   maxabs(cm(S.s3(e, t)), L.boost_b3(e, t)),
                   maxabs(cm(S.closure2(e, t)), L.closure_product(e, t)))

    def homomorphism(e, t):
        gens = (S.squeeze_z(e), S.rot2(t), S.s2(e, t), S.s3(e, t))
        cm = S.covering_map
        return max(maxabs(cm(a @ b), cm(a) @ cm(b)) for a in gens for b in gens)

    rep, _ = worst_over(GRID, reproduce)
    hom, at = worst_over(GRID, homomorphism)
    criterion(capsys, 4, "covering map reproduces 4x4 matrices and is a homomorphism",
              rep < 1e-10 and hom < 1e-12,
              f"reproduction {rep:.3e} < 1e-10; homomorphism {hom:.3e} < 1e-12 "
              f"(worst at eta={at[0]}, theta={at[1]:.4f})")


def test_ac05_sp2_closure(capsys):
    worst, at = worst_over(GRID, lambda e, t: maxabs(S.sign_normalize(S.closure2(e, t)),
                                                     S.rot2(L.wigner_angle(e, t))))
    criterion(capsys, 5, "S3 S2 S1 = rot2(Omega) after sign normalization", worst < 1e-11,
              f"max residual {worst:.3e} < 1e-11")


def test_ac06_sandwich_power_law(capsys):
    etas = [e for e in ETAS if e <= 2.0]
    angles = THETAS + [-0.7, 2.9, math.pi]

    def residual(e, big):
        base = S.sandwich(e, big)
        acc, worst = np.eye(2), 0.0
        for n in range(1, 65):
            acc = acc @ base
            worst = max(worst, maxabs(acc, S.sandwich(e, n * big)))
        return worst

    worst, _ = worst_over([(e, a) for e in etas for a in angles], residual)
    criterion(capsys, 6, "sandwich(eta, T)^N = sandwich(eta, N T), N <= 64, eta <= 2", worst < 1e-9,
              f"max residual {worst:.3e} < 1e-9")


def test_ac07_cavity_conjugation_chain(capsys):
    def residual(d, q):
        cfg = C.CavityConfig(d, d / q)
        rt = C.round_trip(cfg)
        h = C.half_cycle(cfg)
        dec = C.escort_core(cfg)
        via_half = C.translation_matrix(-d / 2) @ h @ h @ C.translation_matrix(d / 2)
        via_core = dec.escort @ dec.core @ dec.core @ C.inverse2(dec.escort)
        return max(maxabs(rt, via_half), maxabs(rt, via_core))

    worst, _ = worst_over([(d, q) for d in (0.3, 1.0, 4.0) for q in RATIOS], residual)
    criterion(capsys, 7, "round trip = T(-d/2) H^2 T(d/2) = E C^2 E^-1", worst < 1e-12,
              f"max residual {worst:.3e} < 1e-12 over d/R in 0.1..1.9")


def test_ac08_core_canonical_form(capsys):
    def residual(d, q):
        cfg = C.CavityConfig(d, d / q)
        phi, xi = C.core_canonical(cfg)
        return maxabs(C.canonical_core(phi, xi), C.core_matrix(cfg))

    worst, _ = worst_over([(d, q) for d in (0.3, 1.0, 4.0) for q in RATIOS], residual)
    dec = C.escort_core(C.CavityConfig(1.0, 1.0))
    eps = np.finfo(float).eps
    exp_err = abs(dec.exp_2xi - 0.25)
    phi_err = abs(abs(dec.phi) - math.pi / 2)
    ok = worst < 1e-13 and exp_err <= 2 * eps * 0.25 and phi_err <= eps * math.pi / 2
    criterion(capsys, 8, "core rebuilt from (phi, xi); d = R gives e^(2xi) = 1/4, |phi| = pi/2", ok,
              f"rebuild {worst:.3e} < 1e-13; |e^(2xi) - 1/4| = {exp_err:.1e}; ||phi| - pi/2| = {phi_err:.1e}")


def test_ac09_n_trip_closed_form(capsys):
    exponents = [2**k for k in range(14)] + [10**4]
    t0 = time.perf_counter()

    def residual(q):
        cfg = C.CavityConfig(1.0, 1.0 / q)
        dec = C.escort_core(cfg)
        return max(maxabs(C.core_power(dec.phi, dec.xi, 2 * n), np.linalg.matrix_power(dec.core, 2 * n))
                   for n in exponents)

    worst, at = worst_over([(q,) for q in RATIOS], residual)
    identity = maxabs(C.n_round_trips(C.CavityConfig(1.0, 1.0), 2), np.eye(2))
    elapsed = time.perf_counter() - t0
    criterion(capsys, 9, "closed-form C^2N vs repeated squaring, N <= 1e4", worst < 1e-9 and identity < 1e-12
              and elapsed < 1.0,
              f"max residual {worst:.3e} < 1e-9 (worst d/R={at[0]}); d=R, N=2 identity {identity:.1e} < 1e-12; "
              f"{elapsed:.3f}s < 1s")


def test_ac10_stability_dichotomy(capsys):
    failures = []
    ray = C.RayState(0.01, 0.003)
    for q in RATIOS:
        cfg = C.CavityConfig(1.0, 1.0 / q)
        if abs(np.trace(C.round_trip(cfg))) > 2:
            failures.append(f"|trace| > 2 at d/R={q}")
        peak = max(abs(p.y) for p in C.trace_orbit(cfg, ray, 1000))
        if not peak <= C.orbit_height_bound(cfg, ray) * (1 + 1e-9):
            failures.append(f"orbit exceeds ellipse at d/R={q}")
    unstable = C.CavityConfig(2.5, 1.0)
    tr = abs(np.trace(C.round_trip(unstable)))
    norms = [math.hypot(*p) for p in C.trace_orbit(unstable, ray, 50)]
    monotone = all(b > a for a, b in zip(norms, norms[1:]))
    if not (tr > 2 and monotone and norms[-1] > 1e30 * norms[0]):
        failures.append("d = 2.5R orbit does not grow monotonically")
    criterion(capsys, 10, "stable: |trace| <= 2 and bounded 1e3-trip orbits; d = 2.5R diverges", not failures,
              "; ".join(failures) or f"d=2.5R |trace|={tr:.0f}, |ray| grows x{norms[-1] / norms[0]:.2e} in 50 trips")


def test_ac11_thomas_limit(capsys):
    theta = math.pi / 3
    ratios = [abs(L.wigner_angle(e, theta) - e * e / 2 * math.sin(theta)) / (10 * e**4)
              for e in (0.001, 0.005, 0.01)]
    criterion(capsys, 11, "|Omega - (eta^2/2) sin theta| <= 10 eta^4 at theta = pi/3", max(ratios) <= 1.0,
              "error / bound = " + ", ".join(f"{r:.3g}" for r in ratios))


def test_ac12_verify_command(capsys):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "wigner_cavity", "verify", "--json"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    rep = json.loads(proc.stdout)
    below = all(c["residual"] <= c["tolerance"] for c in rep["checks"])
    criterion(capsys, 12, "verify exits 0 with every suite below tolerance", proc.returncode == 0 and below
              and elapsed < 10.0,
              f"exit {proc.returncode}; {sum(c['passed'] for c in rep['checks'])}/{len(rep['checks'])} checks; "
              f"{elapsed:.2f}s < 10s")
