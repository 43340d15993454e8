import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wigner_cavity import lorentz as L
from wigner_cavity import sp2 as S

from conftest import E, GRID, OMEGA_GOLDEN, maxabs

rapidity = st.floats(-3.0, 3.0, allow_nan=False)
angle = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
EPS = np.finfo(float).eps


def cover_by_basis(g):
    """Independent construction: act on each basis four-vector through X = [[ct+z, x], [x, ct-z]]."""
    cols = []
    for v in np.eye(3):
        ct, z, x = v
        y = g @ np.array([[ct + z, x], [x, ct - z]]) @ g.T
        cols.append([(y[0, 0] + y[1, 1]) / 2, (y[0, 0] - y[1, 1]) / 2, y[0, 1]])
    m = np.eye(4)
    m[:3, :3] = np.array(cols).T
    return m


def test_squeeze_values():
    np.testing.assert_array_equal(S.squeeze_z(0.0), np.eye(2))
    assert np.diag(S.squeeze_z(2.0)) == pytest.approx([E, 1 / E], rel=1e-15)


@given(rapidity, rapidity)
def test_squeezes_compose(a, b):
    assert maxabs(S.squeeze_z(a) @ S.squeeze_z(b), S.squeeze_z(a + b)) < 1e-13


def test_rot2_double_cover_sign():
    np.testing.assert_array_equal(S.rot2(0.0), np.eye(2))
    assert maxabs(S.rot2(2 * math.pi), -np.eye(2)) < 1e-15


@given(angle, angle)
def test_rot2_composes(a, b):
    assert maxabs(S.rot2(a) @ S.rot2(b), S.rot2(a + b)) < 1e-14


@pytest.mark.parametrize("eta, theta", [(0.0, 1.0), (1.0, 0.0)])
def test_s2_identity_cases(eta, theta):
    assert maxabs(S.s2(eta, theta), np.eye(2)) < 1e-15


@pytest.mark.parametrize("eta, theta", GRID)
def test_s2_symmetric_and_unimodular(eta, theta):
    g = S.s2(eta, theta)
    assert g[0, 1] == g[1, 0]
    assert S.det_residual(g) < 1e-13


@pytest.mark.parametrize("eta, theta", GRID[::5])
def test_s2_squeezes_along_bisector(eta, theta):
    # symmetric squeeze: eigenvector of the larger eigenvalue along angle (pi + theta)/2, halved in 2x2
    lam = L.lambda_param(eta, theta)
    d = (math.pi + theta) / 2
    r = S.rot2(d)
    expected = r @ S.squeeze_z(lam) @ r.T
    assert maxabs(S.s2(eta, theta), expected) < 1e-13


def test_s3_special_cases():
    assert maxabs(S.s3(0.8, 0.0), S.squeeze_z(-0.8)) < 1e-15
    ch, sh = math.cosh(0.5), math.sinh(0.5)
    assert maxabs(S.s3(1.0, math.pi / 2), [[ch, -sh], [-sh, ch]]) < 1e-15


@pytest.mark.parametrize("eta, theta", [(1.0, 1.0)] + GRID[::9])
def test_s3_is_conjugated_squeeze(eta, theta):
    assert maxabs(S.s3(eta, theta), S.rot2(theta) @ S.squeeze_z(-eta) @ S.rot2(-theta)) < 1e-13


def test_closure2_golden():
    assert maxabs(S.closure2(0.0, 1.0), np.eye(2)) < 1e-15
    assert maxabs(S.closure2(1.0, math.pi / 2), S.rot2(OMEGA_GOLDEN)) < 1e-11


@pytest.mark.parametrize("eta, theta", GRID)
def test_closure2_trace(eta, theta):
    g = S.sign_normalize(S.closure2(eta, theta))
    assert np.trace(g) == pytest.approx(2 * math.cos(L.wigner_angle(eta, theta) / 2), abs=1e-11)


def test_sandwich_closed_form():
    eta, big = 1.0, 0.4
    product = S.squeeze_z(eta) @ S.rot2(big) @ S.squeeze_z(-eta)
    assert maxabs(S.sandwich(eta, big), product) < 1e-15
    np.testing.assert_array_equal(S.sandwich(eta, 0.0), np.eye(2))


@given(st.floats(-2.0, 2.0), st.floats(-math.pi, math.pi), st.integers(1, 64))
def test_sandwich_power_law(eta, big, n):
    assert maxabs(np.linalg.matrix_power(S.sandwich(eta, big), n), S.sandwich(eta, n * big)) < 1e-9


def test_covering_kernel():
    np.testing.assert_array_equal(S.covering_map(np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(S.covering_map(-np.eye(2)), np.eye(4))


def test_covering_generators():
    assert maxabs(S.covering_map(S.squeeze_z(1.0)), L.boost_z(1.0)) < 1e-13
    assert maxabs(S.covering_map(S.rot2(0.7)), L.rotation_y(0.7)) < 1e-15


@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3))
def test_covering_matches_independent_construction(params):
    a, b, c = params
    g = S.squeeze_z(a) @ S.rot2(b) @ S.s3(abs(c), b)
    assert maxabs(S.covering_map(g), cover_by_basis(g)) < 1e-11


def test_covering_rejects_non_unimodular():
    with pytest.raises(ValueError):
        S.covering_map(np.diag([2.0, 1.0]))


@pytest.mark.parametrize("eta, theta", GRID)
def test_covering_reproduces_boosts(eta, theta):
    assert maxabs(S.covering_map(S.s2(eta, theta)), L.boost_b2(eta, theta)) < 1e-11
    assert maxabs(S.covering_map(S.s3(eta, theta)), L.boost_b3(eta, theta)) < 1e-11


def test_covering_closure():
    assert maxabs(S.covering_map(S.closure2(1.0, math.pi / 2)), L.closure_product(1.0, math.pi / 2)) < 1e-10


@given(rapidity, angle, rapidity, angle)
def test_covering_homomorphism(e1, t1, e2, t2):
    gens = [S.squeeze_z(e1), S.rot2(t1), S.s2(e1, t1), S.s3(e2, t2), S.s2(e2, t2)]
    for a in gens:
        for b in gens:
            ca, cb = S.covering_map(a), S.covering_map(b)
            # a few roundings per entry of matrices whose entries reach |ca| |cb|
            bound = 64 * EPS * np.abs(ca).max() * np.abs(cb).max()
            assert maxabs(S.covering_map(a @ b), ca @ cb) <= bound


def test_sign_normalize():
    g = S.rot2(3 * math.pi)
    assert np.trace(g) < 0
    assert np.trace(S.sign_normalize(g)) > 0
