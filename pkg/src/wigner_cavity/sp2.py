"""Two-by-two unimodular matrices for the same triangle, and the covering map.

Real 2x2 matrices with unit determinant act on the symmetric matrix

    X = [[ct + z, x], [x, ct - z]]

by ``X -> g X g^T``.  This preserves ``det X = ct^2 - z^2 - x^2`` and so
defines a Lorentz transformation of ``(ct, z, x)``; ``g`` and ``-g`` give the
same one.  Under this map a squeeze ``diag(e^{eta/2}, e^{-eta/2})`` becomes
the boost ``boost_z(eta)`` and a rotation by ``theta/2`` becomes
``rotation_y(theta)``.  Functions here take the full Lorentz angle and halve it
internally.
"""

from __future__ import annotations

import math

import numpy as np

from . import _exact, lorentz
from .lorentz import CT, X, Z, _finite

DET_TOL = 1e-10

# Basis of symmetric 2x2 matrices for the (ct, z, x) components.
_SYM_BASIS = (
    np.eye(2),
    np.array([[1.0, 0.0], [0.0, -1.0]]),
    np.array([[0.0, 1.0], [1.0, 0.0]]),
)


def det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def squeeze_z(eta: float) -> np.ndarray:
    """``diag(e^{eta/2}, e^{-eta/2})``."""
    _finite(eta)
    return np.diag([math.exp(eta / 2), math.exp(-eta / 2)])


def rot2(theta: float) -> np.ndarray:
    """Rotation by ``theta/2``, the double-cover image of ``rotation_y(theta)``.

    ``rot2(2*pi)`` is ``-I``, not ``I``.
    """
    _finite(theta)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def s2(eta: float, theta: float) -> np.ndarray:
    """Symmetric squeeze covering ``boost_b2(eta, theta)``.

    It squeezes along the direction at angle ``(pi + theta)/2`` from ``z``.
    """
    lam = lorentz.lambda_param(eta, theta)
    s, c = math.sin(theta / 2), math.cos(theta / 2)
    ch, sh = math.cosh(lam / 2), math.sinh(lam / 2)
    off = c * sh
    return np.array([[ch - s * sh, off], [off, ch + s * sh]])


def s3(eta: float, theta: float) -> np.ndarray:
    """Symmetric squeeze covering ``boost_b3(eta, theta)``."""
    _finite(eta, theta)
    ch, sh = math.cosh(eta / 2), math.sinh(eta / 2)
    off = -math.sin(theta) * sh
    return np.array([[ch - math.cos(theta) * sh, off], [off, ch + math.cos(theta) * sh]])


def closure2(eta: float, theta: float) -> np.ndarray:
    """``S3 S2 S1``, a rotation by half the Wigner angle."""
    return s3(eta, theta) @ (s2(eta, theta) @ squeeze_z(eta))


def sandwich(eta: float, big_theta: float) -> np.ndarray:
    """Rotation conjugated by a squeeze, in closed form.

    Equals ``squeeze_z(eta) @ rot2(big_theta) @ squeeze_z(-eta)``::

        [[cos(T/2),          -e^eta sin(T/2)],
         [e^-eta sin(T/2),    cos(T/2)      ]]

    and ``sandwich(eta, T)`` raised to the ``n`` is ``sandwich(eta, n*T)``.
    """
    _finite(eta, big_theta)
    c, s = math.cos(big_theta / 2), math.sin(big_theta / 2)
    return np.array([[c, -math.exp(eta) * s], [math.exp(-eta) * s, c]])


def sign_normalize(g: np.ndarray) -> np.ndarray:
    """Pick the representative of ``{g, -g}`` with nonnegative trace."""
    g = np.asarray(g, dtype=float)
    return -g if g[0, 0] + g[1, 1] < 0 else g


def covering_map(g: np.ndarray) -> np.ndarray:
    """Lorentz matrix induced by ``X -> g X g^T``, with ``y`` left untouched.

    Raises
    ------
    ValueError
        If ``|det g - 1| > 1e-10``.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {g.shape}")
    dev = abs(det2(g) - 1.0)
    if not dev <= DET_TOL:
        raise ValueError(f"not unimodular: |det - 1| = {dev:.3g}")
    out = np.eye(4)
    for col, basis in zip((CT, Z, X), _SYM_BASIS):
        img = g @ basis @ g.T
        out[CT, col] = (img[0, 0] + img[1, 1]) / 2
        out[Z, col] = (img[0, 0] - img[1, 1]) / 2
        out[X, col] = (img[0, 1] + img[1, 0]) / 2
    return out


def det_residual(m: np.ndarray) -> float:
    """``|det m - 1|``, evaluated exactly on the stored entries."""
    return _exact.det_residual(m)
