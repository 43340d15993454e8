"""Exact rational evaluation of residuals of small float matrices.

Entries of the boosts reach ~1e2 on the test grid, so ``M^T g M - g`` and
``det M - 1`` computed in double precision pick up ~1e-12 of rounding from the
check itself.  Converting the stored doubles to ``Fraction`` measures only the
error of the matrix as returned.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def _rational(m) -> list[list[Fraction]]:
    return [[Fraction(float(x)) for x in row] for row in np.asarray(m, dtype=float)]


def det(m) -> Fraction:
    """Exact determinant of a float matrix by fraction-valued elimination."""
    a = _rational(m)
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def det_residual(m) -> float:
    return float(abs(det(m) - 1))


def form_residual(m, form) -> float:
    """``max |M^T F M - F|`` for a diagonal or general bilinear form ``F``."""
    a = _rational(m)
    f = _rational(form)
    n = len(a)
    fa = [[sum(f[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    worst = Fraction(0)
    for i in range(n):
        for j in range(n):
            v = sum(a[k][i] * fa[k][j] for k in range(n)) - f[i][j]
            worst = max(worst, abs(v))
    return float(worst)
