import math

import numpy as np
import pytest

# Frozen from a 50-digit mpmath computation that builds B2 as the generic pure
# boost taking P_b to P_c (rapidity and direction solved numerically) and reads
# the angle off B3 B2 B1; it shares no code with the package.
OMEGA_GOLDEN = 0.42078396163807291312  # eta=1, theta=pi/2
LAMBDA_GOLDEN = 1.2041611185374338383  # eta=1, theta=pi/2
COSH1 = 1.5430806348152437785
SINH1 = 1.1752011936438014569
E = 2.7182818284590452354

ETAS = [0.25 * k for k in range(13)]
THETAS = [k * math.pi / 12 for k in range(12)]
GRID = [(e, t) for e in ETAS for t in THETAS]
RATIOS = [k / 10 for k in range(1, 20)]


def maxabs(a, b) -> float:
    return float(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)).max())


@pytest.fixture
def grid():
    return GRID
