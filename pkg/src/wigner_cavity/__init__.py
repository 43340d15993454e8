"""Wigner rotations from three Lorentz boosts, in 4x4 and 2x2 form, and in the
round trips of a laser cavity with two identical mirrors."""

__version__ = "0.1.0"

from .cavity import (
    CavityConfig,
    CavityStabilityError,
    CoreDecomp,
    RayState,
    escort_core,
    n_round_trips,
    round_trip,
)
from .lorentz import BoostTriangle, FourVector, NotARotationError, closure_product, wigner_angle
from .sp2 import covering_map

__all__ = [
    "BoostTriangle",
    "CavityConfig",
    "CavityStabilityError",
    "CoreDecomp",
    "FourVector",
    "NotARotationError",
    "RayState",
    "closure_product",
    "covering_map",
    "escort_core",
    "n_round_trips",
    "round_trip",
    "wigner_angle",
]
