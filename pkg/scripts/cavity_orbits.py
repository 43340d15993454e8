"""Follow one ray through many round trips for several mirror spacings and
report how far it strays from the axis compared with its invariant ellipse.

    python scripts/cavity_orbits.py --trips 1000
"""

import argparse
import math

import numpy as np

from wigner_cavity import cavity


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trips", type=int, default=1000)
    p.add_argument("--y0", type=float, default=0.01)
    p.add_argument("--slope0", type=float, default=0.0)
    args = p.parse_args()

    ray = cavity.RayState(args.y0, args.slope0)
    print(f"{'d/R':>5} {'verdict':>9} {'phi/deg':>9} {'e^2xi':>9} {'max|y|':>12} {'ellipse':>12}")
    for q in np.round(np.arange(0.1, 2.6, 0.1), 10):
        cfg = cavity.CavityConfig(1.0, 1.0 / q)
        verdict = cavity.stability(cfg)
        trips = args.trips if verdict == cavity.STABLE else 50
        peak = max(abs(r.y) for r in cavity.trace_orbit(cfg, ray, trips))
        if verdict == cavity.STABLE:
            dec = cavity.escort_core(cfg)
            bound = cavity.orbit_height_bound(cfg, ray)
            print(f"{q:5.2f} {verdict:>9} {math.degrees(dec.phi):9.3f} {dec.exp_2xi:9.4f} {peak:12.6g} {bound:12.6g}")
        else:
            print(f"{q:5.2f} {verdict:>9} {'-':>9} {'-':>9} {peak:12.6g} {'-':>12}  ({trips} trips)")


if __name__ == "__main__":
    main()
