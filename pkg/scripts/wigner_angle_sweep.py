"""Tabulate the Wigner angle over (eta, theta): closed form, matrix product, and
the small-rapidity estimate (eta^2/2) sin(theta).

    python scripts/wigner_angle_sweep.py --eta-max 3 --steps 12 > sweep.csv
"""

import argparse
import csv
import math
import sys

import numpy as np

from wigner_cavity import lorentz


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--eta-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=12)
    args = p.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["eta", "theta", "lambda", "omega_formula", "omega_product", "difference", "small_eta_estimate"])
    for eta in np.linspace(0.0, args.eta_max, args.steps + 1):
        for theta in np.arange(args.steps) * math.pi / args.steps:
            tri = lorentz.BoostTriangle(float(eta), float(theta))
            oracle = tri.oracle_omega()
            w.writerow([f"{eta:.6g}", f"{theta:.17g}", f"{tri.lam:.17g}", f"{tri.omega:.17g}",
                        f"{oracle:.17g}", f"{abs(tri.omega - oracle):.3e}",
                        f"{eta * eta / 2 * math.sin(theta):.17g}"])


if __name__ == "__main__":
    main()
