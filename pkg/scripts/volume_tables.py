"""Convergence of normalized colength and multiplicity for a few families.

Prints, per family, the sequence n! colength(a_k)/k^n next to e(a_k)/k^n and
the volume bracket, then the Fujita level found for two tolerances.
"""

import argparse
from fractions import Fraction

from multideal import GradedFamily, MonomialIdeal, fujita_approximation, power, volume
from multideal.errors import ApproximationNotReached

M = MonomialIdeal.maximal(2)

FAMILIES = {
    "powers (x, y)": GradedFamily.powers(M),
    "powers (x^2, y^3)": GradedFamily.powers(MonomialIdeal(2, ((2, 0), (0, 3)))),
    "polytope u1 + 2 u2 >= 2": GradedFamily.polytope([(1, 2)], [2], 2),
    "polytope 2u1+3u2>=7, u1+u2>=3": GradedFamily.polytope([(2, 3), (1, 1)], [7, 3], 2),
    "table (x,y)^2, (x^4, xy, y^4)": GradedFamily.table([power(M, 2), MonomialIdeal(2, ((4, 0), (1, 1), (0, 4)))]),
}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--kmax", type=int, default=12)
    args = p.parse_args()
    for name, F in FAMILIES.items():
        print(f"== {name}")
        print(volume(F, args.kmax).table())
        for eps in (Fraction(1, 10), Fraction(1, 100)):
            try:
                cert = fujita_approximation(F, eps, args.kmax)
                print(f"   eps={eps}: p={cert.p}, gap={cert.gap}")
            except ApproximationNotReached as exc:
                print(f"   eps={eps}: not reached by k={args.kmax} (best p={exc.best.p}, gap={exc.best.gap})")
        print()


if __name__ == "__main__":
    main()
