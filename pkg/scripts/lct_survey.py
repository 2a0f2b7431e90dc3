"""Jumping numbers and log canonical thresholds on the exponent grid.

For every ideal with exponents <= E and at most G generators, records the lct
and checks that J(c a) is trivial for c < lct and proper at c = lct.
"""

import argparse
import collections
from fractions import Fraction

from multideal import lct, mi_ideal
from multideal.verify import ideal_grid


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-exp", type=int, default=4)
    p.add_argument("--max-gens", type=int, default=3)
    args = p.parse_args()

    grid = ideal_grid(2, args.max_exp, args.max_gens)
    counts = collections.Counter()
    bad = 0
    for a in grid:
        if a.is_unit():
            continue
        t = lct(a)
        counts[t] += 1
        if mi_ideal(a, t).is_unit() or not mi_ideal(a, t * Fraction(99, 100)).is_unit():
            bad += 1
    print(f"{len(grid)} ideals, {len(counts)} distinct thresholds, {bad} boundary failures")
    for t, n in sorted(counts.items())[:15]:
        print(f"  lct = {str(t):>6}  x{n}")


if __name__ == "__main__":
    main()
