"""Independent reference computations used only by the tests.

None of these share code with the routes they check: facet enumeration is by
exhaustive normal search or subset nullspaces (sympy), covolume by shoelace or
scipy's hull, colength by counting every lattice point in a box, multiplier
ideals by testing a condition over all small covectors.
"""

import itertools
import math
from fractions import Fraction

import sympy


def _face_dim(points, w, h):
    tight = [p for p in points if sum(a * b for a, b in zip(w, p)) == h]
    n = len(w)
    dirs = [[int(i == j) for j in range(n)] for i in range(n) if w[i] == 0]
    vecs = [[a - b for a, b in zip(p, tight[0])] for p in tight[1:]] + dirs
    if not vecs:
        return 0
    return sympy.Matrix(vecs).rank()


def facets_by_normal_search(points, bound):
    """Facets whose primitive normal has entries <= bound."""
    n = len(points[0])
    out = set()
    for w in itertools.product(range(bound + 1), repeat=n):
        if not any(w) or math.gcd(*w) != 1:
            continue
        h = min(sum(a * b for a, b in zip(w, p)) for p in points)
        if _face_dim(points, w, h) == n - 1:
            out.add((w, Fraction(h)))
    return sorted(out)


def facets_by_subsets(points):
    """Every hyperplane spanned by points and coordinate rays that supports the region."""
    n = len(points[0])
    pts = sorted(set(points))
    out = set()
    for k in range(1, n + 1):
        for sub in itertools.combinations(pts, k):
            for dirs in itertools.combinations(range(n), n - k):
                rows = [[a - b for a, b in zip(p, sub[0])] for p in sub[1:]]
                rows += [[int(i == j) for j in range(n)] for i in dirs]
                if rows:
                    null = sympy.Matrix(rows).nullspace()
                    if len(null) != 1:
                        continue
                    w = [sympy.Rational(x) for x in null[0]]
                else:
                    w = [sympy.Integer(1)]
                den = sympy.ilcm(*[x.q for x in w])
                w = [int(x * den) for x in w]
                if all(x <= 0 for x in w):
                    w = [-x for x in w]
                if any(x < 0 for x in w):
                    continue
                g = math.gcd(*w)
                w = tuple(x // g for x in w)
                h = sum(a * b for a, b in zip(w, sub[0]))
                if all(sum(a * b for a, b in zip(w, p)) >= h for p in pts):
                    out.add((w, Fraction(h)))
    return sorted(out)


def staircase_covolume_2d(gens):
    """Integral of the lower boundary g(x) of the region, by exact trapezoids.

    g is convex and piecewise linear with breaks at generator abscissae, so the
    trapezoid rule over those abscissae is exact.
    """
    pts = sorted(set(gens))
    if min(p[0] for p in pts) != 0 or min(p[1] for p in pts) != 0:
        return math.inf

    def g(x):
        best = min(Fraction(p[1]) for p in pts if p[0] <= x)
        for p in pts:
            for q in pts:
                if p[0] < x < q[0]:
                    t = Fraction(x - p[0], q[0] - p[0])
                    best = min(best, p[1] + t * (q[1] - p[1]))
        return best

    xs = sorted({p[0] for p in pts})
    return sum((b - a) * (g(a) + g(b)) / 2 for a, b in zip(xs, xs[1:]))


def hull_covolume(gens):
    """Box volume minus the volume of region-within-box (floating point)."""
    import numpy as np
    from scipy.spatial import ConvexHull

    n = len(gens[0])
    B = max(max(g) for g in gens) + 1
    pts = set()
    for g in gens:
        for mask in itertools.product((0, 1), repeat=n):
            pts.add(tuple(B if m else x for x, m in zip(g, mask)))
    vol = ConvexHull(np.array(sorted(pts), dtype=float)).volume
    return B**n - vol


def colength_by_counting(gens, box):
    n = len(gens[0])
    count = 0
    for v in itertools.product(range(box + 1), repeat=n):
        if not any(all(g[i] <= v[i] for i in range(n)) for g in gens):
            count += 1
    return count


def multiplier_by_covectors(terms, bound, w_bound):
    """Minimal v in [0, bound]^n with <w, v+1> > sum c_i min_g <w, g> for all w <= w_bound."""
    n = len(terms[0][0][0])
    ws = [w for w in itertools.product(range(w_bound + 1), repeat=n) if any(w)]
    need = []
    for w in ws:
        rhs = sum(Fraction(c) * min(sum(a * b for a, b in zip(w, g)) for g in gens) for gens, c in terms)
        need.append((w, rhs))
    members = [
        v
        for v in itertools.product(range(bound + 1), repeat=n)
        if all(sum(a * (b + 1) for a, b in zip(w, v)) > rhs for w, rhs in need)
    ]
    minimal = [v for v in members if not any(u != v and all(x <= y for x, y in zip(u, v)) for u in members)]
    return sorted(minimal)
