import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multideal.errors import InputError, InvalidResolution, UnsupportedDimension
from multideal.ideals import MonomialIdeal, power, product
from multideal.multiplier import (
    Fan2D,
    SncDivisor,
    check_resolution,
    lct,
    mi_from_resolution_2d,
    mi_ideal,
    mi_linear_series,
    mi_mixed,
    mi_snc,
    mi_weighted,
    refine_fan_2d,
    smooth_fan,
)
from multideal.polyhedra import INF
from oracles import multiplier_by_covectors
from strategies import ideals

WEIGHTS = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2)]
weights = st.sampled_from(WEIGHTS)


def I(*gens):
    return MonomialIdeal(len(gens[0]), tuple(gens))


M = I((1, 0), (0, 1))
UNIT = MonomialIdeal.unit(2)


class TestSnc:
    def test_examples(self):
        assert mi_snc(SncDivisor((Fraction(3, 2), 0))) == I((1, 0))
        assert mi_snc(SncDivisor((Fraction(1, 2), Fraction(2, 3)))) == UNIT
        assert mi_snc(SncDivisor((2, 1))) == I((2, 1))

    def test_negative(self):
        with pytest.raises(InputError):
            SncDivisor((Fraction(-1, 2), 0))

    def test_principal_part(self):
        D = SncDivisor((0, Fraction(1, 2)), principal=((1, 1), Fraction(3, 2)))
        assert D.total() == (Fraction(3, 2), Fraction(2))
        assert mi_snc(D) == I((1, 2))
        assert SncDivisor.from_json(D.to_json()) == D

    @given(st.tuples(st.integers(0, 5), st.integers(0, 5)), weights)
    def test_principal_consistency(self, u, c):
        D = SncDivisor((0, 0), principal=(u, c))
        assert mi_ideal(I(u), c) == mi_snc(D)


class TestMiIdeal:
    def test_examples(self):
        assert mi_ideal(M, 1) == UNIT
        assert mi_ideal(power(M, 2), 1) == M
        assert mi_ideal(I((2, 1), (0, 3)), 1) == I((1, 1), (0, 2))

    def test_nonpositive_c(self):
        with pytest.raises(InputError):
            mi_ideal(M, 0)
        with pytest.raises(InputError):
            mi_ideal(M, Fraction(-1, 2))

    @given(ideals(2, 6, 5), weights)
    def test_against_covector_search_2d(self, a, c):
        mx = max(max(g) for g in a.gens)
        bound = int(c * mx) + 2
        assert list(mi_ideal(a, c).gens) == multiplier_by_covectors([(a.gens, c)], bound, mx + 1)

    @settings(max_examples=30)
    @given(ideals(3, 2, 4), weights)
    def test_against_covector_search_3d(self, a, c):
        bound = int(c * 2) + 2
        assert list(mi_ideal(a, c).gens) == multiplier_by_covectors([(a.gens, c)], bound, 5)

    @given(ideals(2, 6, 5))
    def test_contains_base(self, a):
        assert a <= mi_ideal(a, 1)

    @given(ideals(2, 6, 4), weights, weights)
    def test_monotone_in_c(self, a, c, d):
        lo, hi = min(c, d), max(c, d)
        assert mi_ideal(a, hi) <= mi_ideal(a, lo)

    @given(ideals(2, 5, 4), ideals(2, 5, 4), weights)
    def test_monotone_in_ideal(self, a, b, c):
        small = product(a, b)  # inside a
        assert mi_ideal(small, c) <= mi_ideal(a, c)

    @given(ideals(2, 4, 4), st.integers(1, 4))
    def test_power_identity(self, a, m):
        assert mi_ideal(a, m) == mi_ideal(power(a, m), 1)

    @settings(max_examples=25)
    @given(ideals(3, 3, 4), st.integers(1, 3))
    def test_power_identity_3d(self, a, m):
        assert mi_ideal(a, m) == mi_ideal(power(a, m), 1)

    def test_linear_series(self):
        assert mi_linear_series([(2, 0), (0, 2)], 2, 1) == M


class TestMixed:
    def test_examples(self):
        assert mi_mixed(I((1, 0)), Fraction(3, 2), I((0, 1)), Fraction(5, 2)) == I((1, 2))
        assert mi_mixed(M, 1, M, 1) == mi_ideal(power(M, 2), 1) == M
        assert mi_mixed(M, Fraction(1, 2), M, Fraction(1, 2)) == mi_ideal(M, 1) == UNIT

    @given(ideals(2, 4, 3), ideals(2, 4, 3), st.integers(1, 3), st.integers(1, 3))
    def test_integer_weights(self, a, b, p, q):
        assert mi_mixed(a, p, b, q) == mi_ideal(product(power(a, p), power(b, q)), 1)

    @given(ideals(2, 5, 4), ideals(2, 5, 4), weights, weights)
    def test_against_covector_search(self, a, b, c, d):
        mx = max(max(g) for g in a.gens + b.gens)
        bound = int((c + d) * mx) + 2
        want = multiplier_by_covectors([(a.gens, c), (b.gens, d)], bound, 2 * mx + 2)
        assert list(mi_mixed(a, c, b, d).gens) == want

    def test_weighted_unit_is_neutral(self):
        a = I((3, 1), (0, 4))
        assert mi_weighted([(a, Fraction(2, 3)), (UNIT, Fraction(5))]) == mi_ideal(a, Fraction(2, 3))

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            mi_mixed(M, 1, MonomialIdeal.maximal(3), 1)


class TestLct:
    def test_examples(self):
        assert lct(M) == 2
        assert lct(I((2, 0), (0, 2))) == 1
        assert lct(UNIT) == INF

    @given(ideals(2, 6, 4).filter(lambda a: not a.is_unit()))
    def test_jumping_at_threshold(self, a):
        t = lct(a)
        assert mi_ideal(a, t) != UNIT
        assert mi_ideal(a, t * Fraction(999, 1000)) == UNIT


class TestFans:
    def test_maximal_ideal_fan(self):
        assert refine_fan_2d(M).rays == ((1, 0), (1, 1), (0, 1))

    def test_pure_powers_fan(self):
        fan = refine_fan_2d(I((2, 0), (0, 3)))
        assert fan.is_smooth()
        assert (3, 2) in fan.rays
        assert fan.rays == ((1, 0), (2, 1), (3, 2), (1, 1), (0, 1))

    def test_unit_fan(self):
        assert refine_fan_2d(UNIT).rays == ((1, 0), (0, 1))
        assert refine_fan_2d(UNIT, [(1, 2)]).rays == ((1, 0), (1, 1), (1, 2), (0, 1))

    def test_invalid_fans(self):
        with pytest.raises(InvalidResolution):
            Fan2D(((1, 0), (1, 1)))
        with pytest.raises(InvalidResolution):
            Fan2D(((1, 0), (2, 2), (0, 1)))
        with pytest.raises(InvalidResolution):
            Fan2D(((1, 0), (1, 2), (1, 1), (0, 1)))

    def test_non_smooth_rejected(self):
        with pytest.raises(InvalidResolution):
            check_resolution(I((2, 0), (0, 3)), Fan2D(((1, 0), (3, 2), (0, 1))))

    def test_non_principal_rejected(self):
        # smooth but the normal ray (1,1) of the maximal ideal is missing
        with pytest.raises(InvalidResolution):
            check_resolution(M, Fan2D(((1, 0), (0, 1))))

    def test_dimension(self):
        with pytest.raises(UnsupportedDimension):
            refine_fan_2d(MonomialIdeal.maximal(3))

    @given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)).filter(any), max_size=6))
    def test_smooth_fan_is_smooth(self, rays):
        fan = smooth_fan(rays)
        assert fan.is_smooth()
        for r in rays:
            g = math.gcd(*r)
            assert (r[0] // g, r[1] // g) in fan.rays


class TestResolutionOracle:
    def test_examples(self):
        a = power(M, 2)
        assert mi_from_resolution_2d(a, 1, refine_fan_2d(a)) == M
        fan = refine_fan_2d(a, [(2, 1), (1, 3), (5, 2), (3, 7), (4, 1)])
        assert mi_from_resolution_2d(a, 1, fan) == M
        assert mi_from_resolution_2d(I((3, 0)), Fraction(1, 2), Fan2D(((1, 0), (1, 1), (0, 1)))) == I((1, 0))

    @given(ideals(2, 8, 5), weights)
    def test_agrees_with_criterion(self, a, c):
        assert mi_from_resolution_2d(a, c, refine_fan_2d(a)) == mi_ideal(a, c)

    @given(
        ideals(2, 8, 5),
        weights,
        st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)).filter(any), min_size=1, max_size=5),
    )
    def test_independent_of_refinement(self, a, c, extra):
        base = mi_from_resolution_2d(a, c, refine_fan_2d(a))
        assert mi_from_resolution_2d(a, c, refine_fan_2d(a, extra)) == base

    def test_strict_contains_examples_via_oracle(self):
        # 1 lies in J(c m) iff (1, 1) is interior to c Newt(m)
        fan = refine_fan_2d(M)
        assert mi_from_resolution_2d(M, 1, fan).contains((0, 0))
        assert not mi_from_resolution_2d(M, 2, fan).contains((0, 0))

    def test_random_sweep(self):
        rng = random.Random(5)
        for _ in range(100):
            gens = tuple((rng.randint(0, 8), rng.randint(0, 8)) for _ in range(rng.randint(1, 5)))
            a = MonomialIdeal(2, gens)
            c = rng.choice(WEIGHTS)
            assert mi_from_resolution_2d(a, c, refine_fan_2d(a)) == mi_ideal(a, c)
