#!/usr/bin/env python3
"""
Tests for the component oracle.
"""

import itertools
from fractions import Fraction

import pytest

from monobs.core.errors import MonobsError
from monobs.core.gamma import (
    condition_check, default_bounds, gamma_components, gamma_value, roots_gamma,
)
from monobs.core.ideal import MonomialIdeal

F = Fraction


def _subsets(size):
    return [s for k in range(size + 1) for s in itertools.combinations(range(size), k)]


class TestConditionCheck:
    def test_all_generators_fixed(self, ex2):
        assert not condition_check(ex2, (0, 1, 2), (), (0, 0, 0), ())

    def test_all_variables_fixed(self, ex2):
        assert condition_check(ex2, (), (0, 1, 2), (), (-1, -1, -1))

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_unit_vector_violates(self, r):
        a = MonomialIdeal.of([tuple(int(i == j) for i in range(r)) for j in range(r)])
        assert not condition_check(a, tuple(range(r)), (), (0,) * r, ())

    def test_x_squared_thresholds(self, x_squared):
        assert condition_check(x_squared, (), (0,), (), (-1,))
        assert condition_check(x_squared, (), (0,), (), (-2,))
        assert not condition_check(x_squared, (), (0,), (), (-3,))

    def test_sum_neutral_line(self, ex2):
        # c_0 >= -1 and 2c_0 + c_1 + c_2 <= 0 leave the line (0, 1, -1) free; c = (-1, 2, 0) has sum 1
        assert not condition_check(ex2, (0,), (2,), (1,), (-1,))

    def test_mixed_tuple_passes(self, ex2):
        # sum(c) <= -c_0 <= 0 on the region
        assert condition_check(ex2, (0,), (2,), (0,), (-1,))

    def test_mixed_tuples_agree_with_brute_force(self, ex2):
        box = range(-3, 4)
        for alpha in range(3):
            for beta in range(-1, -4, -1):
                found = any(
                    sum(c) >= 1 and c[0] >= -alpha
                    and 2 * c[0] + c[1] + c[2] <= -beta - 1
                    for c in itertools.product(box, repeat=3)
                )
                assert condition_check(ex2, (0,), (2,), (alpha,), (beta,)) == (not found)

    def test_bad_signs(self, ex2):
        with pytest.raises(MonobsError):
            condition_check(ex2, (0,), (), (-1,), ())
        with pytest.raises(MonobsError):
            condition_check(ex2, (), (0,), (), (0,))


class TestGammaValue:
    def test_ex2_variables(self, ex2):
        assert gamma_value(ex2, (), (0, 1, 2), (), (-1, -1, -1)) == F(-3, 4)

    def test_ex2_generators(self, ex2):
        assert gamma_value(ex2, (0, 1, 2), (), (0, 0, 0), ()) == 0

    def test_ex1_n3(self, ex1_n3):
        assert gamma_value(ex1_n3, (), (0, 1, 2), (), (-1, -1, -1)) == F(-3, 2)

    def test_not_constant(self, ex2):
        # one equation in three unknowns leaves sum(u) free
        assert gamma_value(ex2, (), (0,), (), (-1,)) is None

    def test_empty(self, x_squared):
        # u = 0 and 2u = -1 cannot both hold
        assert gamma_value(x_squared, (0,), (0,), (0,), (-1,)) is None

    def test_misaligned(self, ex2):
        with pytest.raises(MonobsError):
            gamma_value(ex2, (0, 1), (), (0,), ())


class TestRootsGamma:
    def test_default_bounds(self, ex2):
        assert default_bounds(ex2) == (6, -9)

    def test_x_squared(self, x_squared):
        assert roots_gamma(x_squared) == [F(-1, 2), F(-1)]

    def test_components_pass_their_check(self, x_squared):
        for comp in gamma_components(x_squared):
            assert condition_check(x_squared, comp.A, comp.B, comp.alpha, comp.beta)
            assert comp.value < 0

    def test_ex1_n3(self, ex1_n3):
        assert roots_gamma(ex1_n3) == [F(-3, 2), F(-2)]

    def test_ex2(self, ex2):
        assert roots_gamma(ex2) == [F(-3, 4), F(-1), F(-5, 4), F(-3, 2)]

    def test_ex1_n3_components_pass_their_check(self, ex1_n3):
        for comp in gamma_components(ex1_n3):
            assert condition_check(ex1_n3, comp.A, comp.B, comp.alpha, comp.beta)
            assert gamma_value(ex1_n3, comp.A, comp.B, comp.alpha, comp.beta) == comp.value

    @pytest.mark.parametrize("generators, alpha_max, beta_min", [
        ([(2, 0), (0, 3)], 2, -4),
        ([(2, 0), (1, 1), (0, 2)], 1, -3),
        ([(1, 1, 0), (1, 0, 1), (0, 1, 1)], 1, -2),
    ])
    def test_matches_full_grid(self, generators, alpha_max, beta_min):
        a = MonomialIdeal.of(generators)
        values = set()
        for A in _subsets(a.ngens):
            for B in _subsets(a.nvars):
                if not A and not B:
                    continue
                for alpha in itertools.product(range(alpha_max + 1), repeat=len(A)):
                    for beta in itertools.product(range(beta_min, 0), repeat=len(B)):
                        if condition_check(a, A, B, alpha, beta):
                            value = gamma_value(a, A, B, alpha, beta)
                            if value is not None:
                                values.add(value)
        assert set(roots_gamma(a, alpha_max, beta_min)) == values

    def test_larger_bounds_keep_values(self, x_squared):
        small = set(roots_gamma(x_squared, 1, -2))
        large = set(roots_gamma(x_squared, 4, -8))
        assert small <= large

    def test_power_of_variable(self):
        a = MonomialIdeal.of([(3,)])
        assert roots_gamma(a) == [F(-1, 3), F(-2, 3), F(-1)]

    def test_invalid_bounds(self, x_squared):
        with pytest.raises(MonobsError):
            roots_gamma(x_squared, -1, -2)
        with pytest.raises(MonobsError):
            roots_gamma(x_squared, 1, 0)

    def test_parallel_matches_serial(self, x_squared):
        assert roots_gamma(x_squared, jobs=2) == roots_gamma(x_squared, jobs=1)
