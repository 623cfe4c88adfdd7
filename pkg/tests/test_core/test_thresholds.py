#!/usr/bin/env python3
"""
Tests for tau, nu, thresholds and the quasi-linear law.
"""

import math
from fractions import Fraction

import pytest

from monobs.core.errors import (
    BudgetExceededError, DimensionMismatchError, MonobsError,
    RadicalContainmentError, UnboundedInvariantError,
)
from monobs.core.ideal import MonomialIdeal
from monobs.core.roots import roots_charp
from monobs.core.thresholds import (
    detect_period, f_threshold, jumping_number, jumping_numbers, lct,
    multiplier_ideal_membership, nu, nu_periodicity, quasi_linear_law,
    tau, tau_partial, tau_Q, tau_Q_partial, tau_Q_program,
)

F = Fraction


class TestTau:
    def test_ex3(self, ex3):
        assert tau(ex3, (2, 2, 2, 2)) == 2

    def test_zero(self, ex2):
        assert tau(ex2, (0, 0, 0)) == 0

    def test_ex2(self, ex2):
        assert tau(ex2, (2, 2, 2)) == 1

    def test_negative_rejected(self, ex2):
        with pytest.raises(MonobsError):
            tau(ex2, (1, -1, 1))

    def test_length_checked(self, ex2):
        with pytest.raises(DimensionMismatchError):
            tau(ex2, (1, 1))


class TestTauPartial:
    def test_full_support(self, ex1_n3):
        assert tau_partial(ex1_n3, [0, 1, 2], {0: 2, 1: 2, 2: 2}) == 3

    def test_zero_rhs(self, ex2):
        assert tau_partial(ex2, [0, 1, 2], {0: 0, 1: 0, 2: 0}) == 0

    def test_unbounded(self):
        a = MonomialIdeal.of([(0, 1)])
        with pytest.raises(UnboundedInvariantError):
            tau_partial(a, [0], {0: 5})

    def test_rational_partial(self, ex1_n3):
        # constraints on X2 and X3 only
        assert tau_Q_partial(ex1_n3, [1, 2], {1: 1, 2: 1}) == 2
        assert tau_partial(ex1_n3, [1, 2], {1: 1, 2: 1}) == 2


class TestTauQ:
    def test_ex2(self, ex2):
        assert tau_Q(ex2, (1, 1, 1)) == F(3, 4)

    def test_homogeneous(self, ex2):
        assert tau_Q(ex2, (12, 12, 12)) == 12 * tau_Q(ex2, (1, 1, 1))

    def test_ex3(self, ex3):
        assert tau_Q(ex3, (1, 1, 1, 1)) == F(4, 3)

    def test_program_agrees_with_facets(self, ex2, ex3):
        for a, w in [(ex2, (1, 2, 3)), (ex2, (5, 5, 1)), (ex3, (1, 2, 0, 4)), (ex3, (3, 3, 3, 3))]:
            assert tau_Q_program(a, w) == tau_Q(a, w)

    def test_degenerate_point_is_zero(self):
        assert tau_Q(MonomialIdeal.of([(1, 1)]), (3, 0)) == 0


class TestNu:
    def test_ex2(self, ex2, maximal3):
        assert nu(ex2, maximal3, 5) == 3

    def test_q_one(self, ex2, maximal3):
        assert nu(ex2, maximal3, 1) == 0

    def test_ex3(self, ex3):
        assert nu(ex3, MonomialIdeal.maximal(4), 4) == 4

    def test_closed_form_ex2(self, ex2, maximal3):
        for q in range(1, 20):
            assert nu(ex2, maximal3, q) == 3 * (q - 1) // 4

    def test_radical_containment(self):
        with pytest.raises(RadicalContainmentError):
            nu(MonomialIdeal.of([(1, 0)]), MonomialIdeal.of([(0, 1)]), 3)

    def test_dimension_mismatch(self, ex2):
        with pytest.raises(DimensionMismatchError):
            nu(ex2, MonomialIdeal.maximal(2), 3)

    def test_nonmaximal_J(self, ex1_n3):
        # J = (X1^2, X2X3) splits into two components
        J = MonomialIdeal.of([(2, 0, 0), (0, 1, 1)])
        from monobs.core.ideal import nu_bruteforce
        for q in (1, 2, 3, 5):
            assert nu(ex1_n3, J, q) == nu_bruteforce(ex1_n3, J, q)


class TestThresholds:
    def test_f_threshold(self, ex2, ex3, maximal3):
        assert f_threshold(ex2, maximal3) == F(3, 4)
        assert f_threshold(ex3, MonomialIdeal.maximal(4)) == F(4, 3)

    def test_f_threshold_of_itself(self):
        a = MonomialIdeal.of([(2,)])
        assert f_threshold(a, a) == 1

    def test_lct(self, ex2, ex3):
        assert lct(ex2) == F(3, 4)
        assert lct(ex3) == F(4, 3)
        assert lct(MonomialIdeal.of([(1,)])) == 1

    def test_jumping_number(self, ex2):
        assert jumping_number(ex2, (1, 1, 1)) == F(3, 4)
        assert jumping_number(ex2, (4, 4, 4)) == 3
        assert jumping_number(ex2, (5, 5, 1)) == 1

    def test_jumping_number_needs_positive_b(self, ex2):
        with pytest.raises(MonobsError):
            jumping_number(ex2, (0, 1, 1))

    def test_jumping_numbers(self, x_squared, ex2):
        assert jumping_numbers(x_squared, 1) == [F(1, 2), F(1)]
        found = jumping_numbers(ex2, 1)
        assert found[0] == F(3, 4)
        assert F(1) in found
        assert all(x <= 1 for x in found)
        assert jumping_numbers(ex2, 0) == []

    def test_multiplier_ideal_membership(self, ex2):
        assert not multiplier_ideal_membership(ex2, F(3, 4), (0, 0, 0))
        assert multiplier_ideal_membership(ex2, F(1, 2), (0, 0, 0))
        assert multiplier_ideal_membership(ex2, F(1, 100), (0, 0, 0))
        assert multiplier_ideal_membership(ex2, F(3, 4), (1, 0, 0))

    def test_membership_needs_positive_exponent(self, ex2):
        with pytest.raises(MonobsError):
            multiplier_ideal_membership(ex2, 0, (0, 0, 0))


class TestQuasiLinearLaw:
    def test_ex2(self, ex2, maximal3):
        law = quasi_linear_law(ex2, maximal3)
        assert law.modulus == 12
        assert law.slope == F(3, 4)
        for j, gamma in law.intercepts.items():
            if 3 * (j - 1) % 4 == 0:
                assert gamma == F(-3, 4)
            elif 3 * (j - 1) % 4 == 2:
                assert gamma == F(-5, 4)
        assert (law.modulus * law.slope).denominator == 1

    def test_ex1(self, ex1_n3):
        law = quasi_linear_law(ex1_n3, MonomialIdeal.maximal(3))
        assert law.modulus == 2
        assert law.slope == F(3, 2)
        assert law.intercepts == {0: F(-2), 1: F(-3, 2)}

    def test_predictions_match_samples(self, ex1_n3):
        law = quasi_linear_law(ex1_n3, MonomialIdeal.maximal(3))
        for samples in law.trace.values():
            for q, value in samples:
                if q >= law.q_min:
                    assert law.predict(q) == value

    def test_residue_zero_starts_at_modulus(self, ex1_n3):
        law = quasi_linear_law(ex1_n3, MonomialIdeal.maximal(3))
        assert law.trace[0][0][0] == law.modulus == 2
        assert law.trace[1][0][0] == 1

    def test_unit_residue_intercepts_are_roots(self, ex1_n3):
        law = quasi_linear_law(ex1_n3, MonomialIdeal.maximal(3))
        roots = roots_charp(ex1_n3).roots
        units = [j for j in law.intercepts if math.gcd(j, law.modulus) == 1]
        assert units
        for j in units:
            assert law.intercepts[j] in roots

    def test_budget(self, ex2, maximal3):
        with pytest.raises(BudgetExceededError) as info:
            quasi_linear_law(ex2, maximal3, stabilization_runs=3, budget=2)
        assert len(info.value.trace) == 2


class TestPeriodicity:
    def test_detect_period(self):
        assert detect_period([3, 3, 3, 3]) == (0, 1)
        assert detect_period([3, 1, 3, 1, 3, 1]) == (0, 2)
        assert detect_period([7, 3, 1, 3, 1, 3, 1]) == (1, 2)
        assert detect_period([1, 2, 3, 4]) is None

    def test_tail_must_repeat(self):
        assert detect_period([5, 9, 2, 7, 4, 4]) is None
        assert detect_period([5, 9, 2, 4, 4, 4]) == (3, 1)
        assert detect_period([5, 9, 2, 7, 4, 4], runs=2) == (4, 1)

    def test_ex2_p5(self, ex2, maximal3):
        report = nu_periodicity(ex2, maximal3, 5, 6)
        assert report.differences == [3] * 6
        assert report.period == 1

    def test_ex2_p3(self, ex2, maximal3):
        report = nu_periodicity(ex2, maximal3, 3, 8)
        assert report.differences == [3, 1] * 4
        assert (report.preperiod, report.period) == (0, 2)

    def test_variable(self):
        x = MonomialIdeal.of([(1,)])
        report = nu_periodicity(x, x, 7, 4)
        assert report.differences == [6] * 4
        assert report.period == 1

    def test_composite_rejected(self, ex2, maximal3):
        with pytest.raises(MonobsError):
            nu_periodicity(ex2, maximal3, 4)
