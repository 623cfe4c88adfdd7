#!/usr/bin/env python3
"""
Tests for Newton polyhedra, the fan and lattice sampling.
"""

import itertools
from fractions import Fraction

import pytest

from monobs.core.errors import DegeneratePointError, MonobsError
from monobs.core.geometry import (
    _extreme_rays, facet_modulus, fan_cones, in_convex_hull_plus_orthant, integrality_modulus,
    locate_cone, newton_polyhedron, residue_representatives,
)
from monobs.core.ideal import MonomialIdeal

F = Fraction


def noncoordinate_functionals(a):
    P = newton_polyhedron(a)
    return {P.facets[k].functional for k in P.noncoordinate}


class TestExtremeRays:
    def test_orthant(self):
        assert _extreme_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_rays_are_primitive(self):
        # {y : y_1 >= 0, 2y_2 - y_1 >= 0}
        assert _extreme_rays([(1, 0), (-1, 2)]) == [(0, 1), (2, 1)]

    def test_line_gives_both_signs(self):
        assert _extreme_rays([(1, 0)]) == [(0, -1), (0, 1), (1, 0)]


class TestNewtonPolyhedron:
    def test_ex2_facets(self, ex2):
        assert noncoordinate_functionals(ex2) == {
            (F(1), F(0), F(0)),
            (F(0), F(1), F(0)),
            (F(0), F(0), F(1)),
            (F(1, 4), F(1, 4), F(1, 4)),
        }

    def test_single_variable(self):
        P = newton_polyhedron(MonomialIdeal.of([(1,)]))
        assert [P.facets[k].functional for k in P.noncoordinate] == [(F(1),)]

    def test_ex3_facets(self, ex3):
        expected = {tuple(F(1, 3) for _ in range(4))}
        for i in range(4):
            expected.add(tuple(F(0) if k == i else F(1, 2) for k in range(4)))
        # x_i + x_j >= 1 supports the generators missing X_i or X_j
        for i, j in itertools.combinations(range(4), 2):
            expected.add(tuple(F(int(k in (i, j))) for k in range(4)))
        assert noncoordinate_functionals(ex3) == expected

    def test_coordinate_facet_flagged(self):
        # (X^2, Y) touches the hyperplane x = 0 along the ray from (0, 1)
        P = newton_polyhedron(MonomialIdeal.of([(2, 0), (0, 1)]))
        coordinate = [f for f in P.facets if f.in_coordinate_hyperplane]
        assert coordinate
        assert all(f.modulus == 1 for f in coordinate)

    def test_minimum_over_generators_is_one(self, ex2, ex3, ex1_n3):
        for a in (ex2, ex3, ex1_n3):
            P = newton_polyhedron(a)
            for k in P.noncoordinate:
                assert min(P.facets[k].evaluate(g) for g in a.generators) == 1

    def test_unit_ideal_rejected(self):
        with pytest.raises(MonobsError):
            newton_polyhedron(MonomialIdeal.of([(0, 0)]))


class TestFacetModulus:
    def test_moduli(self, ex2, ex3):
        P = newton_polyhedron(ex2)
        assert sorted(facet_modulus(P.facets[k]) for k in P.noncoordinate) == [1, 1, 1, 4]
        P = newton_polyhedron(ex3)
        assert sorted(facet_modulus(P.facets[k]) for k in P.noncoordinate) == [1] * 6 + [2] * 4 + [3]

    def test_stored_modulus_matches(self, ex3):
        P = newton_polyhedron(ex3)
        assert all(f.modulus == facet_modulus(f) for f in P.facets)


class TestFan:
    def test_ex2_maximal_cones(self, ex2):
        cones = fan_cones(newton_polyhedron(ex2))
        assert sum(c.maximal for c in cones) == 4
        assert any(not c.maximal and c.dim > 0 for c in cones)

    def test_ex3_maximal_cones(self, ex3):
        assert sum(c.maximal for c in fan_cones(newton_polyhedron(ex3))) == 11

    def test_single_variable(self):
        cones = fan_cones(newton_polyhedron(MonomialIdeal.of([(1,)])))
        assert [c.dim for c in cones] == [0, 1]
        assert cones[0].contains((0,)) and not cones[0].contains((1,))
        assert cones[1].maximal

    def test_maximal_cones_cover_box(self, ex2):
        cones = [c for c in fan_cones(newton_polyhedron(ex2)) if c.maximal]
        for w in itertools.product(range(6), repeat=3):
            assert any(c.contains(w) for c in cones)

    def test_tau_q_is_linear_on_maximal_cones(self, ex3):
        P = newton_polyhedron(ex3)
        for cone in fan_cones(P):
            if not cone.maximal:
                continue
            for w in itertools.product(range(1, 5), repeat=4):
                if cone.contains(w):
                    assert P.tau_Q(w) == cone.functional.evaluate(w)

    def test_integer_ray_points(self, ex2):
        for cone in fan_cones(newton_polyhedron(ex2)):
            for ray in cone.rays:
                assert cone.contains(ray)


class TestIntegralityModulus:
    def test_ex2(self, ex2):
        assert integrality_modulus(ex2) == 12

    def test_identity(self):
        assert integrality_modulus(MonomialIdeal.maximal(3)) == 1

    def test_ex3(self, ex3):
        assert integrality_modulus(ex3) == 6

    def test_exact_on_multiples(self, ex2):
        from monobs.core.thresholds import tau
        P = newton_polyhedron(ex2)
        for w in [(1, 1, 1), (1, 2, 3), (2, 1, 1), (3, 1, 2)]:
            scaled = [12 * x for x in w]
            assert tau(ex2, scaled) == P.tau_Q(scaled)


class TestLocateCone:
    def test_diagonal(self, ex2):
        P = newton_polyhedron(ex2)
        cone = locate_cone(P, (1, 1, 1))
        assert cone.maximal
        assert cone.functional.functional == (F(1, 4),) * 3

    def test_coordinate_facet(self, ex2):
        P = newton_polyhedron(ex2)
        cone = locate_cone(P, (5, 5, 1))
        assert cone.maximal
        assert cone.functional.functional == (F(0), F(0), F(1))

    def test_tie(self, ex2):
        cone = locate_cone(newton_polyhedron(ex2), (2, 1, 1))
        assert not cone.maximal
        assert cone.relint_contains((2, 1, 1))

    def test_degenerate(self):
        P = newton_polyhedron(MonomialIdeal.of([(1, 1)]))
        with pytest.raises(DegeneratePointError):
            locate_cone(P, (1, 0))


class TestResidueRepresentatives:
    def test_single_variable(self):
        a = MonomialIdeal.of([(1,)])
        cone = fan_cones(newton_polyhedron(a))[1]
        assert residue_representatives(cone, 1, 1) == {(0,): (1,)}

    def test_representatives_are_interior(self, ex2):
        P = newton_polyhedron(ex2)
        diagonal = locate_cone(P, (1, 1, 1))
        reps = residue_representatives(diagonal, 12, 2)
        assert reps
        for c, b in reps.items():
            assert all(x >= 1 for x in b)
            assert tuple((x - 1) % 12 for x in b) == c
            assert diagonal.relint_contains(b)

    def test_maximal_cones_realize_every_class(self, ex2):
        P = newton_polyhedron(ex2)
        for cone in fan_cones(P):
            if cone.maximal:
                assert len(residue_representatives(cone, 4, 4)) == 4 ** 3

    def test_thin_cone_rejected(self):
        P = newton_polyhedron(MonomialIdeal.of([(2, 0), (0, 1)]))
        thin = next(c for c in fan_cones(P) if c.in_coordinate_hyperplane and c.dim > 0)
        with pytest.raises(MonobsError):
            residue_representatives(thin, 2, 2)


class TestHullMembership:
    def test_agrees_with_h_form(self, ex2):
        P = newton_polyhedron(ex2)
        for u in itertools.product(range(5), repeat=3):
            assert P.contains_point(u) == in_convex_hull_plus_orthant(ex2, u)

    def test_fractional_point(self, ex2):
        assert in_convex_hull_plus_orthant(ex2, (F(4, 3), F(4, 3), F(4, 3)))
        assert not in_convex_hull_plus_orthant(ex2, (F(1), F(1), F(1)))
