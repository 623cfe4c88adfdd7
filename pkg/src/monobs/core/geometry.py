#!/usr/bin/env python3
"""
Exact geometry of Newton polyhedra P = conv(a_1..a_r) + R_+^n.

Facets come from a double-description conversion of the cone of valid
inequalities; the fan over the faces of P is read off the face lattice.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import ppl
from sympy import Matrix, ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import DegeneratePointError, MonobsError
from .ideal import MonomialIdeal
from .optim import Constraint, LinearProgram, lp_max

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Facet:
    """
    A facet of P.

    For a non-coordinate facet the functional is normalized so that the facet
    lies in {L = 1}. A coordinate facet {x_i = 0} stores the functional e_i.
    """

    functional: Tuple[Fraction, ...]
    modulus: int
    in_coordinate_hyperplane: bool

    def evaluate(self, w: Sequence) -> Fraction:
        return sum((c * x for c, x in zip(self.functional, w)), Fraction(0))


def facet_modulus(f: Facet) -> int:
    """Least positive m with m * L_Q integral."""
    return math.lcm(*(Fraction(c).denominator for c in f.functional))


@dataclass(frozen=True)
class NewtonPolyhedron:
    """V- and H-representation of a Newton polyhedron with its face lattice."""

    nvars: int
    generators: Tuple[Tuple[int, ...], ...]
    facets: Tuple[Facet, ...]
    faces: Tuple[FrozenSet[int], ...]

    @property
    def noncoordinate(self) -> List[int]:
        return [k for k, f in enumerate(self.facets) if not f.in_coordinate_hyperplane]

    def tau_Q(self, w: Sequence) -> Fraction:
        """max{lambda : w in lambda * P}, as the least non-coordinate facet value."""
        return max(Fraction(0), min(self.facets[k].evaluate(w) for k in self.noncoordinate))

    def tight_set(self, w: Sequence) -> FrozenSet[int]:
        """Facets tight at w / tau_Q(w): the minimizing functionals plus coordinate facets with w_i = 0."""
        values = {k: self.facets[k].evaluate(w) for k in self.noncoordinate}
        low = min(values.values())
        tight = {k for k, v in values.items() if v == low}
        for k, f in enumerate(self.facets):
            if f.in_coordinate_hyperplane and f.evaluate(w) == 0:
                tight.add(k)
        return frozenset(tight)

    def contains_point(self, u: Sequence) -> bool:
        """H-form membership: u >= 0 and L_Q(u) >= 1 for every non-coordinate facet."""
        if any(x < 0 for x in u):
            return False
        return all(self.facets[k].evaluate(u) >= 1 for k in self.noncoordinate)


@dataclass(frozen=True)
class FanCone:
    """The closed cone over the face of P whose tight facets are `face`."""

    index: int
    face: FrozenSet[int]
    rays: Tuple[Tuple[int, ...], ...]
    dim: int
    in_coordinate_hyperplane: bool
    maximal: bool
    polyhedron: Optional[NewtonPolyhedron] = field(default=None, compare=False, repr=False)

    @property
    def functional(self) -> Optional[Facet]:
        """L_sigma for a maximal cone."""
        if not self.maximal:
            return None
        return self.polyhedron.facets[next(iter(self.face))]

    def contains(self, w: Sequence) -> bool:
        """Closed-cone membership."""
        P = self.polyhedron
        if any(x < 0 for x in w):
            return False
        if not self.face:
            return all(x == 0 for x in w)
        values = {k: P.facets[k].evaluate(w) for k in P.noncoordinate}
        low = min(values.values())
        for k in self.face:
            if P.facets[k].in_coordinate_hyperplane:
                if P.facets[k].evaluate(w) != 0:
                    return False
            elif values[k] != low:
                return False
        return True

    def relint_contains(self, w: Sequence) -> bool:
        P = self.polyhedron
        if any(x < 0 for x in w) or P.tau_Q(w) == 0:
            return False
        return P.tight_set(w) == self.face


def _primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _extreme_rays(rows: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Extreme rays of the cone {y : G y >= 0}; a lineality direction contributes both signs."""
    cone = ppl.C_Polyhedron(len(rows[0]))
    for row in rows:
        ineq = ppl.Linear_Expression(list(row), 0)
        cone.add_constraint(ppl.Constraint(ineq >= 0))

    rays = set()
    for gen in cone.minimized_generators():
        if gen.is_ray():
            rays.add(_primitive([int(c) for c in gen.coefficients()]))
        elif gen.is_line():
            line = _primitive([int(c) for c in gen.coefficients()])
            rays.add(line)
            rays.add(tuple(-c for c in line))
    return sorted(rays)


@lru_cache(maxsize=None)
def newton_polyhedron(a: MonomialIdeal) -> NewtonPolyhedron:
    """
    Compute the H-representation and face lattice of P_a.

    Args:
        a: A proper monomial ideal

    Returns:
        NewtonPolyhedron with non-coordinate facets first
    """
    if not a.is_proper:
        raise MonobsError("the Newton polyhedron needs a proper ideal")
    n = a.nvars
    # valid inequalities h.x >= h0 as rays (h, h0) of {h >= 0, h.a_j >= h0}
    rows = [tuple(int(i == k) for i in range(n)) + (0,) for k in range(n)]
    rows += [tuple(g) + (-1,) for g in a.generators]

    noncoord, coord = [], []
    for ray in _extreme_rays(rows):
        h, h0 = ray[:n], ray[n]
        if h0 > 0:
            functional = tuple(Fraction(x, h0) for x in h)
            noncoord.append(Facet(functional, math.lcm(*(c.denominator for c in functional)), False))
        elif h0 == 0:
            i = next(k for k, x in enumerate(h) if x != 0)
            coord.append((i, Facet(tuple(Fraction(int(k == i)) for k in range(n)), 1, True)))
    noncoord.sort(key=lambda f: f.functional, reverse=True)
    coord.sort(key=lambda t: t[0])
    facets = tuple(noncoord) + tuple(f for _, f in coord)

    faces = _face_lattice(n, a.generators, facets)
    logger.info(
        f"Newton polyhedron: {len(noncoord)} non-coordinate facets, "
        f"{len(coord)} coordinate facets, {len(faces)} faces"
    )
    return NewtonPolyhedron(n, a.generators, facets, faces)


def _point_tight(facets: Sequence[Facet], g: Sequence[int]) -> FrozenSet[int]:
    return frozenset(
        k for k, f in enumerate(facets)
        if f.evaluate(g) == (0 if f.in_coordinate_hyperplane else 1)
    )


def _ray_tight(facets: Sequence[Facet], i: int) -> FrozenSet[int]:
    return frozenset(k for k, f in enumerate(facets) if f.functional[i] == 0)


def _face_parts(n, generators, facets, face):
    points = [g for g in generators if face <= _point_tight(facets, g)]
    units = [i for i in range(n) if face <= _ray_tight(facets, i)]
    return points, units


def _face_lattice(n: int, generators, facets: Sequence[Facet]) -> Tuple[FrozenSet[int], ...]:
    """All proper nonempty faces as closed sets of tight facet indices."""
    point_sets = {g: _point_tight(facets, g) for g in generators}
    ray_sets = {i: _ray_tight(facets, i) for i in range(n)}

    def closure(s: FrozenSet[int]) -> Optional[FrozenSet[int]]:
        pts = [t for t in point_sets.values() if s <= t]
        if not pts:
            return None
        closed = frozenset.intersection(*pts)
        for t in ray_sets.values():
            if s <= t:
                closed &= t
        return closed

    seen = set()
    frontier = [c for c in (closure(frozenset([k])) for k in range(len(facets))) if c is not None]
    while frontier:
        face = frontier.pop()
        if face in seen:
            continue
        seen.add(face)
        for k in range(len(facets)):
            if k not in face:
                c = closure(face | {k})
                if c is not None and c not in seen:
                    frontier.append(c)
    return tuple(sorted(seen, key=lambda s: (len(s), sorted(s))))


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return Matrix(vectors).rank()


@lru_cache(maxsize=None)
def fan_cones(P: NewtonPolyhedron) -> Tuple[FanCone, ...]:
    """One cone per face of P, plus the zero cone; index 0 is the zero cone."""
    cones = [FanCone(0, frozenset(), (), 0, True, False, P)]
    for face in P.faces:
        points, units = _face_parts(P.nvars, P.generators, P.facets, face)
        rays = tuple(points) + tuple(tuple(int(k == i) for k in range(P.nvars)) for i in units)
        dim = _rank(rays)
        in_coord = any(all(r[i] == 0 for r in rays) for i in range(P.nvars))
        cones.append(FanCone(len(cones), face, rays, dim, in_coord, dim == P.nvars, P))
    logger.debug(f"Fan has {len(cones)} cones, {sum(c.maximal for c in cones)} maximal")
    return tuple(cones)


@lru_cache(maxsize=None)
def integrality_modulus(a: MonomialIdeal) -> int:
    """lcm of |det| over all nonzero square minors of the exponent matrix."""
    matrix = a.matrix()
    n, r = a.nvars, a.ngens
    result = 1
    for k in range(1, min(n, r) + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(r), k):
                sub = [[ZZ(matrix[i][j]) for j in cols] for i in rows]
                det = abs(int(DomainMatrix(sub, (k, k), ZZ).det()))
                if det:
                    result = math.lcm(result, det)
    logger.debug(f"Integrality modulus {result}")
    return result


def locate_cone(P: NewtonPolyhedron, w: Sequence) -> FanCone:
    """The cone of the fan whose relative interior contains w."""
    if P.tau_Q(w) == 0:
        raise DegeneratePointError(f"tau_Q vanishes at {tuple(str(x) for x in w)}")
    tight = P.tight_set(w)
    for cone in fan_cones(P):
        if cone.face == tight:
            return cone
    raise MonobsError(f"no face of P has tight set {sorted(tight)}")


@lru_cache(maxsize=None)
def _box_buckets(P: NewtonPolyhedron, N: int, K: int) -> Dict[FrozenSet[int], Dict[Tuple[int, ...], Tuple[int, ...]]]:
    """Classify every b in [1, K*N]^n by the face whose cone has b in its relative interior."""
    buckets: Dict[FrozenSet[int], Dict[Tuple[int, ...], Tuple[int, ...]]] = {}
    for b in itertools.product(range(1, K * N + 1), repeat=P.nvars):
        classes = buckets.setdefault(P.tight_set(b), {})
        c = tuple((x - 1) % N for x in b)
        kept = classes.get(c)
        if kept is None or sum(b) < sum(kept):
            classes[c] = b
    return buckets


def residue_representatives(sigma: FanCone, N: int, K: int) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """
    One lattice point b in relint(sigma), 1 <= b_i <= K*N, per realized class c = (b - 1) mod N.

    Among points of a class the one with least coordinate sum, then
    lexicographically least, is kept.
    """
    if sigma.in_coordinate_hyperplane:
        raise MonobsError("cones inside a coordinate hyperplane have no positive lattice points")
    found = _box_buckets(sigma.polyhedron, N, K).get(sigma.face, {})
    return dict(sorted(found.items()))


def in_convex_hull_plus_orthant(a: MonomialIdeal, u: Sequence) -> bool:
    """LP feasibility of u in conv(a_1..a_r) + R_+^n."""
    matrix = a.matrix()
    constraints = [Constraint(tuple(matrix[i]), "<=", u[i]) for i in range(a.nvars)]
    constraints.append(Constraint(tuple([1] * a.ngens), "==", 1))
    program = LinearProgram(tuple([0] * a.ngens), tuple(constraints), frozenset(range(a.ngens)))
    return lp_max(program).status == "optimal"
