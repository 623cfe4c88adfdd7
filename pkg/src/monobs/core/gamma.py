#!/usr/bin/env python3
"""
Independent root oracle from affine components of the characteristic variety.

A component is fixed by subsets A of generators and B of variables with
integers alpha_j >= 0 (j in A) and beta_i <= -1 (i in B):
Gamma = {u in Q^r : u_j = alpha_j (j in A), l_i(u) = beta_i (i in B)}.
When sum(u) is constant on a nonempty Gamma and no integer c with
c_j >= -alpha_j (j in A), l_i(c) <= -beta_i - 1 (i in B) has sum(c) > 0,
that constant is a root of the Bernstein-Sato polynomial.

The enumeration walks (A, B) pairs by size. A tuple is written as an
increment vector x over the rows of the pair (A first, then B) with
alpha_j = x_k and beta_i = -1 - x_k. Passing tuples of one pair form a
down-set. A passing tuple is redundant when dropping some row still leaves
a passing tuple: the smaller pair then has a larger nonempty Gamma with the
same constant sum, so the value is already produced one level lower. Only
non-redundant tuples are visited; they are the passing tuples above the
failing frontiers of every sub-pair.
"""

import itertools
import logging
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import ppl
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..config.settings import JOBS
from .errors import BranchLimitError, InconclusiveError, MonobsError
from .ideal import MonomialIdeal
from .optim import Constraint, LinearProgram, ilp_max, lp_max, recession_ray

logger = logging.getLogger(__name__)

State = Tuple[int, ...]
Violator = Optional[Tuple[int, ...]]
# minimal failing states of a pair, each with an integer violator when one is known
Frontier = Dict[State, Violator]


@dataclass(frozen=True)
class GammaComponent:
    A: Tuple[int, ...]
    B: Tuple[int, ...]
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]
    value: Fraction


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


@lru_cache(maxsize=None)
def _linear_data(a: MonomialIdeal, A: Tuple[int, ...], B: Tuple[int, ...]):
    """
    For the constraint rows (e_j for j in A, l_i for i in B) return
    (coefficients y with y^T M = (1,...,1) or None, left-nullspace basis of M).
    """
    matrix = a.matrix()
    r = a.ngens
    rows = [[int(k == j) for k in range(r)] for j in A] + [list(matrix[i]) for i in B]
    m = len(rows)
    if not m:
        return None, ()
    # [M^T | 1] in reduced row echelon form
    augmented = DomainMatrix(
        [[QQ(rows[t][k]) for t in range(m)] + [QQ(1)] for k in range(r)], (r, m + 1), QQ
    )
    reduced, pivots = augmented.rref()
    R = reduced.to_Matrix()
    free = [f for f in range(m) if f not in pivots]

    left_null = []
    for f in free:
        z = [Fraction(0)] * m
        z[f] = Fraction(1)
        for row, p in enumerate(pivots):
            z[p] = -_to_fraction(R[row, f])
        left_null.append(tuple(z))

    if m in pivots:
        return None, tuple(left_null)
    y = [Fraction(0)] * m
    for row, p in enumerate(pivots):
        y[p] = _to_fraction(R[row, m])
    return tuple(y), tuple(left_null)


def gamma_value(a: MonomialIdeal, A: Sequence[int], B: Sequence[int],
                alpha: Sequence[int], beta: Sequence[int]) -> Optional[Fraction]:
    """
    The constant value of sum(u) on Gamma.

    Returns:
        None when Gamma is empty or sum(u) is not constant on it
    """
    A, B = tuple(A), tuple(B)
    if len(alpha) != len(A) or len(beta) != len(B):
        raise MonobsError("alpha and beta must align with A and B")
    representation, left_null = _linear_data(a, A, B)
    if representation is None:
        return None
    rhs = [Fraction(x) for x in alpha] + [Fraction(x) for x in beta]
    if any(sum(z_k * v for z_k, v in zip(z, rhs)) != 0 for z in left_null):
        return None
    return sum((y * v for y, v in zip(representation, rhs)), Fraction(0))


def _unit(r: int, j: int) -> Tuple[int, ...]:
    return tuple(int(k == j) for k in range(r))


def _region(a: MonomialIdeal, A, B, alpha, beta) -> List[Constraint]:
    matrix = a.matrix()
    r = a.ngens
    constraints = [Constraint(_unit(r, j), ">=", -x) for j, x in zip(A, alpha)]
    constraints += [Constraint(tuple(matrix[i]), "<=", -x - 1) for i, x in zip(B, beta)]
    return constraints


def _satisfies(a: MonomialIdeal, A, B, alpha, beta, c: Sequence[int]) -> bool:
    """c is an integer point of the region with sum(c) >= 1."""
    if sum(c) < 1:
        return False
    if any(c[j] < -x for j, x in zip(A, alpha)):
        return False
    return all(
        sum(g[i] * v for g, v in zip(a.generators, c)) <= -x - 1 for i, x in zip(B, beta)
    )


@lru_cache(maxsize=None)
def _escape_ray(a: MonomialIdeal, A: Tuple[int, ...], B: Tuple[int, ...]) -> Violator:
    """An integer ray of {c_j >= 0 (j in A), l_i(c) <= 0 (i in B)} with positive sum."""
    r = a.ngens
    cone = _region(a, A, B, (0,) * len(A), (-1,) * len(B))
    return recession_ray(cone, (1,) * r)


def _search_box(a: MonomialIdeal, A, B, alpha, beta) -> Optional[List[Constraint]]:
    """
    A coordinate box holding an integer violator whenever one exists.

    The violating polyhedron is converted to generators; any integer
    violator shifts by integer multiples of its rays and lines into the
    hull of its points plus the unit parallelepiped of those directions.

    Returns:
        None when the violating polyhedron is empty
    """
    matrix = a.matrix()
    r = a.ngens
    poly = ppl.C_Polyhedron(r)
    for j, x in zip(A, alpha):
        poly.add_constraint(ppl.Constraint(ppl.Linear_Expression(list(_unit(r, j)), x) >= 0))
    for i, x in zip(B, beta):
        row = [-v for v in matrix[i]]
        poly.add_constraint(ppl.Constraint(ppl.Linear_Expression(row, -x - 1) >= 0))
    poly.add_constraint(ppl.Constraint(ppl.Linear_Expression([1] * r, -1) >= 0))
    if poly.is_empty():
        return None

    points, directions = [], []
    for gen in poly.minimized_generators():
        coefficients = [int(v) for v in gen.coefficients()]
        if gen.is_point():
            divisor = int(gen.divisor())
            points.append([Fraction(v, divisor) for v in coefficients])
        elif gen.is_ray():
            directions.append([(min(v, 0), max(v, 0)) for v in coefficients])
        elif gen.is_line():
            directions.append([(-abs(v), abs(v)) for v in coefficients])

    box = []
    for k in range(r):
        lower = min(p[k] for p in points) + sum(d[k][0] for d in directions)
        upper = max(p[k] for p in points) + sum(d[k][1] for d in directions)
        unit = _unit(r, k)
        box.append(Constraint(unit, ">=", math.ceil(lower)))
        box.append(Constraint(unit, "<=", math.floor(upper)))
    return box


def _violator(a: MonomialIdeal, A, B, alpha, beta,
              hints: Iterable[Tuple[int, ...]] = (), bounded: bool = False) -> Violator:
    """
    An integer c in the region with sum(c) >= 1, or None if there is none.

    Args:
        hints: Candidates tried first
        bounded: The region is known to have no ray of positive sum

    Raises:
        InconclusiveError: branch-and-bound hit its node cap
    """
    r = a.ngens
    for c in hints:
        if _satisfies(a, A, B, alpha, beta, c):
            return c
    for j, g in enumerate(a.generators):
        if all(g[i] <= -x - 1 for i, x in zip(B, beta)):
            return _unit(r, j)
    if not bounded:
        # 0 lies in the region, so a ray of positive sum is itself a violator
        ray = _escape_ray(a, tuple(A), tuple(B))
        if ray is not None:
            return ray

    constraints = _region(a, A, B, alpha, beta)
    ones = (1,) * r
    relaxed = lp_max(LinearProgram(ones, tuple(constraints)))
    if relaxed.value < 1:
        return None
    if all(v.denominator == 1 for v in relaxed.witness):
        return tuple(int(v) for v in relaxed.witness)

    box = _search_box(a, A, B, alpha, beta)
    if box is None:
        return None
    violating = tuple(constraints) + (Constraint(ones, ">=", 1),) + tuple(box)
    try:
        best = ilp_max(LinearProgram(ones, violating))
    except BranchLimitError as e:
        raise InconclusiveError(
            f"no decision for A={tuple(A)}, B={tuple(B)}: {e}",
            (tuple(A), tuple(B), tuple(alpha), tuple(beta)),
        ) from e
    if best.status != "optimal":
        return None
    return tuple(int(v) for v in best.witness)


def condition_check(a: MonomialIdeal, A: Sequence[int], B: Sequence[int],
                    alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """
    True iff every integer c with c_j >= -alpha_j (j in A) and
    l_i(c) <= -beta_i - 1 (i in B) has sum(c) <= 0.

    Raises:
        InconclusiveError: the integer search over the certified box hit
            the branch-and-bound node cap
    """
    if any(x < 0 for x in alpha) or any(x > -1 for x in beta):
        raise MonobsError("condition_check needs alpha_j >= 0 and beta_i <= -1")
    return _violator(a, tuple(A), tuple(B), tuple(alpha), tuple(beta)) is None


def default_bounds(a: MonomialIdeal) -> Tuple[int, int]:
    """(alpha_max, beta_min) = (n * max exponent, -(n * max exponent) - n)."""
    reach = a.nvars * a.max_exponent
    return reach, -reach - a.nvars


def _split(A, x: State) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    return x[:len(A)], tuple(-1 - t for t in x[len(A):])


def _minimal(states: Iterable[State]) -> List[State]:
    kept: List[State] = []
    for s in sorted(set(states), key=lambda s: (sum(s), s)):
        if not any(all(u <= v for u, v in zip(t, s)) for t in kept):
            kept.append(s)
    return kept


def _sub_pair(A, B, k: int):
    if k < len(A):
        return A[:k] + A[k + 1:], B
    k -= len(A)
    return A, B[:k] + B[k + 1:]


def _scan_pair(task) -> Tuple[List[GammaComponent], Frontier, bool]:
    """
    Non-redundant passing components of one (A, B), its failing frontier, and
    whether its region is known to have no ray of positive sum.

    subs holds (frontier, bounded) of each pair with one row dropped, in row
    order. Failing tuples of the pair fail on every sub-pair, so the walk
    starts from the least tuples above all sub-pair frontiers; every minimal
    failing tuple is such a start or a neighbor of a visited passing tuple.
    """
    a, A, B, caps, subs = task
    least = (0,) * len(caps)

    for j, g in enumerate(a.generators):
        if all(g[i] == 0 for i in B):
            return [], {least: _unit(a.ngens, j)}, False

    bounded = any(b for _, b in subs)
    inside = set(A)
    if any(all(j in inside for j, g in enumerate(a.generators) if g[i] > 0) for i in B):
        # l_i(u) >= 0 on Gamma while beta_i < 0: no tuple has a component
        return [], {least: None}, bounded

    representation, _ = _linear_data(a, A, B)
    if representation is None:
        # sum(c) is unbounded along the kernel of the rows
        return [], {least: None}, False
    if not bounded:
        ray = _escape_ray(a, A, B)
        if ray is not None:
            return [], {least: ray}, False
        bounded = True

    seeds = [least]
    hints: List[Tuple[int, ...]] = []
    for k, (frontier, _) in enumerate(subs):
        lifted = [m[:k] + (0,) + m[k:] for m in frontier]
        seeds = _minimal(tuple(map(max, s, t)) for s in seeds for t in lifted)
        if not seeds:
            return [], {}, bounded
        hints.extend(c for c in frontier.values() if c is not None and c not in hints)

    found = []
    failing: Dict[State, Tuple[int, ...]] = {}
    queue = deque(seeds)
    seen = set(seeds)
    while queue:
        x = queue.popleft()
        alpha, beta = _split(A, x)
        c = _violator(a, A, B, alpha, beta, hints, bounded=True)
        if c is not None:
            failing[x] = c
            if c not in hints:
                hints.insert(0, c)
            continue
        value = gamma_value(a, A, B, alpha, beta)
        if value is not None:
            found.append(GammaComponent(A, B, alpha, beta, value))
        for k in range(len(x)):
            if x[k] < caps[k]:
                y = x[:k] + (x[k] + 1,) + x[k + 1:]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    logger.debug(f"A={A}, B={B}: {len(seen)} tuples, {len(found)} components")
    return found, {m: failing[m] for m in _minimal(failing)}, bounded


def _pairs_of_size(r: int, n: int, level: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    return [
        (A, B)
        for k in range(max(0, level - n), min(r, level) + 1)
        for A in itertools.combinations(range(r), k)
        for B in itertools.combinations(range(n), level - k)
    ]


def gamma_components(a: MonomialIdeal, alpha_max: Optional[int] = None,
                     beta_min: Optional[int] = None, jobs: int = JOBS) -> List[GammaComponent]:
    """
    Every non-redundant component (A, B, alpha, beta) within the bounds that passes condition_check.

    A passing tuple that still passes with one row of (A, B) dropped is
    skipped; its value comes from the smaller pair, so the set of values
    equals that of all passing components within the bounds.

    Args:
        a: Proper monomial ideal
        alpha_max: Largest alpha_j enumerated (default n * max exponent)
        beta_min: Smallest beta_i enumerated (default -(n * max exponent) - n)
        jobs: Worker processes over the (A, B) pairs of one size
    """
    default_alpha, default_beta = default_bounds(a)
    alpha_max = default_alpha if alpha_max is None else alpha_max
    beta_min = default_beta if beta_min is None else beta_min
    if alpha_max < 0 or beta_min > -1:
        raise MonobsError("need alpha_max >= 0 and beta_min <= -1")

    r, n = a.ngens, a.nvars
    logger.info(f"Enumerating {2 ** (r + n) - 1} (A, B) pairs with alpha <= {alpha_max}, beta >= {beta_min}")
    # every c is admissible for the empty pair
    previous: Dict[tuple, Tuple[Frontier, bool]] = {((), ()): ({(): _unit(r, 0)}, False)}
    components: List[GammaComponent] = []
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for level in range(1, r + n + 1):
            pairs = _pairs_of_size(r, n, level)
            tasks = [
                (a, A, B,
                 (alpha_max,) * len(A) + (-1 - beta_min,) * len(B),
                 [previous[_sub_pair(A, B, k)] for k in range(level)])
                for A, B in pairs
            ]
            results = list(pool.map(_scan_pair, tasks)) if pool else [_scan_pair(t) for t in tasks]
            previous = {}
            for pair, (found, frontier, bounded) in zip(pairs, results):
                components.extend(found)
                previous[pair] = (frontier, bounded)
            logger.debug(f"Level {level}: {len(pairs)} pairs, {len(components)} components so far")
    finally:
        if pool is not None:
            pool.shutdown()
    components.sort(key=lambda c: (len(c.A) + len(c.B), c.A, c.B, c.alpha, c.beta))
    return components


def roots_gamma(a: MonomialIdeal, alpha_max: Optional[int] = None,
                beta_min: Optional[int] = None, jobs: int = JOBS) -> List[Fraction]:
    """Distinct values of the passing components, largest first."""
    values = sorted({c.value for c in gamma_components(a, alpha_max, beta_min, jobs)}, reverse=True)
    logger.info(f"Component values {[str(v) for v in values]}")
    return values
