#!/usr/bin/env python3
"""
Exact rational linear programming and branch-and-bound integer programming.

The LP kernel is a two-phase dense tableau simplex over Fractions with
Bland's rule. Nothing here uses floating point or tolerances.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from ..config.settings import MAX_BRANCH_NODES
from .errors import BranchLimitError, DimensionMismatchError

logger = logging.getLogger(__name__)

RELATIONS = ("<=", ">=", "==")


@dataclass(frozen=True)
class Constraint:
    """coefficients . x  (relation)  rhs"""

    coefficients: Tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum(c * v for c, v in zip(self.coefficients, x))
        if self.relation == "<=":
            return lhs <= self.rhs
        if self.relation == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to constraints; variables in nonneg_vars are >= 0, the rest free."""

    objective: Tuple[Fraction, ...]
    constraints: Tuple[Constraint, ...] = ()
    nonneg_vars: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "nonneg_vars", frozenset(self.nonneg_vars))
        for con in self.constraints:
            if len(con.coefficients) != self.nvars:
                raise DimensionMismatchError(
                    f"constraint has {len(con.coefficients)} coefficients, expected {self.nvars}"
                )

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if any(x[k] < 0 for k in self.nonneg_vars):
            return False
        return all(con.holds(x) for con in self.constraints)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def with_constraints(self, extra: Sequence[Constraint]) -> "LinearProgram":
        return LinearProgram(self.objective, self.constraints + tuple(extra), self.nonneg_vars)


@dataclass(frozen=True)
class OptResult:
    """status is 'optimal', 'unbounded' or 'infeasible'.

    For 'optimal' the witness is an optimal point; for 'unbounded' it is a
    ray along which the objective increases.
    """

    status: str
    value: Optional[Fraction] = None
    witness: Optional[Tuple[Fraction, ...]] = None


class _Tableau:
    """Dense simplex tableau in equality form with nonnegative columns."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj: List[Fraction] = [Fraction(0)] * (ncols + 1)
        self.pivots = 0

    def set_objective(self, costs: Sequence[Fraction]) -> None:
        obj = list(costs) + [Fraction(0)]
        for row, b in zip(self.rows, self.basis):
            cb = costs[b]
            if cb:
                obj = [o - cb * x for o, x in zip(obj, row)]
        self.obj = obj

    def pivot(self, r: int, c: int) -> None:
        pr = self.rows[r]
        piv = pr[c]
        if piv != 1:
            pr = [x / piv for x in pr]
            self.rows[r] = pr
        for i, row in enumerate(self.rows):
            f = row[c]
            if i != r and f:
                self.rows[i] = [x - f * y for x, y in zip(row, pr)]
        f = self.obj[c]
        if f:
            self.obj = [x - f * y for x, y in zip(self.obj, pr)]
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed: Sequence[int]) -> Optional[int]:
        """Bland's rule iterations; returns None at optimum or the entering column of an unbounded ray."""
        while True:
            entering = next((j for j in allowed if self.obj[j] > 0), None)
            if entering is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    @property
    def value(self) -> Fraction:
        return -self.obj[-1]

    def point(self) -> List[Fraction]:
        x = [Fraction(0)] * self.ncols
        for row, b in zip(self.rows, self.basis):
            x[b] = row[-1]
        return x


def lp_max(p: LinearProgram) -> OptResult:
    """
    Solve a linear program exactly.

    Args:
        p: The program; free variables are split as x = x+ - x-

    Returns:
        OptResult with an optimal vertex, an improving ray, or 'infeasible'
    """
    # column layout: one column per nonneg variable, two per free variable
    columns: List[Tuple[int, int]] = []
    for k in range(p.nvars):
        columns.append((k, 1))
        if k not in p.nonneg_vars:
            columns.append((k, -1))
    nstruct = len(columns)

    normalized = []
    for con in p.constraints:
        coeffs = [sign * con.coefficients[k] for k, sign in columns]
        rel, rhs = con.relation, con.rhs
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        normalized.append((coeffs, rel, rhs))

    nslack = sum(1 for _, rel, _ in normalized if rel != "==")
    nart = sum(1 for _, rel, _ in normalized if rel != "<=")
    ncols = nstruct + nslack + nart

    rows, basis, artificial = [], [], []
    s_col, a_col = nstruct, nstruct + nslack
    for coeffs, rel, rhs in normalized:
        row = coeffs + [Fraction(0)] * (nslack + nart) + [rhs]
        if rel == "<=":
            row[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if rel == ">=":
                row[s_col] = Fraction(-1)
                s_col += 1
            row[a_col] = Fraction(1)
            basis.append(a_col)
            artificial.append(a_col)
            a_col += 1
        rows.append(row)

    tab = _Tableau(rows, basis, ncols)

    if artificial:
        tab.set_objective([Fraction(-1) if j in artificial else Fraction(0) for j in range(ncols)])
        tab.run(range(ncols))
        if tab.value < 0:
            logger.debug(f"LP infeasible after phase one ({tab.pivots} pivots)")
            return OptResult("infeasible")
        art = set(artificial)
        for r in range(len(tab.rows) - 1, -1, -1):
            if tab.basis[r] not in art:
                continue
            col = next((j for j in range(nstruct + nslack) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r]
                del tab.basis[r]
            else:
                tab.pivot(r, col)

    allowed = range(nstruct + nslack)
    costs = [sign * p.objective[k] for k, sign in columns] + [Fraction(0)] * (nslack + nart)
    tab.set_objective(costs)
    entering = tab.run(allowed)

    def to_original(x: List[Fraction]) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * p.nvars
        for (k, sign), v in zip(columns, x[:nstruct]):
            out[k] += sign * v
        return tuple(out)

    if entering is not None:
        direction = [Fraction(0)] * ncols
        direction[entering] = Fraction(1)
        for row, b in zip(tab.rows, tab.basis):
            direction[b] = -row[entering]
        logger.debug(f"LP unbounded after {tab.pivots} pivots")
        return OptResult("unbounded", witness=to_original(direction))

    logger.debug(f"LP optimal value {tab.value} after {tab.pivots} pivots")
    return OptResult("optimal", tab.value, to_original(tab.point()))


def _is_integral(x: Sequence[Fraction], integer_vars: Sequence[int]) -> bool:
    return all(x[k].denominator == 1 for k in integer_vars)


def _rounding_incumbent(p: LinearProgram, x: Sequence[Fraction],
                        integer_vars: Sequence[int]) -> Optional[List[Fraction]]:
    """Round integer variables down, then greedily raise improving ones while feasible."""
    y = list(x)
    for k in integer_vars:
        y[k] = Fraction(math.floor(y[k]))
    if not p.is_feasible(y):
        return None
    for k in integer_vars:
        if p.objective[k] <= 0:
            continue
        while True:
            y[k] += 1
            if not p.is_feasible(y):
                y[k] -= 1
                break
    return y


def ilp_max(p: LinearProgram, integer_vars: Optional[Sequence[int]] = None,
            max_nodes: int = MAX_BRANCH_NODES) -> OptResult:
    """
    Maximize over integer points by depth-first branch-and-bound on lp_max.

    Branches on the most fractional variable (lowest index on ties) and
    explores the ceiling branch first.

    Args:
        p: The program
        integer_vars: Variables required to be integral (default: all)
        max_nodes: Node cap; exceeding it raises BranchLimitError

    Returns:
        OptResult with an integral witness
    """
    if integer_vars is None:
        integer_vars = range(p.nvars)
    integer_vars = sorted(integer_vars)
    integral_objective = (
        set(integer_vars) >= {k for k, c in enumerate(p.objective) if c != 0}
        and all(c.denominator == 1 for c in p.objective)
    )

    root = lp_max(p)
    if root.status != "optimal":
        return root

    def bound(value: Fraction) -> Fraction:
        return Fraction(math.floor(value)) if integral_objective else value

    best_x: Optional[List[Fraction]] = None
    best_value: Optional[Fraction] = None
    if _is_integral(root.witness, integer_vars):
        return root
    seed = _rounding_incumbent(p, root.witness, integer_vars)
    if seed is not None:
        best_x, best_value = seed, p.value(seed)
        if best_value >= bound(root.value):
            return OptResult("optimal", best_value, tuple(best_x))

    stack: List[Tuple[Constraint, ...]] = [()]
    nodes = 0
    while stack:
        extra = stack.pop()
        nodes += 1
        if nodes > max_nodes:
            raise BranchLimitError(f"branch-and-bound exceeded {max_nodes} nodes")
        result = root if not extra else lp_max(p.with_constraints(extra))
        if result.status != "optimal":
            continue
        if best_value is not None and bound(result.value) <= best_value:
            continue
        x = result.witness
        if _is_integral(x, integer_vars):
            best_x, best_value = list(x), result.value
            continue

        k = max(
            (k for k in integer_vars if x[k].denominator != 1),
            key=lambda k: (min(x[k] - math.floor(x[k]), math.ceil(x[k]) - x[k]), -k),
        )
        unit = tuple(Fraction(int(i == k)) for i in range(p.nvars))
        stack.append(extra + (Constraint(unit, "<=", math.floor(x[k])),))
        stack.append(extra + (Constraint(unit, ">=", math.ceil(x[k])),))

    logger.debug(f"Branch-and-bound finished after {nodes} nodes")
    if best_x is None:
        return OptResult("infeasible")
    return OptResult("optimal", best_value, tuple(best_x))


def recession_ray(constraints: Sequence[Constraint], objective: Sequence[Fraction],
                  nonneg_vars: FrozenSet[int] = frozenset()) -> Optional[Tuple[int, ...]]:
    """
    Find an integer ray d of the homogenized constraint cone with objective(d) > 0.

    Args:
        constraints: Constraints whose right-hand sides are replaced by 0
        objective: Linear objective
        nonneg_vars: Variables restricted to d_k >= 0

    Returns:
        A primitive integer ray, or None if the objective is <= 0 on the cone
    """
    homogeneous = tuple(Constraint(c.coefficients, c.relation, 0) for c in constraints)
    result = lp_max(LinearProgram(tuple(objective), homogeneous, nonneg_vars))
    if result.status != "unbounded":
        return None
    ray = result.witness
    scale = math.lcm(*(v.denominator for v in ray))
    ints = [int(v * scale) for v in ray]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)
