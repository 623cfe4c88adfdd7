#!/usr/bin/env python3
"""
Threshold invariants of monomial ideals.

tau and tau_Q are the integer and rational optima of
max sum(beta) s.t. sum_j a_{i,j} beta_j <= w_i. Everything else
(nu, F-thresholds, lct, jumping numbers, quasi-linear laws) is built on them.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import isprime

from ..config.settings import PERIODICITY_DEPTH, SAMPLE_BUDGET, STABILIZATION_RUNS
from .errors import (
    BudgetExceededError, DimensionMismatchError, MonobsError,
    RadicalContainmentError, UnboundedInvariantError,
)
from .geometry import integrality_modulus, newton_polyhedron
from .ideal import MonomialIdeal, irreducible_decomposition
from .optim import Constraint, LinearProgram, ilp_max, lp_max

logger = logging.getLogger(__name__)


@dataclass
class QuasiLinearLaw:
    """nu(q) = slope * q + intercepts[q mod modulus] for q >= q_min."""

    modulus: int
    slope: Fraction
    intercepts: Dict[int, Fraction]
    q_min: int
    trace: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)

    def predict(self, q: int) -> Fraction:
        return self.slope * q + self.intercepts[q % self.modulus]


@dataclass
class PeriodicityReport:
    """Differences d(e) = nu(p^(e+1)) - p*nu(p^e) for e = 1..E, eventually periodic."""

    differences: List[int]
    preperiod: int
    period: int


def _program(a: MonomialIdeal, support: Sequence[int], rhs: Sequence) -> LinearProgram:
    matrix = a.matrix()
    return LinearProgram(
        objective=tuple([1] * a.ngens),
        constraints=tuple(Constraint(tuple(matrix[i]), "<=", w) for i, w in zip(support, rhs)),
        nonneg_vars=frozenset(range(a.ngens)),
    )


def _check_finite(a: MonomialIdeal, support: Sequence[int]) -> None:
    for g in a.generators:
        if not any(g[i] > 0 for i in support):
            raise UnboundedInvariantError(
                f"generator {g} vanishes on support {tuple(support)}; the invariant is unbounded"
            )


@lru_cache(maxsize=65536)
def _tau_cached(a: MonomialIdeal, support: Tuple[int, ...], rhs: Tuple[int, ...]) -> int:
    result = ilp_max(_program(a, support, rhs))
    return int(result.value)


def _check_length(a: MonomialIdeal, w: Sequence) -> None:
    if len(w) != a.nvars:
        raise DimensionMismatchError(f"vector of length {len(w)} for an ideal in {a.nvars} variables")


def tau(a: MonomialIdeal, w: Sequence[int]) -> int:
    """
    tau(w) = max{sum(beta) | beta in N^r, l_i(beta) <= w_i for all i}.

    Args:
        a: Proper monomial ideal
        w: Nonnegative integer vector of length n

    Returns:
        The integer optimum
    """
    _check_length(a, w)
    if any(x < 0 for x in w):
        raise MonobsError(f"tau needs a nonnegative vector (got {tuple(w)})")
    return _tau_cached(a, tuple(range(a.nvars)), tuple(int(x) for x in w))


def tau_partial(a: MonomialIdeal, support: Sequence[int], w: Mapping[int, int]) -> int:
    """tau(I; w) with constraints only for i in I."""
    support = tuple(sorted(support))
    _check_finite(a, support)
    return _tau_cached(a, support, tuple(int(w[i]) for i in support))


def tau_Q(a: MonomialIdeal, w: Sequence) -> Fraction:
    """tau_Q(w) = max{lambda | w in lambda * P_a}, from the facet functionals."""
    _check_length(a, w)
    return newton_polyhedron(a).tau_Q(w)


def tau_Q_program(a: MonomialIdeal, w: Sequence) -> Fraction:
    """tau_Q(w) from lp_max on the defining program."""
    _check_length(a, w)
    return lp_max(_program(a, range(a.nvars), w)).value


def tau_Q_partial(a: MonomialIdeal, support: Sequence[int], w: Mapping[int, int]) -> Fraction:
    """Rational optimum of the program with constraints only for i in I."""
    support = tuple(sorted(support))
    _check_finite(a, support)
    if len(support) == a.nvars:
        return tau_Q(a, [w[i] for i in support])
    return lp_max(_program(a, support, [w[i] for i in support])).value


def _components(a: MonomialIdeal, J: MonomialIdeal):
    if a.nvars != J.nvars:
        raise DimensionMismatchError(f"ideals live in {a.nvars} and {J.nvars} variables")
    components = irreducible_decomposition(J)
    for comp in components:
        if not all(any(g[i] > 0 for i in comp.support) for g in a.generators):
            raise RadicalContainmentError("a is not contained in the radical of J")
    return components


def nu(a: MonomialIdeal, J: MonomialIdeal, q: int) -> int:
    """
    nu^J_a(q) = max over irreducible components (I, b) of J of tau(I; q*b - 1).

    Args:
        a: Proper monomial ideal
        J: Monomial ideal with a inside Rad(J)
        q: Positive integer

    Returns:
        The largest t with a^t not inside J^[q]
    """
    if q < 1:
        raise MonobsError(f"nu needs q >= 1 (got {q})")
    return max(
        tau_partial(a, comp.support, {i: q * b - 1 for i, b in zip(comp.support, comp.bounds)})
        for comp in _components(a, J)
    )


def f_threshold(a: MonomialIdeal, J: MonomialIdeal) -> Fraction:
    """lim nu(p^e)/p^e, the largest tau_Q(I; b) over the components of J."""
    return max(
        tau_Q_partial(a, comp.support, comp.bound_map) for comp in _components(a, J)
    )


def lct(a: MonomialIdeal) -> Fraction:
    """Largest c with (1,...,1) in c * P_a."""
    return tau_Q(a, [1] * a.nvars)


def jumping_number(a: MonomialIdeal, b: Sequence[int]) -> Fraction:
    """Jumping coefficient attached to J = (X_1^{b_1}, ..., X_n^{b_n})."""
    if any(x < 1 for x in b):
        raise MonobsError(f"jumping_number needs b_i >= 1 (got {tuple(b)})")
    return tau_Q(a, b)


def jumping_numbers(a: MonomialIdeal, bound) -> List[Fraction]:
    """All jumping coefficients <= bound, ascending.

    A point b on the boundary of t*P_a can be clipped at ceil(t * max exponent)
    without leaving the boundary, so that box is enough.
    """
    bound = Fraction(bound)
    if bound <= 0:
        return []
    P = newton_polyhedron(a)
    side = max(1, math.ceil(bound * a.max_exponent))
    values = set()
    for b in itertools.product(range(1, side + 1), repeat=a.nvars):
        t = P.tau_Q(b)
        if t <= bound:
            values.add(t)
    return sorted(values)


def multiplier_ideal_membership(a: MonomialIdeal, alpha, u: Sequence[int]) -> bool:
    """True iff X^u lies in the multiplier ideal J(a^alpha), i.e. u + e is interior to alpha * P_a."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise MonobsError(f"multiplier ideals need alpha > 0 (got {alpha})")
    _check_length(a, u)
    P = newton_polyhedron(a)
    w = [x + 1 for x in u]
    if any(x <= 0 for x in w):
        return False
    return all(P.facets[k].evaluate(w) > alpha for k in P.noncoordinate)


def quasi_linear_law(a: MonomialIdeal, J: MonomialIdeal,
                     stabilization_runs: int = STABILIZATION_RUNS,
                     budget: int = SAMPLE_BUDGET) -> QuasiLinearLaw:
    """
    Extract nu(q) = alpha*q + gamma_j (q = j mod N, q large).

    Residue j is sampled from its smallest positive member: q = j, or q = N
    for j = 0.

    Args:
        a: Proper monomial ideal
        J: Monomial ideal with a inside Rad(J)
        stabilization_runs: Consecutive equal intercepts needed per residue
        budget: Samples allowed per residue

    Returns:
        QuasiLinearLaw with the per-residue sample trace
    """
    N = integrality_modulus(a)
    alpha = f_threshold(a, J)
    intercepts: Dict[int, Fraction] = {}
    traces: Dict[int, List[Tuple[int, int]]] = {}
    q_min = 1
    for j in range(N):
        q = j if j >= 1 else N
        trace: List[Tuple[int, int]] = []
        run_start, run_value, run_length = q, None, 0
        while True:
            if len(trace) >= budget:
                raise BudgetExceededError(
                    f"residue {j} mod {N} did not stabilize within {budget} samples", trace
                )
            value = nu(a, J, q)
            trace.append((q, value))
            gamma = value - alpha * q
            if gamma == run_value:
                run_length += 1
            else:
                run_start, run_value, run_length = q, gamma, 1
            if run_length >= stabilization_runs:
                break
            q += N
        intercepts[j] = run_value
        traces[j] = trace
        q_min = max(q_min, run_start)
        logger.debug(f"Residue {j} mod {N}: gamma = {run_value} from q = {run_start}")
    logger.info(f"Quasi-linear law: N = {N}, alpha = {alpha}, q_min = {q_min}")
    return QuasiLinearLaw(N, alpha, intercepts, q_min, traces)


def detect_period(values: Sequence[int],
                  runs: int = STABILIZATION_RUNS) -> Optional[Tuple[int, int]]:
    """
    Smallest period t (then smallest preperiod s) such that values[s:] is
    t-periodic and spans at least `runs` full periods.
    """
    length = len(values)
    for t in range(1, length // runs + 1):
        for s in range(0, length - runs * t + 1):
            if all(values[k] == values[k + t] for k in range(s, length - t)):
                return s, t
    return None


def nu_periodicity(a: MonomialIdeal, J: MonomialIdeal, p: int,
                   E: int = PERIODICITY_DEPTH) -> PeriodicityReport:
    """Difference sequence e -> nu(p^(e+1)) - p*nu(p^e), e = 1..E, with its detected period."""
    if p < 2 or not isprime(p):
        raise MonobsError(f"p must be a prime (got {p})")
    if E < 1:
        raise MonobsError(f"E must be positive (got {E})")
    values = [nu(a, J, p ** e) for e in range(1, E + 2)]
    diffs = [values[k + 1] - p * values[k] for k in range(E)]
    found = detect_period(diffs)
    if found is None:
        raise BudgetExceededError(f"no eventual period visible in {E} differences", diffs)
    preperiod, period = found
    logger.info(f"nu differences for p = {p}: preperiod {preperiod}, period {period}")
    return PeriodicityReport(diffs, preperiod, period)
