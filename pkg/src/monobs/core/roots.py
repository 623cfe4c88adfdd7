#!/usr/bin/env python3
"""
Roots of the Bernstein-Sato polynomial of a monomial ideal from
characteristic-p data.

For each cone sigma of the fan and each residue class c mod N realized by
a lattice point b in relint(sigma), the value tau(qb - e) - q*tau_Q(b)
over q = 1 (mod N) is eventually constant and equals a root. Its
deficit against tau_Q is the correction A_c.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy import isprime

from ..config.settings import BOX_MULTIPLIER, JOBS, SAMPLE_BUDGET, STABILIZATION_RUNS
from .errors import BudgetExceededError, MonobsError, ModulusError
from .geometry import (
    FanCone, fan_cones, integrality_modulus, newton_polyhedron, residue_representatives,
)
from .ideal import MonomialIdeal
from .thresholds import nu, tau

logger = logging.getLogger(__name__)


@dataclass
class RootCertificate:
    """
    Provenance of one root: cone, class, representative and the stabilization trace.

    cone is an index into fan_cones(newton_polyhedron(a)); the cone at that
    index holds the representative in its relative interior.
    """

    root: Fraction
    cone: int
    residue: Tuple[int, ...]
    representative: Tuple[int, ...]
    correction: Fraction
    trace: List[Tuple[int, int, Fraction]] = field(default_factory=list)


@dataclass
class RootReport:
    """Root set (largest first) with certificates and the mod-Z class set."""

    roots: List[Fraction]
    certificates: Dict[Fraction, List[RootCertificate]]
    mod_z_classes: List[Fraction]
    unrealized: Dict[int, int] = field(default_factory=dict)


def _start_q(N: int) -> int:
    """Smallest q = 1 (mod N) with q >= 2, where the shared-facet search begins."""
    return N + 1 if N > 1 else 2


def correction_A(a: MonomialIdeal, sigma: FanCone, c: Sequence[int], b: Sequence[int],
                 runs: int = STABILIZATION_RUNS,
                 budget: int = SAMPLE_BUDGET) -> RootCertificate:
    """
    Stabilize delta(q) = tau_Q(qb - e) - tau(qb - e) over q = 1 (mod N).

    Start rule: q runs over _start_q(N), _start_q(N) + N, ... and the first
    q at which the tight facets of qb - e meet those of b is the first
    sample. From then on tau_Q(qb - e) - q*tau_Q(b) is a fixed constant and
    the candidate root tau(qb - e) - q*tau_Q(b) can only grow. Steps spent
    finding that q count against the budget.

    Args:
        a: Proper monomial ideal
        sigma: Cone with b in its relative interior
        c: Residue class of b - e mod N
        b: Positive lattice representative
        runs: Consecutive equal samples required
        budget: Samples allowed (linear-regime search included)

    Returns:
        RootCertificate whose correction is the stabilized delta
    """
    P = newton_polyhedron(a)
    N = integrality_modulus(a)
    if any((x - 1) % N != r for x, r in zip(b, c)):
        raise MonobsError(f"representative {tuple(b)} is not in class {tuple(c)} mod {N}")
    base = P.tau_Q(b)
    b_tight = P.tight_set(b)

    q = _start_q(N)
    steps = 0
    while not (P.tight_set([q * x - 1 for x in b]) & b_tight):
        steps += 1
        if steps >= budget:
            raise BudgetExceededError(f"no shared minimizing facet for b = {tuple(b)}", [])
        q += N

    trace: List[Tuple[int, int, Fraction]] = []
    last, length = None, 0
    while True:
        if len(trace) + steps >= budget:
            raise BudgetExceededError(
                f"correction for b = {tuple(b)} did not stabilize within {budget} samples",
                [(s, t, str(r)) for s, t, r in trace],
            )
        w = [q * x - 1 for x in b]
        t_int, t_rat = tau(a, w), P.tau_Q(w)
        trace.append((q, t_int, t_rat))
        value = t_int - q * base
        if value == last:
            length += 1
        else:
            last, length = value, 1
        if length >= runs:
            break
        q += N

    _, t_int, t_rat = trace[-1]
    return RootCertificate(last, sigma.index, tuple(c), tuple(b), t_rat - t_int, trace)


def _extract(task) -> RootCertificate:
    a, cone_index, c, b, runs, budget = task
    sigma = fan_cones(newton_polyhedron(a))[cone_index]
    return correction_A(a, sigma, c, b, runs, budget)


def roots_charp(a: MonomialIdeal, K: int = BOX_MULTIPLIER, runs: int = STABILIZATION_RUNS,
                budget: int = SAMPLE_BUDGET, jobs: int = JOBS) -> RootReport:
    """
    All roots of b_a obtained from cones of the fan and residue classes mod N.

    Args:
        a: Proper monomial ideal
        K: Lattice points are sampled in [1, K*N]^n
        runs: Stabilization runs per class
        budget: Sample budget per class
        jobs: Worker processes; results are merged in task order

    Returns:
        RootReport
    """
    P = newton_polyhedron(a)
    N = integrality_modulus(a)
    tasks = []
    unrealized: Dict[int, int] = {}
    for sigma in fan_cones(P):
        if sigma.in_coordinate_hyperplane:
            continue
        reps = residue_representatives(sigma, N, K)
        missing = N ** a.nvars - len(reps)
        if missing:
            unrealized[sigma.index] = missing
            if sigma.maximal:
                logger.warning(
                    f"Maximal cone {sigma.index} realizes only {len(reps)} of {N ** a.nvars} "
                    f"classes with K = {K}"
                )
        for c, b in reps.items():
            tasks.append((a, sigma.index, c, b, runs, budget))
    logger.info(f"Extracting roots from {len(tasks)} (cone, class) pairs, N = {N}")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            certificates = list(pool.map(_extract, tasks, chunksize=16))
    else:
        certificates = [_extract(task) for task in tasks]

    by_root: Dict[Fraction, List[RootCertificate]] = {}
    for cert in certificates:
        by_root.setdefault(cert.root, []).append(cert)
    roots = sorted(by_root, reverse=True)
    logger.info(f"Found roots {[str(r) for r in roots]}")
    return RootReport(roots, {r: by_root[r] for r in roots}, roots_mod_Z(a), unrealized)


def roots_mod_Z(a: MonomialIdeal) -> List[Fraction]:
    """{m / m_Q : Q non-coordinate facet, 0 <= m < m_Q}, ascending."""
    P = newton_polyhedron(a)
    classes = set()
    for k in P.noncoordinate:
        m_Q = P.facets[k].modulus
        classes.update(Fraction(m, m_Q) for m in range(m_Q))
    return sorted(classes)


def root_classes(roots) -> List[Fraction]:
    """Images of the roots in [0, 1)."""
    return sorted({Fraction(r) - math.floor(r) for r in roots})


@dataclass(frozen=True)
class BPolynomial:
    """A monic polynomial in factored form: prod (s - root)^multiplicity."""

    factors: Tuple[Tuple[Fraction, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "BPolynomial":
        """Parse "-3/4,-5/4,-3/2,-1:3" (root[:multiplicity], comma separated); "" or "1" is the constant 1."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        merged: Dict[Fraction, int] = {}
        for item in text.split(","):
            root, _, mult = item.strip().partition(":")
            try:
                value, count = Fraction(root), int(mult) if mult else 1
            except (ValueError, ZeroDivisionError) as e:
                raise MonobsError(f"bad b-polynomial factor {item!r}") from e
            if count < 1:
                raise MonobsError(f"bad multiplicity in {item!r}")
            merged[value] = merged.get(value, 0) + count
        return cls(tuple(sorted(merged.items(), reverse=True)))

    @property
    def roots(self) -> List[Fraction]:
        return [r for r, _ in self.factors]

    def evaluate(self, s) -> Fraction:
        value = Fraction(1)
        for root, mult in self.factors:
            value *= (Fraction(s) - root) ** mult
        return value

    def coefficients(self) -> List[Fraction]:
        """Coefficients, leading first."""
        s = sympy.Symbol("s")
        expr = sympy.Integer(1)
        for root, mult in self.factors:
            expr *= (s - sympy.Rational(root.numerator, root.denominator)) ** mult
        poly = sympy.Poly(sympy.expand(expr), s, domain="QQ")
        return [Fraction(int(c.p), int(c.q)) for c in map(sympy.Rational, poly.all_coeffs())]

    def residue_mod(self, s: int, p: int) -> int:
        """b(s) reduced into F_p; p must not divide a coefficient denominator."""
        if any(c.denominator % p == 0 for c in self.coefficients()):
            raise ModulusError(f"{p} divides a coefficient denominator of the b-polynomial")
        value = self.evaluate(s)
        return value.numerator * pow(value.denominator, -1, p) % p


def example_bpolynomials(ex1_sizes: Sequence[int] = (3, 4, 5)) -> Dict[str, BPolynomial]:
    """
    Known b-functions of the shipped examples, keyed like data/ideals.

    ex1_n is generated by the X_i X_j with i < j in n variables and has
    b(s) = (s + n/2)(s + (n+1)/2)(s + n - 1).
    """
    known = {
        "ex2": BPolynomial.parse("-3/4,-5/4,-3/2,-1:3"),
        "ex3": BPolynomial.parse("-3/2,-4/3,-5/3,-2:3"),
        "x_squared": BPolynomial.parse("-1/2,-1"),
    }
    for n in ex1_sizes:
        if n < 2:
            raise MonobsError(f"ex1 needs at least two variables (got {n})")
        roots = [Fraction(-n, 2), Fraction(-(n + 1), 2), Fraction(1 - n)]
        known[f"ex1_n{n}"] = BPolynomial.parse(",".join(str(r) for r in roots))
    return known


def prop1_residue(a: MonomialIdeal, J: MonomialIdeal, p: int, e: int,
                  bpoly: BPolynomial) -> Tuple[int, int]:
    """(nu(p^e), b(nu) mod p)."""
    if p < 2 or not isprime(p):
        raise MonobsError(f"p must be a prime (got {p})")
    if e < 1:
        raise MonobsError(f"e must be positive (got {e})")
    value_nu = nu(a, J, p ** e)
    return value_nu, bpoly.residue_mod(value_nu, p)


def verify_prop1(a: MonomialIdeal, J: MonomialIdeal, p: int, e: int, bpoly: BPolynomial) -> bool:
    """True iff b(nu^J_a(p^e)) = 0 in F_p."""
    return prop1_residue(a, J, p, e, bpoly)[1] == 0
