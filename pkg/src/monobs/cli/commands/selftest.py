#!/usr/bin/env python3
"""
Acceptance suite over the shipped ideal corpus, rendered as a rich table.
"""

import itertools
import json
import logging
import math
import random
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from rich.console import Console
from rich.table import Table
from sympy import isprime

from ...config.settings import BFUNCTIONS_PATH
from ...core.gamma import roots_gamma
from ...core.geometry import integrality_modulus, newton_polyhedron
from ...core.ideal import MonomialIdeal, nu_bruteforce
from ...core.roots import BPolynomial, root_classes, roots_charp, roots_mod_Z, verify_prop1
from ...core.thresholds import lct, nu, nu_periodicity, quasi_linear_law, tau, tau_Q
from ...models import CriterionResult, SelftestDocument, format_vector
from ..inputs import int_list, load_ideal

logger = logging.getLogger(__name__)

console = Console(stderr=True)

CORPUS = ["ex1_n3", "ex1_n4", "ex1_n5", "ex2", "ex3", "x_squared"]
FAULTS = ["facet-modulus"]


class _Suite:
    """Shared state for one selftest run; charp root sets are computed once per ideal."""

    def __init__(self, jobs: int = 1, fault: Optional[str] = None, oracle_ideals: int = 200):
        self.jobs = jobs
        self.fault = fault
        self.oracle_ideals = oracle_ideals
        self.ideals = {name: load_ideal(name) for name in CORPUS}
        with open(BFUNCTIONS_PATH) as f:
            self.bfunctions = {k: BPolynomial.parse(v) for k, v in json.load(f).items()}
        self._roots: Dict[str, List[Fraction]] = {}
        self._oracle: Dict[str, List[Fraction]] = {}

    def roots(self, name: str) -> List[Fraction]:
        if name not in self._roots:
            self._roots[name] = roots_charp(self.ideals[name], jobs=self.jobs).roots
        return self._roots[name]

    def oracle(self, name: str) -> List[Fraction]:
        if name not in self._oracle:
            self._oracle[name] = roots_gamma(self.ideals[name], jobs=self.jobs)
        return self._oracle[name]

    def mod_z(self, name: str) -> List[Fraction]:
        if self.fault == "facet-modulus":
            P = newton_polyhedron(self.ideals[name])
            classes = set()
            for k in P.noncoordinate:
                m_Q = P.facets[k].modulus + 1
                classes.update(Fraction(m, m_Q) for m in range(m_Q))
            return sorted(classes)
        return roots_mod_Z(self.ideals[name])

    def expect_roots(self, name: str, gamma: bool = False) -> Tuple[bool, str]:
        expected = set(self.bfunctions[name].roots)
        found = set(self.roots(name))
        ok = found == expected
        detail = f"{name}: {format_vector(sorted(found, reverse=True))}"
        if gamma:
            oracle = set(self.oracle(name))
            ok = ok and oracle == expected
            detail += f"; oracle {format_vector(sorted(oracle, reverse=True))}"
        return ok, detail

    # criteria

    def example_ex2(self):
        return self.expect_roots("ex2", gamma=True)

    def example_ex3(self):
        return self.expect_roots("ex3")

    def example_ex1(self):
        results = [self.expect_roots(f"ex1_n{n}") for n in (3, 4, 5)]
        return all(ok for ok, _ in results), "; ".join(d for _, d in results)

    def methods_agree(self):
        bad = [name for name in CORPUS if set(self.oracle(name)) != set(self.roots(name))]
        return not bad, f"mismatch on {bad}" if bad else f"{len(CORPUS)} ideals agree"

    def mod_z_equality(self):
        bad = [name for name in CORPUS if root_classes(self.roots(name)) != self.mod_z(name)]
        return not bad, f"mismatch on {bad}" if bad else f"{len(CORPUS)} ideals agree"

    def largest_root(self):
        bad = [name for name in CORPUS if max(self.roots(name)) != -lct(self.ideals[name])]
        return not bad, f"mismatch on {bad}" if bad else f"{len(CORPUS)} ideals agree"

    def congruence(self):
        checked, bad = 0, []
        for name in ("ex1_n3", "ex1_n4", "ex1_n5", "ex2", "ex3"):
            a = self.ideals[name]
            J = MonomialIdeal.maximal(a.nvars)
            bpoly = self.bfunctions[name]
            denominators = math.lcm(*(c.denominator for c in bpoly.coefficients()))
            for p in range(5, 98):
                if not isprime(p) or denominators % p == 0:
                    continue
                for e in (1, 2):
                    checked += 1
                    if not verify_prop1(a, J, p, e, bpoly):
                        bad.append((name, p, e))
        return not bad, f"{checked} checks" + (f", failures {bad}" if bad else "")

    def quasi_linear(self):
        a = self.ideals["ex2"]
        law = quasi_linear_law(a, MonomialIdeal.maximal(3), stabilization_runs=3)
        ok = law.slope == Fraction(3, 4)
        for j, gamma in law.intercepts.items():
            if 3 * (j - 1) % 4 == 0:
                ok = ok and gamma == Fraction(-3, 4)
            elif 3 * (j - 1) % 4 == 2:
                ok = ok and gamma == Fraction(-5, 4)
        return ok, f"N = {law.modulus}, alpha = {law.slope}, q_min = {law.q_min}"

    def oracles(self):
        rng = random.Random(20240601)
        failures = []
        for _ in range(self.oracle_ideals):
            a = _random_ideal(rng)
            J = _random_primary(rng, a.nvars)
            N = integrality_modulus(a)
            for _ in range(3):
                w = tuple(rng.randint(0, 5) for _ in range(a.nvars))
                v = tuple(rng.randint(0, 5) for _ in range(a.nvars))
                t = tau(a, w)
                if t != _tau_enumerated(a, w):
                    failures.append(("tau", a.generators, w))
                if tau(a, [x + y for x, y in zip(w, v)]) < t + tau(a, v):
                    failures.append(("superadditivity", a.generators, w, v))
                gap = tau_Q(a, w) - t
                if gap < 0 or (gap * N).denominator != 1:
                    failures.append(("sandwich", a.generators, w))
                small = tuple(x % 3 for x in w)
                if tau(a, [N * x for x in small]) != N * tau_Q(a, small):
                    failures.append(("multiples", a.generators, small))
            q = rng.randint(1, 8)
            if nu(a, J, q) != nu_bruteforce(a, J, q):
                failures.append(("nu", a.generators, J.generators, q))
        detail = f"{self.oracle_ideals} random ideals"
        return not failures, detail + (f", first failure {failures[0]}" if failures else "")

    def periodicity(self):
        a = self.ideals["ex2"]
        J = MonomialIdeal.maximal(3)
        periods = {p: nu_periodicity(a, J, p).period for p in (3, 5)}
        return periods == {3: 2, 5: 1}, f"periods {periods}"


CRITERIA: List[Tuple[int, str, Callable[[_Suite], Tuple[bool, str]]]] = [
    (1, "ex2 roots by both methods", _Suite.example_ex2),
    (2, "ex3 roots", _Suite.example_ex3),
    (3, "ex1 roots for n = 3, 4, 5", _Suite.example_ex1),
    (4, "mod-Z classes equal facet classes", _Suite.mod_z_equality),
    (5, "largest root is -lct", _Suite.largest_root),
    (6, "b(nu(p^e)) = 0 mod p", _Suite.congruence),
    (7, "quasi-linear law of ex2", _Suite.quasi_linear),
    (8, "randomized oracle suite", _Suite.oracles),
    (9, "periodicity of nu differences", _Suite.periodicity),
    (10, "component oracle matches charp roots", _Suite.methods_agree),
]


def _random_ideal(rng: random.Random) -> MonomialIdeal:
    n = rng.randint(1, 3)
    r = rng.randint(1, 4)
    gens = []
    while len(gens) < r:
        g = tuple(rng.randint(0, 4) for _ in range(n))
        if any(g):
            gens.append(g)
    return MonomialIdeal(n, tuple(gens))


def _random_primary(rng: random.Random, n: int) -> MonomialIdeal:
    """(X_1^{c_1}, ..., X_n^{c_n}) plus one mixed generator, so every a lies in Rad(J)."""
    gens = [tuple(rng.randint(1, 2) if k == i else 0 for k in range(n)) for i in range(n)]
    gens.append(tuple(rng.randint(0, 1) for _ in range(n)))
    return MonomialIdeal(n, tuple(g for g in gens if any(g)))


def _tau_enumerated(a: MonomialIdeal, w) -> int:
    """max sum(beta) over the box beta_j <= max(w), by enumeration."""
    top = max(w) if w else 0
    best = 0
    for beta in itertools.product(range(top + 1), repeat=a.ngens):
        if sum(beta) <= best:
            continue
        if all(sum(b * g[i] for b, g in zip(beta, a.generators)) <= w[i] for i in range(a.nvars)):
            best = sum(beta)
    return best


def run_selftest(criteria: Optional[List[int]] = None, fault: Optional[str] = None,
                 jobs: int = 1, oracle_ideals: int = 200) -> SelftestDocument:
    """
    Run acceptance criteria.

    Args:
        criteria: Criterion ids to run (default: all)
        fault: Optional fault to inject ("facet-modulus")
        jobs: Worker processes for root extraction
        oracle_ideals: Random ideals in the oracle criterion

    Returns:
        SelftestDocument with one entry per criterion
    """
    suite = _Suite(jobs=jobs, fault=fault, oracle_ideals=oracle_ideals)
    results = []
    for cid, name, check in CRITERIA:
        if criteria and cid not in criteria:
            continue
        started = time.perf_counter()
        try:
            passed, detail = check(suite)
        except Exception as e:
            logger.error(f"Criterion {cid} raised: {e}")
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = round(time.perf_counter() - started, 3)
        logger.info(f"Criterion {cid} {'passed' if passed else 'failed'} in {elapsed}s")
        results.append(CriterionResult(id=cid, name=name, passed=passed, detail=detail, seconds=elapsed))
    return SelftestDocument(passed=all(r.passed for r in results), criteria=results)


def display_report(doc: SelftestDocument) -> None:
    table = Table(title="monobs selftest")
    table.add_column("#", justify="right")
    table.add_column("Criterion")
    table.add_column("Result")
    table.add_column("Seconds", justify="right")
    table.add_column("Detail", overflow="fold")
    for r in doc.criteria:
        mark = "[green]✅ pass[/green]" if r.passed else "[red]❌ fail[/red]"
        table.add_row(str(r.id), r.name, mark, f"{r.seconds:.1f}", r.detail)
    console.print(table)


def selftest_command(args) -> SelftestDocument:
    doc = run_selftest(list(args.criteria or ()), args.inject_fault, args.jobs, args.oracle_ideals)
    display_report(doc)
    return doc


def register(subparsers, common) -> None:
    selftest = subparsers.add_parser('selftest', parents=[common], help='Run the acceptance suite')
    selftest.add_argument('--criteria', type=int_list, help='Comma separated criterion ids (default: all)')
    selftest.add_argument('--inject-fault', choices=FAULTS, help='Negative control')
    selftest.add_argument('--oracle-ideals', type=int, default=200,
                          help='Random ideals in the oracle criterion (default: 200)')
    selftest.set_defaults(func=selftest_command)
