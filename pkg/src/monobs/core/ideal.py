#!/usr/bin/env python3
"""
Monomial ideals: parsing, membership, Frobenius powers, irreducible
decomposition and a brute-force nu used as a test oracle.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from pydantic import ValidationError

from ..models import IdealDocument
from .errors import DimensionMismatchError, IdealParseError, MonobsError, RadicalContainmentError
from .optim import Constraint, LinearProgram, lp_max

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def _minimal_generators(generators: Sequence[Sequence[int]]) -> Tuple[Exponent, ...]:
    """Drop duplicates and generators dominated by another one, sorted lexicographically."""
    unique = sorted(set(tuple(g) for g in generators))
    minimal = [
        g for g in unique
        if not any(h != g and all(x <= y for x, y in zip(h, g)) for h in unique)
    ]
    return tuple(minimal)


@dataclass(frozen=True)
class MonomialIdeal:
    """An ideal generated by monomials X^u, kept as its minimal exponent set."""

    nvars: int
    generators: Tuple[Exponent, ...]

    def __post_init__(self):
        if self.nvars < 1:
            raise MonobsError(f"nvars must be positive (got {self.nvars})")
        if not self.generators:
            raise MonobsError("a monomial ideal needs at least one generator")
        for gen in self.generators:
            if len(gen) != self.nvars:
                raise DimensionMismatchError(
                    f"generator {tuple(gen)} has length {len(gen)}, expected {self.nvars}"
                )
            if any(x < 0 for x in gen):
                raise MonobsError(f"generator {tuple(gen)} has a negative exponent")
        object.__setattr__(self, "generators", _minimal_generators(self.generators))

    @classmethod
    def of(cls, generators: Sequence[Sequence[int]]) -> "MonomialIdeal":
        """Build an ideal from a nonempty list of exponent vectors."""
        generators = [tuple(g) for g in generators]
        if not generators:
            raise MonobsError("a monomial ideal needs at least one generator")
        return cls(len(generators[0]), tuple(generators))

    @classmethod
    def maximal(cls, nvars: int) -> "MonomialIdeal":
        """The ideal (X_1, ..., X_n)."""
        return cls(nvars, tuple(tuple(int(i == k) for i in range(nvars)) for k in range(nvars)))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def is_proper(self) -> bool:
        return all(any(x > 0 for x in g) for g in self.generators)

    @property
    def max_exponent(self) -> int:
        return max(max(g) for g in self.generators)

    def matrix(self) -> List[List[int]]:
        """The n x r exponent matrix (a_{i,j}); column j is generator j."""
        return [[g[i] for g in self.generators] for i in range(self.nvars)]

    def to_document(self) -> IdealDocument:
        return IdealDocument(vars=self.nvars, generators=[list(g) for g in self.generators])


@dataclass(frozen=True)
class IrreducibleComponent:
    """The ideal (X_i^{b_i} : i in support); bounds are aligned with support."""

    support: Tuple[int, ...]
    bounds: Tuple[int, ...]

    def __post_init__(self):
        if not self.support:
            raise MonobsError("an irreducible component needs a nonempty support")
        if len(self.support) != len(self.bounds) or any(b < 1 for b in self.bounds):
            raise MonobsError(f"invalid bounds {self.bounds} for support {self.support}")

    @property
    def bound_map(self) -> Dict[int, int]:
        return dict(zip(self.support, self.bounds))

    def contains(self, u: Sequence[int]) -> bool:
        return any(u[i] >= b for i, b in zip(self.support, self.bounds))

    def is_contained_in(self, other: "IrreducibleComponent") -> bool:
        theirs = other.bound_map
        return all(i in theirs and b >= theirs[i] for i, b in zip(self.support, self.bounds))

    def as_ideal(self, nvars: int) -> MonomialIdeal:
        return MonomialIdeal(nvars, tuple(
            tuple(b if k == i else 0 for k in range(nvars))
            for i, b in zip(self.support, self.bounds)
        ))


def parse_ideal(text: str) -> MonomialIdeal:
    """
    Parse an ideal document.

    Args:
        text: JSON text of the form {"vars": n, "generators": [[...], ...]}

    Returns:
        The normalized MonomialIdeal
    """
    try:
        doc = IdealDocument.model_validate_json(text)
    except ValidationError as e:
        raise IdealParseError(f"malformed ideal document: {e.errors()[0]['msg']}") from e
    ideal = MonomialIdeal(doc.vars, tuple(tuple(g) for g in doc.generators))
    logger.debug(f"Parsed ideal in {ideal.nvars} variables with {ideal.ngens} generators")
    return ideal


def contains_monomial(J: MonomialIdeal, u: Sequence[int]) -> bool:
    """True iff X^u is in J, i.e. some generator divides X^u."""
    if len(u) != J.nvars:
        raise DimensionMismatchError(f"exponent {tuple(u)} has length {len(u)}, expected {J.nvars}")
    return any(all(v <= x for v, x in zip(gen, u)) for gen in J.generators)


def frobenius_power(J: MonomialIdeal, q: int) -> MonomialIdeal:
    """J^[q] = (X^{qw} | X^w in J)."""
    if q < 1:
        raise MonobsError(f"Frobenius power needs q >= 1 (got {q})")
    return MonomialIdeal(J.nvars, tuple(tuple(q * x for x in g) for g in J.generators))


def irreducible_decomposition(J: MonomialIdeal) -> List[IrreducibleComponent]:
    """
    Write J as an irredundant intersection of ideals generated by pure powers.

    Splits on a generator u with two or more positive entries:
    J = (J + (X_i^{u_i})) cap (J + (X^{u - u_i e_i})).
    """
    if not J.is_proper:
        raise MonobsError("the unit ideal has no irreducible decomposition")

    found = set()
    stack = [J.generators]
    while stack:
        gens = stack.pop()
        mixed = next((g for g in gens if sum(1 for x in g if x > 0) >= 2), None)
        if mixed is None:
            bounds: Dict[int, int] = {}
            for g in gens:
                i = next(k for k, x in enumerate(g) if x > 0)
                bounds[i] = min(bounds.get(i, g[i]), g[i])
            support = tuple(sorted(bounds))
            found.add(IrreducibleComponent(support, tuple(bounds[i] for i in support)))
            continue

        i = next(k for k, x in enumerate(mixed) if x > 0)
        pure = tuple(mixed[i] if k == i else 0 for k in range(J.nvars))
        rest = tuple(0 if k == i else x for k, x in enumerate(mixed))
        others = [g for g in gens if g != mixed]
        stack.append(_minimal_generators(others + [pure]))
        stack.append(_minimal_generators(others + [rest]))

    components = [
        c for c in found
        if not any(d != c and d.is_contained_in(c) for d in found)
    ]
    components.sort(key=lambda c: (c.support, c.bounds))
    logger.debug(f"Decomposed ideal into {len(components)} irreducible components")
    return components


def radical_contains(J: MonomialIdeal, a: MonomialIdeal) -> bool:
    """True iff a is contained in Rad(J)."""
    if a.nvars != J.nvars:
        raise DimensionMismatchError(f"ideals live in {a.nvars} and {J.nvars} variables")
    m = J.max_exponent
    return all(contains_monomial(J, tuple(m * x for x in g)) for g in a.generators)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`, lexicographically descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


def _nu_upper_bound(a: MonomialIdeal, J: MonomialIdeal, q: int) -> int:
    """Ceiling of the largest LP relaxation over the components of J, plus r."""
    best = 0
    matrix = a.matrix()
    for comp in irreducible_decomposition(J):
        program = LinearProgram(
            objective=tuple([1] * a.ngens),
            constraints=tuple(
                Constraint(tuple(matrix[i]), "<=", q * b - 1)
                for i, b in zip(comp.support, comp.bounds)
            ),
            nonneg_vars=frozenset(range(a.ngens)),
        )
        result = lp_max(program)
        if result.status != "optimal":
            raise RadicalContainmentError("unbounded search: a is not contained in Rad(J)")
        best = max(best, math.ceil(result.value))
    return best + a.ngens


def nu_bruteforce(a: MonomialIdeal, J: MonomialIdeal, q: int) -> int:
    """
    nu^J_a(q) = max{t : a^t not contained in J^[q]} by exhaustive search.

    Exponential in the number of generators; meant as an oracle for small inputs.
    """
    if q < 1:
        raise MonobsError(f"nu needs q >= 1 (got {q})")
    if not radical_contains(J, a):
        raise RadicalContainmentError("unbounded search: a is not contained in Rad(J)")

    Jq = frobenius_power(J, q)
    columns = a.generators
    for t in range(_nu_upper_bound(a, J, q), -1, -1):
        for beta in _compositions(t, a.ngens):
            u = tuple(sum(b * g[i] for b, g in zip(beta, columns)) for i in range(a.nvars))
            if not contains_monomial(Jq, u):
                return t
    # t = 0 always has the witness u = 0 since J is proper
    raise MonobsError("J is not a proper ideal")
