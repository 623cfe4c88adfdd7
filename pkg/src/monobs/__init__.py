"""
monobs: exact invariants of monomial ideals.

Thresholds, quasi-linear laws of Frobenius-power invariants and the root
set of Bernstein-Sato polynomials, all in exact rational arithmetic.
"""

__version__ = "0.1.0"
