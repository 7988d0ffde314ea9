"""Exact arithmetic: fields, sparse polynomials, Groebner bases, quotient lengths."""

from .fields import DEFAULT_PRIME, GF, QQ, Field, PrimeField, RationalField, is_prime
from .groebner import (DEFAULT_BUDGET, GroebnerBudget, GroebnerBudgetError, Ideal,
                       PositiveDimensionalError, buchberger, jacobian_minors,
                       local_length, quotient_dimension, quotient_length,
                       ramification_ideal, standard_monomials)
from .linalg import nullspace, rank, solve
from .poly import (ORDERS, Polynomial, PolynomialSyntaxError, PolyRing,
                   RingMismatchError, det, iter_monomials)

__all__ = [
    "DEFAULT_BUDGET", "DEFAULT_PRIME", "GF", "QQ", "Field", "GroebnerBudget",
    "GroebnerBudgetError", "Ideal", "ORDERS", "Polynomial", "PolynomialSyntaxError",
    "PolyRing", "PositiveDimensionalError", "PrimeField", "RationalField",
    "RingMismatchError", "buchberger", "det", "is_prime", "iter_monomials",
    "jacobian_minors", "local_length", "nullspace", "quotient_dimension",
    "quotient_length", "ramification_ideal", "rank", "solve", "standard_monomials",
]
