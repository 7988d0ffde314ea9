"""Coefficient fields: the rationals and prime fields GF(p).

Elements are plain Python objects (``Fraction`` for QQ, ``int`` in ``[0, p)``
for GF(p)) so polynomial code can stay allocation-light. The field object
owns normalization, inversion and conversion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]

DEFAULT_PRIME = 32003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Base class; concrete fields are ``QQ`` and ``GF(p)``."""

    characteristic: int = 0

    def __call__(self, value) -> Scalar:
        return self.convert(value)

    def convert(self, value) -> Scalar:
        raise NotImplementedError

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a * self.inv(b))

    def normalize(self, a) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self.convert(0)

    @property
    def one(self) -> Scalar:
        return self.convert(1)


class RationalField(Field):
    characteristic = 0

    def convert(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, (int, str)):
            return Fraction(value)
        raise TypeError(f"cannot convert {type(value).__name__} to QQ")

    def normalize(self, a) -> Fraction:
        # Fraction keeps itself reduced with a positive denominator
        return a if isinstance(a, Fraction) else Fraction(a)

    def inv(self, a) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"GF(p) needs an odd prime, got {p}")
        self.p = p
        self.characteristic = p

    def convert(self, value) -> int:
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, str):
            return self.convert(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to GF({self.p})")

    def normalize(self, a) -> int:
        return a % self.p

    def inv(self, a) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    field = _gf_cache.get(p)
    if field is None:
        field = _gf_cache[p] = PrimeField(p)
    return field
