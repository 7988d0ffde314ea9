"""Sparse multivariate polynomials over QQ or GF(p).

A polynomial is a dict ``{exponent tuple: nonzero coefficient}`` bound to a
:class:`PolyRing` (variable names + coefficient field). Monomial orders are
only needed when something asks for a leading term, so they are passed
explicitly instead of being baked into the ring.

Text form (used by the CLI and descriptors)::

    3*s^2*t - 1/2*t + 5

``**`` is accepted as a synonym for ``^`` when parsing.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .fields import QQ, Field, Scalar

Monomial = tuple


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


# -- monomial orders ---------------------------------------------------------

def _degrevlex_key(e: Monomial) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def _degrevlex_heapkey(e: Monomial) -> tuple:
    # min-heap key whose minimum is the degrevlex-largest monomial
    return (-sum(e), tuple(reversed(e)))


def _lex_key(e: Monomial) -> tuple:
    return e


def _lex_heapkey(e: Monomial) -> tuple:
    return tuple(-x for x in e)


class MonomialOrder:
    def __init__(self, name: str, key: Callable, heapkey: Callable):
        self.name = name
        self.key = key
        self.heapkey = heapkey

    def __repr__(self) -> str:
        return self.name


ORDERS = {
    "degrevlex": MonomialOrder("degrevlex", _degrevlex_key, _degrevlex_heapkey),
    "lex": MonomialOrder("lex", _lex_key, _lex_heapkey),
}


def get_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}; "
                         f"expected one of {sorted(ORDERS)}") from None


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


# -- rings -------------------------------------------------------------------

class PolyRing:
    """Variable names plus coefficient field. Rings compare by value."""

    def __init__(self, names: Sequence[str], field: Field = QQ):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self.nvars = len(names)
        self.field = field
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.names, self.field))

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field.convert(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, which) -> Polynomial:
        i = self.index(which)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def index(self, which) -> int:
        if isinstance(which, int):
            if not 0 <= which < self.nvars:
                raise IndexError(which)
            return which
        try:
            return self.names.index(which)
        except ValueError:
            raise KeyError(f"{which!r} is not a variable of {self}") from None

    def monomial(self, exp: Monomial, coeff=1) -> Polynomial:
        return self.from_dict({tuple(exp): coeff})

    def from_dict(self, terms: Mapping) -> Polynomial:
        norm = self.field.convert
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {self}")
            c = norm(c)
            if c:
                out[e] = c
        return Polynomial(self, out)

    def with_field(self, field: Field) -> PolyRing:
        return PolyRing(self.names, field)

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial. Zero coefficients are never stored."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms
        self._hash = None

    # structure -------------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.ring.field

    def items(self):
        return self._t.items()

    def as_dict(self) -> dict:
        return dict(self._t)

    def coeff(self, exp: Monomial) -> Scalar:
        return self._t.get(tuple(exp), self.field.zero)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and self.ring._zero_exp in self._t)

    def terms(self, order="degrevlex") -> list[tuple[Monomial, Scalar]]:
        """Terms sorted from largest to smallest monomial."""
        key = get_order(order).key
        return sorted(self._t.items(), key=lambda it: key(it[0]), reverse=True)

    def leading_term(self, order="degrevlex") -> tuple[Monomial, Scalar]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        key = get_order(order).key
        e = max(self._t, key=key)
        return e, self._t[e]

    def leading_monomial(self, order="degrevlex") -> Monomial:
        return self.leading_term(order)[0]

    def leading_coeff(self, order="degrevlex") -> Scalar:
        return self.leading_term(order)[1]

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(sum(e) for e in self._t)

    def degree(self, var) -> int:
        i = self.ring.index(var)
        if not self._t:
            return -1
        return max(e[i] for e in self._t)

    def min_degree(self) -> int:
        """Order of vanishing at the origin (smallest total degree of a term)."""
        if not self._t:
            return -1
        return min(sum(e) for e in self._t)

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.field.normalize
        out = dict(self._t)
        for e, c in other._t.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        norm = self.field.normalize
        return Polynomial(self.ring, {e: norm(-c) for e, c in self._t.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> Polynomial:
        c = self.field.convert(c)
        if not c:
            return self.ring.zero
        norm = self.field.normalize
        return Polynomial(self.ring, {e: norm(v * c) for e, v in self._t.items()})

    def mul_term(self, exp: Monomial, c) -> Polynomial:
        norm = self.field.normalize
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {mono_mul(e, exp): norm(v * c)
                                      for e, v in self._t.items()})

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) == 1:
            (e, c), = other._t.items()
            return self.mul_term(e, c)
        if len(self._t) == 1:
            (e, c), = self._t.items()
            return other.mul_term(e, c)
        out: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = mono_mul(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        norm = self.field.normalize
        res = {}
        for e, c in out.items():
            c = norm(c)
            if c:
                res[e] = c
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ValueError("only division by nonzero constants is supported")
            other = other.coeff(self.ring._zero_exp)
        return self.scale(self.field.inv(self.field.convert(other)))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._t == self.ring.const(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    # calculus and substitution ----------------------------------------------
    def diff(self, var) -> Polynomial:
        i = self.ring.index(var)
        norm = self.field.normalize
        out = {}
        for e, c in self._t.items():
            if e[i]:
                v = norm(c * e[i])
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong dimension")
        conv = self.field.convert
        pt = [conv(x) for x in point]
        total = 0
        for e, c in self._t.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term = term * x ** k
            total += term
        return self.field.normalize(total)

    def compose(self, images: Sequence[Polynomial], truncate: int | None = None) -> Polynomial:
        """Substitute ``images[i]`` for variable ``i``; result lives in their ring.

        With ``truncate``, terms of total degree above it are dropped at every
        step (truncated power series composition).
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        for g in images:
            if g.ring != target:
                raise RingMismatchError("images live in different rings")
        conv = target.field.convert
        cache: list[dict[int, Polynomial]] = [{0: target.one, 1: g} for g in images]

        def power(i: int, k: int) -> Polynomial:
            table = cache[i]
            if k not in table:
                half = power(i, k // 2)
                sq = _trunc(half * half, truncate)
                table[k] = _trunc(sq * images[i], truncate) if k % 2 else sq
            return table[k]

        result = target.zero
        for e, c in self._t.items():
            term = target.const(conv(c))
            for i, k in enumerate(e):
                if k:
                    term = _trunc(term * power(i, k), truncate)
                    if not term:
                        break
            result = result + term
        return result

    def translate(self, shift: Sequence) -> Polynomial:
        """Return ``f(x + shift)``."""
        ring = self.ring
        images = [g + ring.field.convert(a) for g, a in zip(ring.gens(), shift)]
        return self.compose(images)

    def truncate(self, degree: int) -> Polynomial:
        return _trunc(self, degree)

    def homogeneous_part(self, degree: int) -> Polynomial:
        return Polynomial(self.ring, {e: c for e, c in self._t.items()
                                      if sum(e) == degree})

    def change_ring(self, ring: PolyRing) -> Polynomial:
        """Map coefficients into ``ring`` (e.g. QQ -> GF(p)); variables matched by name."""
        if ring == self.ring:
            return self
        if ring.names == self.ring.names:
            perm = None
        else:
            try:
                perm = [ring.names.index(n) for n in self.ring.names]
            except ValueError:
                raise RingMismatchError(
                    f"cannot map {self.ring.names} into {ring.names}") from None
        conv = ring.field.convert
        out = {}
        for e, c in self._t.items():
            if perm is not None:
                ne = [0] * ring.nvars
                for k, j in zip(e, perm):
                    ne[j] = k
                e = tuple(ne)
            v = conv(c)
            if v:
                out[e] = v
        return Polynomial(ring, out)

    def monic(self, order="degrevlex") -> Polynomial:
        if not self._t:
            return self
        return self.scale(self.field.inv(self.leading_coeff(order)))

    # text ------------------------------------------------------------------
    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for e, c in self.terms("degrevlex"):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(self.ring.names, e) if k)
            neg, mag = _split_sign(c, self.field)
            if not mono:
                body = _fmt_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_scalar(mag)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, {self.ring!r})"


def _trunc(f: Polynomial, degree: int | None) -> Polynomial:
    if degree is None:
        return f
    return Polynomial(f.ring, {e: c for e, c in f._t.items() if sum(e) <= degree})


def _split_sign(c, field: Field):
    if field.characteristic:
        return False, c
    return (c < 0, -c) if c < 0 else (False, c)


def _fmt_scalar(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def poly_sum(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    total = ring.zero
    for f in polys:
        total = total + f
    return total


def det(matrix: Sequence[Sequence[Polynomial]], ring: PolyRing) -> Polynomial:
    """Determinant by cofactor expansion; fine for the 2x2 and 3x3 cases used here."""
    n = len(matrix)
    if n == 0:
        return ring.one
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = ring.zero
    for j in range(n):
        a = matrix[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = a * det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class PolynomialSyntaxError(ValueError):
    pass


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, str]]:
        out = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m:
                raise PolynomialSyntaxError(
                    f"unexpected character {text[i:].lstrip()[:1]!r} at offset {i} in {text!r}")
            num, name, op = m.groups()
            if num is not None:
                out.append(("num", num))
            elif name is not None:
                out.append(("name", name))
            else:
                out.append(("op", "^" if op == "**" else op))
            i = m.end()
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, tok = self.take()
        if tok != value:
            raise PolynomialSyntaxError(f"expected {value!r}, got {tok!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise PolynomialSyntaxError(
                f"trailing input {self.tokens[self.pos][1]!r} in {self.text!r}")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            if op == "*":
                result = result * self.factor()
            else:
                kind, tok = self.take()
                if kind != "num":
                    raise PolynomialSyntaxError(
                        f"only division by integer literals is allowed in {self.text!r}")
                if int(tok) == 0:
                    raise PolynomialSyntaxError("division by zero")
                result = result / int(tok)
        return result

    def factor(self) -> Polynomial:
        if self.peek()[1] == "-":
            self.take()
            return -self.factor()
        if self.peek()[1] == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, tok = self.take()
            if kind != "num":
                raise PolynomialSyntaxError(f"exponent must be an integer in {self.text!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> Polynomial:
        kind, tok = self.take()
        if kind == "num":
            return self.ring.const(int(tok))
        if kind == "name":
            try:
                return self.ring.var(tok)
            except KeyError:
                raise PolynomialSyntaxError(
                    f"unknown variable {tok!r}; ring has {self.ring.names}") from None
        if tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected token {tok!r} in {self.text!r}")


def iter_monomials(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree exactly ``degree``."""
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree, -1, -1):
        for rest in iter_monomials(nvars - 1, degree - k):
            yield (k,) + rest
