"""Buchberger's algorithm, ideals, and zero-dimensional quotient lengths.

Normal selection strategy with the product and chain criteria. Problem sizes
here are small (two or three variables, degrees up to ~20), so there is no
F4-style linear algebra.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import (Monomial, Polynomial, PolyRing, RingMismatchError, det,
                   divides, get_order, iter_monomials, mono_div, mono_lcm,
                   mono_mul)


class GroebnerBudgetError(RuntimeError):
    """A Groebner computation exceeded its configured resource budget."""


class PositiveDimensionalError(ValueError):
    """Raised when a length is requested for a positive-dimensional quotient."""


@dataclass(frozen=True)
class GroebnerBudget:
    max_pairs: int = 200_000
    max_degree: int = 60


DEFAULT_BUDGET = GroebnerBudget()


# -- internal engine on raw dicts ------------------------------------------------

class _Engine:
    def __init__(self, ring: PolyRing, order):
        self.ring = ring
        self.order = get_order(order)
        self.key = self.order.key
        self.heapkey = self.order.heapkey
        field = ring.field
        self.inv = field.inv
        self.norm = field.normalize

    def lead(self, f: dict) -> Monomial:
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lm = self.lead(f)
        c = self.inv(f[lm])
        norm = self.norm
        return {e: norm(v * c) for e, v in f.items()}

    def reduce(self, f: dict, basis: list[tuple[Monomial, dict]], full: bool = True) -> dict:
        """Remainder of ``f`` on division by a monic ``basis`` of (lm, terms)."""
        h = dict(f)
        heap = [(self.heapkey(e), e) for e in h]
        heapq.heapify(heap)
        rem = {}
        norm = self.norm
        heapkey = self.heapkey
        while heap:
            _, e = heapq.heappop(heap)
            c = h.pop(e, None)
            if c is None:
                continue
            for lm, g in basis:
                if divides(lm, e):
                    q = mono_div(e, lm)
                    for eg, cg in g.items():
                        if eg == lm:
                            continue
                        ne = mono_mul(eg, q)
                        old = h.get(ne)
                        v = norm((old or 0) - c * cg)
                        if v:
                            h[ne] = v
                            if old is None:
                                heapq.heappush(heap, (heapkey(ne), ne))
                        elif old is not None:
                            del h[ne]
                    break
            else:
                rem[e] = c
                if not full:
                    rem.update(h)
                    return rem
        return rem

    def spoly(self, f: tuple[Monomial, dict], g: tuple[Monomial, dict]) -> dict:
        (lf, tf), (lg, tg) = f, g
        lcm = mono_lcm(lf, lg)
        qf, qg = mono_div(lcm, lf), mono_div(lcm, lg)
        norm = self.norm
        out = {}
        for e, c in tf.items():
            if e != lf:
                out[mono_mul(e, qf)] = c
        for e, c in tg.items():
            if e == lg:
                continue
            ne = mono_mul(e, qg)
            v = norm(out.get(ne, 0) - c)
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return out

    def buchberger(self, gens: Iterable[dict], budget: GroebnerBudget) -> list[tuple[Monomial, dict]]:
        basis: list[tuple[Monomial, dict]] = []
        key = self.key
        pairs: list = []
        pending: set = set()
        processed = 0

        def add(h: dict):
            h = self.monic(h)
            lm = self.lead(h)
            k = len(basis)
            basis.append((lm, h))
            for i in range(k):
                lcm = mono_lcm(basis[i][0], lm)
                if sum(lcm) > budget.max_degree:
                    raise GroebnerBudgetError(
                        f"S-pair degree {sum(lcm)} exceeds max_degree={budget.max_degree}")
                heapq.heappush(pairs, (key(lcm), i, k, lcm))
                pending.add((i, k))

        for f in gens:
            if not f:
                continue
            r = self.reduce(f, basis)
            if r:
                if _is_constant(r):
                    return self._unit()
                add(r)

        while pairs:
            _, i, j, lcm = heapq.heappop(pairs)
            pending.discard((i, j))
            li, lj = basis[i][0], basis[j][0]
            # product criterion
            if all(a == 0 or b == 0 for a, b in zip(li, lj)):
                continue
            # chain criterion
            skip = False
            for k in range(len(basis)):
                if k == i or k == j:
                    continue
                if divides(basis[k][0], lcm):
                    a, b = (i, k) if i < k else (k, i)
                    c, d = (j, k) if j < k else (k, j)
                    if (a, b) not in pending and (c, d) not in pending:
                        skip = True
                        break
            if skip:
                continue
            processed += 1
            if processed > budget.max_pairs:
                raise GroebnerBudgetError(
                    f"more than max_pairs={budget.max_pairs} S-pairs reduced")
            h = self.reduce(self.spoly(basis[i], basis[j]), basis)
            if h:
                if _is_constant(h):
                    return self._unit()
                add(h)
        return self.reduced(basis)

    def reduced(self, basis: list[tuple[Monomial, dict]]) -> list[tuple[Monomial, dict]]:
        # minimal: drop elements whose leading monomial is divisible by another's
        keep = []
        for idx, (lm, g) in enumerate(basis):
            redundant = False
            for jdx, (lm2, _) in enumerate(basis):
                if jdx == idx:
                    continue
                if divides(lm2, lm) and (lm2 != lm or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((lm, g))
        out = []
        for idx, (lm, g) in enumerate(keep):
            others = [b for jdx, b in enumerate(keep) if jdx != idx]
            tail = {e: c for e, c in g.items() if e != lm}
            r = self.reduce(tail, others) if others else tail
            r[lm] = 1
            out.append((lm, r))
        out.sort(key=lambda b: self.key(b[0]), reverse=True)
        return out

    def _unit(self) -> list[tuple[Monomial, dict]]:
        one = (0,) * self.ring.nvars
        return [(one, {one: self.ring.field.one})]


def _is_constant(h: dict) -> bool:
    return len(h) == 1 and not any(next(iter(h)))


# -- public API ----------------------------------------------------------------

class Ideal:
    """A finitely generated ideal with cached reduced Groebner bases per order."""

    def __init__(self, gens: Sequence[Polynomial], ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an ideal with no generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        self._gb: dict[str, tuple[Polynomial, ...]] = {}

    def __repr__(self) -> str:
        return f"Ideal([{', '.join(str(g) for g in self.gens)}])"

    def groebner(self, order="degrevlex", budget: GroebnerBudget = DEFAULT_BUDGET) -> tuple[Polynomial, ...]:
        name = get_order(order).name
        if name not in self._gb:
            eng = _Engine(self.ring, name)
            raw = eng.buchberger((g.as_dict() for g in self.gens), budget)
            self._gb[name] = tuple(
                self.ring.from_dict(t) for _, t in raw)
        return self._gb[name]

    def has_basis(self, order="degrevlex") -> bool:
        return get_order(order).name in self._gb

    def leading_monomials(self, order="degrevlex") -> list[Monomial]:
        return [g.leading_monomial(order) for g in self.groebner(order)]

    def reduce(self, f: Polynomial, order="degrevlex") -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        eng = _Engine(self.ring, order)
        basis = [(g.leading_monomial(order), g.as_dict()) for g in self.groebner(order)]
        return self.ring.from_dict(eng.reduce(f.as_dict(), basis))

    def contains(self, f: Polynomial, order="degrevlex") -> bool:
        return not self.reduce(f, order)

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise RingMismatchError("ideals in different rings")
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise RingMismatchError("ideals in different rings")
        return Ideal([f * g for f in self.gens for g in other.gens], self.ring)

    def translate(self, shift: Sequence) -> Ideal:
        """The ideal moved so that the point ``shift`` sits at the origin."""
        return Ideal([g.translate(shift) for g in self.gens], self.ring)


def buchberger(ideal: Ideal, order="degrevlex", budget: GroebnerBudget = DEFAULT_BUDGET) -> Ideal:
    """Compute and cache the reduced Groebner basis of ``ideal`` under ``order``."""
    ideal.groebner(order, budget)
    return ideal


def quotient_dimension(ideal: Ideal, order="degrevlex") -> int:
    """Krull dimension of R/I read off the leading-monomial ideal.

    Returns -1 for the unit ideal (empty scheme).
    """
    lms = ideal.leading_monomials(order)
    n = ideal.ring.nvars
    if not lms:
        return n
    if any(not any(e) for e in lms):
        return -1
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            allowed = set(subset)
            # S is independent if no leading monomial lives only in S-variables
            if not any(all(k == 0 or v in allowed for v, k in enumerate(e)) for e in lms):
                return size
    return 0


def standard_monomials(ideal: Ideal, order="degrevlex") -> list[Monomial]:
    """Monomials outside the leading-term ideal; requires a finite staircase."""
    lms = ideal.leading_monomials(order)
    n = ideal.ring.nvars
    if any(not any(e) for e in lms):
        return []
    bounds = []
    for v in range(n):
        pure = [e[v] for e in lms if all(k == 0 for w, k in enumerate(e) if w != v)]
        if not pure:
            raise PositiveDimensionalError(
                f"quotient is positive dimensional (no pure power of {ideal.ring.names[v]})")
        bounds.append(min(pure))
    out = []
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(divides(lm, e) for lm in lms):
            out.append(e)
    return out


def quotient_length(ideal: Ideal, order="degrevlex") -> int:
    """Vector-space dimension of R/I for zero-dimensional (or unit) I."""
    return len(standard_monomials(ideal, order))


def local_length(ideal: Ideal, point: Sequence, order="degrevlex",
                 budget: GroebnerBudget = DEFAULT_BUDGET, max_power: int = 64) -> int:
    """Length of the localization of R/I at a rational point.

    Computes dim R/(I + m^k) for increasing k; the sequence is nondecreasing
    and constant from the first k where two consecutive values agree.
    """
    moved = ideal.translate(point)
    ring = ideal.ring
    prev = None
    for k in range(1, max_power + 1):
        mk = [ring.monomial(e) for e in iter_monomials(ring.nvars, k)]
        cur = quotient_length(buchberger(Ideal(list(moved.gens) + mk, ring), order, budget), order)
        if cur == prev:
            return cur
        prev = cur
    raise GroebnerBudgetError(f"local length did not stabilize by power {max_power}")


def jacobian_minors(maps: Sequence[Polynomial]) -> Ideal:
    """Ideal of 2x2 minors of the 3x2 Jacobian of an affine map A^2 -> A^3."""
    if len(maps) != 3:
        raise ValueError(f"expected exactly 3 coordinate polynomials, got {len(maps)}")
    ring = maps[0].ring
    if ring.nvars != 2:
        raise ValueError(f"expected a ring in 2 variables, got {ring.names}")
    jac = [[f.diff(0), f.diff(1)] for f in maps]
    minors = [det([jac[a], jac[b]], ring) for a, b in ((0, 1), (0, 2), (1, 2))]
    return Ideal(minors, ring)


def ramification_ideal(forms: Sequence[Polynomial]) -> Ideal:
    """Rank <= k-1 locus of the homogeneous-coordinate Jacobian of a chart map.

    For a chart map ``(s, t) -> [F_0 : ... : F_k]`` into P^k with ``k + 1``
    forms, the map drops rank where the (k+1) x 3 matrix ``[F | F_s | F_t]``
    has rank <= 2, i.e. where all its 3x3 minors vanish. With ``F_0 = 1``
    this is the ideal of 2x2 minors of the affine Jacobian.
    """
    ring = forms[0].ring
    if ring.nvars != 2:
        raise ValueError(f"expected a ring in 2 variables, got {ring.names}")
    rows = [[f, f.diff(0), f.diff(1)] for f in forms]
    minors = [det([rows[a], rows[b], rows[c]], ring)
              for a, b, c in itertools.combinations(range(len(rows)), 3)]
    return Ideal(minors, ring)
