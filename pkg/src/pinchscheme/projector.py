"""Explicit verification path: random projections to P^3 of a catalog chart,
their ramification ideals and scheme lengths over GF(p), and the local jet
computation along the exceptional curve of an inner projection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import CHART, SEED_MASK, ParamSurface
from .exactalg import (DEFAULT_BUDGET, DEFAULT_PRIME, GF, QQ, GroebnerBudget, Ideal,
                       Polynomial, PolyRing, buchberger, local_length,
                       quotient_dimension, quotient_length, ramification_ideal, rank,
                       solve)

DEFAULT_RETRIES = 8
DEFAULT_OMEGA = 4


def derive_seed(seed: int, attempt: int) -> int:
    """Seed for resampling attempt ``attempt`` (attempt 0 is ``seed`` itself)."""
    if attempt == 0:
        return seed & SEED_MASK
    return (seed * 6364136223846793005 + 1442695040888963407 * attempt) & SEED_MASK


@dataclass(frozen=True)
class ProjectionExperiment:
    source: ParamSurface
    prime: int
    seed: int
    matrix: tuple[tuple[int, ...], ...]
    forms: tuple[Polynomial, ...]
    resamples: int = 0

    @property
    def ring(self) -> PolyRing:
        return self.forms[0].ring

    @property
    def dehomogenizer(self) -> Polynomial:
        """The coordinate divided out to get the affine map forms[1:] / forms[0]."""
        return self.forms[0]


@dataclass(frozen=True)
class RamReport:
    experiment: ProjectionExperiment
    zero_dimensional: bool
    length: int | None
    predicted: int
    chart_length: int | None = None
    base_correction: int = 0
    attempts: int = 1

    @property
    def agrees(self) -> bool:
        return self.zero_dimensional and self.length == self.predicted

    def as_dict(self) -> dict:
        E = self.experiment
        return {
            "surface": E.source.name,
            "prime": E.prime,
            "seed": E.seed,
            "attempts": self.attempts,
            "zero_dimensional": self.zero_dimensional,
            "length": self.length,
            "predicted": self.predicted,
            "chart_length": self.chart_length,
            "base_correction": self.base_correction,
            "agreement": self.agrees,
        }


def _chart_ring(p: int) -> PolyRing:
    return PolyRing(CHART.names, GF(p))


def project(P: ParamSurface, p: int = DEFAULT_PRIME, seed: int = 0) -> ProjectionExperiment:
    """Apply a random full-rank 4 x (N+1) matrix over GF(p) to the chart.

    For N = 3 the identity is used. Rank-deficient draws, and draws whose
    first output coordinate vanishes at a random test point, are resampled.
    """
    ring = _chart_ring(p)
    field = ring.field
    coords = [f.change_ring(ring) for f in P.coords]
    n1 = P.ambient + 1
    if P.ambient == 3:
        ident = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
        return ProjectionExperiment(P, p, seed, ident, tuple(coords))
    if P.ambient < 3:
        raise ValueError(f"{P.name}: ambient dimension {P.ambient} < 3")
    rng = random.Random(seed & SEED_MASK)
    resamples = 0
    while True:
        M = [[rng.randrange(p) for _ in range(n1)] for _ in range(4)]
        test = (rng.randrange(p), rng.randrange(p))
        if rank(M, field) == 4:
            forms = []
            for row in M:
                acc = ring.zero
                for c, f in zip(row, coords):
                    if c:
                        acc = acc + f.scale(c)
                forms.append(acc)
            if forms[0].evaluate(test):
                return ProjectionExperiment(P, p, seed, tuple(map(tuple, M)),
                                            tuple(forms), resamples)
        resamples += 1


def ramification_length(E: ProjectionExperiment,
                         budget: GroebnerBudget = DEFAULT_BUDGET) -> tuple[bool, int | None, int | None, int]:
    """(zero-dimensional, corrected length, chart length, base-point correction)."""
    I = buchberger(ramification_ideal(E.forms), "degrevlex", budget)
    if quotient_dimension(I) > 0:
        return False, None, None, 0
    total = quotient_length(I)
    field = E.ring.field
    correction = 0
    for pt in E.source.base_points:
        correction += local_length(I, [field.convert(c) for c in pt], budget=budget)
    return True, total - correction, total, correction


def ram_length(E: ProjectionExperiment, budget: GroebnerBudget = DEFAULT_BUDGET) -> RamReport:
    """Length of Ram(pi . phi) on the chart, compared with the lattice pinch number.

    Chart points where every coordinate vanishes (del Pezzo base points) are
    not points of the surface; their local contribution is subtracted.
    """
    zero_dim, length, chart_len, corr = ramification_length(E, budget)
    return RamReport(E, zero_dim, length, E.source.pinch, chart_len, corr)


def ram_length_resampled(P: ParamSurface, p: int = DEFAULT_PRIME, seed: int = 0,
                         retries: int = DEFAULT_RETRIES,
                         budget: GroebnerBudget = DEFAULT_BUDGET) -> RamReport:
    """Resampling policy: redraw the projection until the length agrees, at most
    ``retries`` draws. The last report is returned either way."""
    if retries < 1:
        raise ValueError("retries must be >= 1")
    report = None
    for attempt in range(retries):
        E = project(P, p, derive_seed(seed, attempt))
        report = ram_length(E, budget)
        report = RamReport(E, report.zero_dimensional, report.length, report.predicted,
                           report.chart_length, report.base_correction, attempt + 1)
        if report.agrees:
            return report
    return report


# -- jets along the exceptional curve -------------------------------------------

class NotImmersiveError(ValueError):
    """The chart map has rank < 2 at the requested point."""


class NormalizationError(ValueError):
    """A jet chart violates the g_j in m^2 normal form."""


JET_RING = PolyRing(("t", "u"), QQ)
U_RING = PolyRing(("u",), QQ)


@dataclass(frozen=True)
class JetChart:
    """Truncated local form [1 : s : t : g_3 : ... : g_N] at a chart point."""
    surface: str
    point: tuple[Fraction, Fraction]
    omega: int
    g: tuple[Polynomial, ...]
    coordinate_order: tuple[int, ...]

    def coordinates(self) -> list[Polynomial]:
        s, t = CHART.gens()
        return [CHART.one, s, t, *self.g]


@dataclass(frozen=True)
class ExceptionalRank:
    h: tuple[Polynomial, ...]
    ramified_along_E: bool
    degenerate_directions: int | None
    derivative: tuple[tuple[Polynomial, Polynomial], ...] = field(repr=False)

    def describe(self) -> str:
        if self.ramified_along_E:
            return "ramified along E (all h-polynomials vanish)"
        return (f"unramified along E (h-polynomials nonzero; rank drops at "
                f"{self.degenerate_directions} direction(s) with multiplicity)")


def _series_inverse(c: Polynomial, omega: int) -> Polynomial:
    c0 = c.coeff((0, 0))
    r = (c - c0) / c0
    term = CHART.one
    total = CHART.one
    for _ in range(omega):
        term = (term * -r).truncate(omega)
        if not term:
            break
        total = total + term
    return total / c0


def _linear_part(f: Polynomial) -> tuple[Fraction, Fraction]:
    return f.coeff((1, 0)), f.coeff((0, 1))


def jet_normalize(P: ParamSurface, point: Sequence = (0, 0), omega: int = DEFAULT_OMEGA) -> JetChart:
    """Normal form [1 : s : t : g_3 : ... : g_N], g_j in m^2, truncated at degree omega."""
    if omega < 3:
        raise ValueError("truncation order must be >= 3")
    x = tuple(Fraction(c) for c in point)
    F = [f.translate(x) for f in P.coords]
    if P.jacobian_rank(x) < 3:
        raise NotImmersiveError(f"{P.name} is not immersive at {x}")
    values = [f.coeff((0, 0)) for f in F]
    j0 = next(i for i, v in enumerate(values) if v)
    rest = [i for i in range(len(F)) if i != j0]
    c0 = F[j0]
    affine = {i: ((F[i] - c0.scale(values[i] / values[j0])) * _series_inverse(c0, omega)).truncate(omega)
              for i in rest}
    lin = {i: _linear_part(affine[i]) for i in rest}
    r1 = next(i for i in rest if any(lin[i]))
    r2 = next(i for i in rest if i != r1 and
              lin[r1][0] * lin[i][1] - lin[r1][1] * lin[i][0] != 0)
    A = [list(lin[r1]), list(lin[r2])]
    others = [i for i in rest if i not in (r1, r2)]

    # target change: strip linear parts from the remaining coordinates
    At = [[A[0][0], A[1][0]], [A[0][1], A[1][1]]]
    g_raw = []
    for j in others:
        alpha, beta = solve(At, list(lin[j]), QQ)
        g_raw.append(affine[j] - affine[r1].scale(alpha) - affine[r2].scale(beta))

    # source change: local parameters become (f_r1, f_r2); invert by fixed point
    s, t = CHART.gens()
    det_a = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    inv_a = [[A[1][1] / det_a, -A[0][1] / det_a], [-A[1][0] / det_a, A[0][0] / det_a]]
    high = [affine[r1] - (s.scale(A[0][0]) + t.scale(A[0][1])),
            affine[r2] - (s.scale(A[1][0]) + t.scale(A[1][1]))]
    psi = [s.scale(inv_a[0][0]) + t.scale(inv_a[0][1]),
           s.scale(inv_a[1][0]) + t.scale(inv_a[1][1])]
    for _ in range(omega):
        hv = [h.compose(psi, truncate=omega) for h in high]
        w = [s - hv[0], t - hv[1]]
        psi = [(w[0].scale(inv_a[0][0]) + w[1].scale(inv_a[0][1])).truncate(omega),
               (w[0].scale(inv_a[1][0]) + w[1].scale(inv_a[1][1])).truncate(omega)]
    if affine[r1].compose(psi, truncate=omega) != s or affine[r2].compose(psi, truncate=omega) != t:
        raise NormalizationError("local parameter inversion did not converge")
    g = tuple(gj.compose(psi, truncate=omega) for gj in g_raw)
    for gj in g:
        if gj and gj.min_degree() < 2:
            raise NormalizationError(f"normalized coordinate {gj} is not in m^2")
    return JetChart(P.name, x, omega, g, (j0, r1, r2, *others))


def exceptional_rank(J: JetChart) -> ExceptionalRank:
    """Restrict the resolved inner projection to the exceptional curve.

    Substitutes s = t*u, writes g_j(tu, t) = t^2 h_j(t, u) and returns the
    h_j(0, u), the second column of the derivative at t = 0. The map is
    ramified along E iff they all vanish, i.e. iff every g_j lies in m^3.
    """
    t, u = JET_RING.gens()
    hs = []
    for gj in J.g:
        sub = gj.compose([t * u, t])
        h0 = {}
        for (et, eu), c in sub.items():
            if et < 2:
                raise NormalizationError("g_j(tu, t) is not divisible by t^2")
            if et == 2:
                h0[(eu,)] = c
        hs.append(U_RING.from_dict(h0))
    ramified = all(not h for h in hs)
    degenerate = None
    if not ramified:
        gcd = Ideal([h for h in hs if h], U_RING).groebner()[0]
        degenerate = gcd.total_degree()
    derivative = ((U_RING.one, U_RING.zero),) + tuple((U_RING.zero, h) for h in hs)
    return ExceptionalRank(tuple(hs), ramified, degenerate, derivative)


def random_chart_point(P: ParamSurface, rng: random.Random, span: int = 9) -> tuple[Fraction, Fraction]:
    """Small random integer point where the chart is immersive (resampled otherwise)."""
    for _ in range(100):
        pt = (Fraction(rng.randint(-span, span)), Fraction(rng.randint(-span, span)))
        if pt not in P.base_points and P.jacobian_rank(pt) == 3:
            return pt
    raise NotImmersiveError(f"{P.name}: no immersive point found")
