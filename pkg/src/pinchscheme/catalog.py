"""Rational normal scrolls, the Veronese surface, del Pezzo surfaces and
ruled lattice models, each as a lattice model and (where available) an
explicit affine chart ``(s, t) -> [F_0 : ... : F_N]`` over QQ.
"""

from __future__ import annotations

import json
import random
from itertools import combinations
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .chowlattice import (ModelInconsistencyError, SurfaceModel, blow_up,
                          hirzebruch, pinch_number, projective_plane)
from .exactalg import QQ, Ideal, PolyRing, Polynomial, nullspace, quotient_dimension, rank

CHART = PolyRing(("s", "t"), QQ)

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class ParamSurface:
    """Explicit chart of a catalog surface.

    ``base_points`` are the chart points where every coordinate vanishes
    (blown-up points of a del Pezzo chart); they lie on the exceptional
    curves, not on the surface chart proper.
    """
    name: str
    ambient: int
    coords: tuple[Polynomial, ...]
    degree: int
    pinch: int
    model: SurfaceModel
    base_points: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if len(self.coords) != self.ambient + 1:
            raise ValueError(f"{self.name}: need N+1 = {self.ambient + 1} coordinates, "
                             f"got {len(self.coords)}")

    def jacobian_rank(self, point: Sequence) -> int:
        """Rank of [F | F_s | F_t] at a chart point (3 = immersive there)."""
        rows = [[f.evaluate(point), f.diff(0).evaluate(point), f.diff(1).evaluate(point)]
                for f in self.coords]
        return rank(rows, QQ)

    def check(self, rng: random.Random | None = None) -> None:
        """Assert the chart invariants: no common factor, immersive at a random point."""
        rng = rng or random.Random(0)
        base = Ideal(list(self.coords), CHART)
        if quotient_dimension(base) > 0:
            raise ModelInconsistencyError(f"{self.name}: chart coordinates share a factor")
        for _ in range(10):
            pt = (Fraction(rng.randint(-50, 50)), Fraction(rng.randint(-50, 50)))
            if pt in self.base_points:
                continue
            if self.jacobian_rank(pt) == 3:
                return
        raise ModelInconsistencyError(f"{self.name}: chart is not immersive at random points")


def _mono(a: int, b: int) -> Polynomial:
    return CHART.monomial((a, b))


# -- scrolls ----------------------------------------------------------------

def scroll_model(a: int, b: int) -> SurfaceModel:
    if a < 1 or b < a:
        raise ValueError(f"scroll S(a,b) needs 1 <= a <= b, got ({a}, {b})")
    e = b - a
    base = hirzebruch(e, (1, b), a + b + 1, f"S({a},{b})")
    return SurfaceModel(name=base.name, form=base.form, canonical=base.canonical,
                        hyperplane=base.hyperplane, c2=base.c2, ambient=base.ambient,
                        uncrumpled=True, ruled=True, scroll=True, genus=0, eccentricity=e)


def scroll(a: int, b: int) -> tuple[SurfaceModel, ParamSurface]:
    """S(a,b) in P^(a+b+1): chart [1 : s : ... : s^a : t : ts : ... : ts^b]."""
    model = scroll_model(a, b)
    coords = [_mono(k, 0) for k in range(a + 1)] + [_mono(k, 1) for k in range(b + 1)]
    param = ParamSurface(model.name, model.ambient, tuple(coords), model.degree,
                         pinch_number(model), model)
    return model, param


# -- Veronese -----------------------------------------------------------------

def veronese_model() -> SurfaceModel:
    base = projective_plane(2, 5, name="veronese")
    return SurfaceModel(name=base.name, form=base.form, canonical=base.canonical,
                        hyperplane=base.hyperplane, c2=base.c2, ambient=5,
                        uncrumpled=True)


def veronese() -> tuple[SurfaceModel, ParamSurface]:
    model = veronese_model()
    coords = [_mono(0, 0), _mono(1, 0), _mono(0, 1), _mono(2, 0), _mono(1, 1), _mono(0, 2)]
    return model, ParamSurface(model.name, 5, tuple(coords), 4, pinch_number(model), model)


# -- del Pezzo ----------------------------------------------------------------

CUBIC_MONOMIALS = [(a, d - a) for d in range(4) for a in range(d, -1, -1)]
CONIC_MONOMIALS = [(a, d - a) for d in range(3) for a in range(d, -1, -1)]


def del_pezzo_model(d: int) -> SurfaceModel:
    if not 3 <= d <= 9:
        raise ValueError(f"del Pezzo degree must be in [3, 9], got {d}")
    P2 = projective_plane(1, 3, name="P2")
    if d == 9:
        S = P2
    else:
        S = blow_up(P2, 9 - d)
    anti = tuple(-k for k in S.canonical)
    return SurfaceModel(name=f"dP{d}", form=S.form, canonical=S.canonical,
                        hyperplane=anti, c2=S.c2, ambient=d, uncrumpled=True)


def _general_position(points: list[tuple[int, int]]) -> bool:
    if len(set(points)) != len(points):
        return False
    for p, q, r in combinations(points, 3):
        if (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) == 0:
            return False
    if len(points) >= 6:
        for six in combinations(points, 6):
            rows = [[x ** a * y ** b for a, b in CONIC_MONOMIALS] for x, y in six]
            if rank(rows, QQ) < 6:
                return False
    return True


def del_pezzo_points(d: int, seed: int = 0, retries: int = 100) -> list[tuple[int, int]]:
    """9 - d integer points in [-20, 20]^2 in general position (seeded)."""
    rng = random.Random(seed & SEED_MASK)
    for _ in range(retries):
        pts = [(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(9 - d)]
        if _general_position(pts):
            return pts
    raise RuntimeError(f"no general point configuration found in {retries} draws")


def del_pezzo(d: int, seed: int = 0) -> tuple[SurfaceModel, ParamSurface]:
    """Anticanonical del Pezzo of degree d: cubics through 9 - d general points."""
    model = del_pezzo_model(d)
    pts = del_pezzo_points(d, seed)
    rows = [[x ** a * y ** b for a, b in CUBIC_MONOMIALS] for x, y in pts]
    basis = nullspace(rows, QQ, ncols=len(CUBIC_MONOMIALS))
    if len(basis) != d + 1:
        raise ModelInconsistencyError(f"dP{d}: points impose dependent conditions on cubics")
    coords = []
    for vec in basis:
        den = lcm(*(Fraction(c).denominator for c in vec))
        coords.append(CHART.from_dict({m: c * den for m, c in zip(CUBIC_MONOMIALS, vec) if c}))
    param = ParamSurface(model.name, d, tuple(coords), d, pinch_number(model), model,
                         base_points=tuple((Fraction(x), Fraction(y)) for x, y in pts))
    return model, param


# -- ruled lattice models --------------------------------------------------------

def ruled_model(g: int, d: int, ambient: int | None = None) -> SurfaceModel:
    """P^1-bundle over a genus-g curve with a degree-d hyperplane class.

    Basis (eta, F) with eta^2 = e in {0, 1} chosen by the parity of d,
    F^2 = 0, eta.F = 1, hyperplane eta + aF with e + 2a = d, and canonical
    class -2 eta + (2g - 2 + e) F from adjunction on the section eta.
    Ambient dimension defaults to d + 1. Only the rational case is flagged
    as a scroll (and uncrumpled); higher-genus models are lattice-only.
    """
    if g < 0 or d < 3:
        raise ValueError(f"ruled_model needs g >= 0 and d >= 3, got g={g}, d={d}")
    e = d % 2
    a = (d - e) // 2
    N = d + 1 if ambient is None else ambient
    rational = g == 0
    return SurfaceModel(
        name=f"ruled(g={g},d={d})",
        form=((e, 1), (1, 0)),
        canonical=(-2, 2 * g - 2 + e),
        hyperplane=(1, a),
        c2=4 - 4 * g,
        ambient=N,
        uncrumpled=rational and N == d + 1,
        ruled=True,
        scroll=rational and N == d + 1,
        genus=g,
    )


def plane_chart(ambient: int = 4) -> ParamSurface:
    """A 2-plane [1 : s : t : 0 : ... : 0] in P^N (degenerate test chart)."""
    model = projective_plane(1, ambient, name=f"plane(P{ambient})")
    coords = [_mono(0, 0), _mono(1, 0), _mono(0, 1)] + [CHART.zero] * (ambient - 2)
    return ParamSurface(model.name, ambient, tuple(coords), 1, pinch_number(model), model)


# -- enumeration --------------------------------------------------------------

def catalog_models(max_n: int = 9, only: str | None = None) -> list[SurfaceModel]:
    """Lattice models of the shipped catalog with ambient dimension <= max_n."""
    out: list[SurfaceModel] = []
    if only in (None, "scrolls"):
        for a in range(1, max_n):
            for b in range(a, max_n):
                if a + b + 1 <= max_n:
                    out.append(scroll_model(a, b))
    if only in (None, "veronese") and max_n >= 5:
        out.append(veronese_model())
    if only in (None, "delpezzo"):
        out.extend(del_pezzo_model(d) for d in range(3, min(9, max_n) + 1))
    if only not in (None, "scrolls", "veronese", "delpezzo"):
        raise ValueError(f"unknown catalog filter {only!r}")
    return out


def surface_from_spec(spec: str, seed: int = 0) -> tuple[SurfaceModel, ParamSurface | None]:
    """Parse ``scroll:a,b | veronese | delpezzo:d | ruled:g,d | file:<path>``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "scroll":
            a, b = (int(x) for x in arg.split(","))
            return scroll(a, b)
        if kind == "veronese" and not arg:
            return veronese()
        if kind == "delpezzo":
            return del_pezzo(int(arg), seed)
        if kind == "ruled":
            g, d = (int(x) for x in arg.split(","))
            return ruled_model(g, d), None
        if kind == "file":
            with open(arg, encoding="utf-8") as fh:
                return load_descriptor(fh.read()), None
    except (ValueError, TypeError) as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise ValueError(f"bad surface spec {spec!r}: {exc}") from None
    raise ValueError(f"bad surface spec {spec!r}; expected scroll:a,b | veronese | "
                     "delpezzo:d | ruled:g,d | file:<path>")


# -- JSON descriptors -----------------------------------------------------------

class DescriptorError(ValueError):
    """A surface descriptor failed to parse or validate."""


_REQUIRED = ("name", "rank", "intersection_matrix", "canonical", "hyperplane",
             "c2", "ambient", "flags")
_FLAGS = ("uncrumpled", "ruled", "scroll")


def to_descriptor(S: SurfaceModel) -> dict:
    out = {
        "name": S.name,
        "rank": S.rank,
        "intersection_matrix": [list(row) for row in S.form],
        "canonical": list(S.canonical),
        "hyperplane": list(S.hyperplane),
        "c2": S.c2,
        "ambient": S.ambient,
        "flags": {"uncrumpled": S.uncrumpled, "ruled": S.ruled, "scroll": S.scroll},
    }
    if S.genus is not None:
        out["genus"] = S.genus
    return out


def save_descriptor(S: SurfaceModel) -> str:
    return json.dumps(to_descriptor(S), indent=2, ensure_ascii=False) + "\n"


def _int_field(obj: dict, key: str) -> int:
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise DescriptorError(f"field {key!r}: expected integer, got {v!r}")
    return v


def _int_array(obj: dict, key: str) -> list[int]:
    v = obj[key]
    if not isinstance(v, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in v):
        raise DescriptorError(f"field {key!r}: expected an integer array, got {v!r}")
    return v


def from_descriptor(obj) -> SurfaceModel:
    if not isinstance(obj, dict):
        raise DescriptorError("descriptor must be a JSON object")
    missing = [k for k in _REQUIRED if k not in obj]
    if missing:
        raise DescriptorError(f"missing field(s): {', '.join(missing)}")
    unknown = sorted(set(obj) - set(_REQUIRED) - {"genus"})
    if unknown:
        raise DescriptorError(f"unknown field(s): {', '.join(unknown)}")
    if not isinstance(obj["name"], str):
        raise DescriptorError("field 'name': expected string")
    r = _int_field(obj, "rank")
    matrix = obj["intersection_matrix"]
    if not isinstance(matrix, list) or len(matrix) != r:
        raise DescriptorError(f"field 'intersection_matrix': expected {r} rows")
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != r or \
                any(not isinstance(x, int) or isinstance(x, bool) for x in row):
            raise DescriptorError(f"field 'intersection_matrix[{i}]': expected {r} integers")
    for i in range(r):
        for j in range(i):
            if matrix[i][j] != matrix[j][i]:
                raise DescriptorError(
                    f"field 'intersection_matrix': not symmetric at [{i}][{j}]")
    for key in ("canonical", "hyperplane"):
        if len(_int_array(obj, key)) != r:
            raise DescriptorError(f"field {key!r}: expected length {r}")
    flags = obj["flags"]
    if not isinstance(flags, dict) or set(flags) != set(_FLAGS) or \
            any(not isinstance(flags[k], bool) for k in _FLAGS):
        raise DescriptorError(f"field 'flags': expected booleans {list(_FLAGS)}")
    genus = obj.get("genus")
    if genus is not None:
        genus = _int_field(obj, "genus")
    try:
        return SurfaceModel(
            name=obj["name"], form=tuple(tuple(row) for row in matrix),
            canonical=tuple(obj["canonical"]), hyperplane=tuple(obj["hyperplane"]),
            c2=_int_field(obj, "c2"), ambient=_int_field(obj, "ambient"),
            uncrumpled=flags["uncrumpled"], ruled=flags["ruled"], scroll=flags["scroll"],
            genus=genus)
    except ModelInconsistencyError as exc:
        raise DescriptorError(str(exc)) from None


def load_descriptor(text: str) -> SurfaceModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_descriptor(obj)
