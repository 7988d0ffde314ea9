"""Intersection numbers on Picard-lattice models of surfaces.

A :class:`SurfaceModel` carries exactly what the pinch-point and class
formulas consume: the intersection form, canonical class, hyperplane class
and the Euler number c2. Classes are integer coordinate vectors in the
lattice basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Sequence


class ModelInconsistencyError(ValueError):
    """Lattice data contradicts an invariant or a classification theorem."""


def _vec(v: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(x) for x in v)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in v):
        raise ModelInconsistencyError(f"class {v!r} must be an integer vector")
    return out


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    form: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    hyperplane: tuple[int, ...]
    c2: int
    ambient: int
    uncrumpled: bool = False
    ruled: bool = False
    scroll: bool = False
    genus: int | None = None
    # descriptive only (b - a for S(a,b)); not serialized, not compared
    eccentricity: int | None = field(default=None, compare=False)

    def __post_init__(self):
        form = tuple(_vec(row) for row in self.form)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "canonical", _vec(self.canonical))
        object.__setattr__(self, "hyperplane", _vec(self.hyperplane))
        r = len(form)
        if r == 0:
            raise ModelInconsistencyError(f"{self.name}: empty lattice")
        if any(len(row) != r for row in form):
            raise ModelInconsistencyError(f"{self.name}: intersection matrix is not square")
        for i in range(r):
            for j in range(i):
                if form[i][j] != form[j][i]:
                    raise ModelInconsistencyError(
                        f"{self.name}: intersection matrix not symmetric at ({i},{j})")
        if len(self.canonical) != r or len(self.hyperplane) != r:
            raise ModelInconsistencyError(f"{self.name}: class vectors must have length {r}")
        if self.ambient < 3:
            raise ModelInconsistencyError(f"{self.name}: ambient dimension must be >= 3")
        if self.degree < 1:
            raise ModelInconsistencyError(f"{self.name}: hyperplane class has degree {self.degree} < 1")
        if self.uncrumpled and self.degree < self.ambient - 1:
            raise ModelInconsistencyError(
                f"{self.name}: degree {self.degree} below N-1 = {self.ambient - 1} "
                "for a non-degenerate surface")
        if (self.K2 + self.c2) % 12:
            raise ModelInconsistencyError(
                f"{self.name}: Noether fails, K^2 + c2 = {self.K2 + self.c2} not divisible by 12")
        if self.scroll and not self.ruled:
            raise ModelInconsistencyError(f"{self.name}: scroll flag requires ruled flag")
        if self.ruled and self.genus is None:
            raise ModelInconsistencyError(f"{self.name}: ruled model needs a base genus")
        if self.genus is not None and self.genus < 0:
            raise ModelInconsistencyError(f"{self.name}: negative genus")

    @property
    def rank(self) -> int:
        return len(self.form)

    def dot(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.form[i][j] * b[j]
                   for i in range(self.rank) for j in range(self.rank))

    @property
    def degree(self) -> int:
        return self.dot(self.hyperplane, self.hyperplane)

    @property
    def K2(self) -> int:
        return self.dot(self.canonical, self.canonical)

    @property
    def zeta_K(self) -> int:
        return self.dot(self.hyperplane, self.canonical)

    @property
    def bound(self) -> int:
        return 2 * self.ambient - 6


@dataclass(frozen=True)
class GaussClass:
    """Coefficients of the Gauss class on the dual Schubert basis of A_2(G(2,N))."""
    gamma11: int
    gamma2: int
    ambient: int


@dataclass(frozen=True)
class Classification:
    kind: str
    i: int | None
    pinch: int
    bound: int
    genus_bound_ok: bool | None = None
    note: str = ""


KINDS = ("minimal-scroll", "ruled", "veronese", "del-pezzo", "generic", "outside-hypotheses")


def pinch_number(S: SurfaceModel) -> int:
    """6 z^2 + 4 zK + K^2 - c2."""
    return 6 * S.degree + 4 * S.zeta_K + S.K2 - S.c2


def class_degree(S: SurfaceModel) -> int:
    """Degree of the dual variety: c2 of the first jet bundle, 3 z^2 + 2 zK + c2."""
    return 3 * S.degree + 2 * S.zeta_K + S.c2


def gauss_class(S: SurfaceModel) -> GaussClass:
    g11, g2 = pinch_number(S), class_degree(S)
    if g11 % 2:
        raise ModelInconsistencyError(f"{S.name}: pinch number {g11} is odd")
    if S.uncrumpled:
        if g11 < S.bound:
            raise ModelInconsistencyError(
                f"{S.name}: pinch number {g11} below 2N-6 = {S.bound}")
        if g2 < S.ambient - 2:
            raise ModelInconsistencyError(
                f"{S.name}: class {g2} below N-2 = {S.ambient - 2}")
    return GaussClass(g11, g2, S.ambient)


def curve_gauss_coefficient(d: int, g: int) -> int:
    """Branch points of a general projection of a degree-d genus-g curve to P^1."""
    if d < 1 or g < 0:
        raise ValueError(f"need d >= 1 and g >= 0, got d={d}, g={g}")
    return 2 * d + 2 * g - 2


def ruled_pinch(d: int, g: int) -> int:
    """Closed form of the pinch number for a P^1-bundle over a genus-g curve."""
    if d < 1 or g < 0:
        raise ValueError(f"need d >= 1 and g >= 0, got d={d}, g={g}")
    return 2 * d + 4 * g - 4


def blow_up(S: SurfaceModel, k: int = 1) -> SurfaceModel:
    """Blow up k general points: k new orthogonal (-1)-classes E_i with K += E_i."""
    if k < 1:
        raise ValueError(f"blow_up needs k >= 1, got {k}")
    r = S.rank
    form = [list(row) + [0] * k for row in S.form]
    for i in range(k):
        row = [0] * (r + k)
        row[r + i] = -1
        form.append(row)
    return SurfaceModel(
        name=f"Bl{k}({S.name})",
        form=tuple(tuple(row) for row in form),
        canonical=S.canonical + (1,) * k,
        hyperplane=S.hyperplane + (0,) * k,
        c2=S.c2 + k,
        ambient=S.ambient,
    )


def inner_projection_model(S: SurfaceModel, uncrumpled: bool | None = None) -> SurfaceModel:
    """Resolved projection from a general point of the surface.

    The hyperplane class becomes beta^* z - E and the ambient dimension drops
    by one. By default the result stays uncrumpled exactly when the source is
    uncrumpled and not ruled by lines; pass ``uncrumpled`` to override.
    """
    if S.ambient <= 3:
        raise ValueError(f"{S.name}: inner projection needs N >= 4, got N = {S.ambient}")
    B = blow_up(S, 1)
    keep = S.uncrumpled and not S.ruled if uncrumpled is None else uncrumpled
    T = SurfaceModel(
        name=f"inner({S.name})",
        form=B.form,
        canonical=B.canonical,
        hyperplane=S.hyperplane + (-1,),
        c2=B.c2,
        ambient=S.ambient - 1,
    )
    if keep and T.degree >= T.ambient - 1:
        scroll = recognize_rational_scroll(T)
        T = replace(T, uncrumpled=True, ruled=scroll, scroll=scroll,
                    genus=0 if scroll else None)
    before, after = pinch_number(S), pinch_number(T)
    if after != before - 4 or T.degree != S.degree - 1:
        raise ModelInconsistencyError(
            f"{S.name}: inner projection changed pinch {before}->{after}, "
            f"degree {S.degree}->{T.degree}")
    return T


def recognize_rational_scroll(S: SurfaceModel, search: int | None = None) -> bool:
    """Whether the lattice data is that of a rational normal scroll.

    Looks for a fibre class f with f^2 = 0, z.f = 1, K.f = -2 on a rank-2
    lattice with K^2 = 8 and c2 = 4 (a Hirzebruch surface whose rulings map
    to lines), and requires minimal degree N - 1.
    """
    if S.rank != 2 or S.K2 != 8 or S.c2 != 4 or S.degree != S.ambient - 1:
        return False
    bound = search or 2 + max(abs(x) for row in S.form for x in row) + \
        max(abs(x) for x in S.hyperplane + S.canonical)
    for f in itertools.product(range(-bound, bound + 1), repeat=2):
        if any(f) and S.dot(f, f) == 0 and S.dot(S.hyperplane, f) == 1 \
                and S.dot(S.canonical, f) == -2:
            return True
    return False


def classify(S: SurfaceModel) -> Classification:
    """Place an uncrumpled model in the minimal / near-minimal classification.

    ``i`` is half the excess of the pinch number over 2N - 6. Models without
    the uncrumpled flag come back as ``outside-hypotheses``.
    """
    P, N = pinch_number(S), S.ambient
    diff = P - S.bound
    if diff % 2:
        raise ModelInconsistencyError(f"{S.name}: pinch excess {diff} is odd")
    i = diff // 2
    if not S.uncrumpled:
        return Classification("outside-hypotheses", i, P, S.bound,
                              note="model not flagged uncrumpled")
    if i < 0:
        raise ModelInconsistencyError(
            f"{S.name}: pinch number {P} below the bound 2N-6 = {S.bound}")
    if S.scroll:
        if i != 0:
            raise ModelInconsistencyError(f"{S.name}: scroll with excess i = {i}")
        return Classification("minimal-scroll", 0, P, S.bound, genus_bound_ok=True)
    if N == 3:
        # the equality classification is only claimed for N >= 4
        return Classification("generic", i, P, S.bound, note="N = 3 base case")
    if i == 0:
        if recognize_rational_scroll(S):
            return Classification("minimal-scroll", 0, P, S.bound, genus_bound_ok=True,
                                  note="recognized from lattice data")
        raise ModelInconsistencyError(
            f"{S.name}: attains 2N-6 = {S.bound} but is not a rational normal scroll")
    if S.ruled:
        ok = 2 * S.genus <= i
        return Classification("ruled", i, P, S.bound, genus_bound_ok=ok)
    if N == 5 and i == 1:
        return Classification("veronese", 1, P, S.bound)
    if i == N - 3 and 4 <= N <= 9:
        if S.hyperplane != tuple(-k for k in S.canonical):
            raise ModelInconsistencyError(
                f"{S.name}: excess i = N-3 = {i} but hyperplane class is not -K")
        return Classification("del-pezzo", i, P, S.bound)
    if N >= 3 + i:
        raise ModelInconsistencyError(
            f"{S.name}: i = {i}, N = {N} falls in the near-minimal range but the model "
            "is neither ruled, the Veronese surface, nor a del Pezzo surface")
    return Classification("generic", i, P, S.bound)


# -- standard lattices -------------------------------------------------------

def projective_plane(hyperplane_multiple: int = 1, ambient: int | None = None,
                     name: str | None = None) -> SurfaceModel:
    """P^2 with hyperplane class m*h."""
    m = hyperplane_multiple
    N = ambient if ambient is not None else (m + 1) * (m + 2) // 2 - 1
    return SurfaceModel(name=name or f"P2(O({m}))", form=((1,),), canonical=(-3,),
                        hyperplane=(m,), c2=3, ambient=max(N, 3))


def hirzebruch(e: int, hyperplane: Sequence[int], ambient: int, name: str) -> SurfaceModel:
    """F_e in the basis (C0, f) with C0^2 = -e, f^2 = 0, C0.f = 1."""
    if e < 0:
        raise ValueError("Hirzebruch index must be >= 0")
    return SurfaceModel(name=name, form=((-e, 1), (1, 0)),
                        canonical=(-2, -(e + 2)), hyperplane=tuple(hyperplane),
                        c2=4, ambient=ambient)


def lattice_invariants(S: SurfaceModel) -> tuple[int, ...]:
    """(rank, det Q, z^2, zK, K^2, c2): equal for isometric models."""
    return (S.rank, _det(S.form), S.degree, S.zeta_K, S.K2, S.c2)


def _det(m) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n) if m[0][j])
