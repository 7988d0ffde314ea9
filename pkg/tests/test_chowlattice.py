import pytest
from hypothesis import given, strategies as st

from pinchscheme.catalog import (catalog_models, del_pezzo_model, ruled_model, scroll_model,
                                 veronese_model)
from pinchscheme.chowlattice import (ModelInconsistencyError, SurfaceModel, blow_up,
                                     class_degree, classify, curve_gauss_coefficient,
                                     gauss_class, hirzebruch, inner_projection_model,
                                     pinch_number, projective_plane, recognize_rational_scroll,
                                     ruled_pinch)


# Independent oracle: truncated Chern-ring arithmetic A^0 + A^1 + A^2 of a surface.
# An element is (scalar, class vector, degree); the product uses the lattice pairing.

def _mul(S, a, b):
    a0, a1, a2 = a
    b0, b1, b2 = b
    return (a0 * b0, tuple(a0 * y + b0 * x for x, y in zip(a1, b1)),
            a0 * b2 + b0 * a2 + S.dot(a1, b1))


def _inverse(S, a):
    a0, a1, a2 = a
    assert a0 == 1
    inv1 = tuple(-x for x in a1)
    return (1, inv1, S.dot(a1, a1) - a2)


def _pow(S, a, n):
    out = (1, (0,) * S.rank, 0)
    for _ in range(n):
        out = _mul(S, out, a)
    return out


def chern_pinch(S):
    """deg of c_2(f*T_P3 - T_S): Porteous for rank drop of a map to P^3."""
    z = (1, S.hyperplane, 0)
    cT = (1, tuple(-k for k in S.canonical), S.c2)
    return _mul(S, _pow(S, z, 4), _inverse(S, cT))[2]


def chern_class_degree(S):
    """deg c_2 of the first principal parts bundle, c(L) c(Omega (x) L)."""
    zero = (0,) * S.rank
    z = S.hyperplane
    # Omega (x) L for a rank-2 bundle: c1 = K + 2z, c2 = c2(Omega) + K.z + z^2
    c_omega_l = (1, tuple(k + 2 * h for k, h in zip(S.canonical, z)),
                 S.c2 + S.zeta_K + S.degree)
    return _mul(S, (1, z, 0), c_omega_l)[2]


def derived_models():
    out = []
    for S in catalog_models(9):
        out.append(S)
        out.append(blow_up(S, 1))
        out.append(blow_up(S, 3))
        if S.ambient >= 4:
            out.append(inner_projection_model(S))
    for g in range(4):
        for d in range(3, 13):
            out.append(ruled_model(g, d))
    return out


def test_spec_values():
    assert pinch_number(scroll_model(1, 2)) == 2
    assert pinch_number(scroll_model(2, 2)) == 4
    assert pinch_number(projective_plane(2, 5)) == 6
    assert class_degree(projective_plane(2, 5)) == 3
    assert class_degree(scroll_model(1, 2)) == 3
    assert pinch_number(scroll_model(1, 1)) == 0
    assert class_degree(scroll_model(1, 1)) == 2
    assert pinch_number(del_pezzo_model(9)) == 24


@pytest.mark.parametrize("S", derived_models(), ids=lambda S: S.name)
def test_formulas_match_chern_oracle(S):
    assert pinch_number(S) == chern_pinch(S)
    assert class_degree(S) == chern_class_degree(S)


@pytest.mark.parametrize("S", derived_models(), ids=lambda S: S.name)
def test_noether_and_parity(S):
    assert (S.K2 + S.c2) % 12 == 0
    assert pinch_number(S) % 2 == 0


def test_parity_follows_from_wu():
    # zeta^2 == zeta.K mod 2 on any of these lattices, so the pinch number is even
    for S in derived_models():
        assert (S.degree - S.zeta_K) % 2 == 0


@pytest.mark.parametrize("S", [S for S in catalog_models(9) if S.ambient >= 4],
                         ids=lambda S: S.name)
def test_inner_projection_drops(S):
    T = inner_projection_model(S)
    assert pinch_number(S) - pinch_number(T) == 4
    assert S.degree - T.degree == 1
    assert T.ambient == S.ambient - 1
    assert T.c2 == S.c2 + 1


def test_inner_projection_of_veronese_is_cubic_scroll():
    T = inner_projection_model(veronese_model())
    assert (T.ambient, T.degree, pinch_number(T)) == (4, 3, 2)
    assert T.uncrumpled and T.scroll
    assert recognize_rational_scroll(T)
    assert classify(T).kind == "minimal-scroll"
    # same lattice invariants as S(1,2)
    S12 = scroll_model(1, 2)
    assert (T.K2, T.c2, T.zeta_K, class_degree(T)) == (S12.K2, S12.c2, S12.zeta_K, class_degree(S12))


def test_inner_projection_of_scroll_leaves_hypotheses():
    T = inner_projection_model(scroll_model(2, 2))
    assert not T.uncrumpled
    assert classify(T).kind == "outside-hypotheses"
    with pytest.raises(ValueError):
        inner_projection_model(del_pezzo_model(3))


@pytest.mark.parametrize("g", range(4))
@pytest.mark.parametrize("d", range(3, 13))
def test_ruled_closed_form(g, d):
    S = ruled_model(g, d)
    assert pinch_number(S) == ruled_pinch(d, g)
    twoz_k = tuple(2 * z + k for z, k in zip(S.hyperplane, S.canonical))
    assert S.dot(twoz_k, twoz_k) == 0
    # fibres are lines: z.F = 1 and K.F = -2
    assert S.dot(S.hyperplane, (0, 1)) == 1 and S.dot(S.canonical, (0, 1)) == -2


def test_ruled_spot_values():
    assert pinch_number(ruled_model(1, 7)) == 14
    assert ruled_pinch(7, 1) == 14


def test_scroll_agrees_with_rational_ruled_model():
    for a in range(1, 6):
        for b in range(a, 6):
            if a + b < 3:
                continue
            S, R = scroll_model(a, b), ruled_model(0, a + b)
            assert pinch_number(S) == pinch_number(R) == 2 * (a + b + 1) - 6
            assert class_degree(S) == class_degree(R)
            assert (S.degree, S.K2, S.zeta_K, S.c2) == (R.degree, R.K2, R.zeta_K, R.c2)


@pytest.mark.parametrize("N", range(2, 11))
def test_curve_coefficient_rational_normal(N):
    assert curve_gauss_coefficient(N, 0) == 2 * N - 2


def test_curve_coefficient_rejects_bad_input():
    with pytest.raises(ValueError):
        curve_gauss_coefficient(0, 0)
    with pytest.raises(ValueError):
        ruled_pinch(3, -1)


def test_classification_branches():
    assert classify(scroll_model(1, 3)).kind == "minimal-scroll"
    v = classify(veronese_model())
    assert (v.kind, v.i) == ("veronese", 1)
    for d in range(4, 10):
        c = classify(del_pezzo_model(d))
        assert (c.kind, c.i, c.pinch) == ("del-pezzo", d - 3, 4 * d - 12)
    assert classify(del_pezzo_model(3)).kind == "generic"
    assert classify(ruled_model(1, 7)).kind == "outside-hypotheses"


def test_ruled_branch_and_genus_bound():
    S = ruled_model(1, 7)
    flagged = SurfaceModel(S.name, S.form, S.canonical, S.hyperplane, S.c2, S.ambient,
                           uncrumpled=True, ruled=True, genus=1)
    c = classify(flagged)
    assert c.kind == "ruled" and c.genus_bound_ok
    assert c.i == (pinch_number(S) - S.bound) // 2


def test_gauss_class_invariants():
    gc = gauss_class(veronese_model())
    assert (gc.gamma11, gc.gamma2) == (6, 3)
    bad = hirzebruch(0, (1, 1), 3, "Q")
    assert gauss_class(bad).gamma11 == 0


def test_blow_up_rules():
    P2 = projective_plane(1, 3)
    B = blow_up(P2, 2)
    assert B.rank == 3 and B.c2 == 5
    assert B.dot((0, 1, 0), (0, 1, 0)) == -1
    assert B.dot(B.canonical, (0, 1, 0)) == -1
    assert B.K2 == P2.K2 - 2
    with pytest.raises(ValueError):
        blow_up(P2, 0)


def test_model_validation():
    with pytest.raises(ModelInconsistencyError):
        SurfaceModel("asym", ((1, 2), (3, 0)), (0, 0), (1, 0), 12, 3)
    with pytest.raises(ModelInconsistencyError):
        SurfaceModel("noether", ((1,),), (-3,), (1,), 4, 3)
    with pytest.raises(ModelInconsistencyError):
        SurfaceModel("low", ((1,),), (-3,), (1,), 3, 4, uncrumpled=True)
    with pytest.raises(ModelInconsistencyError):
        SurfaceModel("flags", ((1,),), (-3,), (1,), 3, 3, scroll=True)


def test_quadric_in_p3_is_generic_base_case():
    quadric = SurfaceModel("Q", ((0, 1), (1, 0)), (-2, -2), (1, 1), 4, 3, uncrumpled=True)
    assert classify(quadric).kind == "generic"


@given(st.integers(1, 6), st.integers(0, 6))
def test_blow_up_then_formula(m, k):
    S = projective_plane(m, max(3, m + 2))
    B = blow_up(S, k) if k else S
    assert pinch_number(B) == chern_pinch(B)
    # z unchanged and z.E = 0, so only K^2 - c2 moves: by -1 - 1 per point
    assert pinch_number(B) - pinch_number(S) == -2 * k
