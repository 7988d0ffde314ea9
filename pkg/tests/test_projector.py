import random
from fractions import Fraction

import pytest

from pinchscheme.catalog import CHART, ParamSurface, del_pezzo, plane_chart, scroll, veronese
from pinchscheme.exactalg import GF, GroebnerBudget, GroebnerBudgetError, rank
from pinchscheme.projector import (NotImmersiveError, derive_seed, exceptional_rank,
                                   jet_normalize, project, ram_length, ram_length_resampled,
                                   random_chart_point)


def test_projection_matrices_have_full_rank():
    _, P = veronese()
    F = GF()
    for seed in range(1000):
        E = project(P, seed=seed)
        assert rank(E.matrix, F) == 4
    assert project(P, seed=5) == project(P, seed=5)


def test_identity_when_already_in_p3():
    model, P = del_pezzo(3)
    E = project(P, seed=11)
    assert E.matrix == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    rep = ram_length(E)
    # cubic surface: no pinch points; only the base points are left in the chart
    assert rep.zero_dimensional and rep.length == 0 == rep.predicted
    assert rep.base_correction == rep.chart_length


def test_quadric_has_no_ramification():
    _, P = scroll(1, 1)
    rep = ram_length(project(P, seed=0))
    assert rep.length == 0 and rep.agrees


@pytest.mark.parametrize("spec,expected", [
    (lambda: scroll(1, 2), 2), (lambda: scroll(2, 2), 4), (lambda: scroll(1, 3), 4),
    (lambda: veronese(), 6), (lambda: del_pezzo(4), 4), (lambda: del_pezzo(5), 8),
])
def test_ram_lengths(spec, expected):
    _, P = spec()
    for seed in range(3):
        rep = ram_length_resampled(P, seed=seed)
        assert rep.length == expected
        assert rep.agrees and rep.as_dict()["agreement"]


def test_seeded_runs_are_reproducible():
    _, P = del_pezzo(6)
    a = ram_length_resampled(P, seed=42).as_dict()
    b = ram_length_resampled(P, seed=42).as_dict()
    assert a == b


def test_derive_seed():
    assert derive_seed(7, 0) == 7
    seen = {derive_seed(7, k) for k in range(8)}
    assert len(seen) == 8
    assert all(0 <= s < 2 ** 64 for s in seen)


def test_budget_error_propagates():
    _, P = veronese()
    with pytest.raises(GroebnerBudgetError):
        ram_length(project(P, seed=0), GroebnerBudget(max_pairs=1))


def test_retries_must_be_positive():
    _, P = scroll(1, 2)
    with pytest.raises(ValueError):
        ram_length_resampled(P, retries=0)


def test_veronese_jets_at_origin():
    _, P = veronese()
    J = jet_normalize(P, (0, 0))
    assert [str(g) for g in J.g] == ["s^2", "s*t", "t^2"]
    R = exceptional_rank(J)
    assert [str(h) for h in R.h] == ["u^2", "u", "1"]
    assert not R.ramified_along_E and R.degenerate_directions == 0


def test_plane_chart_is_ramified():
    R = exceptional_rank(jet_normalize(plane_chart(4), (1, 2)))
    assert R.ramified_along_E
    assert all(not h for h in R.h)


def _all_in_m2(J):
    return all(not g or g.min_degree() >= 2 for g in J.g)


@pytest.mark.parametrize("make", [veronese] + [lambda a=a, b=b: scroll(a, b)
                                               for a in range(1, 4) for b in range(a, 4)])
def test_jets_at_random_points(make):
    _, P = make()
    rng = random.Random(9)
    for _ in range(3):
        pt = random_chart_point(P, rng)
        J = jet_normalize(P, pt)
        assert _all_in_m2(J)
        R = exceptional_rank(J)
        assert not R.ramified_along_E
        assert all(h.total_degree() <= 2 for h in R.h if h)
        if P.model.scroll and P.ambient >= 4:
            # the ruling through the point is the one direction where rank drops
            assert R.degenerate_directions == 1


def test_normal_form_reproduces_chart():
    _, P = veronese()
    J = jet_normalize(P, (Fraction(1, 2), 3), omega=5)
    assert J.omega == 5 and len(J.g) == 3
    assert J.coordinates()[0] == J.coordinates()[0].ring.one


def test_not_immersive_point():
    _, P = scroll(1, 1)
    s, t = CHART.gens()
    cusp = ParamSurface("cusp", 3, (CHART.one, s ** 2, s ** 3, t), 3, 0, P.model)
    with pytest.raises(NotImmersiveError):
        jet_normalize(cusp, (0, 0))
    with pytest.raises(ValueError):
        jet_normalize(P, (0, 0), omega=2)


def test_projected_forms_keep_chart_degree():
    # the S(1,2) chart has the cubic coordinate s^2*t, so general forms are cubic
    _, P = scroll(1, 2)
    E = project(P, seed=0)
    assert len(E.forms) == 4
    assert [f.total_degree() for f in E.forms] == [3, 3, 3, 3]
    assert all(c < E.prime for f in E.forms for _, c in f.items())
