import json
import random

import pytest

from pinchscheme.catalog import (CHART, DescriptorError, catalog_models, del_pezzo,
                                 del_pezzo_points, from_descriptor, load_descriptor,
                                 plane_chart, ruled_model, save_descriptor, scroll,
                                 scroll_model, surface_from_spec, to_descriptor, veronese)
from pinchscheme.chowlattice import ModelInconsistencyError, class_degree, pinch_number
from pinchscheme.exactalg import GF, Ideal, PolyRing, local_length, quotient_length

RING = PolyRing(CHART.names, GF())


def explicit_degree(P, seed=0):
    """Points of the chart cut by two random hyperplanes, minus base points."""
    rng = random.Random(seed)
    p = RING.field.p
    coords = [f.change_ring(RING) for f in P.coords]
    def hyperplane():
        return sum((f.scale(rng.randrange(1, p)) for f in coords), RING.zero)
    I = Ideal([hyperplane(), hyperplane()], RING)
    total = quotient_length(I)
    for pt in P.base_points:
        total -= local_length(I, [RING.field.convert(c) for c in pt])
    return total


def charts():
    out = [scroll(a, b) for a in range(1, 4) for b in range(a, 4)]
    out.append(veronese())
    out.extend(del_pezzo(d) for d in range(3, 10))
    return out


@pytest.mark.parametrize("pair", charts(), ids=lambda p: p[0].name)
def test_chart_degree_matches_lattice(pair):
    model, P = pair
    assert explicit_degree(P) == model.degree == P.degree


@pytest.mark.parametrize("pair", charts(), ids=lambda p: p[0].name)
def test_chart_invariants(pair):
    model, P = pair
    P.check(random.Random(1))
    assert len(P.coords) == model.ambient + 1
    assert P.pinch == pinch_number(model)


def test_scroll_chart_shape():
    model, P = scroll(1, 2)
    assert [str(f) for f in P.coords] == ["1", "s", "t", "s*t", "s^2*t"]
    assert model.ambient == 4 and model.degree == 3


def test_scroll_matches_rational_ruled_model():
    for a in range(1, 5):
        for b in range(a, 5):
            if a + b < 3:
                continue
            S, R = scroll_model(a, b), ruled_model(0, a + b)
            # isometry: both are the even or odd unimodular rank-2 form with matching classes
            assert S.degree == R.degree and S.K2 == R.K2 and S.zeta_K == R.zeta_K
            assert (b - a) % 2 == R.form[0][0]
            assert pinch_number(S) == pinch_number(R)
            assert class_degree(S) == class_degree(R)


def test_del_pezzo_points_are_general_and_seeded():
    assert del_pezzo_points(5, 7) == del_pezzo_points(5, 7)
    pts = del_pezzo_points(3, 0)
    assert len(pts) == 6 and all(-20 <= c <= 20 for p in pts for c in p)
    _, P = del_pezzo(5, seed=3)
    for x, y in P.base_points:
        assert all(f.evaluate((x, y)) == 0 for f in P.coords)


def test_catalog_enumeration():
    models = catalog_models(9)
    assert len(models) == 24
    assert sum(m.scroll for m in models) == 16
    assert [m.name for m in catalog_models(9, "delpezzo")] == [f"dP{d}" for d in range(3, 10)]
    assert catalog_models(4, "veronese") == []
    with pytest.raises(ValueError):
        catalog_models(9, "k3")


def test_bad_constructor_arguments():
    with pytest.raises(ValueError):
        scroll(2, 1)
    with pytest.raises(ValueError):
        del_pezzo(2)
    with pytest.raises(ValueError):
        ruled_model(0, 2)
    with pytest.raises(ValueError):
        surface_from_spec("torus:1")
    with pytest.raises(ValueError):
        surface_from_spec("scroll:1")


def test_plane_chart():
    P = plane_chart(4)
    assert P.ambient == 4 and P.jacobian_rank((2, 3)) == 3


@pytest.mark.parametrize("S", catalog_models(9) + [ruled_model(2, 9)], ids=lambda S: S.name)
def test_descriptor_roundtrip(S):
    assert load_descriptor(save_descriptor(S)) == S


def test_descriptor_rejections():
    good = to_descriptor(scroll_model(1, 2))
    with pytest.raises(DescriptorError, match="line 1"):
        load_descriptor("{not json")
    with pytest.raises(DescriptorError, match="missing"):
        from_descriptor({k: v for k, v in good.items() if k != "c2"})
    with pytest.raises(DescriptorError, match="unknown"):
        from_descriptor(dict(good, colour="red"))
    with pytest.raises(DescriptorError, match="symmetric"):
        from_descriptor(dict(good, intersection_matrix=[[-1, 1], [2, 0]]))
    with pytest.raises(DescriptorError, match="Noether"):
        from_descriptor(dict(good, c2=5))
    with pytest.raises(DescriptorError, match="'c2'"):
        from_descriptor(dict(good, c2="4"))
    with pytest.raises(DescriptorError, match="flags"):
        from_descriptor(dict(good, flags={"ruled": True}))
    with pytest.raises(DescriptorError, match="canonical"):
        from_descriptor(dict(good, canonical=[1, 2, 3]))
    assert isinstance(DescriptorError("x"), ValueError)


def test_descriptor_file_spec(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(to_descriptor(scroll_model(2, 3))))
    model, P = surface_from_spec(f"file:{path}")
    assert P is None and pinch_number(model) == 6


def test_chart_check_rejects_common_factor():
    model, P = veronese()
    s = CHART.gens()[0]
    from dataclasses import replace
    bad = replace(P, coords=tuple(f * s for f in P.coords))
    with pytest.raises(ModelInconsistencyError):
        bad.check()
