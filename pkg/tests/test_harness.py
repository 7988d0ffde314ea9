import csv
import io
import json

import pytest

from pinchscheme.catalog import catalog_models, scroll_model, veronese_model
from pinchscheme.chowlattice import SurfaceModel
from pinchscheme.exactalg import GroebnerBudget
from pinchscheme.harness import (EXIT_OK, EXIT_RESOURCE, EXIT_VIOLATION, OUTSIDE, PASS,
                                 RESOURCE, ROW_KEYS, VIOLATION, Row, VerificationReport,
                                 verify_bound, verify_explicit, verify_inner_chain,
                                 verify_ruled_formula, verify_suite)


def test_bound_sweep_is_clean():
    rep = verify_bound(catalog_models(9))
    assert rep.exit_code == EXIT_OK
    assert rep.count(PASS) == 24
    names = [r.name for r in rep.rows]
    assert names == sorted(names)


def test_bound_flags_a_violation():
    # consistent lattice, but flagged as a scroll with a hyperplane class of excess i = 1
    S = scroll_model(1, 3)
    fake = SurfaceModel("fake", S.form, S.canonical, (1, 4), S.c2, S.ambient,
                        uncrumpled=True, ruled=True, scroll=True, genus=0)
    rep = verify_bound([fake])
    assert rep.rows[0].status == VIOLATION
    assert rep.exit_code == EXIT_VIOLATION


def test_inner_chain_veronese():
    rep = verify_inner_chain(veronese_model(), 2)
    assert [r.pinch_lattice for r in rep.rows] == [6, 2, -2]
    assert [r.classification for r in rep.rows] == ["veronese", "minimal-scroll",
                                                     "outside-hypotheses"]
    assert rep.rows[2].status == OUTSIDE
    assert rep.exit_code == EXIT_OK


def test_inner_chain_del_pezzo_to_cubic():
    S = catalog_models(9, "delpezzo")[-1]
    rep = verify_inner_chain(S, 6)
    assert [r.pinch_lattice for r in rep.rows] == [24, 20, 16, 12, 8, 4, 0]
    assert rep.rows[-1].N == 3
    assert rep.summary == {"pass": 7, "fail": 0, "skipped": 0}


def test_ruled_sweep():
    rep = verify_ruled_formula()
    assert len(rep.rows) == 40
    assert rep.count(PASS) == 40


def test_explicit_resource_exhaustion_is_reported():
    rep = verify_explicit(["veronese"], [0], budget=GroebnerBudget(max_pairs=1))
    assert rep.rows[0].status == RESOURCE
    assert rep.exit_code == EXIT_RESOURCE


def test_explicit_parallel_matches_serial():
    a = verify_explicit(["scroll:1,2", "delpezzo:4"], range(2))
    b = verify_explicit(["scroll:1,2", "delpezzo:4"], range(2), jobs=2)
    assert a.to_json() == b.to_json()
    assert all(r.agreement for r in a.rows)


def test_report_serializations():
    rep = verify_suite("bound")
    payload = json.loads(rep.to_json())
    assert set(payload) == {"config", "rows", "summary"}
    assert list(payload["rows"][0])[:len(ROW_KEYS)] == list(ROW_KEYS)
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert tuple(rows[0][:len(ROW_KEYS)]) == ROW_KEYS
    assert len(rows) == len(rep.rows) + 1
    assert rep.to_table().splitlines()[-1].startswith("pass=")


def test_exit_code_priority():
    def row(status):
        return Row("x", "x", 4, 3, 2, 2, 0, "minimal-scroll", status)
    assert VerificationReport([row(PASS), row(RESOURCE)]).exit_code == EXIT_RESOURCE
    assert VerificationReport([row(RESOURCE), row(VIOLATION)]).exit_code == EXIT_VIOLATION


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_suite("nope")


def test_full_suite_clean():
    rep = verify_suite("all", seeds=range(2))
    assert rep.exit_code == EXIT_OK
    assert rep.summary["fail"] == 0
