import json
import subprocess
import sys

import pytest

from pinchscheme.cli import Config, build_parser, main, resolve_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pinch(capsys):
    assert run(capsys, "pinch", "scroll:2,3")[:2] == (0, "6\n")
    assert run(capsys, "pinch", "veronese")[1] == "6\n"
    assert run(capsys, "pinch", "delpezzo:7")[1] == "16\n"
    assert run(capsys, "pinch", "ruled:1,7")[1] == "14\n"


def test_catalog_formats(capsys):
    code, out, _ = run(capsys, "catalog", "--max-n", "9")
    assert code == 0 and len(out.splitlines()) == 25
    code, out, _ = run(capsys, "catalog", "--only", "scrolls", "--format", "csv")
    assert out.splitlines()[0] == "name,N,deg,g,pinch,gamma2,i,classification"
    code, out, _ = run(capsys, "catalog", "--format", "json")
    data = json.loads(out)
    assert {d["name"]: d["gamma2"] for d in data}["veronese"] == 3


def test_project_json(capsys):
    code, out, _ = run(capsys, "project", "veronese", "--seed", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["report"]["length"] == 6 and data["config"]["seed"] == 3


def test_inner_chain(capsys):
    code, out, _ = run(capsys, "inner-chain", "delpezzo:9", "--steps", "6", "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[-1]["N"] == 3 and rows[-1]["pinch_lattice"] == 0


def test_jets(capsys):
    code, out, _ = run(capsys, "jets", "veronese", "--point", "0,0")
    assert code == 0 and "h_5(0,u) = 1" in out and "unramified" in out
    code, out, _ = run(capsys, "jets", "scroll:1,2", "--format", "json")
    assert json.loads(out)["degenerate_directions"] == 1


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "explicit", "--seeds", "2", "--format", "json")
    b = run(capsys, "verify", "--suite", "explicit", "--seeds", "2", "--format", "json")
    assert a == b and a[0] == 0


def test_descriptor_roundtrip_via_file(capsys, tmp_path):
    _, out, _ = run(capsys, "descriptor", "scroll:1,3")
    path = tmp_path / "d.json"
    path.write_text(out)
    assert run(capsys, "pinch", f"file:{path}")[1] == "4\n"


def test_usage_errors(capsys):
    code, _, err = run(capsys, "pinch", "torus")
    assert code == 2 and "bad surface spec" in err
    assert run(capsys, "project", "ruled:1,7")[0] == 2
    assert run(capsys, "pinch", "veronese", "--prime", "32001")[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_bad_descriptor_reports_location(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x",\n  "rank": }')
    code, _, err = run(capsys, "pinch", f"file:{path}")
    assert code == 2 and "line 2" in err


def test_budget_exit_code(capsys):
    assert run(capsys, "project", "veronese", "--max-pairs", "1")[0] == 3


def test_env_precedence():
    args = build_parser().parse_args(["pinch", "veronese", "--seed", "5"])
    cfg = resolve_config(args, {"PINCHSCHEME_SEED": "9", "PINCHSCHEME_RETRIES": "3"})
    assert (cfg.seed, cfg.retries) == (5, 3)
    with pytest.raises(ValueError):
        Config(seed=-1)
    with pytest.raises(ValueError):
        Config(omega=2)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pinchscheme", "pinch", "scroll:1,2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "2\n"
