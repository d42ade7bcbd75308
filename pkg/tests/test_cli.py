import json
import subprocess
import sys

import jsonschema
import pytest

from bandbrick.cli import main, parse_lambda, run
from bandbrick.errors import ParseError
from bandbrick.quiver import parse_presentation

from cli_suite import run_suite
from conftest import data_path

DECISION_SCHEMA = {
    "type": "object",
    "required": ["verdict"],
    "properties": {
        "verdict": {"enum": ["tau-infinite", "tau-finite-up-to-bound", "tau-finite"]},
        "reason": {"type": "string"},
        "bound": {"type": "integer", "minimum": 0},
        "verified_by": {"type": "array", "items": {"enum": ["combinatorial", "oracle"]}},
        "certificate": {
            "type": "object",
            "required": ["band", "verified_by"],
            "properties": {
                "band": {"type": "string"},
                "verified_by": {"type": "array", "minItems": 1,
                                "items": {"enum": ["combinatorial", "oracle"]}},
            },
        },
    },
    "allOf": [
        {"if": {"properties": {"verdict": {"const": "tau-infinite"}}},
         "then": {"required": ["certificate"]}},
        {"if": {"properties": {"verdict": {"const": "tau-finite-up-to-bound"}}},
         "then": {"required": ["bound"]}},
        {"if": {"properties": {"verdict": {"const": "tau-finite"}}},
         "then": {"required": ["reason"]}},
    ],
}


def _json(argv):
    r = run(argv)
    assert r.exit_code == 0, r.stderr
    return json.loads(r.stdout)


def test_tau_finite_kronecker():
    out = _json(["tau-finite", data_path("kronecker.quiver")])
    assert out["verdict"] == "tau-infinite"
    assert out["certificate"]["band"] == "a b-"
    jsonschema.validate(out, DECISION_SCHEMA)


def test_tau_finite_outputs_validate():
    for name, extra in (("stacked_kronecker.quiver", []), ("local_gentle.quiver", ["--max-band-len", "8"]),
                        ("linear_a2.quiver", [])):
        out = _json(["tau-finite", data_path(name), *extra])
        jsonschema.validate(out, DECISION_SCHEMA)
    assert _json(["tau-finite", data_path("local_gentle.quiver"), "--max-band-len", "8"])["bound"] == 8


def test_oracle_only_adds_verification():
    for name in ("kronecker.quiver", "stacked_kronecker.quiver", "local_gentle.quiver"):
        a = _json(["tau-finite", data_path(name)])
        b = _json(["tau-finite", data_path(name), "--oracle"])
        assert a["verdict"] == b["verdict"]
        if a["verdict"] == "tau-infinite":
            assert a["certificate"]["band"] == b["certificate"]["band"]
            assert b["certificate"]["verified_by"] == ["combinatorial", "oracle"]
        else:
            assert b["verified_by"] == ["combinatorial", "oracle"]


def test_brauer_outputs():
    out = _json(["brauer", data_path("double_edge.bg")])
    assert out["verdict"] == "tau-infinite" and out["reason"] == "even-cycle"
    jsonschema.validate(out, DECISION_SCHEMA)
    for g in ("tree", "triangle", "two_loops", "two_triangles"):
        out = _json(["brauer", data_path(f"{g}.bg"), "--cross-check"])
        jsonschema.validate(out, DECISION_SCHEMA)
        jsonschema.validate(out["band_search"], DECISION_SCHEMA)


def test_emit_presentation(tmp_path):
    target = tmp_path / "p.quiver"
    out = _json(["brauer", data_path("two_loops.bg"), "--emit-presentation", str(target)])
    pres = parse_presentation(target.read_text())
    assert len(pres.quiver.arrows) == 4
    assert out["presentation"] == str(target)
    r = run(["tau-finite", str(target)])
    assert json.loads(r.stdout)["verdict"] == "tau-infinite"


def test_exit_codes():
    assert run(["brick", data_path("stacked_kronecker.quiver"), "--band", "c c"]).exit_code == 3
    assert "NotABand" in run(["brick", data_path("stacked_kronecker.quiver"), "--band", "c c"]).stderr
    assert run(["frob", data_path("stacked_kronecker.quiver")]).exit_code == 2
    assert run([]).exit_code == 2
    assert run(["tau-finite", data_path("kronecker3.quiver")]).exit_code == 3
    assert run(["tau-finite", data_path("missing.quiver")]).exit_code == 3
    assert run(["hom", data_path("stacked_kronecker.quiver"), "--source", "band:c d-:x", "--target", "c"]).exit_code == 2
    assert run(["evidence", data_path("kronecker.quiver"), "--band", "a b-", "--bt2", "1,1"]).exit_code == 3


def test_parse_error_in_file(tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices: 1\narrow a 1 -> 1\n")
    r = run(["check", str(bad)])
    assert r.exit_code == 2 and "line 2" in r.stderr


def test_parse_lambda():
    assert parse_lambda("3") == 3
    assert str(parse_lambda("-2/3")) == "-2/3"
    for bad in ("1.5", "x", "1/0", ""):
        with pytest.raises(ParseError):
            parse_lambda(bad)


def test_hom_command():
    out = _json(["hom", data_path("stacked_kronecker.quiver"), "--source", "c", "--target", "@2", "--oracle"])
    assert out["hom_dim"] == 1 and out["verified_by"] == ["combinatorial", "oracle"]
    out = _json(["hom", data_path("stacked_kronecker.quiver"), "--source", "band:c d-:1:2", "--target", "band:c d-:1:3"])
    assert out["hom_dim"] == 2 and out["verified_by"] == ["oracle"]
    out = _json(["hom", data_path("kronecker3.quiver"), "--source", "a", "--target", "a"])
    assert out["hom_dim"] == 1 and out["verified_by"] == ["oracle"]


def test_table_is_derived_from_json():
    a = run(["brick", data_path("stacked_kronecker.quiver"), "--band", "c d-", "--format", "table"])
    assert a.exit_code == 0
    obj = _json(["brick", data_path("stacked_kronecker.quiver"), "--band", "c d-"])
    assert f"band: {obj['band']}" in a.stdout
    assert "brick: yes" in a.stdout


def test_advisory():
    out = _json(["tau-finite", data_path("kronecker3.quiver"), "--advisory", "--max-band-len", "2"])
    assert out["verdict"] == "advisory" and out["implies"] == "tau-infinite"


def test_main_entry_point(capsys):
    assert main(["tau-finite", data_path("kronecker.quiver")]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "tau-infinite"


def test_console_script_module():
    r = subprocess.run([sys.executable, "-m", "bandbrick.cli", "tau-finite", data_path("kronecker.quiver")],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["certificate"]["band"] == "a b-"


def test_suite_runs_with_expected_codes(tmp_path):
    results = run_suite(tmp_path)
    codes = {" ".join(argv[:1] + argv[2:]): code for argv, code, _, _ in results}
    assert codes["brick --band c c"] == 3
    assert codes["frob"] == 2
    assert codes["tau-finite"] == 3
    assert all(code in (0, 2, 3) for _, code, _, _ in results)
