from __future__ import annotations

import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from arcweb.cli import main, run
from arcweb.render import dumps, loads

SCHEMAS = pathlib.Path(__file__).resolve().parents[1] / "docs" / "schemas" / "v1"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def test_kl_golden_from_the_command_line(capsys):
    # the weights have eight downs and six ups, so "6,8" is read the other way round
    code, out = run(["kl", "poly", "--block", "**************", "6,8",
                     "--lambda", "vvvvv^v^^vv^^^", "--mu", "vv^vv^^^^vvv^v"])
    assert code == 0 and out == "q^10+2q^12+2q^14+q^16\n"
    assert "warning: counts 6,8 read as up,down" in capsys.readouterr().err


def test_counts_in_down_up_order(capsys):
    code, out = run(["kl", "poly", "--block", "**************", "8,6",
                     "--lambda", "vvvvv^v^^vv^^^", "--mu", "vv^vv^^^^vvv^v"])
    assert code == 0 and out.strip() == "q^10+2q^12+2q^14+q^16"
    assert capsys.readouterr().err == ""


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "arcweb.cli", "render", "--weight", "vv^^"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "v v ^ ^\n| '-' |\n'-----'\n"


@pytest.mark.parametrize("argv", [
    ["kl", "poly", "--lambda", "vvx", "--mu", "v^"],
    ["block", "weights", "--block", "**q*"],
    ["render", "--weight", "v?^"],
    ["block", "weights"],
    ["nonsense"],
    ["kl", "poly", "--block", "****:2,2", "--lambda", "vvv^", "--mu", "^^vv"],
    ["algebra", "mult", "--block", "**:1,1", "--x", "0", "--y", "99"],
])
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


def test_verification_failure_exits_1(monkeypatch):
    import arcweb.checks as checks
    from arcweb.checks import CheckResult

    def broken(max_free):
        return CheckResult("broken", False, 1, "lam=v^ mu=^v: 1 != q")

    monkeypatch.setitem(checks.CHECKS, "kl", broken)
    code, out = run(["check", "all", "--max-free", "2", "--only", "kl"])
    assert code == 1 and "counterexample: lam=v^ mu=^v" in out


def test_check_subset_passes():
    code, out = run(["check", "all", "--max-free", "3", "--only", "kl,inverse,kostant,bgg"])
    assert code == 0 and out.count("PASS") == 4


def test_block_commands():
    code, out = run(["block", "weights", "--block", "****:2,2"])
    assert code == 0 and out.split() == ["vv^^", "v^v^", "v^^v", "^vv^", "^v^v", "^^vv"]
    code, out = run(["block", "circ", "--weight", "vvv^^v^^vv^"])
    assert out.strip() == "vvv^v^vv^^^"
    code, out = run(["block", "info", "--weight", "^v^v", "--json"])
    data = json.loads(out)
    assert data["kostant"] is False and data["defect"] == 1


def test_matrix_outputs_validate():
    code, out = run(["kl", "matrix", "--block", "****:2,2", "--format", "json"])
    data = json.loads(out)
    jsonschema.validate(data, schema("matrix"))
    assert data["matrix"][0][5] == "q^4"
    code, out = run(["algebra", "cartan", "--block", "**:1,1", "--format", "csv"])
    assert out.splitlines()[0] == ",v^,^v"


def test_bgg_reports_validate():
    code, out = run(["bgg", "verify", "--block", "****:2,2", "--all", "--json"])
    assert code == 0
    reports = json.loads(out)
    for r in reports:
        jsonschema.validate(r, schema("bgg_report"))
    assert [r["mu"] for r in reports if not r["exact_positions"][0]] == ["^v^v"]


@pytest.mark.parametrize("argv,name", [
    (["render", "--weight", "vv^^", "--json"], "weight"),
    (["render", "--cup", "v^^v", "--json"], "cup"),
    (["render", "--cap", "v^^v", "--json"], "cap"),
    (["render", "--matching", "bottom=****;top=**;caps=2-3;cups=;segs=1-1,4-2", "--json"], "matching"),
])
def test_render_json_validates_and_round_trips(argv, name):
    code, out = run(argv)
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    assert dumps(loads(out)) + "\n" == out


def test_svg_output():
    code, out = run(["render", "--weight", "vv^^", "--format", "svg"])
    assert code == 0 and out.startswith("<svg") and out.count("<path") == 2


def test_module_and_functor_commands():
    code, out = run(["module", "resolve", "--block", "****:2,2", "--weight", "vv^^"])
    assert code == 0 and out.splitlines()[-1] == "P_4: P(^^vv)<4>"
    code, out = run(["module", "socle", "--weight", "^v"])
    assert code == 0 and "agrees: True" in out
    code, out = run(["module", "dcp", "--block", "**:1,1"])
    assert code == 0 and out.strip() == "4 pairs, 0 mismatches"
    code, out = run(["functor", "apply", "--matching", "bottom=****;top=**;caps=2-3;cups=;segs=1-1,4-2",
                     "--on", "proj", "--weight", "v^", "--verify"])
    assert code == 0 and "agrees: True" in out


def test_bimodule_commands():
    code, out = run(["bimodule", "reduce", "--left", "*******:3,4",
                     "--matching", "bottom=*******;top=*******;caps=1-4,2-3;cups=2-3,5-6;segs=5-1,6-4,7-7",
                     "--matching", "bottom=*******;top=o****o*;caps=1-4,2-3,6-7;cups=3-4,5-7;segs=5-2",
                     "--json"])
    data = json.loads(out)
    assert code == 0 and data["circles"] == 1 and data["shift"] == 2
    code, out = run(["bimodule", "tensor", "--left", "**:1,1",
                     "--matching", "bottom=**;top=****;caps=;cups=2-3;segs=1-1,2-4",
                     "--matching", "bottom=****;top=**;caps=2-3;cups=;segs=1-1,4-2", "--json"])
    assert code == 0 and json.loads(out)["equal"] is True


def test_fixed_seed_gives_identical_bytes():
    argv = ["check", "all", "--max-free", "3", "--only", "degree", "--seed", "7"]
    assert run(argv) == run(argv)


def test_thread_count_does_not_change_output(monkeypatch):
    argv = ["bgg", "verify", "--block", "*****:2,3", "--all", "--json"]
    _, serial = run(argv)
    monkeypatch.setenv("ARCWEB_THREADS", "2")
    _, parallel = run(argv)
    assert serial == parallel


def test_field_option():
    code, out = run(["module", "decomp", "--block", "****:2,2", "--field", "p5"])
    assert code == 0
    assert main(["module", "decomp", "--block", "****:2,2", "--field", "p4"]) == 2


def test_field_option_does_not_leak():
    from arcweb.linalg import QQ, default_field
    run(["module", "decomp", "--block", "**:1,1", "--field", "p3"])
    assert default_field() == QQ
