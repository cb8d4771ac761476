import json
import pathlib
import subprocess
import sys

import pytest

from paradox_lab import kernel
from paradox_lab.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv, "--format", "json")
    return rc, json.loads(out)


def test_sat_restricted_yablo(capsys):
    rc, j = run_json(capsys, "check", "sat", "--gen", "yablo", "--depth", "4", "--mode", "restricted",
                     "--clamp", "x:0=T")
    assert rc == 0 and j["status"] == "unsat" and len(j["core"]) <= 3
    assert "one-sided" in j["note"]


def test_sat_remainder_yablo(capsys):
    rc, j = run_json(capsys, "check", "sat", "--gen", "yablo", "--depth", "5", "--clamp", "x:0=T")
    assert rc == 0 and j["status"] == "sat" and j["mode"] == "remainder"


def test_sat_file_with_clamp(capsys):
    rc, out, _ = run(capsys, "check", "sat", str(GOLDEN / "basic.dsl"))
    assert rc == 0 and out.splitlines()[0] == "status: unsat"
    rc, out, _ = run(capsys, "check", "sat", str(GOLDEN / "basic_extended.dsl"), "--clamp", "x=T")
    assert out.startswith("status: sat")


def test_sat_budget_unknown(capsys):
    rc, j = run_json(capsys, "check", "sat", "--gen", "oa:ranked-vertical:inf:inf", "--depth", "3",
                     "--clamp", "x:0:0=T", "--budget", "5")
    assert rc == 1 and j["status"] == "unknown"


def test_check_rule(capsys):
    rc, j = run_json(capsys, "check", "rule", "--gen", "procrastination", "--rule", "all-false", "--depth", "50")
    assert rc == 0 and j["violations"] == []
    rc, j = run_json(capsys, "check", "rule", "--gen", "oa:enumeration:inf:2", "--rule", "x:*:0=T,x:*:1=F",
                     "--depth", "20")
    assert rc == 0 and j["violations"] == []
    rc, j = run_json(capsys, "check", "rule", "--gen", "yablo", "--rule", "all-false", "--depth", "3")
    assert rc == 1 and j["violations"]
    rc, _, err = run(capsys, "check", "rule", "--gen", "yablo", "--rule", "nonsense", "--depth", "3")
    assert rc == 2 and "unknown rule" in err


def test_check_escape(capsys):
    rc, j = run_json(capsys, "check", "escape", "--gen", "sawblade:raw", "--depth", "6")
    assert rc == 0 and j["rootTrue"]["status"] == "sat"


def test_certify_exit_codes(capsys):
    rc, j = run_json(capsys, "certify", "--gen", "yablo", "--depth", "4")
    assert rc == 0 and j["verdict"]["kind"] == "CertifiedParadoxical"
    rc, out, _ = run(capsys, "certify", "--gen", "two-arrow", "--depth", "4")
    assert rc == 1 and "EscapeFound" in out and "all-false" in out


def test_paths_and_negtype(capsys):
    rc, j = run_json(capsys, "paths", str(GOLDEN / "basic.dsl"), "--from", "x", "--to", "z")
    assert rc == 0 and [p["nodes"] for p in j["paths"]] == [["x", "y", "z"], ["x", "z"]]
    rc, j = run_json(capsys, "negtype", str(GOLDEN / "logic_negation.dsl"), "--from", "x", "--to", "z")
    assert rc == 0 and j["type"] == 1
    rc, j = run_json(capsys, "negtype", str(GOLDEN / "basic.dsl"), "--from", "x", "--to", "z")
    assert rc == 1 and j["type"] is None
    rc, _, err = run(capsys, "paths", str(GOLDEN / "basic.dsl"), "--from", "x", "--to", "nope")
    assert rc == 2


def test_cells_and_diamonds(capsys):
    rc, j = run_json(capsys, "cells", str(GOLDEN / "basic.dsl"))
    assert rc == 0 and j["cells"] == [{"head": "x", "knee": "y", "foot": "z", "ycs": True, "missing": []}]
    rc, j = run_json(capsys, "diamonds", str(GOLDEN / "rhombus_basic.dsl"))
    assert rc == 0 and j["count"] == 7


def test_condition_yablo(capsys):
    rc, j = run_json(capsys, "condition-yablo", "--gen", "diamond:essential", "--chain", "x:0,x:1,x:2,x:3")
    assert rc == 0 and j["witness"]["paths"]["0,2"]["nodes"] == ["x:0", "x:0:2", "x:2"]
    rc, j = run_json(capsys, "condition-yablo", "--gen", "sawblade:raw", "--depth", "4",
                     "--chain", "x:s0:0,y:s0:0,x:s0:1")
    assert rc == 1 and j["failingPair"] == [1, 2]
    rc, _, _ = run(capsys, "condition-yablo", "--gen", "yablo", "--chain", "x:0")
    assert rc == 2


def test_gen_and_export(capsys, tmp_path):
    dsl = tmp_path / "y.dsl"
    assert main(["gen", "yablo", "--depth", "4", "-o", str(dsl)]) == 0
    # the golden copy carries one extra clamp line
    assert dsl.read_text() + "clamp x:0 = T\n" == (GOLDEN / "yablo_d4_remainder.dsl").read_text()
    dot = tmp_path / "y.dot"
    assert main(["gen", "yablo", "--depth", "3", "-o", str(dot)]) == 0
    assert dot.read_text().startswith('digraph "yablo" {')
    out = tmp_path / "b.dot"
    assert main(["export", "dot", str(GOLDEN / "basic.dsl"), "-o", str(out)]) == 0
    assert out.read_text().count("dashed") == 3


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", "sat")[0] == 2
    assert run(capsys, "check", "sat", "--gen", "yablo")[0] == 2
    assert run(capsys, "check", "sat", "--gen", "nope", "--depth", "2")[0] == 2
    assert run(capsys, "cells", str(tmp_path / "missing.dsl"))[0] == 2
    bad = tmp_path / "bad.dsl"
    bad.write_text("x -> y\nthis is not dsl\n")
    rc, _, err = run(capsys, "cells", str(bad))
    assert rc == 2 and "line 2" in err
    cyc = tmp_path / "cyc.dsl"
    cyc.write_text("a -> b\nb -> a\n")
    rc, _, err = run(capsys, "cells", str(cyc))
    assert rc == 1 and "CycleError" in err and "line 2" in err


@pytest.mark.parametrize("backend", sorted(kernel.BACKENDS))
def test_backend_flag(capsys, backend):
    prev = kernel.BACKEND
    try:
        rc, j = run_json(capsys, "--backend", backend, "check", "sat", "--gen", "yablo", "--depth", "3",
                         "--mode", "restricted", "--clamp", "x:0=T")
        assert rc == 0 and j["status"] == "unsat"
    finally:
        kernel.use_backend(prev)


def test_reports_byte_identical_across_processes(tmp_path):
    cmd = [sys.executable, "-m", "paradox_lab.cli", "certify", "--gen", "sawblade:dec-yc", "--depth", "5",
           "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
