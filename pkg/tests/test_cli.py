from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from katokit import cli, verify
from katokit.errors import InternalConsistencyError

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "schema.json").read_text())


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def check_schema(obj, name: str) -> None:
    jsonschema.validate(obj, {"$ref": f"#/$defs/{name}", **SCHEMA})


def test_analyze_black_root_example():
    code, out, _ = run("analyze", "[s1 s2 r1]")
    assert code == 0
    data = json.loads(out)
    check_schema(data, "analyze")
    assert data["index"] == "1"
    assert {m["label"]: m["multiplicity"] for m in data["multiplicities"]} == {
        "A1": "1/1",
        "C0": "2/1",
        "C1": "2/1",
        "C2": "2/1",
    }
    assert data["stats"]["sigma"] == "11"
    assert data["lattice"]["determinant"] == "9"


def test_analyze_accepts_entry_list():
    assert run("analyze", "3,4,2,2")[1] == run("analyze", "[s1 s2 r1]")[1]


def test_enumerate():
    assert run("enumerate", "--b2", "3", "--count-only") == (0, "3\n", "")
    code, out, _ = run("enumerate", "--b2", "4")
    assert code == 0 and len(out.splitlines()) == 8 and "[s1 r1 | s1 r1]" in out
    code, out, _ = run("enumerate", "--b2", "4", "--index-one")
    assert "[s3 r1]" not in out and "[s2 r2]" in out


def test_graph_formats():
    code, out, _ = run("graph", "[s2 r2]", "--format", "dot")
    assert code == 0 and out.startswith('digraph "[s2 r2]"')
    code, out, _ = run("graph", "[s2 r2]", "--format", "json")
    data = json.loads(out)
    check_schema(data, "graph")
    assert len(data["nodes"]) == 4


def test_germ_and_moduli():
    code, out, _ = run("germ", "[s3 r2]")
    data = json.loads(out)
    check_schema(data, "germ")
    assert (data["j"], data["s"], data["k"], data["germ_index"], data["t"]) == ("1", "2", "4", "3", "2/3")
    assert data["moduli"]["delta1"] is None
    code, out, _ = run("moduli", "[s2 r2]", "--delta", "1")
    data = json.loads(out)
    check_schema(data, "moduli_report")
    assert (data["log_dim"], data["fixed_dim"], data["epsilon"]) == (3, 5, 1)


@pytest.mark.parametrize(
    "argv, code_name",
    [
        (("analyze", "[r2]"), "not_intermediate"),
        (("analyze", "[s0 r1]"), "zero_length"),
        (("analyze", "[s1 r1"), "syntax_error"),
        (("graph", "5,2,3,2"), "malformed_cycle"),
        (("moduli", "[s3 r2]", "--delta", "1"), "delta_inconsistent"),
    ],
)
def test_validation_errors_exit_1(argv, code_name):
    code, out, err = run(*argv)
    assert code == 1 and out == ""
    data = json.loads(err)
    check_schema(data, "error")
    assert data["code"] == code_name


def test_internal_failure_exits_2(monkeypatch):
    def boom(_seq):
        raise InternalConsistencyError("planted")

    monkeypatch.setattr(cli, "analyze_report", boom)
    code, _, err = run("analyze", "[s2 r2]")
    assert code == 2 and json.loads(err)["code"] == "internal_consistency"


def test_verify_passes_small_bound():
    code, out, _ = run("verify", "--b2-max", "6")
    assert code == 0
    rows = [line for line in out.splitlines()[1:] if not line.startswith(" ")]
    assert len(rows) >= 6 and all(" PASS " in row for row in rows)


def test_verify_names_offending_sequence(monkeypatch):
    real = verify.check_sequence

    def planted(seq):
        out = real(seq)
        if str(seq) == "[s2 r2]":
            out["determinant_law"] = "planted failure"
        return out

    monkeypatch.setattr(verify, "check_sequence", planted)
    monkeypatch.setenv("KATOKIT_THREADS", "1")
    code, out, _ = run("verify", "--b2-max", "5")
    assert code == 1
    assert "determinant_law        FAIL" in out
    assert "offending: [s2 r2]: planted failure" in out


def test_threads_env_validation(monkeypatch):
    monkeypatch.setenv("KATOKIT_THREADS", "0")
    with pytest.raises(ValueError):
        verify.worker_count()
    monkeypatch.setenv("KATOKIT_THREADS", "3")
    assert verify.worker_count() == 3


def test_parallel_and_serial_verify_agree():
    serial = verify.run_verify(7, workers=1)
    parallel = verify.run_verify(7, workers=2)
    assert [(r.name, r.checked, r.failures) for r in serial] == [(r.name, r.checked, r.failures) for r in parallel]


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "katokit", "analyze", "[s1 r2 | s2 s1 r3]"]
    first = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert first == second and json.loads(first)["sequence"] == "[s1 r2 | s2 s1 r3]"
