from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from legproj.cli import run

TREFOIL = "X1+a,X2+b,X3+a,X1+b,X2+a,X3+b"
VTREFOIL = "X1+a,X2+a,X1+b,X2+b"


def call(argv, stdin="", capsys=None, monkeypatch=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin="": call(argv, stdin, capsys, monkeypatch)


def test_project_virtual_trefoil(cli):
    code, out, _ = cli(["project", "-"], VTREFOIL + "\n")
    assert code == 0 and out == "\n"


def test_project_trace(cli):
    code, out, _ = cli(["project", "--trace", "-"], VTREFOIL + "\n")
    assert code == 0
    assert out.splitlines()[0].startswith("stage 0: " + VTREFOIL)


def test_validate_reports_line_number(cli):
    code, out, err = cli(["validate", "-"], "X1+a,X1+b\nX1+a\n")
    assert code == 1
    assert out == "ok\n"
    assert "line 2: UnpairedChord" in err


def test_strict_stops_at_first_error(cli):
    code, out, err = cli(["validate", "--strict", "-"], "X1+a\nX1+a,X1+b\n")
    assert code == 1 and out == ""


def test_usage_error(cli):
    with pytest.raises(SystemExit) as exc:
        cli(["frobnicate"])
    assert exc.value.code == 2


def test_parity_text_and_json(cli):
    code, out, _ = cli(["parity", "--check", "-"], VTREFOIL + "\n")
    assert code == 0
    assert out.splitlines()[:3] == ["v1: odd", "v2: odd", "agree: true"]
    code, out, _ = cli(["parity", "--json", "-"], TREFOIL + "\n")
    rep = json.loads(out)
    assert rep["schema"] == 1
    rec = rep["records"][0]
    assert rec["parities"] == {"v1": "even", "v2": "even", "v3": "even"}
    assert rec["carter_genus"] == 0 and rec["agree"] is True


def test_carter_and_genus(cli):
    code, out, _ = cli(["carter", "--faces", "-"], TREFOIL + "\n")
    lines = out.splitlines()
    assert lines[0] == "V=3 E=6 F=5 genus=0" and len(lines) == 6
    code, out, _ = cli(["genus", "-"], TREFOIL + "\n" + VTREFOIL + "\n")
    assert out.splitlines() == ["carter=0 canonical=1", "carter=1 canonical=1"]


def test_canon(cli):
    code, out, _ = cli(["canon", "-"], "X2+b,X1+a,X2+a,X1+b\n")
    assert out == VTREFOIL + "\n"


def test_move_apply_and_fuzz(cli):
    code, out, _ = cli(["move", "apply", "--kind", "R1L_insert", "--site", "0", "-"], "\n")
    assert code == 0 and out == "X1+a,K+,K-,X1+b\n"
    code, out, err = cli(["move", "apply", "--kind", "R1L_delete", "--site", "1", "-"], TREFOIL)
    assert code == 1 and "PatternMismatch" in err
    code, a, _ = cli(["move", "fuzz", "--n", "5", "--seed", "4", "-"], TREFOIL)
    code, b, _ = cli(["move", "fuzz", "--n", "5", "--seed", "4", "-"], TREFOIL)
    assert a == b and len(a.splitlines()) == 5


def test_model_commands(cli, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("genus 2\nedge 1 = 1000\nedge 2 = 0010\n")
    code, out, _ = cli(["model", "parity", str(f)])
    assert code == 0 and out == "v1: odd\n"
    code, out, _ = cli(["model", "destabilize", "--class", "1000", str(f)])
    assert code == 0 and "edge 1 = 00" in out and "edge 2 = 10" in out
    g = tmp_path / "d.txt"
    g.write_text(out)
    code, out, _ = cli(["model", "parity", str(g)])
    assert out == "v1: even\n"
    code, _, err = cli(["model", "destabilize", "--class", "0100", str(f)])
    assert code == 1 and "PairingObstruction" in err
    code, out, _ = cli(["model", "stabilize", str(f)])
    assert out.startswith("genus 3")


def test_gen_and_verify(cli, tmp_path):
    code, corpus, _ = cli(["gen", "--n", "25", "--seed", "7"])
    assert code == 0 and len(corpus.splitlines()) == 25
    f = tmp_path / "corpus.txt"
    f.write_text(corpus)
    code, out, _ = cli(["verify", "--moves", "--n", "200", "--seed", "7", str(f)])
    assert code == 0
    assert "moves_failed=0" in out


def test_verify_fails_on_bad_line(cli):
    code, _, err = cli(["verify", "-"], "X1+a\n")
    assert code == 1 and "line 1" in err


def test_internal_inconsistency_exit_code(cli, monkeypatch):
    import legproj.cli as mod
    from legproj.parity import InternalInconsistency

    def boom(*a, **k):
        raise InternalInconsistency("forced")

    monkeypatch.setattr(mod, "cross_check", boom)
    code, _, err = cli(["parity", "-"], TREFOIL)
    assert code == 3 and "forced" in err


def test_console_script_runs():
    p = subprocess.run([sys.executable, "-m", "legproj", "project", "-"],
                       input=VTREFOIL + "\n", capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "\n"
