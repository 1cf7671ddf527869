import json
import subprocess
import sys
from pathlib import Path

import pytest

from kotzig_cdc.cli import main, parse_text_report, render_text, run_command
from kotzig_cdc.formats import parse_cover, serialize_coloring, serialize_cover, serialize_graph
from kotzig_cdc.generate import K4_COLORING, k4, k33, petersen
from kotzig_cdc.graph import is_even

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in (("k4", k4()), ("k33", k33()), ("petersen", petersen())):
        p = tmp_path / f"{name}.txt"
        p.write_text(serialize_graph(g))
        out[name] = str(p)
    ham = tmp_path / "ham6.frame"
    ham.write_text("graph k33.txt\ncomponent circuit 0 3 4 7 8 2\n")
    out["ham6"] = str(ham)
    col = tmp_path / "k4.coloring"
    col.write_text(serialize_coloring(K4_COLORING))
    out["k4col"] = str(col)
    out["dir"] = tmp_path
    return out


def strip(report):
    return {k: v for k, v in report.items() if k != "timings"}


def test_build_cdc_golden(files):
    code, report = run_command(["build-cdc", "--graph", files["k33"], "--frame", files["ham6"]])
    assert code == 0
    members = parse_cover(report["document"])
    assert len(members) <= 6
    assert set(report["timings"]) == {"verify-frame", "build", "verify-cdc"}
    expected = json.loads((GOLDEN / "build_cdc_k33.json").read_text())
    assert strip(report) == expected


def test_verify_cdc_tampered(files):
    code, report = run_command(["build-cdc", "--graph", files["k33"], "--frame", files["ham6"]])
    members = parse_cover(report["document"])
    dropped = min(members[0])
    members[0] = members[0] - {dropped}
    bad = files["dir"] / "bad.cover"
    bad.write_text(serialize_cover(members))
    code, report = run_command(["verify-cdc", "--graph", files["k33"], "--cover", str(bad)])
    assert code == 1
    assert f"edge {dropped} covered 1 times" in report["details"]["violations"]

    good = files["dir"] / "good.cover"
    good.write_text("cover 3\neven 0 2 3 5\neven 1 2 3 4\neven 0 1 4 5\n")
    assert run_command(["verify-cdc", "--graph", files["k4"], "--cover", str(good)])[0] == 0


def test_oracle_k4(files):
    code, report = run_command(["oracle-cdc", "--graph", files["k4"], "--k", "3"])
    assert code == 0
    members = parse_cover(report["document"])
    assert sorted(map(sorted, members)) == [[0, 1, 4, 5], [0, 2, 3, 5], [1, 2, 3, 4]]
    assert all(is_even(k4(), m) for m in members)
    assert run_command(["oracle-cdc", "--graph", files["petersen"], "--k", "4"])[0] == 1


def test_coloring_commands(files):
    assert run_command(["verify-kotzig", "--graph", files["k4"], "--coloring", files["k4col"]])[0] == 0
    assert run_command(["verify-semi-kotzig", "--graph", files["k4"], "--coloring", files["k4col"]])[0] == 0
    assert run_command(["verify-kotzig", "--graph", files["k4"]])[0] == 0
    code, report = run_command(["verify-semi-kotzig", "--graph", files["petersen"]])
    assert code == 1 and report["status"] == "no"


def test_budget_and_env(files, monkeypatch):
    assert run_command(["verify-semi-kotzig", "--graph", files["petersen"], "--budget", "5"])[0] == 2
    monkeypatch.setenv("KOTZIG_CDC_BUDGET", "5")
    assert run_command(["find-frame", "--graph", files["petersen"]])[0] == 2
    monkeypatch.setenv("KOTZIG_CDC_BUDGET", "lots")
    assert run_command(["find-frame", "--graph", files["petersen"]])[0] == 3


def test_input_errors(files):
    assert run_command(["build-cdc"])[0] == 3
    assert run_command(["build-cdc", "--graph", str(files["dir"] / "missing")])[0] == 3
    junk = files["dir"] / "junk.txt"
    junk.write_text("cubic-multigraph 3 1\nedge 0 0 1\n")
    assert run_command(["verify-kotzig", "--graph", str(junk)])[0] == 3
    assert run_command(["nonsense"])[0] == 3
    assert run_command([])[0] == 3
    assert run_command(["gen", "--lengths", "3"])[0] == 3


def test_find_frame_and_build_without_frame(files):
    code, report = run_command(["find-frame", "--graph", files["petersen"]])
    assert code == 0 and "component h0" in report["document"]
    code, report = run_command(["build-cdc", "--graph", files["petersen"]])
    assert code == 0 and report["details"]["members"] <= 6


def test_gen_then_verify(files):
    prefix = str(files["dir"] / "inst")
    code, report = run_command(["gen", "--seed", "3", "--catalog", "1", "--lengths", "4,6", "--out", prefix])
    assert code == 0
    code, report = run_command(["verify-frame", "--graph", prefix + ".graph", "--frame", prefix + ".frame"])
    assert code == 0 and report["details"] == {"circuits": 2, "core": True}
    code, _ = run_command(["build-cdc", "--graph", prefix + ".graph", "--frame", prefix + ".frame"])
    assert code == 0


def test_verify_frame_rejections(files):
    wrong = files["dir"] / "wrong.frame"
    wrong.write_text("component h0 0 3 4 7 8 2\n")
    code, report = run_command(["verify-frame", "--graph", files["k33"], "--frame", str(wrong)])
    assert code == 1 and report["details"]["reason"] == "misclassified"
    wrong.write_text("component circuit 0 3 4\n")
    code, report = run_command(["verify-frame", "--graph", files["k33"], "--frame", str(wrong)])
    assert code == 1 and report["details"]["reason"] == "not-spanning"


def test_text_and_json_carry_the_same_report(files, capsys):
    argv = ["build-cdc", "--graph", files["k33"], "--frame", files["ham6"]]
    assert main(argv) == 0
    text = capsys.readouterr().out
    assert main(argv + ["--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert strip(parse_text_report(text)) == strip(data)
    assert set(parse_text_report(text)["timings"]) == set(data["timings"])
    code, report = run_command(argv)
    assert parse_text_report(render_text(report)) == report


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "kotzig_cdc.cli", "oracle-cdc", "--graph", files["k4"], "--k", "1", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["status"] == "no"
