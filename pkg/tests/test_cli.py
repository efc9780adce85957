from __future__ import annotations

import json
import os
from pathlib import Path

import jsonschema
import pytest

from chowlab.cli import main
from chowlab.errors import (
    ChowlabError,
    InputError,
    OutsidePolytopeError,
    PreconditionError,
    UnsupportedDimensionError,
)
from chowlab.report import schema

ROOT = Path(__file__).resolve().parent.parent
DEMO = ROOT / "demo"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    jsonschema.validate(data, schema())
    return data, out


@pytest.mark.parametrize("name", ["p2", "p3"])
def test_golden_reports(capsys, name):
    _, out = report(capsys, "analyze", DEMO / f"{name}.json")
    assert out == (GOLDEN / f"{name}.analyze.json").read_text(encoding="utf-8")


def test_analyze_p2_contents(capsys):
    data, _ = report(capsys, "analyze", DEMO / "p2.json")
    assert len(data["chambers"]["chambers"]) == 5
    assert data["chow"]["count"] == 3
    assert len(data["charges"]["types"]) == 2
    charges = {c["charge"][0] for t in data["charges"]["types"] for c in t["cells"]}
    assert charges == {"-1/2", "1/2"}


def test_reports_are_byte_identical(capsys):
    _, first = report(capsys, "analyze", DEMO / "square.json", "--seed", "5")
    _, second = report(capsys, "analyze", DEMO / "square.json", "--seed", "5")
    assert first == second


@pytest.mark.parametrize("name", ["p1", "p2", "p3", "square"])
def test_analyze_is_the_union_of_sections(capsys, name):
    path = DEMO / f"{name}.json"
    full, _ = report(capsys, "analyze", path)
    for section in ("chambers", "git", "chow", "charges"):
        part, _ = report(capsys, section, path)
        assert part[section] == full[section]
        assert part["input"] == full["input"]
    part, _ = report(capsys, "pts-demo", "--input", path)
    assert part["pts"] == full["pts"]


def test_git_charge_on_p3(capsys):
    data, _ = report(capsys, "git", DEMO / "p3.json", "--charge", "1/2")
    sl = data["git"]["charge"]["slice"]
    assert len(sl["vertices"]) == 4 and sl["f_vector"] == [4, 4]


def test_charges_principal_flag(capsys):
    data, _ = report(capsys, "charges", DEMO / "p2.json", "--principal", "1/3")
    assert data["charges"]["principal"] == ["1/3"]
    assert data["charges"]["violations"] == []


def test_seed_environment_variable(capsys, monkeypatch):
    monkeypatch.setenv("CHOWLAB_SEED", "11")
    data, _ = report(capsys, "chambers", DEMO / "p2.json")
    assert data["input"]["seed"] == 11
    data, _ = report(capsys, "chambers", DEMO / "p2.json", "--seed", "4")
    assert data["input"]["seed"] == 4
    monkeypatch.setenv("CHOWLAB_SEED", "x")
    code, _, _ = run(capsys, "chambers", DEMO / "p2.json")
    assert code == InputError.exit_code


def test_timing_only_on_request(capsys):
    data, _ = report(capsys, "chow", DEMO / "p2.json")
    assert "timing" not in data
    data, _ = report(capsys, "chow", DEMO / "p2.json", "--timing")
    assert set(data["timing"]) == {"chow"}


def test_pts_demo_default(capsys):
    data, _ = report(capsys, "pts-demo")
    pts = data["pts"]
    assert pts["limit"] == [["1", "2", "1", "1"], ["1", "1", "0", "0"]]
    assert pts["matches"] and pts["collision_law"]["ok"]


def test_pts_demo_flags(capsys):
    data, _ = report(capsys, "pts-demo", "--j", "3", "--a", "1/2", "--b", "2", "--tail", "1,1;0,1;5,3", "--order", "4")
    assert data["pts"]["matches"] and data["pts"]["m"] == 6


def test_exit_codes_are_distinct():
    codes = [c.exit_code for c in (ChowlabError, InputError, UnsupportedDimensionError, OutsidePolytopeError, PreconditionError)]
    assert len(set(codes)) == len(codes) and 0 not in codes


def test_error_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "chambers", DEMO / "rank3.json")
    assert code == UnsupportedDimensionError.exit_code and "rank" in err

    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    code, _, _ = run(capsys, "chambers", bad)
    assert code == InputError.exit_code

    code, _, _ = run(capsys, "chambers", tmp_path / "missing.json")
    assert code == InputError.exit_code

    extra = tmp_path / "extra.json"
    extra.write_text(json.dumps({"k": 1, "n": 1, "weights": [[0], [1]], "colour": 1}), encoding="utf-8")
    code, _, _ = run(capsys, "chambers", extra)
    assert code == InputError.exit_code

    code, _, _ = run(capsys, "git", DEMO / "p2.json", "--charge", "3")
    assert code == OutsidePolytopeError.exit_code

    code, _, _ = run(capsys, "charges", DEMO / "p2.json", "--principal", "0")
    assert code == OutsidePolytopeError.exit_code

    code, _, _ = run(capsys, "pts-demo", "--tail", "1,1;3,1")
    assert code == PreconditionError.exit_code

    code, _, _ = run(capsys, "pts-demo", "--tail", "1,1,1")
    assert code == InputError.exit_code


def test_plot_p2(capsys, tmp_path):
    out = tmp_path / "p2.svg"
    code, _, _ = run(capsys, "plot", DEMO / "p2.json", "--out", out)
    assert code == 0
    svg = out.read_text(encoding="utf-8")
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert svg.count("subdivision ") == 2
    assert ">-1/2<" in svg and ">1/2<" in svg and ">0<" in svg


def test_plot_p3_has_slice_insets(capsys):
    code, svg, _ = run(capsys, "plot", DEMO / "p3.json")
    assert code == 0
    assert "f=(3, 3)" in svg and "f=(4, 4)" in svg
    assert svg.count("<polygon") == 3


def test_plot_p1_and_plane(capsys):
    code, svg, _ = run(capsys, "plot", DEMO / "p1.json")
    assert code == 0 and svg.count("subdivision ") == 1
    code, svg, _ = run(capsys, "plot", DEMO / "square.json")
    assert code == 0 and "<polygon" in svg
    code, _, _ = run(capsys, "plot", DEMO / "rank3.json")
    assert code == UnsupportedDimensionError.exit_code


def test_console_script_is_declared():
    text = (ROOT / "pyproject.toml").read_text(encoding="utf-8")
    assert 'chowlab = "chowlab.cli:main"' in text
    assert os.path.exists(ROOT / "src" / "chowlab" / "report.schema.json")
