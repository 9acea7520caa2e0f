"""Command line behaviour, scenario round trips and golden reports.

Set ``TWORAY_REGEN_GOLDEN=1`` to rewrite the golden files after an
intentional output change.
"""
import io
import json
import os
from pathlib import Path

import pytest

from tworay import cli, reports
from tworay.scenario import BUILTINS, ScenarioError, apply_transform, builtin, parse, serialize

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("TWORAY_REGEN_GOLDEN") == "1"

CASES = [
    ("paper-X", "describe", []),
    ("paper-X", "monomials", []),
    ("paper-X", "baselocus", []),
    ("paper-X", "localchart", []),
    ("paper-X", "game", []),
    ("paper-X", "game", ["--full-trace"]),
    ("paper-X", "sections", []),
    ("paper-X", "transform", []),
    ("paper-Xprime", "describe", []),
    ("paper-Xprime", "monomials", []),
    ("paper-Xprime", "baselocus", []),
    ("paper-Xprime", "game", []),
    ("paper-Xprime", "sections", []),
]


def run(argv):
    out = io.StringIO()
    code = cli.run(argv, stdout=out)
    return code, out.getvalue()


def golden_name(name, cmd, extra, suffix):
    tag = "".join(f"_{e.strip('-').replace('-', '_')}" for e in extra)
    return GOLDEN / f"{name}_{cmd}{tag}.{suffix}"


@pytest.mark.parametrize("name,cmd,extra", CASES)
@pytest.mark.parametrize("fmt", ["txt", "json"])
def test_golden_reports(name, cmd, extra, fmt):
    argv = [cmd, "--builtin", name] + extra + (["--json"] if fmt == "json" else [])
    code, text = run(argv)
    assert code == 0
    path = golden_name(name, cmd, extra, fmt)
    if REGEN:
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name,cmd,extra", CASES)
def test_json_carries_what_the_text_prints(name, cmd, extra):
    if cmd == "transform":
        return
    _, text = run([cmd, "--builtin", name] + extra)
    _, js = run([cmd, "--builtin", name, "--json"] + extra)
    rep = json.loads(js)
    # the text report is a pure rendering of the JSON document
    assert cli.RENDER[cmd](rep) + "\n" == text


@pytest.mark.parametrize("name", BUILTINS)
def test_scenario_round_trip(name):
    s = builtin(name)
    assert parse(serialize(s), name) == s


def test_transform_gives_the_bundled_model(tmp_path):
    out = tmp_path / "xp.scn"
    code, msg = run(["transform", "--builtin", "paper-X", "-o", str(out)])
    assert code == 0 and "u^12" in msg
    from tworay.scenario import load
    assert load(out).same_content(builtin("paper-Xprime"))
    assert apply_transform(builtin("paper-X")).same_content(builtin("paper-Xprime"))


def test_scenario_file_argument(tmp_path):
    p = tmp_path / "x.scn"
    p.write_text(serialize(builtin("paper-X")), encoding="utf-8")
    code, text = run(["describe", str(p)])
    assert code == 0 and "K-condition: holds_boundary" in text


def test_ambient_only_scenario(tmp_path):
    p = tmp_path / "a.scn"
    p.write_text("[variety]\nvars = u v x\nrow1 = 1 1 0\nrow2 = 0 0 1\nchamber = (1,0) (0,1)\n")
    code, text = run(["describe", str(p)])
    assert code == 0 and "no hypersurface" in text
    code, _ = run(["game", str(p)])
    assert code == 3


@pytest.mark.parametrize("text,line", [
    ("[variety]\nvars = u v\nrow1 = 1\nrow2 = 0 1\nchamber = (1,0) (0,1)\n", 3),
    ("[variety]\nvars = u v\nrow1 = 1 0\nrow2 = 0 1\nchamber = (1,0)\n", 5),
    ("[nonsense]\n", 1),
    ("vars = u v\n", 1),
    ("[variety]\nvars = u v\nrow1 = 1 0\nrow2 = 0 1\nchamber = (1,0) (0,1)\n"
     "[hypersurface]\ndegree = (1,1)\nmonomial = w u_min=1\n", 8),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ScenarioError) as exc:
        parse(text)
    assert exc.value.line == line


def test_exit_code_parse_error(tmp_path):
    p = tmp_path / "bad.scn"
    p.write_text("[variety]\nvars = u v\n")
    assert run(["describe", str(p)])[0] == 2
    assert run(["describe", str(tmp_path / "missing.scn")])[0] == 2
    assert run(["describe"])[0] == 2


def test_exit_code_precondition():
    # the bundled X' model has no uncertified point stratum to chart automatically
    assert run(["localchart", "--builtin", "paper-Xprime"])[0] == 3
    assert run(["localchart", "--builtin", "paper-X", "--chart", "u,v"])[0] == 3
    assert run(["sections", "--builtin", "paper-X", "--ray=1,-1"])[0] == 3


def test_exit_code_inconclusive_with_strict(tmp_path):
    p = tmp_path / "y4.scn"
    p.write_text("[variety]\nvars = u v x t y z\nrow1 = 1 1 0 -2 -2 -4\nrow2 = 0 0 1 2 1 1\n"
                 "chamber = (1,0) (0,1)\n[hypersurface]\ndegree = (-8,4)\n")
    assert run(["game", str(p)])[0] == 0
    assert run(["game", str(p), "--strict"])[0] == 4


def test_options():
    code, text = run(["monomials", "--builtin", "paper-X", "--degree=-4,4"])
    assert code == 0 and "with constraints" in text
    code, text = run(["monomials", "--builtin", "paper-X", "--degree=-2,2"])
    assert code == 0 and "with constraints" not in text
    code, text = run(["monomials", "--builtin", "paper-X", "--degree=1,-1"])
    assert code == 0 and "fibre monomials: 0" in text
    code, text = run(["sections", "--builtin", "paper-X", "--ray=(0,1)", "--bound", "3"])
    assert code == 0 and "P(1^9,2^3)" in text and "complete only up to weight 3" in text
    code, text = run(["localchart", "--builtin", "paper-X", "--chart", "v,z", "--max-degree", "3"])
    assert code == 0 and "degree 4" not in text


def test_report_assumptions_are_listed():
    rep = reports.describe(builtin("paper-X"))
    assert rep["assumptions"] == reports.ASSUMPTIONS
