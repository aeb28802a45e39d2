import json
from fractions import Fraction
import subprocess
import sys
from pathlib import Path

import pytest

from momentforge.cli import main
from momentforge.documents import parse
from momentforge.karshon import graphs_equal

FIX = Path(__file__).resolve().parents[1] / "fixtures"


def fx(name):
    return str(FIX / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", sorted(FIX.glob("*.json")), ids=lambda p: p.name)
def test_validate_fixtures(capsys, path):
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0 and json.loads(out)["valid"] is True


def test_validate_invalid_polygon(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "delzant-polygon", "version": "1", '
                   '"payload": {"vertices": [["0", "0"], ["1", "0"], ["0", "2"]]}}')
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and json.loads(out)["violations"][0][0] == 1


@pytest.mark.parametrize("text", [
    '{"kind": "karshon-graph", "version": "1", "payload": {"vertices": '
    '[{"id": "a", "kind": "isolated", "j": "1/0"}], "edges": []}}',
    '{"kind": "karshon-graph", "version": "2", "payload": {}}',
    "{not json",
])
def test_bad_input_exits_2(tmp_path, capsys, text):
    f = tmp_path / "doc.json"
    f.write_text(text)
    code, out, err = run(capsys, "validate", str(f))
    assert code == 2 and out == "" and err.startswith("error:")


def test_syntax_error_reports_position(tmp_path, capsys):
    f = tmp_path / "doc.json"
    f.write_text('{"kind": "karshon-graph", "version": "1", "payload": {"vertices": '
                 '[{"id": "a", "kind": "isolated", "j": 0.5}], "edges": []}}')
    _, _, err = run(capsys, "validate", str(f))
    assert "line 1, column" in err


def test_missing_file_exits_2(capsys):
    assert run(capsys, "validate", "/nonexistent/doc.json")[0] == 2


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["blowup", fx("graph-cp2.json")])
    assert info.value.code == 2


def test_st_blowup_reproduces_fixture(capsys):
    code, out, _ = run(capsys, "st-blowup", fx("polygon-cp2-4-blowups.json"),
                       "--end", "min", "--size", "1/4", "--height", "3/8")
    assert code == 0
    assert out == (FIX / "semitoric-cp2-5-blowups.json").read_text()


def test_st_blowup_out_of_range(capsys):
    code, _, err = run(capsys, "st-blowup", fx("polygon-cp2-4-blowups.json"),
                       "--end", "min", "--size", "1/2", "--height", "1/4")
    assert code == 1 and "error" in err


def test_to_karshon_and_restrict(capsys):
    code, out, _ = run(capsys, "to-karshon", fx("semitoric-cp2-5-blowups.json"))
    assert code == 0
    expected = parse((FIX / "graph-cp2-5-blowups.json").read_text()).payload
    assert graphs_equal(parse(out).payload, expected)
    code, out, _ = run(capsys, "restrict", fx("polygon-hirzebruch.json"), "--xi", "1,0")
    assert code == 0
    assert graphs_equal(parse(out).payload, parse((FIX / "graph-hirzebruch.json").read_text()).payload)
    assert run(capsys, "restrict", fx("polygon-hirzebruch.json"), "--xi", "2,0")[0] == 1
    assert run(capsys, "restrict", fx("polygon-hirzebruch.json"), "--xi", "x")[0] == 2


def test_chop(capsys):
    code, out, _ = run(capsys, "chop", fx("polygon-cp2-triangle.json"), "--vertex", "0", "--size", "1/4")
    assert code == 0 and parse(out).payload.area() == pytest.approx(0.5 - 1 / 32)
    assert run(capsys, "chop", fx("polygon-cp2-triangle.json"), "--vertex", "0", "--size", "1")[0] == 1


def test_blowup_and_blowdown(capsys):
    code, out, _ = run(capsys, "blowup", fx("graph-cp2.json"), "--move", "B2:t:1/4:max")
    assert code == 0
    G = parse(out).payload
    # the top point becomes a surface of size 1/4 at J = 3/4
    top = G.vertex("t")
    assert top.is_fat and (top.j, top.area) == (Fraction(3, 4), Fraction(1, 4))
    assert run(capsys, "blowup", fx("graph-cp2.json"), "--move", "B2:t:5:max")[0] == 1
    assert run(capsys, "blowup", fx("graph-cp2.json"), "--move", "B2:t")[0] == 2
    code, out, _ = run(capsys, "blowdown", fx("graph-cp2-4-blowups.json"))
    assert code == 0 and len(json.loads(out)) >= 1


def test_canonical(capsys):
    code, out, _ = run(capsys, "canonical", fx("graph-walkthrough.json"))
    assert code == 0
    again = FIX.parent / "canonical.tmp.json"
    try:
        again.write_text(out)
        assert run(capsys, "canonical", str(again))[1] == out
    finally:
        again.unlink()
    assert run(capsys, "canonical", fx("certificate-walkthrough.json"))[0] == 1


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", fx("graph-cp2-6-blowups.json"))
    assert code == 0
    assert json.loads(out) == {"best": "HypersemitoricOnly", "requires_degenerate": True,
                               "witness_levels": ["1/4"]}


def test_extend_replay_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "extend", fx("graph-walkthrough.json"), "--trace")
    assert code == 0
    assert out == (FIX / "certificate-walkthrough.json").read_text()
    code, out, err = run(capsys, "replay", fx("certificate-walkthrough.json"))
    assert code == 0 and "stage3" in err
    code, out, _ = run(capsys, "verify", fx("certificate-walkthrough.json"), fx("graph-walkthrough.json"))
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "verify", fx("certificate-walkthrough.json"), fx("graph-cp2.json"))
    assert code == 1 and json.loads(out)["error"] == "graph mismatch"


def test_extend_without_surfaces(capsys):
    code, out, _ = run(capsys, "extend", fx("graph-efstathiou-martynchuk.json"))
    assert code == 0 and json.loads(out)["classified_only"]["best"] == "Toric"


def test_wrong_kind_exits_1(capsys):
    assert run(capsys, "classify", fx("polygon-cp2-triangle.json"))[0] == 1


def test_render(tmp_path, capsys):
    target = tmp_path / "out.svg"
    assert run(capsys, "render", fx("semitoric-cp2-5-blowups.json"), "-o", str(target))[0] == 0
    assert target.read_text().count("stroke-dasharray") == 1
    code, out, _ = run(capsys, "render", fx("graph-cp2.json"))
    assert code == 0 and out.startswith("<svg")


def test_colour_modes(tmp_path, capsys, monkeypatch):
    f = tmp_path / "doc.json"
    f.write_text("{")
    monkeypatch.setenv("MOMENTFORGE_COLOR", "always")
    assert "\x1b[31m" in run(capsys, "validate", str(f))[2]
    monkeypatch.setenv("MOMENTFORGE_COLOR", "never")
    assert "\x1b[" not in run(capsys, "validate", str(f))[2]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "momentforge", "classify", fx("graph-cp2-5-blowups.json")],
                       capture_output=True, text=True, env={"MOMENTFORGE_COLOR": "never", "PATH": ""})
    assert r.returncode == 0 and json.loads(r.stdout)["best"] == "Semitoric"
