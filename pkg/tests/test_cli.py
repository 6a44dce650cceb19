import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from ptolemyd import cli
from ptolemyd.formats import FormatError, diagram_from_obj, emit_diagram, parse_diagram
from ptolemyd.geometry import ArcSet, context

X1 = {"n": 5, "arcs": [
    {"kind": "pair", "v": [0, 2]}, {"kind": "pair", "v": [1, 3]},
    {"kind": "diameter", "i": 0, "color": "green"}, {"kind": "diameter", "i": 4, "color": "red"}]}
X2 = {"n": 5, "arcs": [
    {"kind": "pair", "v": [0, 2]}, {"kind": "pair", "v": [0, 6]}, {"kind": "pair", "v": [0, 7]},
    {"kind": "diameter", "i": 0, "color": "green"}, {"kind": "diameter", "i": 1, "color": "green"},
    {"kind": "diameter", "i": 2, "color": "green"}, {"kind": "diameter", "i": 0, "color": "red"}]}
NC_X2 = {"n": 5, "arcs": [
    {"kind": "pair", "v": [0, 7]}, {"kind": "pair", "v": [0, 8]}, {"kind": "pair", "v": [2, 4]},
    {"kind": "diameter", "i": 0, "color": "green"}]}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="d.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


@pytest.mark.parametrize("argv, expected", [
    (["count", "--n", "4", "--method", "brute"], "500"),
    (["count", "--n", "6", "--method", "genfunc"], "19400"),
    (["count", "--n", "1", "--method", "genfunc"], "1"),
    (["count", "--n", "3", "--method", "pruned"], "82"),
])
def test_count(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_count_budget(capsys):
    code, _, err = run(capsys, "count", "--n", "7", "--method", "brute")
    assert code == 2 and "budget" in err


@pytest.mark.parametrize("which, order, expected", [
    ("pd", "6", ["0", "1", "16", "82", "500", "3084", "19400"]),
    ("cIII", "5", ["0", "10", "12", "16", "20", "24"]),
    ("pa", "4", ["0", "1", "1", "4", "17"]),
    ("cI", "3", ["1", "2", "2", "2"]),
    ("w", "4", ["0", "0", "1", "7", "25"]),
    ("ctotal", "2", ["1", "14", "28"]),
])
def test_series(capsys, which, order, expected):
    code, out, _ = run(capsys, "series", "--which", which, "--order", order)
    assert code == 0 and json.loads(out) == expected


def test_series_order_env(capsys, monkeypatch):
    monkeypatch.setenv("PTD_ORDER", "3")
    code, out, _ = run(capsys, "series", "--which", "pd")
    assert json.loads(out) == ["0", "1", "16", "82"]
    code, _, _ = run(capsys, "series", "--which", "pd", "--order", "65")
    assert code == 2


def test_series_default_order(capsys, monkeypatch):
    monkeypatch.delenv("PTD_ORDER", raising=False)
    _, out, _ = run(capsys, "series", "--which", "pa")
    assert len(json.loads(out)) == 13


def test_check_empty(capsys, write):
    code, out, _ = run(capsys, "check", "--file", write({"n": 3, "arcs": []}))
    report = json.loads(out)
    assert code == 0 and report["ptolemy"] and report["torsion"]


def test_check_x1(capsys, write):
    code, out, _ = run(capsys, "check", "--file", write(X1))
    report = json.loads(out)
    assert code == 1
    assert not report["ptolemy"] and not report["torsion"]
    assert {"Pt1", "Pt2"} <= {v["condition"] for v in report["violations"]}


def test_check_x2(capsys, write):
    code, out, _ = run(capsys, "check", "--file", write(X2))
    assert code == 0 and json.loads(out)["violations"] == []


def test_check_flags_disagreement(capsys, write, monkeypatch):
    monkeypatch.setattr(cli, "is_torsion_arcset", lambda ctx, X: False)
    code, _, err = run(capsys, "check", "--file", write(X2))
    assert code == 1 and "INTERNAL ERROR" in err


def test_nc_of_x2(capsys, write):
    code, out, _ = run(capsys, "nc", "--file", write(X2))
    assert code == 0 and json.loads(out) == NC_X2
    code, out, _ = run(capsys, "nc", "--file", write(out, "nc.json"))
    assert json.loads(out) == json.loads(emit_diagram(diagram_from_obj(X2)))


def test_closure(capsys, write):
    src = {"n": 4, "arcs": [{"kind": "pair", "v": [0, 2]}, {"kind": "pair", "v": [1, 3]}]}
    code, out, _ = run(capsys, "closure", "--file", write(src))
    assert code == 0
    assert {tuple(a["v"]) for a in json.loads(out)["arcs"]} == {(0, 2), (0, 3), (1, 3)}


def test_decompose_and_recompose(capsys, write):
    code, out, _ = run(capsys, "decompose", "--file", write({"n": 2, "arcs": []}))
    d = json.loads(out)
    assert code == 0 and d["central"]["kind"] == "I" and d["central"]["k"] == 1
    assert [g["m"] for g in d["glued"]] == [2, 2]
    code, out, _ = run(capsys, "recompose", "--file", write(out, "dec.json"))
    assert json.loads(out) == {"n": 2, "arcs": []}


def test_decompose_x2_round_trip(capsys, write):
    _, out, _ = run(capsys, "decompose", "--file", write(X2))
    _, back, _ = run(capsys, "recompose", "--file", write(out, "dec.json"))
    assert back.strip() == emit_diagram(diagram_from_obj(X2))


def test_decompose_non_ptolemy(capsys, write):
    code, _, _ = run(capsys, "decompose", "--file", write(X1))
    assert code == 1


@pytest.mark.parametrize("text", [
    "not json",
    '{"arcs": []}',
    '{"n": 0, "arcs": []}',
    '{"n": 3, "arcs": [{"kind": "pair", "v": [0, 1]}]}',
    '{"n": 3, "arcs": [{"kind": "pair", "v": [0, 3]}]}',
    '{"n": 3, "arcs": [{"kind": "diameter", "i": 0, "color": "blue"}]}',
    '{"n": 3, "arcs": [{"kind": "loop"}]}',
    '{"n": 4, "arcs": [{"kind": "pair", "v": [0, 2]}, {"kind": "pair", "v": [4, 6]}]}',
])
def test_parse_errors(capsys, write, text):
    for command in ("check", "render", "nc"):
        code, _, err = run(capsys, command, "--file", write(text))
        assert code == 2 and err


def test_missing_file(capsys):
    code, _, _ = run(capsys, "check", "--file", "/nonexistent/x.json")
    assert code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["count"])
    assert exc.value.code == 2


def test_render_deterministic(capsys, write):
    path = write(X2)
    _, first, _ = run(capsys, "render", "--file", path, "--format", "svg")
    _, second, _ = run(capsys, "render", "--file", path)
    assert first == second and first.startswith("<svg")
    assert first.count("<polyline") == 1  # one red diameter, drawn as a wave
    assert first.count("<line") == 3 + 2 * 3


def test_render_d1(capsys, write, tmp_path):
    out_path = tmp_path / "d1.svg"
    d1 = {"n": 1, "arcs": [{"kind": "diameter", "i": 0, "color": "green"},
                           {"kind": "diameter", "i": 0, "color": "red"}]}
    code, _, _ = run(capsys, "render", "--file", write(d1), "--output", str(out_path))
    svg = out_path.read_text()
    assert code == 0 and "<circle" in svg and "<polyline" in svg and "<line" in svg


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 82 and len(set(lines)) == 82
    _, brute, _ = run(capsys, "enumerate", "--n", "3", "--method", "brute")
    assert sorted(brute.splitlines()) == sorted(lines)


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert all(r["status"] in ("pass", "diagnostic") for r in records)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ptolemyd", "count", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "16"


@given(st.integers(1, 5), st.data())
@settings(max_examples=60, deadline=None)
def test_diagram_file_round_trip(n, data):
    X = ArcSet(n, data.draw(st.integers(0, context(n).full)))
    text = emit_diagram(X)
    assert parse_diagram(text) == X
    assert emit_diagram(parse_diagram(text)) == text


def test_duplicate_entries_rejected():
    with pytest.raises(FormatError):
        diagram_from_obj({"n": 3, "arcs": [{"kind": "diameter", "i": 0, "color": "red"},
                                           {"kind": "diameter", "i": 3, "color": "red"}]})
