import io
import json

import pytest

from conic_bundles.cli import parse_surface, run_command
from conic_bundles.errors import ParseError

WORKED = {"kind": "chatelet", "a": "5", "c": "3/5", "f": ["1", "0", "7", "0", "5"]}
PAIR = {"kind": "general", "points": [
    {"poly": ["-2", "0", "1"], "alpha": {"x": "1", "y": "1", "d": "2"}},
    {"poly": ["-5", "0", "1"], "alpha": {"x": "2", "y": "1", "d": "5"}},
]}


@pytest.fixture
def surface(tmp_path):
    def write(doc, name="surface.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return write


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_valid_surfaces():
    X = parse_surface(json.dumps(WORKED))
    assert X.kind == "chatelet" and X.geometric_fiber_count == 4
    X = parse_surface('{"kind":"chatelet","a":"-1","c":"1","f":["1","0","0","0","1"]}')
    assert X.a == -1
    X = parse_surface(json.dumps(PAIR))
    assert [fd.degree for fd in X.locus] == [2, 2]


@pytest.mark.parametrize("doc,code", [
    ({"kind": "chatelet", "a": "4", "c": "1", "f": ["1", "0", "0", "0", "1"]}, "square-a"),
    ({"kind": "chatelet", "a": "5/0", "c": "1", "f": ["1", "0", "0", "0", "1"]}, "malformed-rational"),
    ({"kind": "chatelet", "a": 5, "c": "1", "f": ["1", "0", "0", "0", "1"]}, "malformed-rational"),
    ({"kind": "chatelet", "a": "5", "c": "1", "f": ["1", "-2", "2", "-2", "1"]}, "not-squarefree"),
    ({"kind": "chatelet", "a": "5", "c": "1", "f": ["1", "0", "1"]}, "bad-degree"),
    ({"kind": "chatelet", "a": "5", "c": "0", "f": ["1", "0", "0", "0", "1"]}, "degenerate"),
    ({"kind": "chatelet", "a": "5"}, "bad-schema"),
    ({"kind": "torus"}, "bad-schema"),
    ({"kind": "general", "points": [{"poly": ["-1", "0", "1"], "alpha": "3"}]}, "reducible-point"),
    ({"kind": "general", "points": [{"poly": ["-2", "0", "1"], "alpha": {"x": "1", "y": "1", "d": "2"}}]},
     "norm-product"),
    ({"kind": "general", "points": [{"poly": ["0", "1"], "alpha": "4"}]}, "square-residue"),
])
def test_parse_errors_have_codes(doc, code):
    with pytest.raises(ParseError) as info:
        parse_surface(json.dumps(doc))
    assert info.value.code == code
    assert info.value.path.startswith("$")


def test_bad_json():
    with pytest.raises(ParseError) as info:
        parse_surface("{not json")
    assert info.value.code == "bad-schema"


def test_spec_examples(surface):
    assert run(["parity", "--a", "5", "--c", "3", "--disc", "29"])[:2] == (0, "1/2\n")
    path = surface(WORKED)
    code, out, _ = run(["local", path, "--place", "3"])
    assert code == 0 and out.startswith("no local points")
    code, out, _ = run(["analyze", path, "--ext", "29"])
    assert code == 0 and "conclusion: bm_obstruction_over_L" in out
    assert "cor-not-surjective" in out
    assert run(["hilbert", "--a", "-1", "--b", "-1", "--place", "real"])[1] == "1/2\n"


def test_usage_errors_exit_with_one(surface):
    path = surface(WORKED)
    assert run(["restriction", path])[0] == 1
    assert run(["obstruction", path])[0] == 1
    assert run(["analyze", path, "--bogus"])[0] == 1
    assert run(["frobnicate"])[0] == 1
    assert run(["parity", "--a", "x", "--c", "3", "--disc", "29"])[0] == 1
    bad = surface({"kind": "chatelet", "a": "4", "c": "1", "f": ["1", "0", "0", "0", "1"]}, "bad.json")
    code, out, err = run(["brauer", bad, "--json"])
    assert code == 1 and json.loads(out)["error"] == "square-a"
    assert run(["brauer", "/nonexistent.json"])[0] == 1


def test_depth_limit_exits_with_two(surface):
    path = surface(WORKED)
    code, _, err = run(["local", path, "--place", "7", "--max-depth", "0"])
    assert code == 2 and "limit" in err


COMMANDS = [
    ["analyze", "{w}"], ["analyze", "{w}", "--ext", "29"], ["analyze", "{w}", "--ext", "2"],
    ["brauer", "{w}"], ["brauer", "{w}", "--ext", "29"], ["restriction", "{w}", "--ext", "29"],
    ["critical", "{w}"], ["problematic", "{w}"], ["local", "{w}", "--place", "5"],
    ["local", "{w}", "--place", "3", "--ext", "29"], ["obstruction", "{w}", "--ext", "29"],
    ["parity", "--a", "5", "--c", "3", "--disc", "19"], ["hilbert", "--a", "2", "--b", "3", "--place", "3"],
    ["brauer", "{p}", "--ext", "-1"], ["problematic", "{p}"], ["restriction", "{p}", "--ext", "-1"],
    ["analyze", "{p}", "--ext", "-1"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_json_reports_round_trip(surface, argv):
    paths = {"w": surface(WORKED, "w.json"), "p": surface(PAIR, "p.json")}
    argv = [a.format(**paths) for a in argv] + ["--json"]
    code, out, _ = run(argv)
    assert code == 0
    text = out.rstrip("\n")
    assert json.dumps(json.loads(text), sort_keys=True, indent=2) == text
    assert not any(isinstance(x, float) for x in _leaves(json.loads(text)))


def _leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _leaves(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _leaves(v)
    else:
        yield obj


def test_analyze_json_fields(surface):
    code, out, _ = run(["analyze", surface(WORKED), "--ext", "29", "--json"])
    report = json.loads(out)
    assert report["conclusion"] == "bm_obstruction_over_L"
    assert report["field"] == "Q(sqrt(29))"
    assert report["details"]["bm"]["total"] == ["1/2"]
