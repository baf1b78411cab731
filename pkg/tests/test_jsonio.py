import json

import pytest

from conftest import cycle, double_cycle, out_star
from maxleaf import OutTree, ParseError, PathDecomposition, decompose, solve_dmlob
from maxleaf.jsonio import (
    decomposition_from_json,
    decomposition_to_json,
    out_tree_from_json,
    out_tree_to_dot,
    out_tree_to_json,
    outcome_to_json,
    solve_result_to_json,
    validation_report,
)


def test_out_tree_round_trip_is_one_indexed():
    t = OutTree(0, {1: 0, 2: 1}, 3)
    obj = out_tree_to_json(t)
    assert obj == {
        "type": "out-tree",
        "root": 1,
        "parent": {"2": 1, "3": 2},
        "leaves": 1,
    }
    back = out_tree_from_json(json.loads(json.dumps(obj)), 3)
    assert back == t


def test_out_tree_from_json_rejects_garbage():
    with pytest.raises(ParseError):
        out_tree_from_json(["nope"], 3)
    with pytest.raises(ParseError):
        out_tree_from_json({"type": "out-tree", "root": 0, "parent": {}}, 3)
    with pytest.raises(ParseError):
        out_tree_from_json({"type": "out-tree", "root": 1, "parent": {"x": 1}}, 3)
    with pytest.raises(ParseError):
        out_tree_from_json({"type": "tree", "root": 1, "parent": {}}, 3)


def test_decomposition_round_trip():
    pd = PathDecomposition([[0, 1], [1, 2]])
    obj = decomposition_to_json(pd)
    assert obj == {"type": "path-decomposition", "bags": [[1, 2], [2, 3]], "width": 1}
    assert decomposition_from_json(obj) == pd
    with pytest.raises(ParseError):
        decomposition_from_json({"type": "path-decomposition", "bags": [[1]], "width": 5})
    with pytest.raises(ParseError):
        decomposition_from_json({"type": "path-decomposition", "bags": [[0]]})


def test_outcome_and_result_serialization():
    out = decompose(cycle(5), 2)
    obj = outcome_to_json(out)
    assert obj["k"] == 2
    assert obj["outcome"]["type"] == "path-decomposition"
    assert obj["trace"][-1] == "decomposition"
    res = solve_dmlob(out_star(6), 5)
    robj = solve_result_to_json(res)
    assert list(robj) == ["problem", "k", "answer", "value", "atLeastK", "method", "witness"]
    assert robj["answer"] is True
    assert robj["witness"]["leaves"] == 5


def test_validation_report_unwraps_envelopes():
    d = out_star(6)
    res = solve_dmlob(d, 5)
    report = validation_report(d, solve_result_to_json(res))
    assert report["kind"] == "out-tree"
    assert report["valid"] is True
    assert report["spanning"] is True
    out = decompose(cycle(5), 2)
    report2 = validation_report(cycle(5), outcome_to_json(out))
    assert report2 == {
        "kind": "path-decomposition",
        "valid": True,
        "errors": [],
        "width": out.decomposition.width,
    }


def test_validation_report_flags_problems():
    # a tree of the wrong digraph
    t = OutTree(0, {1: 0, 2: 0}, 3)
    report = validation_report(cycle(3), out_tree_to_json(t))
    assert report["valid"] is False
    assert report["errors"]
    # a decomposition missing an edge
    bad = {"type": "path-decomposition", "bags": [[1, 2], [3]]}
    report2 = validation_report(cycle(3), bad)
    assert report2["valid"] is False
    with pytest.raises(ParseError):
        validation_report(cycle(3), {"problem": "dmlob", "witness": None})
    with pytest.raises(ParseError):
        validation_report(cycle(3), {"what": "ever"})


def test_dot_output():
    t = OutTree(0, {1: 0, 2: 0, 3: 1}, 4)
    dot = out_tree_to_dot(t)
    assert dot == (
        "digraph out_tree {\n"
        "  3 [shape=doublecircle];\n"
        "  4 [shape=doublecircle];\n"
        "  1 -> 2;\n"
        "  1 -> 3;\n"
        "  2 -> 4;\n"
        "}\n"
    )
