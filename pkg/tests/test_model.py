import json
from pathlib import Path

import pytest

from relik import fixtures as fx
from relik.model import (
    ModelError,
    World,
    dump_document,
    eval_prop,
    extension,
    load_structure,
    validate_structure,
)
from relik.syntax import TRUE, FALSE, parse_prop


FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def doc(worlds, geq, props=("p",)):
    return {
        "props": list(props),
        "worlds": [{"id": w, "true": t} for w, t in worlds],
        "geq": [list(p) for p in geq],
    }


def test_load_without_pairs_leaves_worlds_incomparable():
    M = load_structure(doc([("w1", []), ("w2", [])], []))
    assert not M.geq(0, 1) and not M.geq(1, 0)
    assert M.geq(0, 0) and M.geq(1, 1)


def test_load_closes_transitively_and_reflexively():
    M = load_structure(doc([("a", []), ("b", []), ("c", [])], [("a", "b"), ("b", "c")]))
    got = {(u, v) for u in range(3) for v in range(3) if M.geq(u, v)}
    assert got == {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)}


@pytest.mark.parametrize(
    "bad",
    [
        doc([("a", [])], [("a", "x")]),
        doc([("a", ["r"])], []),
        doc([("a", []), ("a", [])], []),
        {"props": [], "worlds": [], "geq": [], "extra": 1},
        {"props": ["p"], "worlds": [{"id": "a", "true": [], "label": 2}], "geq": []},
        doc([("a", [])], [], props=("true",)),
    ],
)
def test_load_rejects_malformed(bad):
    with pytest.raises(ModelError):
        load_structure(bad)


def test_duplicate_assignments_allowed():
    M = fx.four_world_model()
    assert M.worlds[2].true == M.worlds[3].true


def test_eval_prop_examples():
    M = fx.four_world_model()
    w1 = M.worlds[0]
    assert eval_prop(w1, TRUE)
    assert eval_prop(w1, parse_prop("p & q"))
    assert not eval_prop(w1, parse_prop("~p & q"))


def test_eval_prop_unknown_atom():
    with pytest.raises(ModelError):
        eval_prop(World("w", frozenset()), parse_prop("zz"), vocabulary=("p",))


def test_extension_examples():
    M = fx.four_world_model()
    assert M.ids(extension(M, parse_prop("p"))) == ["w1", "w2"]
    assert extension(M, FALSE) == 0
    assert M.ids(extension(M, parse_prop("~p & q"))) == ["w3", "w4"]


def test_extension_distributes():
    M = fx.four_world_model()
    for a in ("p", "q", "p & q", "~p"):
        for b in ("q", "~q", "p -> q"):
            fa, fb = parse_prop(a), parse_prop(b)
            assert extension(M, parse_prop(f"({a}) | ({b})")) == extension(M, fa) | extension(M, fb)
        assert extension(M, parse_prop(f"~({a})")) == M.all_worlds & ~extension(M, fa)


def test_validate_reports_each_violation():
    assert validate_structure(fx.four_world_model()) == []
    raw = load_structure(doc([("a", []), ("b", []), ("c", [])], [("a", "b"), ("b", "c")]), close=False)
    report = validate_structure(raw)
    assert any(line.startswith("reflexivity") for line in report)
    assert any(line.startswith("transitivity") for line in report)


def test_closure_is_idempotent():
    M = fx.four_world_model()
    again = load_structure(M.to_document())
    assert again.geq_rows == M.geq_rows
    assert load_structure(M.to_document(), close=False).geq_rows == M.geq_rows


STRUCTURE_FIXTURES = [
    p for p in sorted(FIXTURES.glob("*.json")) if "worlds" in json.loads(p.read_text())
]


@pytest.mark.parametrize("path", STRUCTURE_FIXTURES, ids=lambda p: p.stem)
def test_structure_fixtures_validate(path):
    data = json.loads(path.read_text())
    assert validate_structure(load_structure(data, close=False)) == []


def test_dump_document_round_trips():
    d = fx.four_world_model().to_document()
    assert json.loads(dump_document(d)) == d
    assert (FIXTURES / "four_world.json").read_text().strip() == dump_document(d)
