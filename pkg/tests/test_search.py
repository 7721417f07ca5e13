import random

import pytest

import oracles
from relik import fixtures as fx
from relik.logic import evaluate
from relik.search import (
    MAX_PARTIAL_WORLDS,
    PRINTED_L7,
    BoundsError,
    SearchBounds,
    candidates,
    check_small_model_property,
    check_validity,
    enumerate_preorders,
    exhaustive_schema_check,
    instantiate_schema,
    isomorphic,
    mine_schema,
    random_preorder,
    schema,
    search_model,
    set_partitions,
    soundness_fuzz,
    strict_partial_orders,
)
from relik.syntax import Atom, parse_formula, parse_prop, print_formula

PQ = ("p", "q")
p, q, r = Atom("p"), Atom("q"), Atom("r")


def _as_pairs(rows):
    return frozenset((u, v) for u, row in enumerate(rows) for v in range(len(rows)) if row >> v & 1)


@pytest.mark.parametrize("n, total, expected", [(1, False, 1), (2, False, 4), (3, True, 13), (3, False, 29)])
def test_enumeration_counts(n, total, expected):
    assert len(enumerate_preorders(n, total)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(n):
    for total in (False, True):
        got = [_as_pairs(r) for r in enumerate_preorders(n, total)]
        assert len(got) == len(set(got))
        assert set(got) == set(oracles.brute_preorders(n, total))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_strict_orders_match_brute_force(n):
    got = {_as_pairs(r) for r in strict_partial_orders(n)}
    assert got == set(oracles.brute_strict_orders(n))


def test_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_enumeration_guard():
    with pytest.raises(BoundsError):
        enumerate_preorders(MAX_PARTIAL_WORLDS + 1)


def test_random_preorder_is_preorder():
    rng = random.Random(0)
    for _ in range(200):
        n = rng.randint(1, 6)
        for total in (False, True):
            rows = random_preorder(n, rng, total)
            rel = _as_pairs(rows)
            assert all((u, u) in rel for u in range(n))
            assert oracles.is_transitive(rel)
            if total:
                assert all((u, v) in rel or (v, u) in rel for u in range(n) for v in range(n))


def test_instantiate_examples():
    assert print_formula(instantiate_schema("L2", [p])) == "~(p >> p)"
    assert print_formula(instantiate_schema("L3", [p, q, r])) == (
        "((((p | q) >> r) & ((p | r) >> q)) -> (p >> (q | r)))"
    )
    assert print_formula(instantiate_schema("L5", [p, q, r])) == "((p >> q) -> ((p >> r) | (r >> q)))"
    with pytest.raises(ValueError):
        instantiate_schema("L5", [p, q])


def test_l1_template_substitution():
    f = instantiate_schema("L1", [p, q, q, p], tautology=parse_prop("X1 -> X1 | X2"))
    assert print_formula(f) == "((p >> q) -> ((p >> q) | (q >> p)))"
    with pytest.raises(ValueError):
        instantiate_schema("L1", [p, q], tautology=parse_prop("X1 & ~X1"))


def test_search_finds_the_four_world_model():
    v = search_model(fx.four_world_formula(), SearchBounds(4, PQ))
    assert v.status == "sat"
    assert isomorphic(v.witness, fx.four_world_model())
    assert evaluate(v.witness, fx.four_world_formula())


def test_search_total_is_conclusively_unsat():
    v = search_model(fx.four_world_formula(), SearchBounds(4, PQ, "total", one_per_assignment=True))
    assert v.status == "unsat_up_to_bound" and v.conclusive and v.witness is None


def test_search_self_comparison_unsat():
    v = search_model(parse_formula("(p >> p)"), SearchBounds(3, ("p",)))
    assert v.status == "unsat_up_to_bound" and not v.conclusive


def test_search_is_deterministic():
    b = SearchBounds(3, PQ)
    f = parse_formula("(p >> q) & ~(q >> ~q)")
    a1, a2 = search_model(f, b), search_model(f, b)
    assert a1.witness.to_document() == a2.witness.to_document()


def test_bounds_guards():
    with pytest.raises(BoundsError):
        SearchBounds(6, PQ)
    with pytest.raises(BoundsError):
        SearchBounds(5, PQ, "total", one_per_assignment=True)
    with pytest.raises(BoundsError):
        SearchBounds(0, PQ)


def test_validity_examples():
    and_pq = parse_prop("p & q")
    l3 = instantiate_schema("L3", [p, q, and_pq])
    assert check_validity(l3, SearchBounds(4, PQ)).status == "valid_up_to_bound"
    l5 = instantiate_schema("L5", [p, q, and_pq])
    l5_general = instantiate_schema("L5", [parse_prop("p & ~q"), parse_prop("~p & q"), parse_prop("~p & ~q")])
    v = check_validity(l5_general, SearchBounds(3, PQ))
    assert v.status == "countermodel" and not evaluate(v.witness, l5_general)
    v = check_validity(l5_general, SearchBounds(4, PQ, "total", one_per_assignment=True))
    assert v.status == "valid_up_to_bound" and v.conclusive
    assert check_validity(l5, SearchBounds(4, PQ, "total", one_per_assignment=True)).conclusive


def test_mining_l5_finds_a_partial_countermodel():
    hit = mine_schema("L5", SearchBounds(4, PQ))
    assert hit is not None and not evaluate(hit.structure, hit.instance)
    strict = [(u, v) for u in range(hit.structure.n) for v in range(hit.structure.n) if hit.structure.gt(u, v)]
    assert len(strict) >= 1


def test_printed_l7_is_refuted_and_union_form_is_not():
    assert mine_schema(PRINTED_L7, SearchBounds(2, PQ)) is not None
    assert exhaustive_schema_check("L7", SearchBounds(3, PQ))[1] == 0


def test_class_table_sweep_agrees_with_ast_evaluation():
    from relik.logic import class_formula
    from relik.search import basic_table, class_ext_for, schema_violations, witness_structure

    b = SearchBounds(3, PQ)
    rng = random.Random(3)
    for i, c in enumerate(candidates(b)):
        if i % 7:
            continue
        M = witness_structure(b, c)
        ext = class_ext_for(2, c.assignment)
        G = basic_table(c.geq_rows, ext)
        for sid in ("L2", "L3", "L4", "L5", "L6", "L7", PRINTED_L7.id):
            sch = schema(sid)
            viol = schema_violations(sch, G, ext)
            for _ in range(4):
                idx = tuple(rng.randrange(16) for _ in range(sch.arity))
                inst = sch.build(*[class_formula(PQ, k) for k in idx])
                assert bool(viol[idx]) == (not evaluate(M, inst))


def test_fuzz_examples():
    clean = soundness_fuzz(["L1", "L2", "L3", "L4"], PQ, 6, 2000, seed=1)
    assert clean.violation_count == 0 and sum(clean.per_schema.values()) == 2000
    assert soundness_fuzz(["L6", "L7"], PQ, 6, 2000, seed=2).violation_count == 0
    assert soundness_fuzz(["L5"], PQ, 6, 10_000, seed=0).violation_count >= 1
    assert soundness_fuzz(["L5"], PQ, 6, 2000, seed=0, order_class="total").violation_count == 0
    with pytest.raises(BoundsError):
        soundness_fuzz(["L2"], PQ, 7, 1, seed=0)


def test_fuzz_is_reproducible():
    a = soundness_fuzz(["L5"], PQ, 4, 500, seed=9)
    b = soundness_fuzz(["L5"], PQ, 4, 500, seed=9)
    assert [print_formula(x[2]) for x in a.violations] == [print_formula(x[2]) for x in b.violations]


def test_small_model_property():
    corpus = [parse_formula(t) for t in ("K(p)", fx.FOUR_WORLD_FORMULA, "(p >> q) & (q ~> p)")]
    rep = check_small_model_property(PQ, 5, corpus)
    assert rep.violations == 0
    assert rep.formulas[0][1] and rep.formulas[0][2]
    assert not rep.formulas[1][1] and not rep.formulas[1][2]
