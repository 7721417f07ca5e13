from itertools import product

import pytest

import oracles
from relik import fixtures as fx
from relik.logic import (
    KLM_RULES,
    assignments,
    check_klm,
    class_extensions,
    class_formula,
    conditional_disagreements,
    desugar,
    evaluate,
    evaluate_cond_min,
)
from relik.model import ModelError, extension, from_rows
from relik.search import enumerate_preorders
from relik.syntax import FALSE, TRUE, Know, Gt, Not, Or, And, Atom, Cond, parse_formula, parse_prop

p, q = Atom("p"), Atom("q")


def test_desugar_examples():
    assert desugar(Know(p)) == Not(Gt(Not(p), FALSE))
    assert desugar(Cond(q, p)) == Or(Not(Gt(Not(Not(q)), FALSE)), Gt(And(p, q), And(Not(p), q)))
    assert desugar(Gt(p, q)) == Gt(p, q)


def test_desugar_leaves_only_gt():
    f = desugar(parse_formula("K(p) & ~(q ~> p) -> (p >> q)"))
    assert "K(" not in str(f) and "~>" not in str(f)


def test_evaluate_examples():
    M = fx.four_world_model()
    assert evaluate(M, parse_formula("(p >> ~p & q)"))
    assert evaluate(M, parse_formula("~(p & q >> ~p & q) & ~(p & ~q >> ~p & q)"))
    assert evaluate(M, fx.four_world_formula())
    assert evaluate(fx.two_incomparable(), Know(TRUE))


def test_evaluate_rejects_outer_prop():
    with pytest.raises(ModelError):
        evaluate(fx.four_world_model(), p)


def test_cond_min_examples():
    M = fx.four_world_model()
    assert evaluate_cond_min(M, FALSE, p)
    assert not evaluate_cond_min(M, q, p)
    assert evaluate_cond_min(M, parse_prop("~p & q"), q)


def test_know_means_everywhere():
    for n in range(1, 4):
        for rows in enumerate_preorders(n):
            for tup in product(range(4), repeat=n):
                M = from_rows(("p", "q"), [assignments(("p", "q"))[a] for a in tup], rows)
                for c in range(16):
                    f = class_formula(("p", "q"), c)
                    assert evaluate(M, Know(f)) == (extension(M, f) == M.all_worlds)


def test_classes_are_distinct_and_complete():
    vocab = ("p", "q")
    M = from_rows(vocab, assignments(vocab), (1, 2, 4, 8))
    ext = class_extensions(M)
    assert sorted(int(x) for x in ext) == list(range(16))
    for c in range(16):
        assert extension(M, class_formula(vocab, c)) == ext[c]


def test_conditional_readings_match_oracle_on_three_worlds():
    vocab = ("p", "q")
    assigns = assignments(vocab)
    for rows in enumerate_preorders(3):
        o = oracles.Order(3, {(u, v) for u in range(3) for v in range(3) if rows[u] >> v & 1})
        for tup in product(range(4), repeat=3):
            M = from_rows(vocab, [assigns[a] for a in tup], rows)
            assert conditional_disagreements(M) == []
            ext = class_extensions(M)
            for a, c in ((3, 1), (6, 2), (15, 9)):
                A = frozenset(i for i in range(3) if ext[a] >> i & 1)
                C = frozenset(i for i in range(3) if ext[c] >> i & 1)
                got = evaluate(M, Cond(class_formula(vocab, a), class_formula(vocab, c)))
                assert got == o.cond(A, C)


def test_klm_examples():
    report = check_klm(fx.four_world_model())
    assert report.all_hold
    assert set(report.rules) == set(KLM_RULES)
    assert all(v.witness is None for v in report.rules.values())


def test_klm_witness_attached_on_failure(monkeypatch):
    import numpy as np

    import relik.logic as logic

    # swap in a conditional that is only reflexive; AND then fails with a witness
    monkeypatch.setattr(logic, "cond_table", lambda M, ext, mins=None: np.eye(len(ext), dtype=bool))
    report = logic.check_klm(fx.four_world_model())
    assert not report.all_hold
    for v in report.rules.values():
        assert v.holds == (v.witness is None)
    assert len(report.rules["LLE"].witness) == 3


def test_klm_vocabulary_guard():
    with pytest.raises(ValueError):
        check_klm(from_rows(("a", "b", "c", "d"), [()], (1,)))
