"""Randomized properties (hypothesis)."""
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from relik.lifting import lift_equivalence_check, lift_table, LiftVariant
from relik.logic import evaluate
from relik.model import extension, from_rows, transitive_closure
from relik.relations import (
    SetRelation,
    classify_order,
    has_union_property,
    is_orderly,
    is_qualitative,
)
from relik.syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Cond,
    Gt,
    Implies,
    Know,
    Not,
    Or,
    parse_formula,
    print_formula,
)

VOCAB = ("p", "q", "r")

props = st.recursive(
    st.sampled_from([Atom("p"), Atom("q"), Atom("r"), TRUE, FALSE]),
    lambda inner: st.one_of(
        inner.map(Not),
        st.tuples(st.sampled_from([And, Or, Implies]), inner, inner).map(lambda t: t[0](t[1], t[2])),
    ),
    max_leaves=6,
)

basic = st.one_of(
    st.tuples(props, props).map(lambda t: Gt(*t)),
    props.map(Know),
    st.tuples(props, props).map(lambda t: Cond(*t)),
)

likelihood = st.recursive(
    basic,
    lambda inner: st.one_of(
        inner.map(Not),
        st.tuples(st.sampled_from([And, Or, Implies]), inner, inner).map(lambda t: t[0](t[1], t[2])),
    ),
    max_leaves=5,
)


@st.composite
def structures(draw, max_worlds=6):
    n = draw(st.integers(1, max_worlds))
    rows = [1 << u | draw(st.integers(0, (1 << n) - 1)) for u in range(n)]
    assigns = [draw(st.frozensets(st.sampled_from(VOCAB))) for _ in range(n)]
    return from_rows(VOCAB, assigns, transitive_closure(rows))


@given(likelihood)
def test_parse_print_round_trip(f):
    text = print_formula(f)
    assert parse_formula(text) == f
    assert print_formula(parse_formula(text)) == text


@given(structures(), props, props)
def test_extension_is_boolean_homomorphism(M, a, b):
    assert extension(M, Or(a, b)) == extension(M, a) | extension(M, b)
    assert extension(M, And(a, b)) == extension(M, a) & extension(M, b)
    assert extension(M, Not(a)) == M.all_worlds & ~extension(M, a)


@settings(max_examples=60, deadline=None)
@given(structures())
def test_lift_properties_on_random_structures(M):
    full = tuple(range(1 << M.n))
    g = SetRelation(full, lift_table(M, LiftVariant.GEQ_STAR))
    sp = SetRelation(full, lift_table(M, LiftVariant.SUCC_PRIME))
    ss = SetRelation(full, lift_table(M, LiftVariant.SUCC_STAR))
    assert classify_order(g).is_partial_preorder and is_orderly(g) and has_union_property(g)
    assert classify_order(sp).is_strict_partial_order and is_orderly(sp)
    assert classify_order(ss).is_strict_partial_order and is_orderly(ss) and is_qualitative(ss)
    assert not (ss.rel & ~sp.rel).any()
    assert lift_equivalence_check(M) == []


@settings(max_examples=40, deadline=None)
@given(structures(max_worlds=4))
def test_table_route_matches_oracle(M):
    o = oracles.Order(M.n, {(u, v) for u in range(M.n) for v in range(M.n) if M.geq(u, v)})
    sets = oracles.subsets(range(M.n))
    T = lift_table(M, LiftVariant.SUCC_STAR)
    for U in sets:
        for V in sets:
            assert T[sum(1 << i for i in U), sum(1 << i for i in V)] == o.succ_star(U, V)


@settings(max_examples=80, deadline=None)
@given(structures(max_worlds=5), props, props)
def test_conditional_readings_agree(M, psi, phi):
    f = Cond(psi, phi)
    assert evaluate(M, f, "min") == evaluate(M, f, "gt")
