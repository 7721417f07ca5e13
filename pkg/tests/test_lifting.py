import numpy as np
import pytest

import oracles
from relik import fixtures as fx
from relik.lifting import (
    LiftVariant,
    compare,
    dominates,
    geq_star,
    lift_equivalence_check,
    lift_table,
    min_worlds,
    strict_part,
    strong_compare,
    succ_prime,
    succ_star,
)
from relik.model import PreferentialStructure, from_rows
from relik.search import enumerate_preorders


def chain():
    return PreferentialStructure.build([], {"u": [], "v": []}, [("u", "v")])


def test_strict_part_examples():
    assert not strict_part(fx.two_incomparable()).any()
    assert {tuple(x) for x in np.argwhere(strict_part(chain()))} == {(0, 1)}
    both = PreferentialStructure.build([], {"u": [], "v": []}, [("u", "v"), ("v", "u")])
    assert not strict_part(both).any()


def test_dominates_examples():
    M21, M33 = fx.two_incomparable(), fx.four_world_model()
    assert dominates(M21, 0, 0)
    assert dominates(M21, 0, 0b11)
    assert not dominates(M33, 2, 0b0001)


def test_geq_star_examples():
    M = chain()
    for U in range(4):
        assert geq_star(M, U, 0)
    assert geq_star(M, 0b01, 0b10)
    assert not geq_star(fx.two_incomparable(), 0b01, 0b10)


def test_empty_set_conventions():
    M = fx.four_world_model()
    for V in range(1, 16):
        assert not geq_star(M, 0, V)
        assert not succ_star(M, 0, V)
    assert geq_star(M, 0, 0)
    assert not succ_star(M, 0, 0)


def test_succ_star_examples():
    M21, M33 = fx.two_incomparable(), fx.four_world_model()
    assert not succ_star(M21, 0, 0)
    assert not succ_star(M21, 0b11, 0b01)
    assert succ_star(M33, 0b0011, 0b1100)


def test_succ_prime_examples():
    M = fx.two_incomparable()
    assert succ_prime(M, 0b11, 0b01)
    for U in range(4):
        assert not succ_prime(M, U, U)


def test_min_worlds_examples():
    assert min_worlds(fx.four_world_model(), 0) == 0
    assert min_worlds(fx.four_world_model(), 0b0101) == 0b0001
    assert min_worlds(fx.two_incomparable(), 0b11) == 0b11


def test_strong_compare_examples():
    M = fx.four_world_model()
    assert strong_compare(M, 0b1111, 0, True) and strong_compare(M, 0b1111, 0, False)
    assert strong_compare(chain(), 0b01, 0b10, True)
    assert not strong_compare(M, 0b0011, 0b1100, True)


@pytest.mark.parametrize("M", [fx.two_incomparable(), fx.four_world_model(), from_rows((), [()], (1,))])
def test_lift_equivalence_examples(M):
    assert lift_equivalence_check(M) == []


def test_variant_rejects_unknown():
    with pytest.raises(ValueError):
        compare(chain(), "bogus", 1, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_variants_match_literal_oracle(n):
    for rows in enumerate_preorders(n):
        M = from_rows((), [()] * n, rows)
        o = oracles.Order(n, {(u, v) for u in range(n) for v in range(n) if rows[u] >> v & 1})
        sets = oracles.subsets(range(n))
        for variant in LiftVariant:
            expected = oracles.lift_pairs(o, variant.value)
            table = lift_table(M, variant)
            for U in sets:
                for V in sets:
                    mu, mv = sum(1 << i for i in U), sum(1 << i for i in V)
                    want = (U, V) in expected
                    assert table[mu, mv] == want
                    assert compare(M, variant, mu, mv) == want


def test_singleton_reduction_and_strong_implications():
    for rows in enumerate_preorders(3):
        M = from_rows((), [()] * 3, rows)
        for u in range(3):
            for v in range(3):
                assert geq_star(M, 1 << u, 1 << v) == M.geq(u, v)
                assert succ_star(M, 1 << u, 1 << v) == M.gt(u, v)
                assert succ_prime(M, 1 << u, 1 << v) == M.gt(u, v)
        for U in range(1, 8):
            for V in range(1, 8):
                if strong_compare(M, U, V, True):
                    assert succ_star(M, U, V)
                if strong_compare(M, U, V, False):
                    assert geq_star(M, U, V)
