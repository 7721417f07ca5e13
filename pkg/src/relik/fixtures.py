"""Worked examples as ready-made objects (the JSON files in ``fixtures/`` mirror these)."""
from __future__ import annotations

from .model import PreferentialStructure
from .relations import SetRelation, orderly_closure
from .representation import AlgebraRelation, SetAlgebra
from .syntax import parse_formula


def two_incomparable() -> PreferentialStructure:
    """Two incomparable worlds; ``m`` marks w1 so formulas can pick {w1}."""
    return PreferentialStructure.build(["m"], {"w1": ["m"], "w2": []})


def four_world_model() -> PreferentialStructure:
    """w1 > w3, w2 > w4; p&q at w1, p&~q at w2, ~p&q at w3 and w4."""
    return PreferentialStructure.build(
        ["p", "q"],
        {"w1": ["p", "q"], "w2": ["p"], "w3": ["q"], "w4": ["q"]},
        [("w1", "w3"), ("w2", "w4")],
    )


FOUR_WORLD_FORMULA = "(p >> ~p & q) & ~(p & q >> ~p & q) & ~(p & ~q >> ~p & q)"


def four_world_formula():
    return parse_formula(FOUR_WORLD_FORMULA)


def non_qualitative_relation() -> SetRelation:
    """Orderly, strict, union property, yet not qualitative; worlds a=0, b=1, c=2."""
    a, b, c = 1, 2, 4
    listed = [
        (a | b, c),
        (a | c, b),
        (a | b | c, b),
        (a | b | c, c),
        (a | b | c, b | c),
    ]
    return orderly_closure(SetRelation.powerset(3, listed))


def _with_empty(pairs, names):
    from itertools import combinations

    nonempty = [list(s) for k in range(1, len(names) + 1) for s in combinations(names, k)]
    return list(pairs) + [(x, []) for x in nonempty]


def three_atom_algebra(sizes=(1, 1, 1)) -> SetAlgebra:
    return SetAlgebra(tuple(zip("ABC", sizes)))


def cardinality_relation() -> AlgebraRelation:
    """(B|C) R A, W R A, and X R {} for nonempty X."""
    W = ["A", "B", "C"]
    return AlgebraRelation.of(_with_empty([(["B", "C"], ["A"]), (W, ["A"])], W))


def cardinality_relation_swapped() -> AlgebraRelation:
    """(A|B) R C, W R C, and X R {}: what a > c, b > d realizes when C = {c, d}."""
    W = ["A", "B", "C"]
    return AlgebraRelation.of(_with_empty([(["A", "B"], ["C"]), (W, ["C"])], W))
