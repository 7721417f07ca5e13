"""Semantics of the likelihood language: desugaring, model checking, conditionals.

Propositional formulas over a small vocabulary are grouped into semantic
classes: a class is a bitmask over the 2**k truth assignments, and its
extension in a structure is the union of the worlds carrying those
assignments.  The exhaustive suites quantify over classes rather than over
syntax.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .lifting import min_worlds, succ_star, succ_star_table
from .model import ModelError, PreferentialStructure, extension
from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Cond,
    Formula,
    Gt,
    Implies,
    Know,
    Not,
    Or,
    conj,
    disj,
    is_prop,
)

KLM_RULES = ("REF", "LLE", "RW", "AND", "OR", "CM")
MAX_KLM_VOCAB = 3


def desugar(f: Formula) -> Formula:
    """Rewrite ``K`` and ``~>`` into ``>>`` and outer Booleans."""
    if isinstance(f, Know):
        return Not(Gt(Not(f.arg), FALSE))
    if isinstance(f, Cond):
        psi, phi = f.ante, f.cons
        return Or(desugar(Know(Not(psi))), Gt(And(phi, psi), And(Not(phi), psi)))
    if isinstance(f, Not):
        return Not(desugar(f.arg))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(desugar(f.left), desugar(f.right))
    return f


def evaluate_cond_min(M: PreferentialStructure, psi: Formula, phi: Formula) -> bool:
    """``psi ~> phi``: the most likely psi-worlds all satisfy phi."""
    return min_worlds(M, extension(M, psi)) & ~extension(M, phi) == 0


def evaluate(M: PreferentialStructure, f: Formula, conditional: str = "min") -> bool:
    """Truth of an outer-tier formula in M.

    ``conditional`` selects how ``~>`` is read: ``"min"`` (most likely
    antecedent worlds) or ``"gt"`` (its ``>>`` abbreviation).
    """
    if isinstance(f, Gt):
        return succ_star(M, extension(M, f.left), extension(M, f.right))
    if isinstance(f, Know):
        return evaluate(M, desugar(f), conditional)
    if isinstance(f, Cond):
        if conditional == "min":
            return evaluate_cond_min(M, f.ante, f.cons)
        if conditional == "gt":
            return evaluate(M, desugar(f), conditional)
        raise ValueError(f"unknown conditional reading {conditional!r}")
    if isinstance(f, Not):
        return not evaluate(M, f.arg, conditional)
    if isinstance(f, And):
        return evaluate(M, f.left, conditional) and evaluate(M, f.right, conditional)
    if isinstance(f, Or):
        return evaluate(M, f.left, conditional) or evaluate(M, f.right, conditional)
    if isinstance(f, Implies):
        return (not evaluate(M, f.left, conditional)) or evaluate(M, f.right, conditional)
    if is_prop(f):
        raise ModelError("propositional formula evaluated at the likelihood tier")
    raise TypeError(f"not a formula: {f!r}")


# --- semantic classes -----------------------------------------------------------


def assignments(vocab: Sequence[str]) -> list[frozenset[str]]:
    """All truth assignments; bit i of the index means vocab[i] is true."""
    return [
        frozenset(p for i, p in enumerate(vocab) if a >> i & 1) for a in range(1 << len(vocab))
    ]


def minterm(vocab: Sequence[str], a: int) -> Formula:
    lits = [Atom(p) if a >> i & 1 else Not(Atom(p)) for i, p in enumerate(vocab)]
    return conj(*lits) if lits else TRUE


def class_formula(vocab: Sequence[str], cls: int) -> Formula:
    """Canonical DNF representative of a semantic class."""
    full = (1 << (1 << len(vocab))) - 1
    if cls == 0:
        return FALSE
    if cls == full:
        return TRUE
    terms = [minterm(vocab, a) for a in range(1 << len(vocab)) if cls >> a & 1]
    return disj(*terms)


def semantic_classes(vocab: Sequence[str]) -> list[Formula]:
    return [class_formula(vocab, c) for c in range(1 << (1 << len(vocab)))]


def assignment_index(vocab: Sequence[str], true: frozenset[str]) -> int:
    return sum(1 << i for i, p in enumerate(vocab) if p in true)


def class_extensions(M: PreferentialStructure, vocab: Sequence[str] | None = None) -> np.ndarray:
    """ext[c] = world bitset of semantic class c."""
    vocab = M.vocabulary if vocab is None else tuple(vocab)
    per = [0] * (1 << len(vocab))
    for i, w in enumerate(M.worlds):
        per[assignment_index(vocab, w.true)] |= 1 << i
    return extensions_from_assignment_masks(per)


def extensions_from_assignment_masks(per: Sequence[int]) -> np.ndarray:
    m = len(per)
    ext = np.zeros(1 << m, dtype=np.int64)
    for c in range(1, 1 << m):
        low = c & -c
        ext[c] = ext[c ^ low] | per[low.bit_length() - 1]
    return ext


def _min_table(M: PreferentialStructure) -> np.ndarray:
    return np.array([min_worlds(M, V) for V in range(1 << M.n)], dtype=np.int64)


def cond_table(M: PreferentialStructure, ext: np.ndarray, mins: np.ndarray | None = None) -> np.ndarray:
    """cond[a, c]: class a ~> class c under the min reading."""
    if mins is None:
        mins = _min_table(M)
    m = mins[ext]
    return (m[:, None] & ~ext[None, :]) == 0


def cond_gt_table(table: np.ndarray, ext: np.ndarray, full: int) -> np.ndarray:
    """cond[a, c] via the ``>>`` abbreviation, given a succ-star table."""
    psi, phi = ext[:, None], ext[None, :]
    return (psi == 0) | table[phi & psi, psi & (full & ~phi)]


def conditional_disagreements(
    M: PreferentialStructure,
    vocab: Sequence[str] | None = None,
    table: np.ndarray | None = None,
    mins: np.ndarray | None = None,
) -> list[tuple[int, int]]:
    """Class pairs (psi, phi) where the two readings of ``psi ~> phi`` differ."""
    ext = class_extensions(M, vocab)
    if table is None:
        table = succ_star_table(M)
    a = cond_table(M, ext, mins)
    b = cond_gt_table(table, ext, M.all_worlds)
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(a != b))]


# --- KLM properties ---------------------------------------------------------------


@dataclass
class RuleVerdict:
    holds: bool
    witness: tuple[Formula, ...] | None = None


@dataclass
class KlmReport:
    rules: dict[str, RuleVerdict] = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.rules.values())


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(x) for x in hits[0])


def check_klm(M: PreferentialStructure, vocab: Sequence[str] | None = None) -> KlmReport:
    """Check REF, LLE, RW, AND, OR and CM for ``~>`` over all semantic classes.

    LLE is read relative to M: antecedents with equal extensions in M are
    interchangeable, which subsumes classical equivalence.  RW uses classical
    entailment between classes.  Witnesses list the formulas bound to the
    rule's metavariables in order of appearance.
    """
    vocab = M.vocabulary if vocab is None else tuple(vocab)
    if len(vocab) > MAX_KLM_VOCAB:
        raise ValueError(f"KLM sweep limited to {MAX_KLM_VOCAB} propositions")
    ext = class_extensions(M, vocab)
    cond = cond_table(M, ext)
    n = len(ext)
    i = np.arange(n)
    A, B, C = i[:, None, None], i[None, :, None], i[None, None, :]
    forms = semantic_classes(vocab)
    report = KlmReport()

    def record(name, viol, labels):
        hit = _first(viol)
        if hit is None:
            report.rules[name] = RuleVerdict(True)
        else:
            report.rules[name] = RuleVerdict(False, tuple(forms[k] for k in hit[: len(labels)]))

    record("REF", ~np.diagonal(cond), "a")
    # LLE: ext(a) == ext(b) and a ~> c imply b ~> c
    record("LLE", (ext[A] == ext[B]) & cond[A, C] & ~cond[B, C], "abc")
    # RW: a entails b classically and c ~> a imply c ~> b
    record("RW", ((A & ~B) == 0) & cond[C, A] & ~cond[C, B], "abc")
    record("AND", cond[C, A] & cond[C, B] & ~cond[C, A & B], "abc")
    record("OR", cond[A, C] & cond[B, C] & ~cond[A | B, C], "abc")
    record("CM", cond[C, A] & cond[C, B] & ~cond[C & A, B], "abc")
    return report


def all_assignment_maps(n: int, vocab: Sequence[str]):
    """Every map from n worlds to truth assignments, as tuples of indices."""
    return product(range(1 << len(vocab)), repeat=n)

