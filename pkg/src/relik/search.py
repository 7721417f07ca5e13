"""Bounded decision procedures.

Structures are enumerated in a fixed canonical order: world count ascending,
then assignment multisets in lexicographic order (worlds sharing a truth
assignment are interchangeable, so multisets suffice up to isomorphism), then
orders in the order produced by ``enumerate_preorders``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from .lifting import succ_star_rows, succ_star_table
from .logic import assignments, class_formula, evaluate
from .model import PreferentialStructure, bits, from_rows, transitive_closure
from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Bottom,
    Cond,
    Formula,
    Gt,
    Implies,
    Know,
    Not,
    Or,
    Top,
    atoms,
    conj,
    is_prop,
)

MAX_PARTIAL_WORLDS = 5
MAX_TOTAL_WORLDS = 6
MAX_TOTAL_ONE_PER = 8
MAX_FUZZ_WORLDS = 6


class BoundsError(ValueError):
    pass


# --- order enumeration -------------------------------------------------------


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """Set partitions of range(n) via restricted growth strings, blocks by min element."""
    if n == 0:
        yield []
        return

    def rec(i: int, labels: list[int], k: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(k)]
            for x, b in enumerate(labels):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(k + 1):
            labels.append(b)
            yield from rec(i + 1, labels, max(k, b + 1))
            labels.pop()

    yield from rec(0, [], 0)


def _down_closed(mask: int, rows: Sequence[int]) -> bool:
    return all(rows[d] & ~mask == 0 for d in bits(mask))


@lru_cache(maxsize=None)
def strict_partial_orders(n: int) -> tuple[tuple[int, ...], ...]:
    """All strict partial orders on n labeled elements as rows (bit v of row u: u > v).

    Built by inserting element k into each order on 0..k-1 with a down-closed
    set below it and an up-closed set above it, every pair of which is
    already ordered; each labeled order arises exactly once.
    """
    if n == 0:
        return ((),)
    out = []
    for rows in strict_partial_orders(n - 1):
        k = n - 1
        above = [0] * k
        for u in range(k):
            for v in bits(rows[u]):
                above[v] |= 1 << u
        for below in range(1 << k):
            if not _down_closed(below, rows):
                continue
            for up in range(1 << k):
                if up & below:
                    continue
                if not all(above[a] & ~up == 0 for a in bits(up)):
                    continue
                if not all(rows[a] & below == below for a in bits(up)):
                    continue
                new = list(rows) + [below]
                for a in bits(up):
                    new[a] |= 1 << k
                out.append(tuple(new))
    return tuple(out)


def _block_rows(n: int, blocks: list[list[int]], block_rows: Sequence[int]) -> tuple[int, ...]:
    """Weak-order rows on worlds from a strict order on blocks (bit c of block_rows[b]: b > c)."""
    masks = [sum(1 << x for x in blk) for blk in blocks]
    rows = [0] * n
    for b, blk in enumerate(blocks):
        row = masks[b]
        for c in bits(block_rows[b]):
            row |= masks[c]
        for x in blk:
            rows[x] = row
    return tuple(rows)


@lru_cache(maxsize=None)
def _preorders(n: int, total_only: bool) -> tuple[tuple[int, ...], ...]:
    out = []
    for blocks in set_partitions(n):
        k = len(blocks)
        if total_only:
            for perm in itertools.permutations(range(k)):
                # perm[0] is the most likely block
                block_rows = [0] * k
                for i, b in enumerate(perm):
                    for c in perm[i + 1:]:
                        block_rows[b] |= 1 << c
                out.append(_block_rows(n, blocks, block_rows))
        else:
            for block_rows in strict_partial_orders(k):
                out.append(_block_rows(n, blocks, block_rows))
    return tuple(out)


def enumerate_preorders(n: int, total_only: bool = False) -> tuple[tuple[int, ...], ...]:
    """Every (total) preorder on n labeled elements, once each, as weak-order rows."""
    limit = MAX_TOTAL_ONE_PER if total_only else MAX_PARTIAL_WORLDS
    if n < 0 or n > limit:
        raise BoundsError(f"preorder enumeration limited to n <= {limit} (got {n})")
    return _preorders(n, total_only)


def random_preorder(n: int, rng: random.Random, total: bool = False) -> tuple[int, ...]:
    """Random equivalence blocks, a random DAG (or chain) over them, then closure."""
    k = rng.randint(1, n)
    labels = [rng.randrange(k) for _ in range(n)]
    used = sorted(set(labels))
    blocks = [[x for x in range(n) if labels[x] == b] for b in used]
    order = list(range(len(blocks)))
    rng.shuffle(order)
    density = rng.random()
    block_rows = [0] * len(blocks)
    for i, b in enumerate(order):
        for c in order[i + 1:]:
            if total or rng.random() < density:
                block_rows[b] |= 1 << c
    rows = _block_rows(n, blocks, block_rows)
    return transitive_closure(rows)


# --- axiom schemas -------------------------------------------------------------


@dataclass(frozen=True)
class AxiomSchema:
    id: str
    arity: int
    build: Callable[..., Formula] = field(repr=False, compare=False)


def _l1_default(a, b):
    # X1 -> (X1 | X2) over the basic formulas a >> b and b >> a
    return Implies(Gt(a, b), Or(Gt(a, b), Gt(b, a)))


def _l4(f, f2, g, g2):
    return Implies(
        conj(Know(Implies(f, f2)), Know(Implies(g2, g)), Gt(f, g)),
        Gt(f2, g2),
    )


SCHEMAS = {
    "L1": AxiomSchema("L1", 2, _l1_default),
    "L2": AxiomSchema("L2", 1, lambda a: Not(Gt(a, a))),
    "L3": AxiomSchema(
        "L3", 3, lambda a, b, c: Implies(And(Gt(Or(a, b), c), Gt(Or(a, c), b)), Gt(a, Or(b, c)))
    ),
    "L4": AxiomSchema("L4", 4, _l4),
    "L5": AxiomSchema("L5", 3, lambda a, b, c: Implies(Gt(a, b), Or(Gt(a, c), Gt(c, b)))),
    "L6": AxiomSchema("L6", 3, lambda a, b, c: Implies(And(Gt(a, b), Gt(b, c)), Gt(a, c))),
    "L7": AxiomSchema("L7", 3, lambda a, b, c: Implies(And(Gt(a, b), Gt(a, c)), Gt(a, Or(b, c)))),
}

# L7 exactly as printed; unsound, kept so mining can exhibit that.
PRINTED_L7 = AxiomSchema(
    "L7-printed", 3, lambda a, b, c: Implies(Or(Gt(a, b), Gt(a, c)), Gt(a, Or(a, b)))
)


def schema(s: str | AxiomSchema) -> AxiomSchema:
    if isinstance(s, AxiomSchema):
        return s
    if s == PRINTED_L7.id:
        return PRINTED_L7
    try:
        return SCHEMAS[s]
    except KeyError:
        raise ValueError(f"unknown axiom schema {s!r}") from None


def is_tautology(template: Formula) -> bool:
    names = sorted(atoms(template))
    from .model import World, eval_prop

    for a in range(1 << len(names)):
        w = World("t", frozenset(n for i, n in enumerate(names) if a >> i & 1))
        if not eval_prop(w, template):
            return False
    return True


def _substitute(template: Formula, table: dict[str, Formula]) -> Formula:
    if isinstance(template, Atom):
        return table[template.name]
    if isinstance(template, (Top, Bottom)):
        return template
    if isinstance(template, Not):
        return Not(_substitute(template.arg, table))
    return type(template)(_substitute(template.left, table), _substitute(template.right, table))


def instantiate_schema(
    s: str | AxiomSchema, args: Sequence[Formula], tautology: Formula | None = None
) -> Formula:
    """Fill a schema with propositional formulas.

    For L1 a propositional ``tautology`` over placeholders X1..Xm may be
    given; placeholder Xi becomes ``args[2i-2] >> args[2i-1]``.
    """
    sch = schema(s)
    args = list(args)
    if not all(is_prop(a) for a in args):
        raise ValueError("schema arguments must be propositional formulas")
    if sch.id == "L1" and tautology is not None:
        names = sorted(atoms(tautology), key=lambda x: int(x[1:]) if x[1:].isdigit() else 0)
        if not is_tautology(tautology):
            raise ValueError("L1 template is not a propositional tautology")
        need = 2 * max((int(x[1:]) for x in names), default=0)
        if len(args) != need:
            raise ValueError(f"L1 template needs {need} arguments, got {len(args)}")
        table = {f"X{i + 1}": Gt(args[2 * i], args[2 * i + 1]) for i in range(need // 2)}
        return _substitute(tautology, table)
    if len(args) != sch.arity:
        raise ValueError(f"{sch.id} takes {sch.arity} arguments, got {len(args)}")
    return sch.build(*args)


def schema_violations(s: str | AxiomSchema, G: np.ndarray, ext: np.ndarray) -> np.ndarray:
    """Boolean array over class tuples: True where that instance of the schema fails.

    ``G[a, b]`` is the truth of ``a >> b`` for classes a, b; ``ext`` maps
    classes to world bitsets (used for the K premises of L4).
    """
    sid = schema(s).id
    n = len(ext)
    i = np.arange(n)
    if sid == "L1":
        return np.zeros((n, n), dtype=bool)
    if sid == "L2":
        return np.diagonal(G).copy()
    A, B, C = i[:, None, None], i[None, :, None], i[None, None, :]
    if sid == "L3":
        return G[A | B, C] & G[A | C, B] & ~G[A, B | C]
    if sid == "L5":
        return G[A, B] & ~G[A, C] & ~G[C, B]
    if sid == "L6":
        return G[A, B] & G[B, C] & ~G[A, C]
    if sid == "L7":
        return G[A, B] & G[A, C] & ~G[A, B | C]
    if sid == "L7-printed":
        return (G[A, B] | G[A, C]) & ~G[A, A | B]
    if sid == "L4":
        sub = (ext[:, None] & ~ext[None, :]) == 0  # K(a -> b)
        f, f2 = i[:, None, None, None], i[None, :, None, None]
        g, g2 = i[None, None, :, None], i[None, None, None, :]
        return sub[f, f2] & sub[g2, g] & G[f, g] & ~G[f2, g2]
    raise ValueError(sid)


# --- search ----------------------------------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int
    vocab: tuple[str, ...]
    order_class: str = "partial"  # "partial" or "total"
    one_per_assignment: bool = False
    # (formula, n): at most n worlds may satisfy formula
    limits: tuple[tuple[Formula, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vocab", tuple(self.vocab))
        if self.max_worlds < 1:
            raise BoundsError("max_worlds must be >= 1")
        if self.order_class not in ("partial", "total"):
            raise BoundsError(f"unknown structure class {self.order_class!r}")
        cap = 1 << len(self.vocab)
        if self.one_per_assignment and self.max_worlds > cap:
            raise BoundsError(f"one world per assignment allows at most {cap} worlds")
        if self.order_class == "partial":
            limit = MAX_PARTIAL_WORLDS
        elif self.one_per_assignment:
            limit = MAX_TOTAL_ONE_PER
        else:
            limit = MAX_TOTAL_WORLDS
        if self.max_worlds > limit:
            raise BoundsError(
                f"max_worlds {self.max_worlds} exceeds the guard rail of {limit} for this class"
            )

    @property
    def conclusive(self) -> bool:
        """Exhaustion is a decision: total class covering one world per assignment."""
        return (
            self.order_class == "total"
            and self.one_per_assignment
            and self.max_worlds >= 1 << len(self.vocab)
            and not self.limits
        )


@dataclass
class Verdict:
    """Search outcome; ``conclusive`` reflects the bound, not the witness."""

    status: str  # sat | unsat_up_to_bound | valid_up_to_bound | countermodel
    witness: PreferentialStructure | None = None
    conclusive: bool = False
    checked: int = 0

    def __post_init__(self):
        assert (self.witness is not None) == (self.status in ("sat", "countermodel"))


@dataclass(frozen=True)
class Candidate:
    assignment: tuple[int, ...]
    geq_rows: tuple[int, ...]
    strict_rows: tuple[int, ...]
    above_rows: tuple[int, ...]


@lru_cache(maxsize=None)
def _order_data(n: int, total: bool) -> tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]:
    out = []
    for rows in enumerate_preorders(n, total):
        strict = tuple(
            sum(1 << v for v in bits(rows[u]) if not rows[v] >> u & 1) for u in range(n)
        )
        above = [0] * n
        for u in range(n):
            for v in bits(strict[u]):
                above[v] |= 1 << u
        out.append((rows, strict, tuple(above)))
    return tuple(out)


def _truth_rows(vocab: Sequence[str], props: Sequence[Formula]) -> list[int]:
    """For each prop, the bitmask of assignment indices satisfying it."""
    from .model import World, eval_prop

    worlds = [World("a", a) for a in assignments(vocab)]
    return [
        sum(1 << i for i, w in enumerate(worlds) if eval_prop(w, p, vocab)) for p in props
    ]


def assignment_tuples(bounds: SearchBounds, n: int) -> Iterator[tuple[int, ...]]:
    m = 1 << len(bounds.vocab)
    gen = (
        itertools.combinations(range(m), n)
        if bounds.one_per_assignment
        else itertools.combinations_with_replacement(range(m), n)
    )
    if not bounds.limits:
        yield from gen
        return
    lim_rows = _truth_rows(bounds.vocab, [f for f, _ in bounds.limits])
    caps = [k for _, k in bounds.limits]
    for tup in gen:
        if all(sum(1 for a in tup if row >> a & 1) <= cap for row, cap in zip(lim_rows, caps)):
            yield tup


def candidates(bounds: SearchBounds) -> Iterator[Candidate]:
    """Structures within the bounds, in canonical order."""
    total = bounds.order_class == "total"
    for n in range(1, bounds.max_worlds + 1):
        orders = _order_data(n, total)
        for tup in assignment_tuples(bounds, n):
            for rows, strict, above in orders:
                yield Candidate(tup, rows, strict, above)


def witness_structure(bounds: SearchBounds, c: Candidate) -> PreferentialStructure:
    assigns = assignments(bounds.vocab)
    return from_rows(bounds.vocab, [assigns[a] for a in c.assignment], c.geq_rows)


def compile_formula(f: Formula, vocab: Sequence[str], conditional: str = "min"):
    """Compile to ``fn(ext, strict_rows, above_rows, full) -> bool``.

    ``ext`` is the list of world bitsets of the collected propositional
    subformulas; the second return value is that list of subformulas.
    """
    props: list[Formula] = []
    index: dict[Formula, int] = {}

    def slot(p: Formula) -> int:
        if p not in index:
            index[p] = len(props)
            props.append(p)
        return index[p]

    def comp(g: Formula):
        if isinstance(g, Gt):
            a, b = slot(g.left), slot(g.right)
            return lambda e, s, ab, full: succ_star_rows(s, ab, e[a], e[b])
        if isinstance(g, Know):
            return comp(_desugar_know(g))
        if isinstance(g, Cond):
            if conditional == "gt":
                from .logic import desugar

                return comp(desugar(g))
            a, b = slot(g.ante), slot(g.cons)

            def cond(e, s, ab, full):
                V = e[a]
                for v in bits(V):
                    if not ab[v] & V and not e[b] >> v & 1:
                        return False
                return True

            return cond
        if isinstance(g, Not):
            x = comp(g.arg)
            return lambda e, s, ab, full: not x(e, s, ab, full)
        if isinstance(g, And):
            x, y = comp(g.left), comp(g.right)
            return lambda e, s, ab, full: x(e, s, ab, full) and y(e, s, ab, full)
        if isinstance(g, Or):
            x, y = comp(g.left), comp(g.right)
            return lambda e, s, ab, full: x(e, s, ab, full) or y(e, s, ab, full)
        if isinstance(g, Implies):
            x, y = comp(g.left), comp(g.right)
            return lambda e, s, ab, full: (not x(e, s, ab, full)) or y(e, s, ab, full)
        raise ValueError(f"not a likelihood formula: {g!r}")

    fn = comp(f)
    return fn, props


def _desugar_know(g: Know) -> Formula:
    return Not(Gt(Not(g.arg), FALSE))


def _check_vocab(f: Formula, bounds: SearchBounds) -> None:
    extra = atoms(f) - set(bounds.vocab)
    if extra:
        raise BoundsError(f"formula uses atoms outside the vocabulary: {sorted(extra)}")


def search_model(f: Formula, bounds: SearchBounds, conditional: str = "min") -> Verdict:
    """First structure in canonical order satisfying f, or unsat within the bounds."""
    _check_vocab(f, bounds)
    fn, props = compile_formula(f, bounds.vocab, conditional)
    truth = _truth_rows(bounds.vocab, props)
    checked = 0
    total = bounds.order_class == "total"
    for n in range(1, bounds.max_worlds + 1):
        orders = _order_data(n, total)
        full = (1 << n) - 1
        for tup in assignment_tuples(bounds, n):
            ext = [sum(1 << i for i, a in enumerate(tup) if row >> a & 1) for row in truth]
            for rows, strict, above in orders:
                checked += 1
                if fn(ext, strict, above, full):
                    c = Candidate(tup, rows, strict, above)
                    return Verdict("sat", witness_structure(bounds, c), bounds.conclusive, checked)
    return Verdict("unsat_up_to_bound", None, bounds.conclusive, checked)


def check_validity(f: Formula, bounds: SearchBounds, conditional: str = "min") -> Verdict:
    """Refutation search: a countermodel for f, or valid within the bounds."""
    v = search_model(Not(f), bounds, conditional)
    if v.status == "sat":
        return Verdict("countermodel", v.witness, v.conclusive, v.checked)
    return Verdict("valid_up_to_bound", None, v.conclusive, v.checked)


# --- exhaustive schema sweeps and mining -------------------------------------------


@lru_cache(maxsize=4096)
def _succ_table_for(rows: tuple[int, ...]) -> np.ndarray:
    M = from_rows((), [()] * len(rows), rows)
    return succ_star_table(M)


def class_ext_for(vocab_size: int, tup: Sequence[int]) -> np.ndarray:
    from .logic import extensions_from_assignment_masks

    per = [0] * (1 << vocab_size)
    for i, a in enumerate(tup):
        per[a] |= 1 << i
    return extensions_from_assignment_masks(per)


def basic_table(rows: tuple[int, ...], ext: np.ndarray) -> np.ndarray:
    """G[a, b]: truth of class a >> class b in the structure."""
    T = _succ_table_for(rows)
    return T[ext[:, None], ext[None, :]]


@dataclass
class MiningResult:
    schema: str
    instance: Formula
    args: tuple[Formula, ...]
    structure: PreferentialStructure
    checked: int


def mine_schema(s: str | AxiomSchema, bounds: SearchBounds) -> MiningResult | None:
    """First (structure, instance) in canonical order violating the schema.

    Instances range over all semantic classes of the vocabulary.
    """
    sch = schema(s)
    k = len(bounds.vocab)
    checked = 0
    for c in candidates(bounds):
        checked += 1
        ext = class_ext_for(k, c.assignment)
        viol = schema_violations(sch, basic_table(c.geq_rows, ext), ext)
        hit = np.argwhere(viol)
        if len(hit):
            args = tuple(class_formula(bounds.vocab, int(x)) for x in hit[0])
            inst = sch.build(*args)
            return MiningResult(sch.id, inst, args, witness_structure(bounds, c), checked)
    return None


def exhaustive_schema_check(s: str | AxiomSchema, bounds: SearchBounds) -> tuple[int, int]:
    """(structures checked, structures with a violated instance)."""
    sch = schema(s)
    k = len(bounds.vocab)
    checked = bad = 0
    for c in candidates(bounds):
        checked += 1
        ext = class_ext_for(k, c.assignment)
        if schema_violations(sch, basic_table(c.geq_rows, ext), ext).any():
            bad += 1
    return checked, bad


# --- fuzzing -------------------------------------------------------------------


def random_prop(
    vocab: Sequence[str], rng: random.Random, depth: int = 2, constants: bool = True
) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        r = rng.random() if constants else 1.0
        if r < 0.08:
            return TRUE
        if r < 0.16:
            return FALSE
        return Atom(rng.choice(list(vocab)))
    op = rng.choice(("not", "and", "or", "implies"))
    if op == "not":
        return Not(random_prop(vocab, rng, depth - 1, constants))
    cls = {"and": And, "or": Or, "implies": Implies}[op]
    return cls(
        random_prop(vocab, rng, depth - 1, constants), random_prop(vocab, rng, depth - 1, constants)
    )


def random_tautology(rng: random.Random, placeholders: int = 2, tries: int = 50) -> Formula:
    names = [f"X{i + 1}" for i in range(placeholders)]
    for _ in range(tries):
        # no constants: true/false are not formulas at the outer tier
        t = random_prop(names, rng, depth=3, constants=False)
        if is_tautology(t) and atoms(t) == set(names):
            return t
    t = random_prop(names, rng, depth=2, constants=False)
    pad = conj(*[Or(Atom(x), Not(Atom(x))) for x in names])
    return Or(Implies(pad, t), Not(t)) if rng.random() < 0.5 else Or(t, Or(Not(t), pad))


@dataclass
class FuzzReport:
    seed: int
    trials: int
    per_schema: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, PreferentialStructure, Formula]] = field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def by_schema(self) -> dict[str, int]:
        out = {s: 0 for s in self.per_schema}
        for sid, _, _ in self.violations:
            out[sid] += 1
        return out


def soundness_fuzz(
    schemas: Sequence[str],
    vocab: Sequence[str],
    max_worlds: int,
    trials: int,
    seed: int,
    order_class: str = "partial",
) -> FuzzReport:
    """Random structures and random instances, checked with the AST evaluator.

    Sampling is not exhaustive, so the cap is looser than the search guards.
    """
    if not 1 <= max_worlds <= MAX_FUZZ_WORLDS:
        raise BoundsError(f"fuzzing limited to 1..{MAX_FUZZ_WORLDS} worlds")
    if order_class not in ("partial", "total"):
        raise BoundsError(f"unknown structure class {order_class!r}")
    vocab = tuple(vocab)
    rng = random.Random(seed)
    report = FuzzReport(seed, trials, {s: 0 for s in schemas})
    total = order_class == "total"
    assigns = assignments(vocab)
    for _ in range(trials):
        n = rng.randint(1, max_worlds)
        rows = random_preorder(n, rng, total)
        M = from_rows(vocab, [rng.choice(assigns) for _ in range(n)], rows)
        sid = rng.choice(list(schemas))
        report.per_schema[sid] += 1
        if sid == "L1":
            m = rng.randint(1, 3)
            t = random_tautology(rng, m)
            args = [random_prop(vocab, rng) for _ in range(2 * m)]
            inst = instantiate_schema("L1", args, tautology=t)
        else:
            sch = schema(sid)
            inst = sch.build(*[random_prop(vocab, rng) for _ in range(sch.arity)])
        if not evaluate(M, inst):
            report.violations.append((sid, M, inst))
    return report


# --- small-model property for total preorders ---------------------------------------


@dataclass
class SmallModelReport:
    vocab: tuple[str, ...]
    max_worlds: int
    total_signatures: int
    one_per_signatures: int
    missing: list[PreferentialStructure]
    formulas: list[tuple[Formula, bool, bool]]

    @property
    def violations(self) -> int:
        return len(self.missing) + sum(1 for _, a, b in self.formulas if a and not b)


def eval_on_signature(f: Formula, G: np.ndarray, vocab: Sequence[str]) -> bool:
    """Evaluate f from the class-level ``>>`` table (conditionals via ``>>``)."""
    from .logic import desugar

    def cls(p):
        return _truth_rows(vocab, [p])[0]

    def ev(g):
        if isinstance(g, Gt):
            return bool(G[cls(g.left), cls(g.right)])
        if isinstance(g, (Know, Cond)):
            return ev(desugar(g))
        if isinstance(g, Not):
            return not ev(g.arg)
        if isinstance(g, And):
            return ev(g.left) and ev(g.right)
        if isinstance(g, Or):
            return ev(g.left) or ev(g.right)
        if isinstance(g, Implies):
            return (not ev(g.left)) or ev(g.right)
        raise ValueError(f"not a likelihood formula: {g!r}")

    return ev(f)


def check_small_model_property(
    vocab: Sequence[str], max_worlds: int, formulas: Sequence[Formula] = ()
) -> SmallModelReport:
    """Compare total structures up to max_worlds against one-world-per-assignment ones.

    A formula's truth depends only on the class-level ``>>`` table, so every
    table reachable by a total structure must be reachable with at most one
    world per assignment.  Unreachable tables are reported with a structure
    realizing them.
    """
    vocab = tuple(vocab)
    if len(vocab) > 2 or max_worlds > MAX_PARTIAL_WORLDS:
        raise BoundsError("small-model sweep limited to 2 propositions and 5 worlds")
    k = len(vocab)
    big = SearchBounds(max_worlds, vocab, "total")
    small = SearchBounds(1 << k, vocab, "total", one_per_assignment=True)

    def sigs(bounds):
        out = {}
        for c in candidates(bounds):
            ext = class_ext_for(k, c.assignment)
            G = basic_table(c.geq_rows, ext)
            out.setdefault(G.tobytes(), (G, c))
        return out

    total_sigs = sigs(big)
    small_sigs = sigs(small)
    missing = [witness_structure(big, c) for key, (_, c) in total_sigs.items() if key not in small_sigs]
    results = []
    for f in formulas:
        _check_vocab(f, big)
        a = any(eval_on_signature(f, G, vocab) for G, _ in total_sigs.values())
        b = any(eval_on_signature(f, G, vocab) for G, _ in small_sigs.values())
        results.append((f, a, b))
    return SmallModelReport(vocab, max_worlds, len(total_sigs), len(small_sigs), missing, results)


def isomorphic(M: PreferentialStructure, N: PreferentialStructure) -> bool:
    """Brute-force isomorphism preserving assignments and the weak order."""
    if M.n != N.n or set(M.vocabulary) != set(N.vocabulary):
        return False
    for perm in itertools.permutations(range(N.n)):
        if all(M.worlds[i].true == N.worlds[perm[i]].true for i in range(M.n)) and all(
            M.geq(i, j) == N.geq(perm[i], perm[j]) for i in range(M.n) for j in range(M.n)
        ):
            return True
    return False
