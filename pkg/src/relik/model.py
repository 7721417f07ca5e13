"""Worlds, truth assignments and preferential structures.

A structure keeps its weak order as a tuple of bitmask rows: bit ``v`` of
``geq_rows[u]`` is set when ``u`` is at least as likely as ``v``.  Sets of
worlds (``WorldSet``) are plain ints used as bitsets over world indices.
"""
from __future__ import annotations

import json

import re
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

if TYPE_CHECKING:
    from .syntax import PropFormula

WorldSet = int

RESERVED = frozenset({"true", "false", "K"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ModelError(ValueError):
    """Raised for malformed model documents or structures."""


def check_identifier(name: str, what: str = "proposition") -> str:
    if not isinstance(name, str) or not _IDENT.match(name) or name in RESERVED:
        raise ModelError(f"invalid {what} name: {name!r}")
    return name


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def transitive_closure(rows: Sequence[int], reflexive: bool = True) -> tuple[int, ...]:
    """Warshall closure on bitmask rows."""
    n = len(rows)
    out = list(rows)
    if reflexive:
        for i in range(n):
            out[i] |= 1 << i
    for k in range(n):
        kbit = 1 << k
        krow = out[k]
        for i in range(n):
            if out[i] & kbit:
                out[i] |= krow
    return tuple(out)


@dataclass(frozen=True)
class World:
    id: str
    true: frozenset[str]

    def holds(self, prop: str) -> bool:
        return prop in self.true


@dataclass(frozen=True)
class PreferentialStructure:
    """Finite structure (W, geq, pi).  Immutable once built."""

    vocabulary: tuple[str, ...]
    worlds: tuple[World, ...]
    geq_rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.worlds)

    @property
    def all_worlds(self) -> WorldSet:
        return (1 << self.n) - 1

    def geq(self, u: int, v: int) -> bool:
        return bool(self.geq_rows[u] >> v & 1)

    def gt(self, u: int, v: int) -> bool:
        return self.geq(u, v) and not self.geq(v, u)

    @cached_property
    def strict_rows(self) -> tuple[int, ...]:
        """Bit v of row u set iff u > v (strict part)."""
        rows = []
        for u in range(self.n):
            row = 0
            for v in bits(self.geq_rows[u]):
                if not self.geq_rows[v] >> u & 1:
                    row |= 1 << v
            rows.append(row)
        return tuple(rows)

    @cached_property
    def above_rows(self) -> tuple[int, ...]:
        """Bit v of row w set iff v > w, i.e. the worlds strictly above w."""
        rows = [0] * self.n
        for u, row in enumerate(self.strict_rows):
            for v in bits(row):
                rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def index(self) -> dict[str, int]:
        return {w.id: i for i, w in enumerate(self.worlds)}

    def is_total(self) -> bool:
        return all(
            self.geq(u, v) or self.geq(v, u) for u in range(self.n) for v in range(self.n)
        )

    def world_set(self, ids: Iterable[str]) -> WorldSet:
        mask = 0
        for wid in ids:
            try:
                mask |= 1 << self.index[wid]
            except KeyError:
                raise ModelError(f"unknown world id {wid!r}") from None
        return mask

    def ids(self, mask: WorldSet) -> list[str]:
        return [self.worlds[i].id for i in bits(mask)]

    def eval_prop(self, w: int | World, phi: PropFormula) -> bool:
        world = self.worlds[w] if isinstance(w, int) else w
        return eval_prop(world, phi, self.vocabulary)

    def extension(self, phi: PropFormula) -> WorldSet:
        return extension(self, phi)

    def pairs(self, reflexive: bool = False) -> list[tuple[str, str]]:
        """Weak-order pairs, row-major; reflexive ones only on request."""
        return [
            (self.worlds[u].id, self.worlds[v].id)
            for u in range(self.n)
            for v in bits(self.geq_rows[u])
            if reflexive or u != v
        ]

    def to_document(self) -> dict:
        return {
            "props": list(self.vocabulary),
            "worlds": [
                {"id": w.id, "true": [p for p in self.vocabulary if p in w.true]}
                for w in self.worlds
            ],
            # the full closed relation, so the document validates without closure
            "geq": [list(p) for p in self.pairs(reflexive=True)],
        }

    @classmethod
    def build(
        cls,
        vocabulary: Sequence[str],
        worlds: Mapping[str, Iterable[str]] | Sequence[tuple[str, Iterable[str]]],
        geq: Iterable[tuple[str, str]] = (),
        close: bool = True,
    ) -> PreferentialStructure:
        """Build from ids, true-proposition lists and weak-order pairs.

        With ``close`` the reflexive-transitive closure of ``geq`` is taken.
        """
        vocab = tuple(check_identifier(p) for p in vocabulary)
        if len(set(vocab)) != len(vocab):
            raise ModelError("duplicate proposition in vocabulary")
        items = list(worlds.items()) if isinstance(worlds, Mapping) else list(worlds)
        ws = []
        seen: set[str] = set()
        for wid, true in items:
            check_identifier(wid, "world")
            if wid in seen:
                raise ModelError(f"duplicate world id {wid!r}")
            seen.add(wid)
            true = frozenset(true)
            extra = sorted(true - set(vocab))
            if extra:
                raise ModelError(f"world {wid!r} uses undeclared propositions {extra}")
            ws.append(World(wid, true))
        index = {w.id: i for i, w in enumerate(ws)}
        rows = [0] * len(ws)
        for pair in geq:
            a, b = pair
            for x in (a, b):
                if x not in index:
                    raise ModelError(f"unknown world id {x!r} in order pair {list(pair)}")
            rows[index[a]] |= 1 << index[b]
        if close:
            rows = list(transitive_closure(rows))
        return cls(vocab, tuple(ws), tuple(rows))


def from_rows(
    vocabulary: Sequence[str],
    assignments: Sequence[Iterable[str]],
    geq_rows: Sequence[int],
) -> PreferentialStructure:
    """Structure with worlds named w1..wn; rows are used as given."""
    worlds = tuple(World(f"w{i + 1}", frozenset(a)) for i, a in enumerate(assignments))
    return PreferentialStructure(tuple(vocabulary), worlds, tuple(geq_rows))


def eval_prop(w: World, phi: PropFormula, vocabulary: Sequence[str] | None = None) -> bool:
    from . import syntax as s

    if isinstance(phi, s.Atom):
        if vocabulary is not None and phi.name not in vocabulary:
            raise ModelError(f"unknown atom {phi.name!r}")
        return phi.name in w.true
    if isinstance(phi, s.Top):
        return True
    if isinstance(phi, s.Bottom):
        return False
    if isinstance(phi, s.Not):
        return not eval_prop(w, phi.arg, vocabulary)
    if isinstance(phi, s.And):
        return eval_prop(w, phi.left, vocabulary) and eval_prop(w, phi.right, vocabulary)
    if isinstance(phi, s.Or):
        return eval_prop(w, phi.left, vocabulary) or eval_prop(w, phi.right, vocabulary)
    if isinstance(phi, s.Implies):
        return (not eval_prop(w, phi.left, vocabulary)) or eval_prop(w, phi.right, vocabulary)
    raise TypeError(f"not a propositional formula: {phi!r}")


def extension(M: PreferentialStructure, phi: PropFormula) -> WorldSet:
    """Bitset of the worlds of ``M`` satisfying ``phi``."""
    mask = 0
    for i, w in enumerate(M.worlds):
        if eval_prop(w, phi, M.vocabulary):
            mask |= 1 << i
    return mask


def load_structure(doc: Mapping, close: bool = True) -> PreferentialStructure:
    """Build a structure from a model document (see the cli module)."""
    if not isinstance(doc, Mapping):
        raise ModelError("model document must be a JSON object")
    keys = set(doc)
    if keys != {"props", "worlds", "geq"}:
        unknown = sorted(keys - {"props", "worlds", "geq"})
        missing = sorted({"props", "worlds", "geq"} - keys)
        raise ModelError(f"model document keys: unknown {unknown}, missing {missing}")
    props = doc["props"]
    if not isinstance(props, list):
        raise ModelError("'props' must be a list")
    worlds = []
    for entry in doc["worlds"]:
        if not isinstance(entry, Mapping) or set(entry) != {"id", "true"}:
            raise ModelError(f"world entries need exactly 'id' and 'true': {entry!r}")
        if not isinstance(entry["true"], list):
            raise ModelError(f"'true' of world {entry['id']!r} must be a list")
        worlds.append((entry["id"], entry["true"]))
    pairs = []
    for pair in doc["geq"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ModelError(f"order pairs must be [id, id]: {pair!r}")
        pairs.append((pair[0], pair[1]))
    return PreferentialStructure.build(props, worlds, pairs, close=close)


def validate_structure(M: PreferentialStructure) -> list[str]:
    """List every violated structural invariant; empty iff ``M`` is valid."""
    report = []
    for w in range(M.n):
        if not M.geq(w, w):
            report.append(f"reflexivity: missing {M.worlds[w].id} >= {M.worlds[w].id}")
    for u in range(M.n):
        for v in bits(M.geq_rows[u]):
            for w in bits(M.geq_rows[v]):
                if not M.geq(u, w):
                    ids = [M.worlds[x].id for x in (u, v, w)]
                    report.append(
                        "transitivity: {0} >= {1} and {1} >= {2} but not {0} >= {2}".format(*ids)
                    )
    vocab = set(M.vocabulary)
    for w in M.worlds:
        extra = sorted(w.true - vocab)
        if extra:
            report.append(f"assignment: world {w.id} uses undeclared {extra}")
    ids = [w.id for w in M.worlds]
    if len(set(ids)) != len(ids):
        report.append("ids: duplicate world id")
    if any(row >> M.n for row in M.geq_rows) or len(M.geq_rows) != M.n:
        report.append("matrix: order rows do not match the world count")
    return report


def dump_document(doc: Mapping) -> str:
    """JSON with one line per list entry; ASCII only, stable key order."""
    lines = ["{"]
    items = list(doc.items())
    for k, (key, value) in enumerate(items):
        tail = "," if k < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"  {json.dumps(key)}: [")
            for j, entry in enumerate(value):
                sep = "," if j < len(value) - 1 else ""
                lines.append(f"    {json.dumps(entry, ensure_ascii=True)}{sep}")
            lines.append(f"  ]{tail}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=True)}{tail}")
    lines.append("}")
    return "\n".join(lines)
