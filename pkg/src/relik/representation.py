"""Finite set algebras and realizing a relation on an algebra by a world order.

An algebra is given by its atoms and their sizes; the concrete worlds of
atom ``A`` of size 2 are ``a1, a2`` (a size-1 atom ``A`` has the single world
``a``).  Members are unions of atoms, stored as bitsets over concrete worlds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .lifting import geq_star_table, succ_star_rows, succ_star_table
from .model import ModelError, bits, check_identifier, from_rows
from .relations import (
    SetRelation,
    WorldRelation,
    classify_order,
    has_union_property,
    is_orderly,
    is_qualitative,
)
from .search import strict_partial_orders

MAX_REPR_WORLDS = 8


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class SetAlgebra:
    atoms: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [a for a, _ in self.atoms]
        if not names:
            raise ModelError("an algebra needs at least one atom")
        if len(set(names)) != len(names):
            raise ModelError("duplicate atom name")
        for name, size in self.atoms:
            check_identifier(name, "atom")
            if not isinstance(size, int) or size < 1:
                raise ModelError(f"atom {name!r} must have size >= 1")

    @property
    def names(self) -> list[str]:
        return [a for a, _ in self.atoms]

    @property
    def n_worlds(self) -> int:
        return sum(s for _, s in self.atoms)

    def world_ids(self) -> list[str]:
        out = []
        for name, size in self.atoms:
            base = name.lower()
            out.extend([base] if size == 1 else [f"{base}{j + 1}" for j in range(size)])
        return out

    def atom_masks(self) -> list[int]:
        out, start = [], 0
        for _, size in self.atoms:
            out.append(((1 << size) - 1) << start)
            start += size
        return out

    def member(self, names: Iterable[str]) -> int:
        masks = dict(zip(self.names, self.atom_masks()))
        out = 0
        for a in names:
            if a not in masks:
                raise ModelError(f"unknown atom {a!r}")
            out |= masks[a]
        return out

    def members(self) -> list[int]:
        """All unions of atoms (2**k of them), sorted by bitset value."""
        masks = self.atom_masks()
        out = []
        for sel in range(1 << len(masks)):
            out.append(sum(m for i, m in enumerate(masks) if sel >> i & 1))
        return sorted(out)

    def decompose(self, member: int) -> list[str]:
        out = []
        for name, m in zip(self.names, self.atom_masks()):
            if member & m == m:
                out.append(name)
            elif member & m:
                raise ModelError("set is not a member of the algebra")
        return out

    def with_sizes(self, sizes: Sequence[int]) -> SetAlgebra:
        return SetAlgebra(tuple((a, s) for a, s in zip(self.names, sizes)))


def atoms_of(algebra: SetAlgebra) -> list[str]:
    return algebra.names


@dataclass(frozen=True)
class AlgebraRelation:
    """Pairs of members, each written as a set of atom names."""

    pairs: frozenset[tuple[frozenset[str], frozenset[str]]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[Iterable[str], Iterable[str]]]) -> AlgebraRelation:
        return cls(frozenset((frozenset(a), frozenset(b)) for a, b in pairs))

    def check(self, algebra: SetAlgebra) -> None:
        known = set(algebra.names)
        for a, b in self.pairs:
            extra = (a | b) - known
            if extra:
                raise ModelError(f"relation mentions undeclared atoms {sorted(extra)}")

    def on(self, algebra: SetAlgebra) -> SetRelation:
        """As a set relation over the algebra's members (concrete bitsets)."""
        self.check(algebra)
        return SetRelation.from_pairs(
            algebra.members(), [(algebra.member(a), algebra.member(b)) for a, b in self.pairs]
        )

    @classmethod
    def from_set_relation(cls, algebra: SetAlgebra, R: SetRelation) -> AlgebraRelation:
        return cls.of((algebra.decompose(a), algebra.decompose(b)) for a, b in R.pairs())


def load_algebra(doc: Mapping) -> tuple[SetAlgebra, AlgebraRelation]:
    if not isinstance(doc, Mapping) or set(doc) != {"atoms", "rel"}:
        raise ModelError("algebra document needs exactly the keys 'atoms' and 'rel'")
    atoms = []
    for entry in doc["atoms"]:
        if not isinstance(entry, Mapping) or set(entry) != {"name", "size"}:
            raise ModelError(f"atom entries need exactly 'name' and 'size': {entry!r}")
        atoms.append((entry["name"], entry["size"]))
    algebra = SetAlgebra(tuple(atoms))
    pairs = []
    for pair in doc["rel"]:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(side, list) for side in pair)
        ):
            raise ModelError(f"relation pairs must be [[atoms], [atoms]]: {pair!r}")
        pairs.append((pair[0], pair[1]))
    rel = AlgebraRelation.of(pairs)
    rel.check(algebra)
    return algebra, rel


def dump_algebra(algebra: SetAlgebra, rel: AlgebraRelation) -> dict:
    order = {a: i for i, a in enumerate(algebra.names)}

    def side(s):
        return sorted(s, key=order.__getitem__)

    pairs = sorted(
        ([side(a), side(b)] for a, b in rel.pairs),
        key=lambda p: ([order[x] for x in p[0]], [order[x] for x in p[1]]),
    )
    return {"atoms": [{"name": a, "size": s} for a, s in algebra.atoms], "rel": pairs}


def _structure(rows: Sequence[int]):
    return from_rows((), [()] * len(rows), tuple(rows))


def lifted_on_members(order: WorldRelation, algebra: SetAlgebra, strict: bool) -> SetRelation:
    """The lift of ``order`` restricted to the algebra's members.

    ``order`` is a preorder (lifted with geq-star) or, with ``strict``, a strict
    partial order (lifted with succ-star).
    """
    rows = list(order.rows())
    if len(rows) != algebra.n_worlds:
        raise ValueError("order size does not match the algebra's worlds")
    if strict:
        rows = [r | 1 << i for i, r in enumerate(rows)]
    M = _structure(rows)
    table = succ_star_table(M) if strict else geq_star_table(M)
    return SetRelation(range(1 << M.n), table).restrict(algebra.members())


def verify_agreement(
    order: WorldRelation, algebra: SetAlgebra, R: AlgebraRelation, strict: bool = False
) -> bool:
    """U R V iff the lifted order relates U and V, for every pair of members."""
    return lifted_on_members(order, algebra, strict) == R.on(algebra)


def construct_total(algebra: SetAlgebra, R: AlgebraRelation) -> WorldRelation:
    """Total preorder on worlds with v >= w iff atom(v) R atom(w).

    Requires R to be an orderly total preorder with the union property on the
    members; the agreement of geq-star with R is verified before returning.
    """
    S = R.on(algebra)
    if not classify_order(S).is_total_preorder:
        raise ConstructionError("relation is not a total preorder on the members")
    if not is_orderly(S):
        raise ConstructionError("relation is not orderly")
    if not has_union_property(S):
        raise ConstructionError("relation lacks the union property")
    masks = algebra.atom_masks()
    owner = []
    for i, m in enumerate(masks):
        owner.extend([i] * bin(m).count("1"))
    n = algebra.n_worlds
    rel = np.zeros((n, n), dtype=bool)
    for v in range(n):
        for w in range(n):
            rel[v, w] = S.holds(masks[owner[v]], masks[owner[w]])
    order = WorldRelation(rel)
    if not verify_agreement(order, algebra, R):
        raise ConstructionError("constructed order does not agree with the relation")
    return order


@dataclass
class PartialWitness:
    algebra: SetAlgebra
    order: WorldRelation  # strict partial order on the concrete worlds

    def pairs(self) -> list[tuple[str, str]]:
        ids = self.algebra.world_ids()
        return [(ids[i], ids[j]) for i, j in self.order.pairs()]


def _iter_strict_orders(n: int) -> Iterator[tuple[int, ...]]:
    if n <= 6:
        yield from strict_partial_orders(n)
        return
    # same insertion scheme as strict_partial_orders, streamed
    for rows in _iter_strict_orders(n - 1):
        k = n - 1
        above = [0] * k
        for u in range(k):
            for v in bits(rows[u]):
                above[v] |= 1 << u
        for below in range(1 << k):
            if any(rows[d] & ~below for d in bits(below)):
                continue
            for up in range(1 << k):
                if up & below or any(above[a] & ~up for a in bits(up)):
                    continue
                if any(rows[a] & below != below for a in bits(up)):
                    continue
                new = list(rows) + [below]
                for a in bits(up):
                    new[a] |= 1 << k
                yield tuple(new)


def _size_vectors(base: Sequence[int], extra: int) -> Iterator[list[int]]:
    for e in range(extra + 1):
        for picks in itertools.combinations_with_replacement(range(len(base)), e):
            sizes = list(base)
            for i in picks:
                sizes[i] += 1
            yield sizes


def search_partial(
    algebra: SetAlgebra, R: AlgebraRelation, extra_duplication: int = 0
) -> PartialWitness | None:
    """Exhaustive search for a strict order whose succ-star agrees with R on members.

    Atom sizes are raised by up to ``extra_duplication`` worlds in total,
    smallest world counts first.
    """
    S = R.on(algebra)
    c = classify_order(S)
    if not c.is_strict_partial_order:
        raise ConstructionError("relation is not a strict partial order")
    if not is_orderly(S) or not is_qualitative(S):
        raise ConstructionError("relation must be orderly and qualitative")
    if algebra.n_worlds + extra_duplication > MAX_REPR_WORLDS:
        raise ConstructionError(
            f"search limited to {MAX_REPR_WORLDS} worlds including duplication"
        )
    base = [s for _, s in algebra.atoms]
    for sizes in _size_vectors(base, extra_duplication):
        alg = algebra.with_sizes(sizes)
        members = alg.members()
        SR = R.on(alg)
        target = [(U, V, SR.holds(U, V)) for U in members for V in members]
        # pairs in R first: they fail fastest on sparse candidate orders
        target.sort(key=lambda t: not t[2])
        n = alg.n_worlds
        for strict in _iter_strict_orders(n):
            above = [0] * n
            for u in range(n):
                for v in bits(strict[u]):
                    above[v] |= 1 << u
            if all(succ_star_rows(strict, above, U, V) == want for U, V, want in target):
                order = WorldRelation.from_rows(strict)
                assert verify_agreement(order, alg, R, strict=True)
                return PartialWitness(alg, order)
    return None
