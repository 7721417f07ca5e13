"""Relations on worlds and on sets of worlds, and checkers for their properties.

Every checker quantifies only over the elements present in the relation; set
relations carry their own universe (a sorted tuple of bitsets), so the same
checker serves full powersets and finite algebras alike.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import lifting
from .lifting import MAX_MATERIALIZE, LiftVariant, lift_table
from .model import PreferentialStructure


class NotUnionClosed(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class WorldRelation:
    """Boolean relation on ``n`` elements; ``rel[i, j]`` means i R j."""

    def __init__(self, rel):
        rel = np.asarray(rel, dtype=bool)
        if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
            raise ValueError("relation matrix must be square")
        self.rel = rel

    @property
    def n(self) -> int:
        return self.rel.shape[0]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> WorldRelation:
        rel = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            rel[i, j] = True
        return cls(rel)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> WorldRelation:
        n = len(rows)
        rel = np.array([[bool(rows[i] >> j & 1) for j in range(n)] for i in range(n)], dtype=bool)
        return cls(rel.reshape(n, n))

    def rows(self) -> tuple[int, ...]:
        return tuple(sum(1 << int(j) for j in np.flatnonzero(r)) for r in self.rel)

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.rel))]

    def __eq__(self, other) -> bool:
        return isinstance(other, WorldRelation) and np.array_equal(self.rel, other.rel)

    def __hash__(self) -> int:
        return hash(self.rel.tobytes())

    def __repr__(self) -> str:
        return f"WorldRelation(n={self.n}, pairs={self.pairs()})"


class SetRelation:
    """Relation on a universe of sets; ``universe`` is sorted by bitset value."""

    def __init__(self, universe: Sequence[int], rel):
        universe = tuple(int(u) for u in universe)
        rel = np.asarray(rel, dtype=bool)
        order = sorted(range(len(universe)), key=universe.__getitem__)
        if order != list(range(len(universe))):
            universe = tuple(universe[i] for i in order)
            rel = rel[np.ix_(order, order)]
        if len(set(universe)) != len(universe):
            raise ValueError("duplicate set in universe")
        if rel.shape != (len(universe), len(universe)):
            raise ValueError("relation matrix does not match the universe")
        self.universe = universe
        self.rel = rel
        self._pos = {u: i for i, u in enumerate(universe)}

    @classmethod
    def from_pairs(cls, universe: Sequence[int], pairs: Iterable[tuple[int, int]]) -> SetRelation:
        universe = tuple(sorted(universe))
        pos = {u: i for i, u in enumerate(universe)}
        rel = np.zeros((len(universe), len(universe)), dtype=bool)
        for a, b in pairs:
            rel[pos[a], pos[b]] = True
        return cls(universe, rel)

    @classmethod
    def powerset(cls, n: int, pairs: Iterable[tuple[int, int]] = ()) -> SetRelation:
        return cls.from_pairs(range(1 << n), pairs)

    def holds(self, a: int, b: int) -> bool:
        return bool(self.rel[self._pos[a], self._pos[b]])

    def pairs(self) -> list[tuple[int, int]]:
        return [(self.universe[i], self.universe[j]) for i, j in zip(*np.nonzero(self.rel))]

    def restrict(self, universe: Iterable[int]) -> SetRelation:
        keep = sorted(set(universe))
        idx = [self._pos[u] for u in keep]
        return SetRelation(keep, self.rel[np.ix_(idx, idx)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetRelation)
            and self.universe == other.universe
            and np.array_equal(self.rel, other.rel)
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.rel.tobytes()))

    def __repr__(self) -> str:
        return f"SetRelation(|universe|={len(self.universe)}, pairs={self.pairs()})"


def _matrix(R) -> np.ndarray:
    return R.rel if isinstance(R, (WorldRelation, SetRelation)) else np.asarray(R, dtype=bool)


# --- order properties ---------------------------------------------------------


def is_reflexive(R) -> bool:
    return bool(np.diagonal(_matrix(R)).all())


def is_irreflexive(R) -> bool:
    return not np.diagonal(_matrix(R)).any()


def is_transitive(R) -> bool:
    m = _matrix(R)
    k = m.astype(np.int64)
    return not ((k @ k > 0) & ~m).any()


def is_total(R) -> bool:
    m = _matrix(R)
    return bool((m | m.T).all())


@dataclass(frozen=True)
class OrderClassification:
    is_partial_preorder: bool
    is_total_preorder: bool
    is_strict_partial_order: bool


def classify_order(R) -> OrderClassification:
    refl, irrefl, trans = is_reflexive(R), is_irreflexive(R), is_transitive(R)
    pre = refl and trans
    return OrderClassification(pre, pre and is_total(R), irrefl and trans)


def is_modular(R) -> bool:
    """a R b implies c R b or a R c, for every c."""
    m = _matrix(R)
    n = m.shape[0]
    if n <= 256:
        viol = m[:, :, None] & ~m.T[None, :, :] & ~m[:, None, :]
        return not viol.any()
    for a in range(n):
        if (m[a][:, None] & ~m.T & ~m[a][None, :]).any():
            return False
    return True


# --- set-relation properties ----------------------------------------------------


@lru_cache(maxsize=256)
def _subset_matrices(universe: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    u = np.array(universe, dtype=np.int64)
    # sup[i, j]: universe[i] contains universe[j]
    sup = (u[:, None] & u[None, :]) == u[None, :]
    return sup, sup.T.copy()


@lru_cache(maxsize=256)
def _union_index(universe: tuple[int, ...]) -> np.ndarray | None:
    u = np.array(universe, dtype=np.int64)
    joined = u[:, None] | u[None, :]
    idx = np.searchsorted(u, joined)
    idx = np.minimum(idx, len(u) - 1)
    if not (u[idx] == joined).all():
        return None
    return idx


def union_index(R: SetRelation) -> np.ndarray:
    idx = _union_index(R.universe)
    if idx is None:
        raise NotUnionClosed("universe is not closed under union")
    return idx


def is_orderly(R: SetRelation) -> bool:
    """U R V, U' >= U, V' <= V (within the universe) imply U' R V'."""
    sup, sub = _subset_matrices(R.universe)
    m = R.rel.astype(np.int64)
    # reach[i', j']: some (i, j) in R with universe[i] <= universe[i'] and universe[j] >= universe[j']
    reach = sup.astype(np.int64) @ m @ sup.astype(np.int64)
    return not ((reach > 0) & ~R.rel).any()


def is_qualitative(R: SetRelation) -> bool:
    """(V1|V2) R V3 and (V1|V3) R V2 imply V1 R (V2|V3)."""
    J = union_index(R)
    m = R.rel
    n = len(R.universe)
    i = np.arange(n)
    v1, v2, v3 = i[:, None, None], i[None, :, None], i[None, None, :]
    prem = m[J[v1, v2], v3] & m[J[v1, v3], v2]
    return not (prem & ~m[v1, J[v2, v3]]).any()


def has_union_property(R: SetRelation) -> bool:
    """V1 R V2 and V1 R V3 imply V1 R (V2|V3)."""
    J = union_index(R)
    m = R.rel
    prem = m[:, :, None] & m[:, None, :]
    return not (prem & ~m[:, J]).any()


def orderly_closure(R: SetRelation) -> SetRelation:
    sup, _ = _subset_matrices(R.universe)
    s = sup.astype(np.int64)
    reach = (s @ R.rel.astype(np.int64) @ s) > 0
    return SetRelation(R.universe, reach | R.rel)


# --- constructions ------------------------------------------------------------


def strict_part(R) -> WorldRelation:
    """Strict part of a relation, or of a structure's weak order."""
    if isinstance(R, PreferentialStructure):
        return WorldRelation(lifting.strict_part(R))
    m = _matrix(R)
    return WorldRelation(m & ~m.T)


def total_from_modular(R) -> WorldRelation:
    """The total preorder whose strict part is the modular strict order R."""
    m = _matrix(R)
    c = classify_order(m)
    if not c.is_strict_partial_order:
        raise PreconditionError("input is not a strict partial order")
    if not is_modular(m):
        raise PreconditionError("input strict order is not modular")
    return WorldRelation(m | (~m & ~m.T))


def lift_to_sets(M: PreferentialStructure, variant: LiftVariant | str) -> SetRelation:
    """Materialize a lifted relation over the full powerset of M's worlds."""
    if M.n > MAX_MATERIALIZE:
        raise ValueError(f"structure too large to materialize ({M.n} > {MAX_MATERIALIZE} worlds)")
    return SetRelation(range(1 << M.n), lift_table(M, variant))
