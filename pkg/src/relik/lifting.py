"""Lifting a world order to sets of worlds.

Pairwise queries follow the domination-based definitions literally.  The
``*_table`` functions materialize a lift over the whole powerset with a
bitset dynamic program; they are checked against the pairwise path in the
test suite.
"""
from __future__ import annotations

import enum

import numpy as np

from .model import PreferentialStructure, WorldSet, bits

MAX_MATERIALIZE = 12


class LiftVariant(str, enum.Enum):
    GEQ_STAR = "geq-star"
    SUCC_STAR = "succ-star"
    SUCC_PRIME = "succ-prime"
    STRONG_GEQ = "strong-geq"
    STRONG_GT = "strong-gt"


def strict_part(M: PreferentialStructure) -> np.ndarray:
    """Boolean matrix of u > v."""
    n = M.n
    out = np.zeros((n, n), dtype=bool)
    for u, row in enumerate(M.strict_rows):
        for v in bits(row):
            out[u, v] = True
    return out


def dominates(M: PreferentialStructure, w: int, V: WorldSet) -> bool:
    """No world of V is strictly above w."""
    return not any(M.gt(v, w) for v in bits(V))


def geq_star(M: PreferentialStructure, U: WorldSet, V: WorldSet) -> bool:
    return all(
        any(M.geq(u, v) and dominates(M, u, V) for u in bits(U)) for v in bits(V)
    )


def succ_star(M: PreferentialStructure, U: WorldSet, V: WorldSet) -> bool:
    if U == 0 or not geq_star(M, U, V):
        return False
    return all(
        any(M.gt(u, v) and dominates(M, u, V) for u in bits(U)) for v in bits(V)
    )


def succ_prime(M: PreferentialStructure, U: WorldSet, V: WorldSet) -> bool:
    return geq_star(M, U, V) and not geq_star(M, V, U)


def geq_simple(M: PreferentialStructure, U: WorldSet, V: WorldSet) -> bool:
    """Finite-case reading without the domination clause."""
    return all(any(M.geq(u, v) for u in bits(U)) for v in bits(V))


def succ_simple(M: PreferentialStructure, U: WorldSet, V: WorldSet) -> bool:
    return U != 0 and all(any(M.gt(u, v) for u in bits(U)) for v in bits(V))


def min_worlds(M: PreferentialStructure, V: WorldSet) -> WorldSet:
    """Worlds of V with nothing in V strictly above them."""
    out = 0
    for v in bits(V):
        if not M.above_rows[v] & V:
            out |= 1 << v
    return out


def strong_compare(M: PreferentialStructure, U: WorldSet, V: WorldSet, strict: bool) -> bool:
    """Every u in U against every v in V (>= or >)."""
    rel = M.gt if strict else M.geq
    return all(rel(u, v) for u in bits(U) for v in bits(V))


PAIRWISE = {
    LiftVariant.GEQ_STAR: geq_star,
    LiftVariant.SUCC_STAR: succ_star,
    LiftVariant.SUCC_PRIME: succ_prime,
    LiftVariant.STRONG_GEQ: lambda M, U, V: strong_compare(M, U, V, False),
    LiftVariant.STRONG_GT: lambda M, U, V: strong_compare(M, U, V, True),
}


def compare(M: PreferentialStructure, variant: LiftVariant | str, U: WorldSet, V: WorldSet) -> bool:
    return PAIRWISE[LiftVariant(variant)](M, U, V)


# --- fast bitmask kernels (no Python-level structure objects) ---------------


def succ_star_rows(strict_rows, above_rows, U: int, V: int) -> bool:
    """``succ_star`` on raw rows; the geq clause is implied by the strict one."""
    if not U:
        return False
    dom = 0
    u_rest = U
    while u_rest:
        low = u_rest & -u_rest
        u = low.bit_length() - 1
        if not above_rows[u] & V:
            dom |= strict_rows[u]
        u_rest ^= low
    return V & dom == V


# --- materialized tables ------------------------------------------------------


def _cover_table(rows: tuple[int, ...], above_rows: tuple[int, ...], n: int) -> np.ndarray:
    """cover[U, V] = OR of rows[u] over u in U that dominate V."""
    size = 1 << n
    masks = np.arange(size, dtype=np.int32)
    cover = np.zeros((size, size), dtype=np.int32)
    for U in range(1, size):
        low = U & -U
        u = low.bit_length() - 1
        dom = (masks & above_rows[u]) == 0
        cover[U] = cover[U ^ low] | np.where(dom, rows[u], 0)
    return cover


def _check_size(M: PreferentialStructure) -> None:
    if M.n > MAX_MATERIALIZE:
        raise ValueError(
            f"structure has {M.n} worlds; set tables are limited to {MAX_MATERIALIZE}"
        )


def geq_star_table(M: PreferentialStructure) -> np.ndarray:
    _check_size(M)
    masks = np.arange(1 << M.n, dtype=np.int32)
    cover = _cover_table(M.geq_rows, M.above_rows, M.n)
    return (cover & masks[None, :]) == masks[None, :]


def succ_star_table(M: PreferentialStructure) -> np.ndarray:
    _check_size(M)
    masks = np.arange(1 << M.n, dtype=np.int32)
    cover = _cover_table(M.strict_rows, M.above_rows, M.n)
    out = (cover & masks[None, :]) == masks[None, :]
    out[0, :] = False
    return out


def succ_prime_table(M: PreferentialStructure) -> np.ndarray:
    g = geq_star_table(M)
    return g & ~g.T


def strong_table(M: PreferentialStructure, strict: bool) -> np.ndarray:
    _check_size(M)
    size = 1 << M.n
    rows = M.strict_rows if strict else M.geq_rows
    masks = np.arange(size, dtype=np.int32)
    # meet[U] = worlds related (from) every u in U; all worlds for U = empty
    meet = np.empty(size, dtype=np.int32)
    meet[0] = size - 1
    for U in range(1, size):
        low = U & -U
        meet[U] = meet[U ^ low] & rows[low.bit_length() - 1]
    return (meet[:, None] & masks[None, :]) == masks[None, :]


def lift_table(M: PreferentialStructure, variant: LiftVariant | str) -> np.ndarray:
    variant = LiftVariant(variant)
    if variant is LiftVariant.GEQ_STAR:
        return geq_star_table(M)
    if variant is LiftVariant.SUCC_STAR:
        return succ_star_table(M)
    if variant is LiftVariant.SUCC_PRIME:
        return succ_prime_table(M)
    return strong_table(M, variant is LiftVariant.STRONG_GT)


def lift_equivalence_check(M: PreferentialStructure) -> list[str]:
    """Pairs where the domination-based and simple finite readings differ."""
    _check_size(M)
    out = []
    size = 1 << M.n
    for U in range(size):
        for V in range(size):
            if geq_star(M, U, V) != geq_simple(M, U, V):
                out.append(f"geq-star differs on {M.ids(U)} vs {M.ids(V)}")
            if succ_star(M, U, V) != succ_simple(M, U, V):
                out.append(f"succ-star differs on {M.ids(U)} vs {M.ids(V)}")
    return out
