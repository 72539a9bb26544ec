"""Cayley sum graphs CS(G, X): g ~ h iff gh in X and g != h, for normal X."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .groups import GroupError, GroupTable, closure, closure_mask, mask_of, members_of, popcount


class NotNormalError(GroupError):
    pass


@dataclass(frozen=True)
class NormalSubset:
    """A union of conjugacy classes, identified by sorted class ids."""

    parent: GroupTable
    class_ids: tuple[int, ...]
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    def __len__(self):
        return popcount(self.mask)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> g & 1)

    @property
    def has_identity(self) -> bool:
        return bool(self.mask >> self.parent.identity & 1)

    def __repr__(self):
        return f"NormalSubset({self.parent.label}, classes={list(self.class_ids)})"


def normal_subset(G: GroupTable, class_ids: Iterable[int]) -> NormalSubset:
    ids = tuple(sorted(set(class_ids)))
    P = G.classes
    if any(not 0 <= i < len(P) for i in ids):
        raise GroupError(f"class id out of range for {G.label}: {ids}")
    return NormalSubset(G, ids, P.union_mask(ids))


def normal_subset_from_elements(G: GroupTable, elements: Iterable[int]) -> NormalSubset:
    m = mask_of(elements)
    ids = G.classes.class_ids_of(m)
    if ids is None:
        raise NotNormalError(f"{sorted(members_of(m))} is not closed under conjugation in {G.label}")
    return NormalSubset(G, ids, m)


def normal_subset_from_mask(G: GroupTable, mask: int) -> NormalSubset:
    return normal_subset_from_elements(G, members_of(mask))


@dataclass(frozen=True, eq=False)
class CayleySumGraph:
    group: GroupTable
    connection: NormalSubset
    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.group.n

    def neighbours(self, g: int) -> tuple[int, ...]:
        return members_of(self.rows[g])

    def degree(self, g: int) -> int:
        return popcount(self.rows[g])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(popcount(r) for r in self.rows)

    def adjacent(self, g: int, h: int) -> bool:
        return bool(self.rows[g] >> h & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(g, h) for g in range(self.n) for h in self.neighbours(g) if g < h]


def build_cs_graph(G: GroupTable, X: NormalSubset) -> CayleySumGraph:
    if X.parent is not G:
        raise GroupError("connection set belongs to a different group")
    if any(G.conj_mask(X.mask, g) != X.mask for g in range(G.n)):
        raise NotNormalError(f"{X} is not conjugation-closed")
    xs = X.members
    mul, inv = G.mul, G.inv
    rows = []
    for g in range(G.n):
        # h = g^-1 x for x in X, dropping the loop at g
        row = mul[inv[g]]
        r = 0
        for x in xs:
            r |= 1 << row[x]
        rows.append(r & ~(1 << g))
    return CayleySumGraph(G, X, tuple(rows))


def is_square_free(G: GroupTable, X: NormalSubset) -> bool:
    return X.mask & G.squares_mask == 0


def is_regular(graph: CayleySumGraph) -> bool:
    """All degrees equal.

    deg(g) = |X| - [g^2 in X], so this holds iff X contains no square or
    every square (the latter forces 1 in X).
    """
    return len(set(graph.degrees)) <= 1


def is_connected_bfs(graph: CayleySumGraph) -> bool:
    n = graph.n
    seen = 1
    frontier = 1
    rows = graph.rows
    while frontier:
        nxt = 0
        for v in members_of(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def is_connected_algebraic(G: GroupTable, X: NormalSubset) -> bool:
    """<X> = G and <X^-1 X> has index at most 2."""
    if closure_mask(G, X.mask) != G.full_mask:
        return False
    xs = X.members
    mul, inv = G.mul, G.inv
    quot = {mul[inv[x]][y] for x in xs for y in xs}
    sub = closure(G, sorted(quot))
    return G.n <= 2 * popcount(sub)


def edge_list_text(graph: CayleySumGraph) -> str:
    return "".join(f"{g} {h}\n" for g, h in graph.edges())


def write_edge_list(graph: CayleySumGraph, path: str | Path) -> None:
    Path(path).write_text(edge_list_text(graph))
