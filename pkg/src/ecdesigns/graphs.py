"""Block intersection graphs on dense bitset rows.

Row ``u`` of a :class:`Graph` is a Python int whose bit ``w`` is set iff
``u`` and ``w`` are adjacent.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .design import Design


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != self.n:
            raise GraphError(f"{len(rows)} rows for {self.n} vertices")
        full = (1 << self.n) - 1
        for u, row in enumerate(rows):
            if row & ~full or (row >> u) & 1:
                raise GraphError(f"row {u} has a self-loop or out-of-range bit")
            w = row
            while w:
                low = w & -w
                if not (rows[low.bit_length() - 1] >> u) & 1:
                    raise GraphError(f"adjacency not symmetric at vertex {u}")
                w ^= low
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, w in edges:
            if u == w:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << w
            rows[w] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, w: int) -> bool:
        return bool((self.rows[u] >> w) & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def neighbors(self, u: int) -> list[int]:
        return bits(self.rows[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2


@dataclass(frozen=True)
class DegreeStats:
    n: int
    min_degree: int
    max_degree: int
    is_connected: bool


def bits(mask: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def intersection_matrix(D: Design) -> list[list[int]]:
    """``b x b`` table of block intersection sizes; diagonal holds block sizes."""
    masks = D.masks
    return [[(mi & mj).bit_count() for mj in masks] for mi in masks]


def s_big_from_matrix(sizes: Sequence[Sequence[int]], S: Iterable[int]) -> Graph:
    allowed = frozenset(S)
    n = len(sizes)
    rows = []
    for u, row in enumerate(sizes):
        r = 0
        for w in range(n):
            if w != u and row[w] in allowed:
                r |= 1 << w
        rows.append(r)
    return Graph(n, tuple(rows))


def build_s_big(D: Design, S: Iterable[int]) -> Graph:
    """Graph on the blocks of ``D``; two blocks are adjacent iff their intersection size is in ``S``."""
    return s_big_from_matrix(intersection_matrix(D), S)


def build_big(D: Design) -> Graph:
    masks = D.masks
    rows = []
    for u, mu in enumerate(masks):
        r = 0
        for w, mw in enumerate(masks):
            if w != u and mu & mw:
                r |= 1 << w
        rows.append(r)
    return Graph(len(masks), tuple(rows))


def complement(G: Graph) -> Graph:
    full = G.full_mask
    return Graph(G.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(G.rows)))


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` re-indexed in ascending order; also returns new-to-old labels."""
    labels = sorted(set(vertices))
    if labels and (labels[0] < 0 or labels[-1] >= G.n):
        raise GraphError(f"vertex outside [0, {G.n})")
    rows = []
    for u in labels:
        r = 0
        for i, w in enumerate(labels):
            if G.adjacent(u, w):
                r |= 1 << i
        rows.append(r)
    return Graph(len(labels), tuple(rows)), labels


def is_connected(G: Graph) -> bool:
    if G.n <= 1:
        return True
    seen = frontier = 1
    while frontier:
        reach = 0
        for u in bits(frontier):
            reach |= G.rows[u]
        frontier = reach & ~seen
        seen |= frontier
    return seen == G.full_mask


def degree_stats(G: Graph) -> DegreeStats:
    degrees = [r.bit_count() for r in G.rows] or [0]
    return DegreeStats(G.n, min(degrees), max(degrees), is_connected(G))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, w) for u in range(n) for w in range(u + 1, n) if rng.random() < p])
