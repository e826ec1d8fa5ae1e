"""Existential closure checks.

A graph is n-e.c. when every split ``A | B`` of every n-subset ``T`` of
vertices has a witness ``z`` outside ``T`` adjacent to all of ``A`` and to
none of ``B``. Subsets ``T`` are visited in lexicographic order; the splits of
one ``T`` are visited by mask, bit ``i`` of the mask putting ``T[i]`` into
``A``. The first failing split in that order is the reported witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .design import Design
from .graphs import Graph, build_big, degree_stats

DEFAULT_XI_CAP = 4


class ECRangeError(ValueError):
    """No outside witness can exist because the subsets use up the graph."""


@dataclass(frozen=True)
class ECResult:
    n: int
    holds: bool
    witness_failure: tuple[tuple[int, ...], tuple[int, ...]] | None
    checked_pairs: int

    def __bool__(self) -> bool:
        return self.holds


def _split(T: tuple[int, ...], mask: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    A = tuple(x for i, x in enumerate(T) if (mask >> i) & 1)
    B = tuple(x for i, x in enumerate(T) if not (mask >> i) & 1)
    return A, B


def witnesses(G: Graph, A, B) -> int:
    """Bitset of vertices outside ``A`` and ``B`` joined to all of ``A`` and none of ``B``."""
    cand = G.full_mask
    for a in A:
        cand &= G.rows[a] & ~(1 << a)
    for x in B:
        cand &= ~G.rows[x] & ~(1 << x)
    return cand


def is_n_ec(G: Graph, n: int) -> ECResult:
    """Brute-force n-e.c. test.

    Candidate sets for all splits of a prefix of ``T`` are kept on a stack, so
    extending the prefix by one vertex costs one AND per split.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n >= G.n:
        raise ECRangeError(f"{n}-e.c. is impossible on {G.n} vertices")
    rows = G.rows
    full = G.full_mask
    checked = 0
    prefix: list[int] = []

    # sets[mask] holds the witnesses for the split of the current prefix.
    def extend(start: int, sets: list[int]):
        nonlocal checked
        depth = len(prefix)
        for u in range(start, G.n - (n - depth) + 1):
            keep = ~(1 << u)
            yes, no = rows[u], ~rows[u]
            # masks with bit ``depth`` clear come first: u goes to B
            nxt = [s & no & keep for s in sets] + [s & yes & keep for s in sets]
            prefix.append(u)
            if depth + 1 == n:
                for mask, s in enumerate(nxt):
                    checked += 1
                    if not s:
                        return tuple(prefix), mask
            else:
                hit = extend(u + 1, nxt)
                if hit:
                    return hit
            prefix.pop()
        return None

    hit = extend(0, [full])
    if hit:
        T, mask = hit
        return ECResult(n, False, _split(T, mask), checked)
    return ECResult(n, True, None, checked)


def is_2_ec_fast(G: Graph) -> ECResult:
    """2-e.c. test from the four neighbourhood sets of each vertex pair.

    Same verdict, witness and count as ``is_n_ec(G, 2)``.
    """
    if G.n <= 2:
        raise ECRangeError(f"2-e.c. is impossible on {G.n} vertices")
    rows = G.rows
    full = G.full_mask
    checked = 0
    for u in range(G.n):
        nu = rows[u]
        for w in range(u + 1, G.n):
            nw = rows[w]
            outside = full & ~((1 << u) | (1 << w))
            # mask order: A={}, A={u}, A={w}, A={u,w}
            for mask, s in enumerate((~(nu | nw), nu & ~nw, nw & ~nu, nu & nw)):
                checked += 1
                if not s & outside:
                    return ECResult(2, False, _split((u, w), mask), checked)
    return ECResult(2, True, None, checked)


def is_1_ec(G: Graph) -> bool:
    """Every vertex has a neighbour and a non-neighbour."""
    return G.n >= 2 and all(1 <= r.bit_count() <= G.n - 2 for r in G.rows)


def xi_with_flag(G: Graph, cap: int = DEFAULT_XI_CAP) -> tuple[int, bool]:
    """Existential closure number, and whether it only is a lower bound because ``cap`` was hit."""
    if not is_1_ec(G):
        return 0, False
    n = 1
    while n < cap:
        m = n + 1
        if m >= G.n:
            return n, False
        ok = is_2_ec_fast(G).holds if m == 2 else is_n_ec(G, m).holds
        if not ok:
            return n, False
        n = m
    return n, True


def xi(G: Graph, cap: int = DEFAULT_XI_CAP) -> int:
    return xi_with_flag(G, cap)[0]


def dominating_union(D: Design, i: int, j: int) -> bool:
    """Whether every block of ``D`` meets block ``i`` or block ``j``."""
    union = D.masks[i] | D.masks[j]
    return all(m & union for m in D.masks)


def find_dominating_union_pair(D: Design) -> tuple[int, int] | None:
    """First pair of block indices whose union meets every block, if any.

    Such a pair leaves no block disjoint from both, so the BIG is not 2-e.c.
    """
    masks = D.masks
    for i, j in combinations(range(len(masks)), 2):
        union = masks[i] | masks[j]
        if all(m & union for m in masks):
            return i, j
    return None


def degree_criterion_zero(G: Graph) -> bool:
    """Connected-graph criterion for a zero closure number: some vertex sees all others."""
    return degree_stats(G).max_degree == G.n - 1


def big_xi(D: Design, cap: int = DEFAULT_XI_CAP) -> int:
    return xi(build_big(D), cap)
