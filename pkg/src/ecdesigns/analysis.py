"""Intersection numbers, closed-form bounds and sub-design search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .design import Design, DesignError, lambda_h, validate_t_design


@dataclass(frozen=True)
class IntersectionProfile:
    m: int
    alphas: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.alphas[i]


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero unless ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def intersection_profile(D: Design, M: Iterable[int]) -> IntersectionProfile:
    """``alphas[i]`` is the number of blocks meeting ``M`` in exactly ``i`` points."""
    points = set(M)
    if any(not 0 <= x < D.v for x in points):
        raise DesignError(f"subset {sorted(points)} leaves [0, {D.v})")
    mask = sum(1 << x for x in points)
    alphas = [0] * (len(points) + 1)
    for bm in D.masks:
        alphas[(bm & mask).bit_count()] += 1
    return IntersectionProfile(len(points), tuple(alphas))


def kohler_alpha(
    t: int, v: int, k: int, lam: int, m: int, i: int, high_alphas: Sequence[int]
) -> Fraction:
    """``alpha_i`` of an m-set in a t-(v, k, lam) design from ``alpha_{t+1}, ..., alpha_m``.

    Inclusion-exclusion over the h-subsets of the m-set gives the low part;
    the tail coefficient of ``alpha_h`` is ``C(h-i-1, t-i) C(h, i)``.
    """
    if not (0 <= i <= t <= k) or not (t < m <= v):
        raise DesignError(f"need 0 <= i <= t <= k and t < m <= v, got i={i} t={t} k={k} m={m} v={v}")
    if len(high_alphas) != m - t:
        raise DesignError(f"expected {m - t} high alphas, got {len(high_alphas)}")
    low = sum(
        (-1) ** (h + i) * comb(h, i) * comb(m, h) * lambda_h(t, v, k, lam, h) for h in range(i, t + 1)
    )
    tail = sum(
        binom(h - i - 1, t - i) * comb(h, i) * a for h, a in zip(range(t + 1, m + 1), high_alphas)
    )
    return low + (-1) ** (t + i + 1) * tail


def qs_disjoint_margin(v: int, lam: int, m: int, alpha4: int) -> Fraction:
    """Blocks of a 3-(v, 4, lam) design missing an m-set, given how many lie inside it."""
    if not 4 <= m <= v:
        raise DesignError(f"need 4 <= m <= v, got m={m} v={v}")
    return alpha4 + Fraction(lam, 24) * (v - 2 * m) * (v * v - 2 * m * v - 3 * v + 2 * m * m + 2)


@dataclass(frozen=True)
class Condition:
    name: str
    satisfied: bool
    lhs: int | Fraction
    relation: str
    rhs: int | Fraction


@dataclass(frozen=True)
class ConditionReport:
    v: int
    k: int
    lam: int
    n: int
    conditions: tuple[Condition, ...]

    def __getitem__(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.conditions]


_RELATIONS = {">=": lambda a, b: a >= b, "<=": lambda a, b: a <= b, ">": lambda a, b: a > b}


def _cond(name, lhs, rel, rhs) -> Condition:
    return Condition(name, _RELATIONS[rel](lhs, rhs), lhs, rel, rhs)


def condition_report(v: int, k: int, lam: int, n: int) -> ConditionReport:
    """Evaluate the known inequalities on (v, k, lam) for an n-e.c. block intersection graph.

    Conditions that do not apply to the given parameters are left out.
    """
    if k < 2 or lam < 1 or n < 1:
        raise DesignError(f"need k >= 2, lambda >= 1, n >= 1; got k={k} lambda={lam} n={n}")
    conds = [_cond("order_lower_bound", v, ">=", (n + 1) * k)]
    if lam == 1:
        conds.append(_cond("steiner_n_le_k", n, "<=", k))
    else:
        conds.append(_cond("multifold_n_le_half_k", n, "<=", (k + 1) // 2))
    if lam == 1 and k >= 3:
        conds.append(_cond("steiner_2ec_threshold", v, ">=", k * k + k - 1))
    if n >= 3 and k >= 3:
        upper = lam * k**4 - lam * n * k**3 + (lam + 1) * (n - 1) * k**2 - n * k + k + 1
        conds.append(_cond("ec3_order_upper_bound", v, "<=", upper))
    conds.append(_cond("pbd_2ec_sufficient", v, ">", 2 * k * (k - 1) + 1))
    return ConditionReport(v, k, lam, n, tuple(conds))


def blocks_inside(D: Design, H: Iterable[int]) -> Design:
    """The blocks contained in ``H``, relabelled onto ``0..|H|-1``."""
    points = sorted(set(H))
    index = {p: i for i, p in enumerate(points)}
    mask = sum(1 << p for p in points)
    inner = [tuple(index[p] for p in blk) for blk, bm in zip(D.blocks, D.masks) if not bm & ~mask]
    return Design(len(points), inner)


def find_sub_system(D: Design, w: int, k: int, lam: int) -> tuple[int, ...] | None:
    """First w-subset (lexicographic) whose inner blocks form exactly a 2-(w, k, lam) design."""
    if not 2 <= k <= w <= D.v or lam < 1:
        raise DesignError(f"need 2 <= k <= w <= v and lambda >= 1, got k={k} w={w} v={D.v}")
    want = Fraction(lam * comb(w, 2), comb(k, 2))
    if want.denominator != 1:
        return None
    masks = D.masks
    for H in combinations(range(D.v), w):
        hmask = sum(1 << p for p in H)
        if sum(1 for bm in masks if not bm & ~hmask) != want:
            continue
        if validate_t_design(blocks_inside(D, H), 2, k, lam, limit=1).ok:
            return H
    return None
