"""Set systems, design validation and the standard transformations on them.

Points are the integers ``0..v-1``. A :class:`Design` keeps its blocks as a
sorted tuple of sorted tuples, so two designs with the same block multiset
compare equal.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

DEFAULT_VIOLATION_LIMIT = 16


class DesignError(ValueError):
    """Raised for malformed designs or out-of-range parameters."""


def _normalize_blocks(v: int, blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    out = []
    for raw in blocks:
        block = tuple(sorted(raw))
        if not block:
            raise DesignError("empty block")
        if len(set(block)) != len(block):
            raise DesignError(f"repeated point in block {block}")
        if block[0] < 0 or block[-1] >= v:
            raise DesignError(f"block {block} has a point outside [0, {v})")
        out.append(block)
    out.sort()
    return tuple(out)


@dataclass(frozen=True)
class Design:
    """A set system on ``v`` points with a multiset of blocks."""

    v: int
    blocks: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.v < 0:
            raise DesignError(f"negative point count {self.v}")
        object.__setattr__(self, "blocks", _normalize_blocks(self.v, self.blocks))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Blocks as point bitsets, index-aligned with ``blocks``."""
        return tuple(sum(1 << p for p in block) for block in self.blocks)

    @cached_property
    def block_sizes(self) -> frozenset[int]:
        return frozenset(len(block) for block in self.blocks)

    def normalized(self) -> "Design":
        return Design(self.v, self.blocks)

    def blocks_through(self, x: int) -> list[int]:
        """Indices of the blocks containing point ``x``."""
        bit = 1 << x
        return [i for i, m in enumerate(self.masks) if m & bit]

    def __repr__(self) -> str:
        return f"Design(v={self.v}, b={self.b}, sizes={sorted(self.block_sizes)})"


@dataclass(frozen=True)
class Violation:
    kind: str  # "coverage" or "block_size"
    subset: tuple[int, ...]
    observed: int
    expected: int | frozenset


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()
    truncated: bool = False
    derived: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


class _ViolationLog:
    def __init__(self, limit: int):
        self.limit = limit
        self.items: list[Violation] = []
        self.total = 0

    def add(self, violation: Violation) -> None:
        self.total += 1
        if len(self.items) < self.limit:
            self.items.append(violation)

    def report(self, derived: dict) -> ValidationReport:
        return ValidationReport(
            ok=self.total == 0,
            violations=tuple(self.items),
            truncated=self.total > len(self.items),
            derived=derived,
        )


def subset_rank(subset: Sequence[int]) -> int:
    """Colex (combinadic) rank of a sorted subset."""
    return sum(comb(c, i + 1) for i, c in enumerate(subset))


def coverage_counts(D: Design, t: int) -> list[int]:
    """How often each t-subset of points lies in a block, indexed by colex rank."""
    counts = [0] * comb(D.v, t)
    for block in D.blocks:
        for sub in combinations(block, t):
            counts[subset_rank(sub)] += 1
    return counts


def replication_profile(D: Design) -> dict[int, int]:
    r = dict.fromkeys(range(D.v), 0)
    for block in D.blocks:
        for p in block:
            r[p] += 1
    return r


def pbd_replication_bounds(v: int, k_set: Iterable[int], lam: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bound on every replication number of a (v, K, lam)-PBD."""
    ks = sorted(k_set)
    if ks[0] < 2:
        raise DesignError("block sizes must be at least 2")
    return Fraction(lam * (v - 1), ks[-1] - 1), Fraction(lam * (v - 1), ks[0] - 1)


def _check_coverage(D: Design, t: int, lam: int, log: _ViolationLog) -> None:
    counts = coverage_counts(D, t)
    for sub in combinations(range(D.v), t):
        seen = counts[subset_rank(sub)]
        if seen != lam:
            log.add(Violation("coverage", sub, seen, lam))


def validate_t_design(
    D: Design, t: int, k: int, lam: int, *, limit: int = DEFAULT_VIOLATION_LIMIT
) -> ValidationReport:
    """Check that ``D`` is a t-(v, k, lam) design.

    Coverage is counted with block multiplicity. Violations are listed in
    lexicographic order of the offending subset, at most ``limit`` of them.
    """
    if not (1 <= t <= k <= D.v) or lam < 1:
        raise DesignError(f"bad parameters t={t}, k={k}, lambda={lam} for v={D.v}")
    log = _ViolationLog(limit)
    for block in D.blocks:
        if len(block) != k:
            log.add(Violation("block_size", block, len(block), k))
    _check_coverage(D, t, lam, log)
    r = replication_profile(D)
    derived = {
        "b": D.b,
        "replication": tuple(r[i] for i in range(D.v)),
        "lambda_h": {h: lambda_h(t, D.v, k, lam, h) for h in range(t + 1)},
    }
    return log.report(derived)


def validate_pbd(
    D: Design, k_set: Iterable[int], lam: int, *, limit: int = DEFAULT_VIOLATION_LIMIT
) -> ValidationReport:
    """Check that ``D`` is a (v, K, lam) pairwise balanced design."""
    ks = frozenset(k_set)
    if not ks or min(ks) < 2 or lam < 1:
        raise DesignError(f"bad PBD parameters K={sorted(ks)}, lambda={lam}")
    log = _ViolationLog(limit)
    for block in D.blocks:
        if len(block) not in ks:
            log.add(Violation("block_size", block, len(block), ks))
    if D.v >= 2:
        _check_coverage(D, 2, lam, log)
    r = replication_profile(D)
    lo, hi = pbd_replication_bounds(D.v, ks, lam)
    derived = {
        "b": D.b,
        "replication": tuple(r[i] for i in range(D.v)),
        "replication_bounds": (lo, hi),
        "replication_bounds_ok": all(lo <= ri <= hi for ri in r.values()),
    }
    return log.report(derived)


def is_simple(D: Design) -> bool:
    return all(a != b for a, b in zip(D.blocks, D.blocks[1:]))


def is_one_cover_free(D: Design) -> bool:
    """True iff no block is contained in a different block (equal copies count)."""
    masks = D.masks
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            if i != j and mi & ~mj == 0:
                return False
    return True


def derived_design(D: Design, x: int) -> Design:
    """Blocks through ``x`` with ``x`` removed, on the remaining v-1 points."""
    if not 0 <= x < D.v:
        raise DesignError(f"point {x} outside [0, {D.v})")
    blocks = []
    for block in D.blocks:
        if x in block:
            rest = tuple(p - (p > x) for p in block if p != x)
            if rest:
                blocks.append(rest)
    return Design(D.v - 1, blocks)


def supplementary_design(D: Design, k: int) -> Design:
    """All k-subsets of the points that are not blocks of ``D``."""
    if not is_simple(D):
        raise DesignError("supplementary design needs a simple input")
    if D.blocks and D.block_sizes != {k}:
        raise DesignError(f"supplementary design needs all blocks of size {k}")
    used = set(D.blocks)
    return Design(D.v, [c for c in combinations(range(D.v), k) if c not in used])


def lambda_h(t: int, v: int, k: int, lam: int, h: int) -> Fraction:
    """Number of blocks through an h-subset of a t-(v, k, lam) design, as an exact rational.

    A non-integer value means no such design exists.
    """
    if not (0 <= h <= t <= k <= v):
        raise DesignError(f"need 0 <= h <= t <= k <= v, got h={h} t={t} k={k} v={v}")
    return Fraction(lam * comb(v - h, t - h), comb(k - h, t - h))


def is_lambda_admissible(v: int, lam: int) -> bool:
    """Whether a simple 2-(v, 3, lam) design exists."""
    return lam <= v - 2 and lam % gcd(v - 2, 6) == 0


def block_multiplicities(D: Design) -> Counter:
    return Counter(D.blocks)
