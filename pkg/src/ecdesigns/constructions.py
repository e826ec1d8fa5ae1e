"""Concrete designs: cyclic developments, permuted unions, complete designs,
the Boolean SQS(8) and SQS doubling."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from operator import xor
from typing import Iterable, Sequence

from .design import Design, DesignError, supplementary_design, validate_t_design

DEFAULT_SEED = 20190225


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise DesignError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, v: int) -> "Permutation":
        return cls(tuple(range(v)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class OneFactorization:
    v: int
    factors: tuple[tuple[tuple[int, int], ...], ...]


def develop_cyclic(v: int, base_blocks: Iterable[Iterable[int]]) -> Design:
    """All translates ``B + i (mod v)`` of the base blocks, short orbits kept with multiplicity."""
    base = [tuple(b) for b in base_blocks]
    if v < 1:
        raise DesignError(f"modulus must be positive, got {v}")
    for b in base:
        if any(not 0 <= x < v for x in b):
            raise DesignError(f"base block {b} has an entry outside [0, {v})")
    return Design(v, [tuple((x + i) % v for x in b) for b in base for i in range(v)])


def orbit_lengths(v: int, base_blocks: Iterable[Iterable[int]]) -> list[int]:
    """Size of the translation orbit of each base block; a value below ``v`` is a short orbit."""
    out = []
    for b in base_blocks:
        start = frozenset(b)
        out.append(next(s for s in range(1, v + 1) if frozenset((x + s) % v for x in start) == start))
    return out


def apply_permutation(D: Design, p: Permutation) -> Design:
    if len(p) != D.v:
        raise DesignError(f"permutation of length {len(p)} applied to a design on {D.v} points")
    return Design(D.v, [tuple(p.images[x] for x in block) for block in D.blocks])


def union_designs(designs: Sequence[Design]) -> Design:
    """Multiset union of block lists over a common point set."""
    if not designs:
        raise DesignError("nothing to unite")
    v = designs[0].v
    if any(d.v != v for d in designs):
        raise DesignError("designs live on different point counts")
    return Design(v, [b for d in designs for b in d.blocks])


def complete_design(v: int, k: int) -> Design:
    if not 1 <= k <= v:
        raise DesignError(f"need 1 <= k <= v, got k={k} v={v}")
    return Design(v, combinations(range(v), k))


def affine_plane_3() -> Design:
    """STS(9): the lines of AG(2, 3), point (x, y) numbered 3x + y."""
    lines = set()
    for p, q in combinations(range(9), 2):
        (x1, y1), (x2, y2) = divmod(p, 3), divmod(q, 3)
        r = ((2 * x1 - x2) % 3) * 3 + (2 * y1 - y2) % 3
        lines.add(tuple(sorted((p, q, r))))
    return Design(9, lines)


def one_factorization(v: int) -> OneFactorization:
    """Round-robin factorization of K_v: ``v-1`` is fixed, the others rotate."""
    if v < 2 or v % 2:
        raise DesignError(f"one-factorization needs an even v >= 2, got {v}")
    n = v - 1
    factors = []
    for j in range(n):
        pairs = [(j, n)]
        for d in range(1, v // 2):
            a, b = (j - d) % n, (j + d) % n
            pairs.append((min(a, b), max(a, b)))
        factors.append(tuple(sorted(pairs)))
    return OneFactorization(v, tuple(factors))


def doubling_sqs(D: Design) -> Design:
    """SQS(2v) from an SQS(v): both copies of the blocks plus matched factor pairs across copies."""
    v = D.v
    if v % 2 or v < 4 or not validate_t_design(D, 3, 4, 1):
        raise DesignError("doubling needs a valid SQS of even order")
    blocks = list(D.blocks) + [tuple(x + v for x in blk) for blk in D.blocks]
    for factor in one_factorization(v).factors:
        for a, b in factor:
            for c, d in factor:
                blocks.append((a, b, c + v, d + v))
    return Design(2 * v, blocks)


def boolean_sqs8() -> Design:
    """The 4-subsets of GF(2)^3 (as integers 0..7) that sum to zero."""
    return Design(8, [q for q in combinations(range(8), 4) if reduce(xor, q) == 0])


def disjoint_permuted_copy(
    D: Design, seed: int = DEFAULT_SEED, max_tries: int = 10_000
) -> Permutation:
    """First permutation in a seeded stream that maps ``D`` to a block-disjoint copy."""
    rng = random.Random(seed)
    own = set(D.blocks)
    images = list(range(D.v))
    for _ in range(max_tries):
        rng.shuffle(images)
        p = Permutation(tuple(images))
        if own.isdisjoint(apply_permutation(D, p).blocks):
            return p
    raise DesignError(f"no block-disjoint copy found in {max_tries} tries")


# Two-row permutations of Z_13, bottom rows. The blocks are moved by the
# inverse maps; the forward maps give overlapping copies of the Netto system.
SIGMA_1 = Permutation((1, 6, 7, 2, 4, 10, 3, 5, 8, 11, 9, 0, 12))
SIGMA_2 = Permutation((4, 5, 11, 2, 1, 6, 9, 10, 7, 12, 3, 0, 8))
SIGMA_3 = Permutation((12, 1, 2, 7, 4, 10, 9, 3, 5, 11, 8, 6, 0))

NETTO13_BASE = ((1, 3, 9), (2, 5, 6))
TS11_3_BASE = tuple((0, j, 2 * j % 11) for j in range(1, 6))


def netto13() -> Design:
    return develop_cyclic(13, NETTO13_BASE)


def ts13_4() -> Design:
    base = netto13()
    copies = [apply_permutation(base, s.inverse()) for s in (SIGMA_1, SIGMA_2, SIGMA_3)]
    return union_designs([base] + copies)


def ts11_3() -> Design:
    return develop_cyclic(11, TS11_3_BASE)


def ts9_2(seed: int = DEFAULT_SEED) -> Design:
    sts9 = affine_plane_3()
    return union_designs([sts9, apply_permutation(sts9, disjoint_permuted_copy(sts9, seed))])


_BUILTINS = {
    "netto13": netto13,
    "ts13_4": ts13_4,
    "ts11_3": ts11_3,
    "ts11_6": lambda: supplementary_design(ts11_3(), 3),
    "sts9": affine_plane_3,
    "ts9_2": ts9_2,
    "sqs8": boolean_sqs8,
    "sqs16": lambda: doubling_sqs(boolean_sqs8()),
    "sqs32": lambda: doubling_sqs(doubling_sqs(boolean_sqs8())),
}

_COMPLETE = re.compile(r"complete[(:](\d+)[,:](\d+)\)?$")


def builtin_names() -> list[str]:
    return sorted(_BUILTINS) + ["complete(v,k)"]


def is_builtin(name: str) -> bool:
    return name in _BUILTINS or bool(_COMPLETE.match(name))


def builtin(name: str) -> Design:
    """Look up a named design; ``complete(v,k)`` and ``complete:v:k`` give complete designs."""
    if name in _BUILTINS:
        return _BUILTINS[name]()
    m = _COMPLETE.match(name)
    if m:
        return complete_design(int(m[1]), int(m[2]))
    raise KeyError(f"unknown design {name!r}; known: {', '.join(builtin_names())}")
