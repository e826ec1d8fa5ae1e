"""Find a Steiner quadruple system by randomized exact cover and write it as a blocks file.

    python scripts/search_sqs.py 14 --seed 1 -o sqs14.txt

The result can be fed to ``ecdesigns verify-paper --extra sqs14=sqs14.txt``.
"""
import argparse
import random
import sys
from itertools import combinations

from ecdesigns.blocksfile import write_blocks_file
from ecdesigns.design import Design, validate_t_design


def exact_cover(columns, rows, rng, partial=None):
    """Algorithm X on dict-of-sets; ``columns`` maps column -> set of row ids."""
    partial = [] if partial is None else partial
    if not columns:
        yield list(partial)
        return
    best = min(len(s) for s in columns.values())
    col = rng.choice([c for c, s in columns.items() if len(s) == best])
    candidates = list(columns[col])
    rng.shuffle(candidates)
    for r in candidates:
        partial.append(r)
        removed = _select(columns, rows, r)
        yield from exact_cover(columns, rows, rng, partial)
        _deselect(columns, rows, r, removed)
        partial.pop()


def _select(columns, rows, r):
    removed = []
    for c in rows[r]:
        for other in columns[c]:
            for c2 in rows[other]:
                if c2 != c:
                    columns[c2].discard(other)
        removed.append(columns.pop(c))
    return removed


def _deselect(columns, rows, r, removed):
    for c in reversed(rows[r]):
        columns[c] = removed.pop()
        for other in columns[c]:
            for c2 in rows[other]:
                if c2 != c:
                    columns[c2].add(other)


def search_sqs(v: int, seed: int = 0) -> Design:
    if v % 6 not in (2, 4):
        raise ValueError(f"no SQS({v}) exists")
    rng = random.Random(seed)
    quads = list(combinations(range(v), 4))
    rows = {i: list(combinations(q, 3)) for i, q in enumerate(quads)}
    columns = {tri: set() for tri in combinations(range(v), 3)}
    for i, tris in rows.items():
        for tri in tris:
            columns[tri].add(i)
    solution = next(exact_cover(columns, rows, rng))
    return Design(v, [quads[i] for i in solution])


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("v", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--output")
    args = parser.parse_args(argv)
    D = search_sqs(args.v, args.seed)
    assert validate_t_design(D, 3, 4, 1).ok
    text = write_blocks_file(D)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
