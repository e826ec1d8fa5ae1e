"""Write a simple TS(13,4) that contains a simple TS(6,4) on points 0..5.

The 20 triples of the 6-set are all used once. The other 84 triples are
{h, w, w'} with h in the 6-set and {w, w'} an edge of K7 on points 6..12.
K7 splits into three Hamilton cycles; each cycle is paired with two of the
six points h, so every edge gets four distinct h and every (h, w) pair is
covered four times.

    python scripts/make_ts13_4_hole.py -o ts13_4_hole.txt
    ecdesigns verify-paper --extra ts13_4=ts13_4_hole.txt
"""
import argparse
import sys
from itertools import combinations

from ecdesigns.blocksfile import write_blocks_file
from ecdesigns.design import Design


def walecki_cycles(m: int) -> list[list[int]]:
    """m Hamilton cycles decomposing K_{2m+1}; vertex 2m is the hub."""
    n = 2 * m
    cycles = []
    for i in range(m):
        path = [i]
        for d in range(1, m + 1):
            path.append((i + d) % n)
            if d < m:
                path.append((i - d) % n)
        cycles.append([n] + path)
    return cycles


def ts13_4_with_hole() -> Design:
    hole = range(6)
    blocks = list(combinations(hole, 3))
    for idx, cycle in enumerate(walecki_cycles(3)):
        edges = [(cycle[j], cycle[(j + 1) % len(cycle)]) for j in range(len(cycle))]
        dropped = {2 * idx, 2 * idx + 1}
        for a, b in edges:
            for h in hole:
                if h not in dropped:
                    blocks.append((h, a + 6, b + 6))
    return Design(13, blocks)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output")
    args = parser.parse_args(argv)
    text = write_blocks_file(ts13_4_with_hole())
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
