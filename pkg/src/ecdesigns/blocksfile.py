"""Plain-text block lists.

::

    # optional comments anywhere
    v 13
    b 26
    0 1 3
    ...

Headers ``v`` and ``b`` come first, then exactly ``b`` block lines of strictly
increasing 0-based point indices.
"""
from __future__ import annotations

from .design import Design, DesignError


class BlocksFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = "" if line is None else f"line {line}" + ("" if col is None else f", col {col}") + ": "
        super().__init__(where + message)
        self.line = line
        self.col = col


def _ints(text: str, lineno: int) -> list[int]:
    out = []
    pos = 0
    for tok in text.split(" "):
        if tok:
            if not tok.isdigit():
                raise BlocksFileError(f"expected a non-negative integer, got {tok!r}", lineno, pos + 1)
            out.append(int(tok))
        pos += len(tok) + 1
    return out


def parse_blocks_file(text: str) -> Design:
    headers: dict[str, int] = {}
    blocks: list[list[int]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if len(headers) < 2:
            key, _, value = line.strip().partition(" ")
            if key not in ("v", "b"):
                raise BlocksFileError(f"expected header 'v' or 'b', got {key!r}", lineno, 1)
            if key in headers:
                raise BlocksFileError(f"duplicate header {key!r}", lineno, 1)
            nums = _ints(value.strip(), lineno)
            if len(nums) != 1:
                raise BlocksFileError(f"header {key!r} takes one integer", lineno)
            headers[key] = nums[0]
            continue
        block = _ints(line.strip(), lineno)
        if not block:
            raise BlocksFileError("empty block line", lineno)
        if any(x >= y for x, y in zip(block, block[1:])):
            raise BlocksFileError("block points must be strictly increasing", lineno)
        if block[-1] >= headers["v"]:
            raise BlocksFileError(f"point {block[-1]} out of range for v={headers['v']}", lineno)
        blocks.append(block)
    if len(headers) < 2:
        raise BlocksFileError("missing 'v' or 'b' header")
    if len(blocks) != headers["b"]:
        raise BlocksFileError(f"declared {headers['b']} blocks, found {len(blocks)}")
    try:
        return Design(headers["v"], blocks)
    except DesignError as exc:
        raise BlocksFileError(str(exc)) from exc


def write_blocks_file(D: Design) -> str:
    lines = [f"v {D.v}", f"b {D.b}"] + [" ".join(map(str, blk)) for blk in D.blocks]
    return "\n".join(lines) + "\n"


def read_blocks_path(path: str) -> Design:
    with open(path, encoding="utf-8") as fh:
        return parse_blocks_file(fh.read())
