"""Reading and writing the ``.tbl`` Cayley-table format and its sidecars.

Format: first line is the order ``n``; then ``n`` lines of ``n``
space-separated 0-based indices, row ``i`` column ``j`` holding ``i*j``.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError


def parse_tbl(text: str) -> np.ndarray:
    """Parse ``.tbl`` text; blank lines and ``#`` comments are skipped and
    error positions refer to the original file lines."""
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((no, body))
    if not lines:
        raise ParseError("empty table file", line=1, column=1)
    first_no, first = lines[0]
    try:
        n = int(first.strip())
    except ValueError:
        raise ParseError(f"line {first_no}: order {first.strip()!r} is not an integer",
                         line=first_no, column=1) from None
    if n < 1:
        raise ParseError(f"line {first_no}: order must be positive", line=first_no, column=1)
    if len(lines) - 1 != n:
        last = lines[-1][0]
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}", line=last + 1, column=1)
    table = np.empty((n, n), dtype=np.int64)
    for i, (no, ln) in enumerate(lines[1:]):
        fields = ln.split()
        if len(fields) != n:
            raise ParseError(f"line {no}: expected {n} entries, found {len(fields)}",
                             line=no, column=min(len(fields), n) + 1)
        for j, f in enumerate(fields):
            try:
                v = int(f)
            except ValueError:
                raise ParseError(f"line {no}, column {j + 1}: {f!r} is not an integer",
                                 line=no, column=j + 1) from None
            if not 0 <= v < n:
                raise ParseError(f"line {no}, column {j + 1}: entry {v} out of range 0..{n - 1}",
                                 line=no, column=j + 1)
            table[i, j] = v
    return table


def read_tbl(path) -> np.ndarray:
    return parse_tbl(Path(path).read_text())


def format_tbl(table) -> str:
    table = np.asarray(table)
    rows = [str(table.shape[0])]
    rows.extend(" ".join(str(int(v)) for v in row) for row in table)
    return "\n".join(rows) + "\n"


def write_tbl(path, table) -> None:
    Path(path).write_text(format_tbl(table))


def format_blocks(blocks: Sequence[Iterable[int]]) -> str:
    """Sidecar for factor loops and subloops: ``block-index: member list``."""
    return "".join(f"{i}: {' '.join(str(m) for m in sorted(b))}\n" for i, b in enumerate(blocks))


def parse_blocks(text: str) -> list[list[int]]:
    blocks = []
    for lineno, ln in enumerate(text.splitlines(), 1):
        if not ln.strip():
            continue
        head, sep, rest = ln.partition(":")
        if not sep or not head.strip().isdigit() or int(head) != len(blocks):
            raise ParseError(f"line {lineno}: expected '{len(blocks)}: members'", line=lineno, column=1)
        blocks.append([int(x) for x in rest.split()])
    return blocks


def format_rows(rows: Iterable[Iterable[int]]) -> str:
    """One row of space-separated integers per line (sections, coordinates)."""
    return "".join(" ".join(str(int(v)) for v in r) + "\n" for r in rows)


def parse_rows(text: str) -> list[list[int]]:
    out = []
    for lineno, ln in enumerate(text.splitlines(), 1):
        if not ln.strip():
            continue
        try:
            out.append([int(x) for x in ln.split()])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry", line=lineno, column=1) from None
    return out
