"""Reader/writer for the alist sparse parity-check interchange format.

Layout written here: line 1 is "n m" (columns then rows), line 2 the
maximum column and row weights, line 3 the n column weights, line 4 the m
row weights, then n lines of 1-based row indices per column and m lines of
1-based column indices per row.  Written files carry no zero padding; the
reader tolerates zero-padded entries for interoperability.
"""

from __future__ import annotations

from pathlib import Path

from .gf2 import BinaryMatrix


def write_alist(h: BinaryMatrix, path: str | Path) -> None:
    """Serialize a binary matrix (rows = checks, columns = variables)."""
    m, n = h.nrows, h.cols
    ht = h.transpose()
    col_lists = []
    for j in range(n):
        c = ht.rows[j]
        rows = []
        while c:
            low = c & -c
            rows.append(low.bit_length())
            c ^= low
        col_lists.append(rows)
    row_lists = []
    for i in range(m):
        r = h.rows[i]
        cols = []
        while r:
            low = r & -r
            cols.append(low.bit_length())
            r ^= low
        row_lists.append(cols)
    lines = [
        f"{n} {m}",
        f"{max(len(c) for c in col_lists)} {max(len(r) for r in row_lists)}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    lines += [" ".join(map(str, c)) for c in col_lists]
    lines += [" ".join(map(str, r)) for r in row_lists]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_alist(path: str | Path) -> BinaryMatrix:
    """Parse an alist file into a binary matrix; cross-checks both index
    sections and ignores zero padding."""
    tokens_by_line = [
        [int(x) for x in line.split()]
        for line in Path(path).read_text(encoding="ascii").splitlines()
        if line.strip()
    ]
    if len(tokens_by_line) < 4:
        raise ValueError(f"{path}: truncated alist header")
    n, m = tokens_by_line[0]
    col_w = tokens_by_line[2]
    row_w = tokens_by_line[3]
    if len(col_w) != n or len(row_w) != m:
        raise ValueError(f"{path}: weight lines do not match declared dimensions")
    if len(tokens_by_line) != 4 + n + m:
        raise ValueError(f"{path}: expected {4 + n + m} lines, got {len(tokens_by_line)}")

    h = BinaryMatrix.zeros(m, n)
    for j in range(n):
        entries = [x for x in tokens_by_line[4 + j] if x != 0]
        if len(entries) != col_w[j]:
            raise ValueError(f"{path}: column {j} lists {len(entries)} rows, declared {col_w[j]}")
        for i in entries:
            if not 1 <= i <= m:
                raise ValueError(f"{path}: row index {i} out of range in column {j}")
            h.set(i - 1, j)
    for i in range(m):
        entries = sorted(x for x in tokens_by_line[4 + n + i] if x != 0)
        actual = []
        r = h.rows[i]
        while r:
            low = r & -r
            actual.append(low.bit_length())
            r ^= low
        if entries != actual:
            raise ValueError(f"{path}: row section for row {i} disagrees with column section")
    return h
