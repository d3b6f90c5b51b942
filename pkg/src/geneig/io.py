"""Text formats: matrices as whitespace grids, polynomials as coefficient
lists.  All values are integers or "p/q"; floats never appear.

Matrix format, bit-exact round trip:
    line 1:   n          (or "n m" for a rectangular matrix)
    lines 2+: one row per line, whitespace-separated entries
"""

from __future__ import annotations

from .matrix import Matrix, as_matrix
from .rationals import format_rational, parse_rational


def parse_matrix(text: str) -> Matrix:
    lines = [line for line in (raw.strip() for raw in text.splitlines()) if line]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) == 1:
        rows = cols = int(header[0])
    elif len(header) == 2:
        rows, cols = int(header[0]), int(header[1])
    else:
        raise ValueError(f"malformed size header: {lines[0]!r}")
    if rows < 0 or cols < 0:
        raise ValueError("negative matrix size")
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    data = []
    for line in lines[1:]:
        entries = line.split()
        if len(entries) != cols:
            raise ValueError(f"expected {cols} entries per row, found {len(entries)}")
        data.append([parse_rational(e) for e in entries])
    return as_matrix(data)


def format_matrix(a: Matrix) -> str:
    rows, cols = a.shape
    header = str(rows) if rows == cols else f"{rows} {cols}"
    lines = [header]
    for i in range(rows):
        lines.append(" ".join(format_rational(e) for e in a[i, :]))
    return "\n".join(lines) + "\n"


def read_matrix(path) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, a: Matrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(a))
