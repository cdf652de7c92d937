"""Matrix Market and headerless-CSV ingestion, plus Matrix Market output.

Matrix Market support covers the real array and coordinate variants with
general or symmetric storage.  Output uses 17 significant digits, enough
for a bit-exact double round trip.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, ParseError
from .linalg import as_matrix

_MM_BANNER = "%%MatrixMarket"


def _fail(msg: str, lineno: int, line: str, token: str | None = None):
    col = None
    if token is not None:
        pos = line.find(token)
        col = pos + 1 if pos >= 0 else None
    raise ParseError(msg, line=lineno, column=col)


def _parse_real(tok: str, lineno: int, line: str) -> float:
    try:
        return float(tok)
    except ValueError:
        _fail(f"expected a real number, got {tok!r}", lineno, line, tok)


def _parse_int(tok: str, lineno: int, line: str) -> int:
    try:
        return int(tok)
    except ValueError:
        _fail(f"expected an integer, got {tok!r}", lineno, line, tok)


def _data_lines(lines):
    """Yield (lineno, stripped line) skipping comments and blanks."""
    for lineno, raw in lines:
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        yield lineno, stripped


def _load_matrix_market(lines, first_line: str) -> np.ndarray:
    parts = first_line.strip().split()
    if len(parts) != 5 or parts[1].lower() != "matrix":
        _fail("malformed header, expected "
              "'%%MatrixMarket matrix <format> <field> <symmetry>'", 1, first_line,
              parts[1] if len(parts) > 1 else None)
    fmt, field, symmetry = (p.lower() for p in parts[2:5])
    if fmt not in ("array", "coordinate"):
        _fail(f"unsupported format {fmt!r}", 1, first_line, parts[2])
    if field not in ("real", "integer"):
        _fail(f"unsupported field {field!r}", 1, first_line, parts[3])
    if symmetry not in ("general", "symmetric"):
        _fail(f"unsupported symmetry {symmetry!r}", 1, first_line, parts[4])

    stream = _data_lines(lines)
    try:
        lineno, size_line = next(stream)
    except StopIteration:
        raise ParseError("missing size line", line=1)
    toks = size_line.split()

    if fmt == "array":
        if len(toks) != 2:
            _fail("array size line must be '<rows> <cols>'", lineno, size_line)
        n_rows = _parse_int(toks[0], lineno, size_line)
        n_cols = _parse_int(toks[1], lineno, size_line)
        if n_rows < 1 or n_cols < 1:
            _fail("dimensions must be positive", lineno, size_line)
        if symmetry == "symmetric" and n_rows != n_cols:
            _fail("symmetric storage needs a square matrix", lineno, size_line)
        out = np.zeros((n_rows, n_cols))
        if symmetry == "general":
            coords = [(i, j) for j in range(n_cols) for i in range(n_rows)]
        else:
            coords = [(i, j) for j in range(n_cols) for i in range(j, n_rows)]
        values = []
        for lineno, line in stream:
            for tok in line.split():
                values.append((_parse_real(tok, lineno, line), lineno))
        if len(values) != len(coords):
            raise DimensionMismatch(
                f"expected {len(coords)} entries, found {len(values)}")
        for (i, j), (val, _) in zip(coords, values):
            out[i, j] = val
            if symmetry == "symmetric":
                out[j, i] = val
        return out

    if len(toks) != 3:
        _fail("coordinate size line must be '<rows> <cols> <nnz>'", lineno, size_line)
    n_rows = _parse_int(toks[0], lineno, size_line)
    n_cols = _parse_int(toks[1], lineno, size_line)
    nnz = _parse_int(toks[2], lineno, size_line)
    if n_rows < 1 or n_cols < 1 or nnz < 0:
        _fail("dimensions must be positive", lineno, size_line)
    if symmetry == "symmetric" and n_rows != n_cols:
        _fail("symmetric storage needs a square matrix", lineno, size_line)
    out = np.zeros((n_rows, n_cols))
    seen = 0
    for lineno, line in stream:
        toks = line.split()
        if len(toks) != 3:
            _fail("coordinate entries are '<row> <col> <value>'", lineno, line)
        i = _parse_int(toks[0], lineno, line)
        j = _parse_int(toks[1], lineno, line)
        val = _parse_real(toks[2], lineno, line)
        if not (1 <= i <= n_rows and 1 <= j <= n_cols):
            _fail(f"index ({i}, {j}) outside {n_rows} x {n_cols}", lineno, line, toks[0])
        out[i - 1, j - 1] = val
        if symmetry == "symmetric":
            out[j - 1, i - 1] = val
        seen += 1
    if seen != nnz:
        raise DimensionMismatch(f"size line promised {nnz} entries, found {seen}")
    return out


def _load_csv(lines) -> np.ndarray:
    rows = []
    width = None
    for lineno, raw in lines:
        stripped = raw.strip()
        if not stripped:
            continue
        toks = [t.strip() for t in stripped.split(",")]
        row = [_parse_real(t, lineno, raw) for t in toks]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DimensionMismatch(
                f"row {lineno} has {len(row)} entries, expected {width}")
        rows.append(row)
    if not rows:
        raise ParseError("file contains no data", line=1)
    return np.array(rows, dtype=float)


def load_matrix(path, transpose: bool = False) -> np.ndarray:
    """Read a dense matrix from Matrix Market or headerless CSV.

    CSV rows are matrix rows; pass transpose=True for files shipped the
    other way around.  Symmetric Matrix Market inputs come back expanded
    to full storage.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()
    if not raw:
        raise ParseError("empty file", line=1)
    numbered = list(enumerate(raw, start=1))
    if raw[0].startswith(_MM_BANNER):
        out = _load_matrix_market(iter(numbered[1:]), raw[0])
    else:
        out = _load_csv(iter(numbered))
    if transpose:
        out = out.T
    return as_matrix(out)


def save_matrix_market(path, a) -> None:
    """Write a dense matrix as a real general Matrix Market array file."""
    arr = as_matrix(a)
    n_rows, n_cols = arr.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix array real general\n")
        fh.write(f"{n_rows} {n_cols}\n")
        for j in range(n_cols):
            for i in range(n_rows):
                fh.write(f"{arr[i, j]:.17g}\n")


def save_csv(path, a) -> None:
    arr = as_matrix(a)
    with open(path, "w", encoding="utf-8") as fh:
        for row in arr:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
