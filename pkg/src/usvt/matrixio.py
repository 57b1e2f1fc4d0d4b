"""CSV interchange format for matrices with missing entries.

One row per matrix row, comma-separated decimal literals, missing entries
encoded as the literal token ``NA``. An optional header row carries
generic column names. Floats are written with ``repr``, so a write/read
round trip reproduces every value exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import MatrixFormatError, ValidationError
from .linalg import as_matrix

__all__ = ["NA_TOKEN", "read_matrix_csv", "write_matrix_csv"]

NA_TOKEN = "NA"


def read_matrix_csv(path, header: bool = False):
    """Parse a matrix file into ``(values, mask)``.

    ``mask`` is True where a number was present; missing (``NA``) positions
    carry value 0.0. Malformed content raises :class:`MatrixFormatError`
    with the offending 1-based line number.
    """
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    # Drop a single trailing newline artifact, keep interior blank lines
    # so they are reported as errors at the right place.
    if lines and lines[-1] == "":
        lines.pop()
    start = 2 if header else 1
    data_lines = lines[1:] if header else lines
    if not data_lines:
        raise MatrixFormatError("no matrix rows found")
    for offset, line in enumerate(data_lines):
        lineno = start + offset
        fields = [f.strip() for f in line.split(",")]
        if fields == [""]:
            raise MatrixFormatError("blank row", line=lineno)
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise MatrixFormatError(
                f"expected {width} fields, found {len(fields)}", line=lineno
            )
        row_vals = []
        row_mask = []
        for field in fields:
            if field == NA_TOKEN:
                row_vals.append(0.0)
                row_mask.append(False)
            else:
                try:
                    value = float(field)
                except ValueError:
                    raise MatrixFormatError(
                        f"not a number or {NA_TOKEN!r}: {field!r}", line=lineno
                    ) from None
                if not np.isfinite(value):
                    raise MatrixFormatError(f"non-finite value {field!r}", line=lineno)
                row_vals.append(value)
                row_mask.append(True)
        rows.append((row_vals, row_mask))
    values = np.array([r[0] for r in rows], dtype=float)
    mask = np.array([r[1] for r in rows], dtype=bool)
    return values, mask


def write_matrix_csv(path, values, mask=None, header: bool = False) -> None:
    """Write a matrix, rendering masked-out entries as ``NA``.

    ``mask`` defaults to everything observed. Values are written with full
    round-trip precision.
    """
    values = as_matrix(values)
    if mask is None:
        mask = np.ones(values.shape, dtype=bool)
    else:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != values.shape:
            raise ValidationError("mask shape must match values shape")
    lines = []
    if header:
        lines.append(",".join(f"c{j}" for j in range(values.shape[1])))
    for i in range(values.shape[0]):
        fields = [
            repr(float(values[i, j])) if mask[i, j] else NA_TOKEN
            for j in range(values.shape[1])
        ]
        lines.append(",".join(fields))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
