"""RSK by column insertion, its inverse, the bicrystal on matrices, and p(A).

Column ``j`` of an ``m x n`` matrix ``A`` becomes the one-row tableau holding
``a_ij`` copies of each letter ``i``.  These rows are column-inserted into
``P`` one after another, each read right to left (largest letter first), and
every box created while inserting column ``j`` gets the label ``j`` in ``Q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .crystal import Tableau, _bracket

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BiTableauPair:
    P: Tableau
    Q: Tableau

    def __post_init__(self):
        if self.P.shape != self.Q.shape:
            raise ValueError(f"P and Q have different shapes: {self.P.shape} vs {self.Q.shape}")


def as_matrix(A) -> Matrix:
    """Validate a rectangular nonnegative integer matrix and freeze it."""
    rows = [list(r) for r in A]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows have different lengths")
    out = []
    for r in rows:
        new = []
        for v in r:
            iv = int(v)
            if iv != v or iv < 0:
                raise ValueError(f"matrix entries must be nonnegative integers, got {v!r}")
            new.append(iv)
        out.append(tuple(new))
    return tuple(out)


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*A)) if A and len(A[0]) else ()


def _columns(P: list[list[int]]) -> list[list[int]]:
    """Columns of a row-list tableau, bottom entry first."""
    if not P:
        return []
    return [[row[c] for row in P if len(row) > c] for c in range(len(P[0]))]


def _column_insert(cols: list[list[int]], x: int) -> tuple[int, int]:
    """Column-insert ``x`` in place; returns the new box as ``(row, col)``."""
    c = 0
    while True:
        if c == len(cols):
            cols.append([x])
            return 0, c
        col = cols[c]
        for r, y in enumerate(col):
            if y >= x:
                col[r], x = x, y
                break
        else:
            col.append(x)
            return len(col) - 1, c
        c += 1


def _from_columns(cols: list[list[int]]) -> Tableau:
    height = len(cols[0]) if cols else 0
    return Tableau(tuple(tuple(col[r] for col in cols if len(col) > r) for r in range(height)))


def rsk(A) -> BiTableauPair:
    A = as_matrix(A)
    m = len(A)
    n = len(A[0]) if m else 0
    cols: list[list[int]] = []
    labels: dict[tuple[int, int], int] = {}
    for j in range(n):
        for i in reversed(range(m)):
            for _ in range(A[i][j]):
                labels[_column_insert(cols, i + 1)] = j + 1
    P = _from_columns(cols)
    Q = Tableau(tuple(tuple(labels[(r, c)] for c in range(len(row))) for r, row in enumerate(P.rows)))
    return BiTableauPair(P, Q)


def _reverse_column_insert(cols: list[list[int]], r: int, c: int) -> int:
    """Undo the insertion that created the box ``(r, c)``; returns the inserted letter."""
    if len(cols[c]) != r + 1:
        raise ValueError(f"box {(r, c)} is not the top of its column")
    y = cols[c].pop()
    if not cols[c]:
        if c != len(cols) - 1:
            raise ValueError(f"box {(r, c)} is not a corner")
        cols.pop()
    for k in reversed(range(c)):
        col = cols[k]
        pos = max((t for t, v in enumerate(col) if v <= y), default=None)
        if pos is None:
            raise ValueError("pair is not in the image of RSK")
        col[pos], y = y, col[pos]
    return y


def rsk_inverse(pair: BiTableauPair, m: int, n: int) -> Matrix:
    P, Q = pair.P, pair.Q
    if P.max_letter() > m or Q.max_letter() > n:
        raise ValueError(f"letters exceed the alphabets [1..{m}] and [1..{n}]")
    cols = _columns([list(r) for r in P.rows])
    boxes: dict[int, list[tuple[int, int]]] = {}
    for r, row in enumerate(Q.rows):
        for c, label in enumerate(row):
            boxes.setdefault(label, []).append((r, c))
    A = [[0] * n for _ in range(m)]
    for j in sorted(boxes, reverse=True):
        # boxes of one column of A were created left to right
        last = None
        for r, c in sorted(boxes[j], key=lambda b: -b[1]):
            letter = _reverse_column_insert(cols, r, c)
            if last is not None and letter < last:
                raise ValueError("Q is not a recording tableau for P")
            last = letter
            A[letter - 1][j - 1] += 1
    out = as_matrix(A)
    if rsk(out) != pair:
        raise ValueError("pair is not in the image of RSK")
    return out


def percolation_time(A) -> int:
    """Heaviest path from the top-right corner to the bottom-left one, moving down or left."""
    rows = [list(r) for r in A]
    if not rows or not rows[0]:
        return 0
    n = len(rows[0])
    above = [0] * n
    for row in rows:
        current = [0] * n
        right = 0
        for j in reversed(range(n)):
            right = row[j] + max(above[j], right)
            current[j] = right
        above = current
    return int(above[0])


# -- bicrystal ------------------------------------------------------------------------


def _row_signature(A: Matrix, i: int) -> list[tuple[int, int]]:
    """Letters ``i``/``i+1`` of the reading word of the column tensor product, tagged by column."""
    out = []
    for j in range(len(A[0])):
        out += [(j, i + 1)] * A[i][j] + [(j, i)] * A[i - 1][j]
    return out


def matrix_crystal_op(kind: str, i: int, A) -> Matrix | None:
    """Apply ``f``, ``e`` (acting on rows) or ``fhat``, ``ehat`` (acting on columns) to ``A``."""
    A = as_matrix(A)
    if kind in ("fhat", "ehat"):
        out = matrix_crystal_op(kind[0], i, transpose(A))
        return None if out is None else transpose(out)
    if kind not in ("f", "e"):
        raise ValueError(f"unknown operator {kind!r}")
    if not 1 <= i < len(A):
        raise IndexError(f"row operator index {i} out of range for {len(A)} rows")
    sig = _row_signature(A, i)
    free_up, free_i = _bracket([letter for _, letter in sig], i)
    rows = [list(r) for r in A]
    if kind == "f":
        if not free_i:
            return None
        j = sig[free_i[0]][0]
        rows[i - 1][j] -= 1
        rows[i][j] += 1
    else:
        if not free_up:
            return None
        j = sig[free_up[-1]][0]
        rows[i - 1][j] += 1
        rows[i][j] -= 1
    return as_matrix(rows)
