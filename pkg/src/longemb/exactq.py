"""Exact rational linear algebra on sparse matrices.

Rationals are :class:`fractions.Fraction`; matrices store only nonzero
entries.  Rank is computed by fraction-free elimination on integer rows
(each row is scaled to primitive integers first, which does not change
the rank), choosing sparse pivots.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Tuple

Rational = Fraction

__all__ = [
    "Rational",
    "SparseMatrix",
    "RowSpace",
    "rank",
    "kernel_dim",
    "dense_rank",
]


class SparseMatrix:
    """Immutable sparse matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[Tuple[int, int, object]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        data: Dict[Tuple[int, int], Fraction] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = Fraction(v)
            if (r, c) in data:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            if v:
                data[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_dict(cls, rows: int, cols: int, data: Dict[Tuple[int, int], object]) -> "SparseMatrix":
        return cls(rows, cols, ((r, c, v) for (r, c), v in data.items()))

    @classmethod
    def from_dense(cls, dense: List[List[object]]) -> "SparseMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, ((i, j, v) for i, row in enumerate(dense) for j, v in enumerate(row) if v))

    @property
    def entries(self) -> List[Tuple[int, int, Fraction]]:
        return [(r, c, v) for (r, c), v in sorted(self._data.items())]

    @property
    def nnz(self) -> int:
        return len(self._data)

    def get(self, r: int, c: int) -> Fraction:
        return self._data.get((r, c), Fraction(0))

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, ((c, r, v) for (r, c), v in self._data.items()))

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (r, k), v in self._data.items():
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMatrix.from_dict(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # triplet text format: "rows cols nnz" then "row col num/den" lines
    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for r, c, v in self.entries:
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseMatrix":
        lines = text.strip("\n").split("\n")
        try:
            rows, cols, nnz = (int(x) for x in lines[0].split())
        except (ValueError, IndexError) as exc:
            raise ValueError("malformed matrix header") from exc
        body = lines[1:] if nnz else []
        if len(body) != nnz:
            raise ValueError(f"expected {nnz} entries, found {len(body)}")
        entries = []
        for line in body:
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"malformed matrix line {line!r}")
            entries.append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
        return cls(rows, cols, entries)


def _primitive_int_row(row: Dict[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {c: int(Fraction(v) * den) for c, v in row.items() if v}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _rank_int_rows(rows: List[Dict[int, int]]) -> int:
    # Pivot rows are stored keyed by pivot column.  A pivot row never
    # contains the pivot column of an older pivot, so eliminating pivot
    # columns oldest-first terminates.
    pivots: Dict[int, Tuple[int, Dict[int, int]]] = {}
    rows = sorted((r for r in rows if r), key=len)
    for row in rows:
        row = dict(row)
        heap = [(pivots[c][0], c) for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            b = row.get(c)
            if not b:
                continue
            _, prow = pivots[c]
            a = prow[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                for k in row:
                    row[k] *= fa
            for k, v in prow.items():
                nv = row.get(k, 0) - fb * v
                if nv:
                    if k not in row and k in pivots:
                        heapq.heappush(heap, (pivots[k][0], k))
                    row[k] = nv
                else:
                    row.pop(k, None)
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for k in row:
                        row[k] //= g
        if row:
            # prefer a unit pivot, then the sparsest-looking column
            col = min(row, key=lambda k: (abs(row[k]) != 1, abs(row[k]), k))
            pivots[col] = (len(pivots), row)
    return len(pivots)


def rank(mat: SparseMatrix) -> int:
    """Exact rank over Q."""
    if mat.nnz == 0:
        return 0
    # eliminating along the shorter side keeps the pivot dictionary small
    m = mat if mat.rows >= mat.cols else mat.transpose()
    return _rank_int_rows([_primitive_int_row(r) for r in m.row_dicts()])


def kernel_dim(mat: SparseMatrix) -> int:
    return mat.cols - rank(mat)


def dense_rank(dense: List[List[object]]) -> int:
    """Plain Gaussian elimination over Fractions (small matrices only)."""
    m = [[Fraction(v) for v in row] for row in dense]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


class RowSpace:
    """Growing subspace of Q^N with normal forms modulo the subspace.

    Pivot rows are scaled to have pivot 1.  ``reduce`` returns the unique
    representative supported away from pivot columns, so two vectors are
    congruent modulo the span exactly when their reductions agree.
    """

    def __init__(self) -> None:
        self._pivots: Dict[int, Tuple[int, Dict[int, Fraction]]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    @property
    def pivot_columns(self) -> List[int]:
        return sorted(self._pivots)

    def reduce(self, vec: Dict[int, object]) -> Dict[int, Fraction]:
        row = {c: Fraction(v) for c, v in vec.items() if v}
        pivots = self._pivots
        heap = [(pivots[c][0], c) for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            b = row.get(c)
            if not b:
                continue
            prow = pivots[c][1]
            for k, v in prow.items():
                nv = row.get(k, 0) - b * v
                if nv:
                    if k not in row and k in pivots:
                        heapq.heappush(heap, (pivots[k][0], k))
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, vec: Dict[int, object]) -> bool:
        """Add a vector; return True if it enlarged the span."""
        row = self.reduce(vec)
        if not row:
            return False
        col = min(row, key=lambda k: (len(str(row[k])), k))
        a = row[col]
        if a != 1:
            row = {k: v / a for k, v in row.items()}
        self._pivots[col] = (len(self._pivots), row)
        return True


def matrix_from_columns(nrows: int, columns: List[Dict[int, object]]) -> SparseMatrix:
    """Build a matrix whose j-th column is the sparse vector ``columns[j]``."""
    entries = []
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                entries.append((i, j, v))
    return SparseMatrix(nrows, len(columns), entries)
