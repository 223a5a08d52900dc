"""Exact linear algebra over the rationals for label-indexed sparse matrices.

The solver is a plain Gauss-Jordan elimination.  Rows are scaled to primitive
integer vectors internally so that elimination stays in exact integer
arithmetic; results are reported as ``Fraction`` values with unit pivots.
Performance beyond a few hundred columns is a non-goal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Sequence, Tuple

Row = List[Fraction]


@dataclass
class LabeledMatrix:
    """A sparse rational matrix whose rows and columns carry opaque labels.

    ``entries`` maps ``(row_label, col_label)`` to a nonzero Fraction.  The
    label tuples fix the row and column order; rows are typically discovered
    dynamically by the caller and sorted before construction.
    """

    row_labels: Tuple[Hashable, ...]
    col_labels: Tuple[Hashable, ...]
    entries: Dict[Tuple[Hashable, Hashable], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")
        rows = set(self.row_labels)
        cols = set(self.col_labels)
        for (r, c), v in self.entries.items():
            if r not in rows or c not in cols:
                raise ValueError("entry (%r, %r) outside the declared labels" % (r, c))
            if v == 0:
                raise ValueError("stored entries must be nonzero")

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.row_labels), len(self.col_labels))

    def dense_rows(self) -> List[Row]:
        """All rows as dense Fraction lists, zero rows included."""
        out = []
        for r in self.row_labels:
            out.append([self.entries.get((r, c), Fraction(0)) for c in self.col_labels])
        return out


def _primitive_int_row(row: Sequence[Fraction]):
    """Scale a rational row to a primitive integer row; None if zero."""
    if not any(row):
        return None
    den = 1
    for x in row:
        if x:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [x.numerator * (den // x.denominator) for x in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form with unit pivots.

    Returns the nonzero reduced rows (ordered by pivot column) and the pivot
    column indices.  Deterministic: the first row with a nonzero entry in the
    current column is chosen as pivot.
    """
    work = []
    for row in rows:
        ints = _primitive_int_row(row)
        if ints is not None:
            work.append(ints)
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        p = prow[c]
        for i in range(len(work)):
            if i == r:
                continue
            q = work[i][c]
            if not q:
                continue
            newrow = [a * p - b * q for a, b in zip(work[i], prow)]
            g = 0
            for v in newrow:
                g = math.gcd(g, v)
            if g > 1:
                newrow = [v // g for v in newrow]
            work[i] = newrow
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    reduced = []
    for row, c in zip(work[:r], pivots):
        p = row[c]
        reduced.append([Fraction(v, p) for v in row])
    return reduced, pivots


def rows_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a dense list of rational rows."""
    return len(_rref(rows)[1])


def rank(m: LabeledMatrix) -> int:
    """Exact rank of a labeled matrix."""
    return rows_rank(m.dense_rows())


def kernel_basis(m: LabeledMatrix) -> Tuple[Dict[Hashable, Fraction], ...]:
    """Canonical basis of the right kernel, as sparse coefficient vectors.

    Each vector maps column labels to nonzero Fractions.  The basis is the
    reduced echelon basis of the kernel subspace over the column order: every
    vector has a unit pivot coefficient and zeros above and below the pivots
    of the other vectors, which makes the output unique and deterministic.
    Exactness contract: ``m @ v == 0`` holds with no tolerance.
    """
    cols = m.col_labels
    n = len(cols)
    if n == 0:
        return ()
    reduced, pivots = _rref(m.dense_rows())
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    if not free:
        return ()
    vectors: List[Row] = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            coef = reduced[i][f]
            if coef:
                v[p] = -coef
        vectors.append(v)
    canonical, _ = _rref(vectors)
    return tuple(
        {cols[j]: val for j, val in enumerate(row) if val}
        for row in canonical
    )


def matvec(m: LabeledMatrix, v: Dict[Hashable, Fraction]) -> Dict[Hashable, Fraction]:
    """Apply the matrix to a coefficient vector over the column labels."""
    acc: Dict[Hashable, Fraction] = {}
    for (r, c), value in m.entries.items():
        coef = v.get(c)
        if coef:
            acc[r] = acc.get(r, Fraction(0)) + value * coef
    return {r: val for r, val in acc.items() if val != 0}
