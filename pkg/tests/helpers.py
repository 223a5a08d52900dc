"""Independent dense elimination used to cross-check the package solver.

The package eliminates fraction-free over primitive integer rows; these
helpers are a deliberately different textbook Gauss-Jordan over Fractions
with pivot division.  Agreement between the two on kernels, ranks, and row
spans is what the cross-check tests assert.
"""

from fractions import Fraction


def dense_rref(rows):
    """Reduced row echelon form: (nonzero reduced rows, pivot columns)."""
    work = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    pr = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        pivot_row = None
        for r in range(pr, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[pr], work[pivot_row] = work[pivot_row], work[pr]
        scale = work[pr][col]
        work[pr] = [v / scale for v in work[pr]]
        for r in range(len(work)):
            if r != pr and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[pr])]
        pivots.append(col)
        pr += 1
        if pr == len(work):
            break
    return [row for row in work if any(row)], pivots


def dense_rank(rows):
    return len(dense_rref(rows)[0])


def dense_nullspace(rows, ncols):
    """Canonical reduced-echelon basis of {v : rows @ v = 0}, as dense rows."""
    if ncols == 0:
        return []
    reduced, pivots = dense_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    vectors = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        vectors.append(v)
    return dense_rref(vectors)[0]


def same_row_span(rows_a, rows_b):
    """Row-space equality, via uniqueness of the reduced echelon form."""
    return dense_rref(rows_a)[0] == dense_rref(rows_b)[0]


def labeled_dense(m):
    """Dense rows of a LabeledMatrix, reading only its raw entry data."""
    return [[m.entries.get((r, c), Fraction(0)) for c in m.col_labels]
            for r in m.row_labels]
