"""Exact dense linear algebra over any field-ops object.

The `ops` argument is anything exposing zero/one, add/sub/mul/neg/inv and
is_zero — a FieldSpec or an ExtField.  Matrices are lists of row lists.
"""

from __future__ import annotations


def row_reduce(rows: list, ops):
    """In-place Gauss-Jordan.  Returns (reduced rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not ops.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ops.inv(rows[r][c])
        rows[r] = [ops.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not ops.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [ops.sub(x, ops.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: list, ops) -> int:
    return len(row_reduce(rows, ops)[1])


def kernel_basis(rows: list, ops) -> list:
    """Basis of the right kernel {v : M v = 0}, one vector per free column.

    Deterministic: free columns are visited in increasing index order and
    each basis vector has a 1 in its free column.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = row_reduce(rows, ops)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ops.zero] * ncols
        v[free] = ops.one
        for r, pc in enumerate(pivots):
            v[pc] = ops.neg(reduced[r][free])
        basis.append(v)
    return basis
