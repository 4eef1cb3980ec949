"""Exact Gaussian elimination over a FieldSpec.

Matrices are lists of rows of integer-encoded field elements.  Everything
here is deterministic: pivots are always the first nonzero entry scanning
left to right, rows are processed top to bottom.
"""

from __future__ import annotations

from .gf import FieldSpec


def rref(spec: FieldSpec, rows: list[list[int]]):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    m = [r[:] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = spec.inv_i(m[r][c])
        m[r] = [spec.mul_i(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [spec.sub_i(a, spec.mul_i(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def rank(spec: FieldSpec, rows: list[list[int]]) -> int:
    return len(rref(spec, rows)[0])


def nullspace(spec: FieldSpec, rows: list[list[int]]) -> list[list[int]]:
    """Echelonized basis of {x : rows @ x = 0}, free variables in column order."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(spec, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, pc in zip(red, pivots):
            vec[pc] = spec.neg_i(r[f])
        basis.append(vec)
    return basis


def solve(spec: FieldSpec, rows: list[list[int]], rhs: list[int]):
    """One solution x of rows @ x = rhs, or None if inconsistent."""
    if not rows:
        return None
    aug = [r[:] + [v] for r, v in zip(rows, rhs)]
    red, pivots = rref(spec, aug)
    ncols = len(rows[0])
    x = [0] * ncols
    for r, pc in zip(red, pivots):
        if pc == ncols:
            return None
        x[pc] = r[-1]
    return x


def row_space_contains(spec: FieldSpec, outer: list[list[int]],
                       inner: list[list[int]]) -> bool:
    """True iff every row of inner lies in the row space of outer."""
    if not inner:
        return True
    combined = [r[:] for r in outer] + [r[:] for r in inner]
    return rank(spec, outer) == rank(spec, combined)


def row_space_equal(spec: FieldSpec, a: list[list[int]], b: list[list[int]]) -> bool:
    ra, _ = rref(spec, a)
    rb, _ = rref(spec, b)
    return ra == rb


def mat_mul(spec: FieldSpec, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    out = []
    for row in a:
        acc = [0] * len(b[0])
        for x, brow in zip(row, b):
            if x:
                acc = [spec.add_i(t, spec.mul_i(x, v)) for t, v in zip(acc, brow)]
        out.append(acc)
    return out
