"""Exact linear algebra over the rationals.

Fraction-free Gauss-Jordan elimination on integer rows (each rational
row is first scaled by the lcm of its denominators, and rows are divided
by their gcd after every update, which keeps entries small).  Sizes here
are a few hundred rows/columns at most, so asymptotics do not matter;
exactness and predictability do.
"""

from fractions import Fraction
from math import gcd, lcm


def _int_row(row):
    denom = lcm(*(Fraction(v).denominator for v in row)) if row else 1
    out = [int(Fraction(v) * denom) for v in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def _reduce(rows, ncols):
    """In-place fraction-free Gauss-Jordan; returns pivot (row, col) list."""
    pivots = []
    r = 0
    for c in range(ncols):
        best = -1
        for i in range(r, len(rows)):
            if rows[i][c] != 0 and (best == -1 or abs(rows[i][c]) < abs(rows[best][c])):
                best = i
        if best == -1:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r]
        pv = piv[c]
        for i in range(len(rows)):
            if i == r or rows[i][c] == 0:
                continue
            bv = rows[i][c]
            row = [pv * a - bv * b for a, b in zip(rows[i], piv)]
            g = 0
            for v in row:
                g = gcd(g, v)
            rows[i] = [v // g for v in row] if g > 1 else row
        if pv < 0:
            rows[r] = [-v for v in piv]
        pivots.append((r, c))
        r += 1
    del rows[r:]
    return pivots


def nullspace(rows, ncols):
    """Basis of {v : M v = 0} as lists of Fractions (one per free column)."""
    mat = [_int_row(row) for row in rows]
    mat = [row for row in mat if any(row)]
    pivots = _reduce(mat, ncols)
    pivot_cols = {c for (_, c) in pivots}
    basis = []
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for (r, c) in pivots:
            vec[c] = Fraction(-mat[r][fc], mat[r][c])
        basis.append(vec)
    return basis


def solve_affine(rows, rhs):
    """Solve M v = rhs exactly.

    Returns ``(consistent, particular, basis)`` where ``particular`` has
    free coordinates set to zero and ``basis`` spans the homogeneous
    solutions.  On inconsistency returns ``(False, None, [])``.
    """
    if not rows:
        return True, [], []
    ncols = len(rows[0])
    mat = [_int_row(list(row) + [b]) for row, b in zip(rows, rhs)]
    mat = [row for row in mat if any(row)]
    pivots = _reduce(mat, ncols + 1)
    pivot_cols = set()
    for (r, c) in pivots:
        if c == ncols:
            return False, None, []
        pivot_cols.add(c)
    particular = [Fraction(0)] * ncols
    for (r, c) in pivots:
        particular[c] = Fraction(mat[r][ncols], mat[r][c])
    basis = []
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for (r, c) in pivots:
            vec[c] = Fraction(-mat[r][fc], mat[r][c])
        basis.append(vec)
    return True, particular, basis


def rank(rows, ncols=None):
    mat = [_int_row(list(row)) for row in rows]
    mat = [row for row in mat if any(row)]
    if not mat:
        return 0
    if ncols is None:
        ncols = len(mat[0])
    return len(_reduce(mat, ncols))
