"""Gaussian elimination over F_q.

Rows are sequences of integer field codes. Over F_2 rows are additionally
packed into Python ints (column ``c`` of an ``N``-column row lives at bit
``N-1-c``) so elimination is word-level XOR; the leading bit is then the
pivot column.
"""

from __future__ import annotations

from .gf import FieldSpec


def pack_row(row, ncols: int) -> int:
    x = 0
    for c in row:
        x = (x << 1) | (c & 1)
    return x


def unpack_row(x: int, ncols: int) -> tuple[int, ...]:
    return tuple((x >> (ncols - 1 - c)) & 1 for c in range(ncols))


def rank_bits(rows) -> int:
    """Rank of packed F_2 rows."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            h = r.bit_length()
            b = basis.get(h)
            if b is None:
                basis[h] = r
                break
            r ^= b
    return len(basis)


def rref_bits(rows) -> list[int]:
    """Reduced row-echelon form of packed F_2 rows, zero rows dropped.

    Output is sorted by pivot column (highest bit first) and canonical for
    the row span.
    """
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            h = r.bit_length()
            b = basis.get(h)
            if b is None:
                basis[h] = r
                break
            r ^= b
    keys = sorted(basis, reverse=True)
    out = [basis[k] for k in keys]
    for i, k in enumerate(keys):
        bit = 1 << (k - 1)
        for j in range(len(out)):
            if j != i and out[j] & bit:
                out[j] ^= out[i]
    return out


def reduce_bits(x: int, rref_rows) -> int:
    """Residue of packed ``x`` modulo the span of RREF rows."""
    for r in rref_rows:
        if x & (1 << (r.bit_length() - 1)):
            x ^= r
    return x


def rref(field: FieldSpec, rows, ncols: int) -> tuple[list[tuple[int, ...]], list[int]]:
    """Reduced row-echelon form over ``field``; returns (nonzero rows, pivot columns)."""
    if field.q == 2:
        packed = rref_bits(pack_row(r, ncols) for r in rows)
        return [unpack_row(x, ncols) for x in packed], [ncols - x.bit_length() for x in packed]
    return rref_generic(field, rows, ncols)


def rref_generic(field: FieldSpec, rows, ncols: int) -> tuple[list[tuple[int, ...]], list[int]]:
    mat = [list(r) for r in rows]
    add, mul, inv = field.add, field.mul, field.inv
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(mat):
            break
        piv = next((i for i in range(top, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        s = inv(mat[top][col])
        if s != 1:
            mat[top] = [mul(s, x) for x in mat[top]]
        prow = mat[top]
        for i in range(len(mat)):
            c = mat[i][col]
            if i != top and c:
                f = field.neg(c)
                row = mat[i]
                mat[i] = [add(x, mul(f, y)) if y else x for x, y in zip(row, prow)]
        pivots.append(col)
        top += 1
    return [tuple(r) for r in mat[:top]], pivots


def rank(field: FieldSpec, rows, ncols: int) -> int:
    if field.q == 2:
        return rank_bits(pack_row(r, ncols) for r in rows)
    return len(rref(field, rows, ncols)[1])


def solve(field: FieldSpec, columns, rhs) -> list[int] | None:
    """Solve ``sum_j x_j * columns[j] == rhs``; ``None`` when inconsistent.

    When the columns are independent the solution is unique; otherwise the
    free variables are set to zero.
    """
    k = len(columns)
    nrows = len(rhs)
    aug = [[columns[j][i] for j in range(k)] + [rhs[i]] for i in range(nrows)]
    red, pivots = rref(field, aug, k + 1)
    if k in pivots:
        return None
    x = [0] * k
    for row, col in zip(red, pivots):
        x[col] = row[k]
    return x


def combine(field: FieldSpec, coeffs, rows) -> list[tuple[int, ...]]:
    """Matrix product ``coeffs @ rows`` over ``field``."""
    ncols = len(rows[0]) if rows else 0
    out = []
    for crow in coeffs:
        acc = [0] * ncols
        for c, row in zip(crow, rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        acc[j] = field.add(acc[j], field.mul(c, x))
        out.append(tuple(acc))
    return out
