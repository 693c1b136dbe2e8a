"""Exact dense linear algebra over a Field.

Matrices are tuples of row tuples, vectors are tuples.  Everything is
field-parameterized and deterministic: Gaussian elimination always picks the
first nonzero pivot.
"""

from __future__ import annotations

from .scalars import Field, Poly


def identity(n: int, field: Field):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def zero_matrix(rows: int, cols: int, field: Field):
    return tuple(tuple(field.zero for _ in range(cols)) for _ in range(rows))


def scalar_matrix(c, n: int, field: Field):
    return tuple(
        tuple(c if i == j else field.zero for j in range(n)) for i in range(n)
    )


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_add(a, b, field: Field):
    return tuple(
        tuple(field.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(a, b, field: Field):
    return tuple(
        tuple(field.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(c, a, field: Field):
    return tuple(tuple(field.mul(c, x) for x in row) for row in a)


def mat_mul(a, b, field: Field):
    # plain ring arithmetic works for both reduced ints and Fractions; reduce once
    bt = transpose(b)
    if field.kind == "Fp":
        p = field.p
        return tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
        )
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a, v, field: Field):
    if field.kind == "Fp":
        p = field.p
        return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u, v, field: Field):
    return tuple(field.add(x, y) for x, y in zip(u, v))


def vec_sub(u, v, field: Field):
    return tuple(field.sub(x, y) for x, y in zip(u, v))


def vec_scale(c, v, field: Field):
    return tuple(field.mul(c, x) for x in v)


def is_zero_vec(v, field: Field) -> bool:
    return all(field.is_zero(x) for x in v)


def mat_pow(a, e: int, field: Field):
    n = len(a)
    acc = identity(n, field)
    base = a
    while e:
        if e & 1:
            acc = mat_mul(acc, base, field)
        base = mat_mul(base, base, field)
        e >>= 1
    return acc


def _row_reduce(rows, field: Field):
    """In-place style row reduction; returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m, field: Field) -> int:
    if not m:
        return 0
    _, pivots = _row_reduce(m, field)
    return len(pivots)


def det(m, field: Field):
    n = len(m)
    rows = [list(r) for r in m]
    d = field.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            d = field.neg(d)
        d = field.mul(d, rows[c][c])
        inv = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if field.is_zero(rows[i][c]):
                continue
            f = field.mul(rows[i][c], inv)
            rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return d


def inverse(m, field: Field):
    n = len(m)
    aug = [list(m[i]) + list(identity(n, field)[i]) for i in range(n)]
    red, pivots = _row_reduce(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def solve(a, b, field: Field):
    """One solution x of a x = b, or None if inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    aug = [list(a[i]) + [b[i]] for i in range(nrows)]
    red, pivots = _row_reduce(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return tuple(x)


def kernel_basis(m, field: Field):
    """Basis of {v : m v = 0}, deterministic (free columns in order)."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if nrows == 0:
        return [
            tuple(field.one if i == j else field.zero for i in range(ncols))
            for j in range(ncols)
        ]
    red, pivots = _row_reduce(m, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(tuple(v))
    return basis


def express_in_span(vectors, w, field: Field):
    """Coefficients c with sum c_i vectors[i] = w, or None if w is outside."""
    if not vectors:
        return None if not is_zero_vec(w, field) else ()
    a = transpose(vectors)
    return solve(a, w, field)


def poly_at_matrix(f: Poly, m, field: Field):
    n = len(m)
    acc = zero_matrix(n, n, field)
    for c in reversed(f.coeffs):
        acc = mat_add(mat_mul(acc, m, field), scalar_matrix(c, n, field), field)
    return acc


def columns(m):
    return [tuple(row[j] for row in m) for j in range(len(m[0]))] if m else []


def from_columns(cols):
    return tuple(tuple(col[i] for col in cols) for i in range(len(cols[0])))
