"""Small exact linear algebra over Q(i), enough for basis changes.

Matrices are lists of row lists of GaussianRational.  Sizes stay below ~30
(the dimension of so_n for the ranks we handle), so plain Gauss-Jordan with
exact arithmetic is entirely adequate.
"""

from .scalars import GR_ONE, GR_ZERO, GaussianRational


def identity(n):
    return [[GR_ONE if i == j else GR_ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = GR_ZERO
            for t in range(k):
                if ai[t] and b[t][j]:
                    acc = acc + ai[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = GR_ZERO
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out.append(acc)
    return out


def invert(mat):
    """Exact inverse by Gauss-Jordan; raises ValueError if singular."""
    n = len(mat)
    a = [list(row) for row in mat]
    inv = identity(n)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        if p != GR_ONE:
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r == col or not a[r][col]:
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def nullspace(mat):
    """Basis of the right nullspace, each vector scaled to leading entry 1."""
    if not mat:
        return []
    rows = [list(r) for r in mat]
    n = len(rows[0])
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for k in range(r, len(rows)):
            if rows[k][col]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [GR_ZERO] * n
        v[fc] = GR_ONE
        for ri, pc in enumerate(pivots):
            v[pc] = -rows[ri][fc]
        basis.append(v)
    return basis


def is_zero_vec(v):
    return not any(v)
