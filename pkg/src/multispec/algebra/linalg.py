"""Dense linear algebra over a field on raw values."""

from __future__ import annotations

from . import dense


def charpoly(F, M):
    """Characteristic polynomial det(T*I - M), monic, raw coefficients constant first.

    Reduces to upper Hessenberg form by similarity transforms and then runs
    the usual three-term recurrence; only field operations are used, so the
    result is exact in any characteristic.
    """
    n = len(M)
    if n == 0:
        return [F.one]
    H = [list(row) for row in M]
    z = F.zero
    add, sub, mul, div = F.add, F.sub, F.mul, F.div
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if H[i][m - 1] != z:
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        pivot = H[m][m - 1]
        for i in range(m + 1, n):
            if H[i][m - 1] == z:
                continue
            u = div(H[i][m - 1], pivot)
            Hi, Hm = H[i], H[m]
            for j in range(n):
                if Hm[j] != z:
                    Hi[j] = sub(Hi[j], mul(u, Hm[j]))
            for row in H:
                if row[i] != z:
                    row[m] = add(row[m], mul(u, row[i]))
    polys = [[F.one]]
    for m in range(1, n + 1):
        cur = dense.mul(F, [F.neg(H[m - 1][m - 1]), F.one], polys[m - 1])
        t = F.one
        for i in range(1, m):
            t = mul(t, H[m - i][m - i - 1])
            if t == z:
                break
            c = mul(t, H[m - i - 1][m - 1])
            if c != z:
                cur = dense.sub(F, cur, dense.scale(F, polys[m - i - 1], c))
        polys.append(cur)
    return polys[n]


def determinant(F, M):
    """Determinant by Gaussian elimination."""
    n = len(M)
    A = [list(row) for row in M]
    det = F.one
    z = F.zero
    for c in range(n):
        piv = None
        for r in range(c, n):
            if A[r][c] != z:
                piv = r
                break
        if piv is None:
            return z
        if piv != c:
            A[piv], A[c] = A[c], A[piv]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for r in range(c + 1, n):
            if A[r][c] != z:
                u = F.mul(A[r][c], inv)
                for k in range(c, n):
                    A[r][k] = F.sub(A[r][k], F.mul(u, A[c][k]))
    return det


def nullspace(F, rows, ncols):
    """Basis of {x : A x = 0} for A given by ``rows``; each vector normalized
    so its last pivot-free coordinate is 1."""
    A = [list(r) for r in rows]
    z = F.zero
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c] != z:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != z:
                u = A[i][c]
                A[i] = [F.sub(x, F.mul(u, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [z] * ncols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(A[i][fc])
        basis.append(v)
    return basis


def multiplication_matrix(F, g, f):
    """Matrix of h -> g*h on F[z]/(f) in the basis 1, z, ..., z^(n-1); f monic."""
    n = len(f) - 1
    col = dense.rem(F, g, f)
    cols = []
    for _ in range(n):
        cols.append(col + [F.zero] * (n - len(col)))
        col = dense.rem(F, dense.shift(F, col, 1), f)
    return [[cols[c][r] for c in range(n)] for r in range(n)]
