"""Small dense linear algebra over a finite field (matrices of codes)."""
from __future__ import annotations

from .fields import GF


def rref(F: GF, M):
    """Reduced row echelon form and pivot columns of a list-of-lists matrix."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    piv = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        k = next((i for i in range(r, rows) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, a) for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    return A, piv


def rank(F: GF, M) -> int:
    return len(rref(F, M)[1]) if M else 0


def det(F: GF, M) -> int:
    A = [list(r) for r in M]
    n = len(A)
    d = 1
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c]), None)
        if k is None:
            return 0
        if k != c:
            A[c], A[k] = A[k], A[c]
            d = F.neg(d)
        d = F.mul(d, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[c])]
    return d


def solve(F: GF, M, b):
    """One solution x of M x = b, or None."""
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    ncols = len(M[0]) if M else 0
    R, piv = rref(F, aug)
    if piv and piv[-1] == ncols:
        return None
    x = [0] * ncols
    for i, c in enumerate(piv):
        x[c] = R[i][ncols]
    return x


def nullspace(F: GF, M, ncols: int | None = None):
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(F, M)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][fc])
        out.append(v)
    return out


def matmul(F: GF, A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(k):
            a = A[i][j]
            if a:
                row = B[j]
                o = out[i]
                for l in range(m):
                    if row[l]:
                        o[l] = F.add(o[l], F.mul(a, row[l]))
    return out
