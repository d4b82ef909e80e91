"""Dense kernels over F_p.

Two interchangeable implementations of each hot routine live here: a loop
version compiled with numba and a vectorised numpy version.  The numba path
is used when numba imports and ``DRINFELD_DISABLE_NUMBA`` is unset (or "0").
"""
from __future__ import annotations

import os

import numpy as np

DISABLE_NUMBA = os.environ.get("DRINFELD_DISABLE_NUMBA", "0") not in ("", "0")

try:
    if DISABLE_NUMBA:
        raise ImportError("numba disabled by DRINFELD_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

    def njit(*args, **kw):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# 3-d truncated convolution: axes are (x, t, z)

def _conv3_loops(a, b, p, nrows):
    na, ta, za = a.shape
    nb, tb, zb = b.shape
    out = np.zeros((nrows, ta + tb - 1, za + zb - 1), dtype=np.int64)
    for i in range(na):
        if i >= nrows:
            break
        for k in range(min(nb, nrows - i)):
            for j in range(ta):
                for r in range(za):
                    c = a[i, j, r]
                    if c == 0:
                        continue
                    for l in range(tb):
                        for s in range(zb):
                            d = b[k, l, s]
                            if d != 0:
                                out[i + k, j + l, r + s] += c * d
        # keep the accumulator small for large p
        if p > 7:
            for u in range(out.shape[0]):
                for v in range(out.shape[1]):
                    for w in range(out.shape[2]):
                        out[u, v, w] %= p
    for u in range(out.shape[0]):
        for v in range(out.shape[1]):
            for w in range(out.shape[2]):
                out[u, v, w] %= p
    return out


def _conv3_numpy(a, b, p, nrows):
    na, ta, za = a.shape
    nb, tb, zb = b.shape
    out = np.zeros((nrows, ta + tb - 1, za + zb - 1), dtype=np.int64)
    for i in range(min(na, nrows)):
        rows = min(nb, nrows - i)
        if rows <= 0:
            break
        bi = b[:rows]
        for j, r in zip(*np.nonzero(a[i])):
            out[i:i + rows, j:j + tb, r:r + zb] += a[i, j, r] * bi
        if p > 7:
            out %= p
    return out % p


_conv3_compiled = njit(cache=True)(_conv3_loops) if HAVE_NUMBA else None


def conv3(a: np.ndarray, b: np.ndarray, p: int, nrows: int) -> np.ndarray:
    """Product of two dense (x, t, z) arrays mod p, keeping the first ``nrows`` x-rows."""
    nrows = max(0, min(nrows, a.shape[0] + b.shape[0] - 1))
    if nrows == 0:
        return np.zeros((0, a.shape[1] + b.shape[1] - 1, a.shape[2] + b.shape[2] - 1), dtype=np.int64)
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if _conv3_compiled is not None:
        return _conv3_compiled(a, b, p, nrows)
    return _conv3_numpy(a, b, p, nrows)


# ---------------------------------------------------------------------------
# row reduction mod p

def _rref_loops(m, p, inv):
    m = m.copy()
    rows, cols = m.shape
    pivots = np.full(rows, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        s = inv[m[r, c] % p]
        for j in range(cols):
            m[r, j] = (m[r, j] * s) % p
        for i in range(rows):
            if i != r:
                f = m[i, c] % p
                if f != 0:
                    for j in range(cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots[r] = c
        r += 1
    return m, pivots[:r]


def _rref_numpy(m, p, inv):
    m = m.copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * inv[m[r, c]]) % p
        f = m[:, c].copy()
        f[r] = 0
        m = (m - np.outer(f, m[r])) % p
        pivots.append(c)
        r += 1
    return m, np.array(pivots, dtype=np.int64)


_rref_compiled = njit(cache=True)(_rref_loops) if HAVE_NUMBA else None


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def rref_mod_p(m: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over F_p and the pivot columns."""
    m = np.ascontiguousarray(np.asarray(m, dtype=np.int64) % p)
    if m.size == 0:
        return m, np.zeros(0, dtype=np.int64)
    inv = inverse_table(p)
    if _rref_compiled is not None:
        return _rref_compiled(m, p, inv)
    return _rref_numpy(m, p, inv)


def nullspace_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : m @ v = 0} over F_p."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    red, pivots = rref_mod_p(m, p)
    piv = set(int(c) for c in pivots)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-red[r, fc]) % p
    return basis


def rank_mod_p(m: np.ndarray, p: int) -> int:
    return len(rref_mod_p(m, p)[1])


def solve_mod_p(m: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of m @ v = rhs over F_p, or None."""
    m = np.asarray(m, dtype=np.int64)
    aug = np.concatenate([m, np.asarray(rhs, dtype=np.int64).reshape(-1, 1)], axis=1)
    red, pivots = rref_mod_p(aug, p)
    cols = m.shape[1]
    if len(pivots) and pivots[-1] == cols:
        return None
    v = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        v[pc] = red[r, cols]
    return v
