"""Finite fields F_q = F_p[z]/(f) and towers F_{q^m} = F_q[w]/(g).

Every element is an integer code: the base-p digits of its coordinates in the
basis z^i w^j (digit index i + e*j).  Elements of the subfield F_q are exactly
the codes below q.  Multiplication and addition go through log/exp/Zech tables
built once per field, so scalar arithmetic on codes is a few list lookups.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._kernels import nullspace_mod_p, rank_mod_p

# Conway-style default moduli for F_q over F_p, coefficients low -> high.
DEFAULT_MODULI = {
    2: {1: (1, 1), 2: (1, 1, 1), 3: (1, 1, 0, 1), 4: (1, 1, 0, 0, 1)},
    3: {1: (1, 1), 2: (2, 2, 1), 3: (1, 2, 0, 1), 4: (2, 0, 0, 2, 1)},
    5: {1: (3, 1), 2: (2, 4, 1), 3: (3, 3, 0, 1), 4: (2, 4, 4, 0, 1)},
    7: {1: (4, 1), 2: (3, 6, 1), 3: (4, 0, 6, 1), 4: (3, 4, 5, 0, 1)},
}

TABLE_CAP = 1 << 20


class FieldError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """A configured size budget (field order, extension degree, precision) was exceeded."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials as lists of field codes (low -> high), used for moduli

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def pl_add(F, a, b):
    n = max(len(a), len(b))
    return _trim([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def pl_sub(F, a, b):
    return pl_add(F, a, [F.neg(c) for c in b])


def pl_mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] = F.add(out[i + j], F.mul(c, d))
    return _trim(out)


def pl_divmod(F, a, b):
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead_inv = F.inv(b[-1])
    db = len(b) - 1
    quo = [0] * max(0, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            f = F.mul(c, lead_inv)
            quo[k - db] = f
            for i, d in enumerate(b):
                if d:
                    a[k - db + i] = F.sub(a[k - db + i], F.mul(f, d))
    return _trim(quo), _trim(a[:db])


def pl_mod(F, a, b):
    return pl_divmod(F, a, b)[1]


def pl_gcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, pl_mod(F, a, b)
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def pl_powmod(F, a, k, m):
    result = [1]
    base = pl_mod(F, a, m)
    while k:
        if k & 1:
            result = pl_mod(F, pl_mul(F, result, base), m)
        base = pl_mod(F, pl_mul(F, base, base), m)
        k >>= 1
    return result


def pl_is_irreducible(F, g) -> bool:
    """Rabin's test for a polynomial over the field F (q = F.order)."""
    g = _trim(list(g))
    n = len(g) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    Q = F.order
    x = [0, 1]
    # x^(Q^n) == x mod g
    h = x
    for _ in range(n):
        h = pl_powmod(F, h, Q, g)
    if _trim(pl_sub(F, h, x)):
        return False
    for r in prime_factors(n):
        h = x
        for _ in range(n // r):
            h = pl_powmod(F, h, Q, g)
        d = pl_gcd(F, pl_sub(F, h, x), g)
        if len(d) > 1:
            return False
    return True


# ---------------------------------------------------------------------------

def _companion(mod, p):
    """Matrix over F_p of multiplication by the variable in F_p[y]/(mod)."""
    d = len(mod) - 1
    M = np.zeros((d, d), dtype=np.int64)
    for i in range(d - 1):
        M[i + 1, i] = 1
    for i in range(d):
        M[i, d - 1] = (-mod[i]) % p
    return M


def _matpow(M, k, p):
    R = np.eye(M.shape[0], dtype=np.int64)
    B = M % p
    while k:
        if k & 1:
            R = (R @ B) % p
        B = (B @ B) % p
        k >>= 1
    return R


class GF:
    """The field F_{q^m} with q = p^e, presented as F_p[z]/(f) then F_q[w]/(g)."""

    def __init__(self, p: int, e: int = 1, f=None, m: int = 1, g=None):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if e < 1 or m < 1:
            raise FieldError("extension degrees must be positive")
        self.p, self.e, self.m = p, e, m
        self.q = p ** e
        self.n = e * m
        self.order = p ** self.n
        if self.order > TABLE_CAP:
            raise ResourceCapError(f"field of order {self.order} exceeds table cap {TABLE_CAP}")
        if e == 1:
            # degree-one moduli all give the same field; keep one canonical key
            f = DEFAULT_MODULI.get(p, {}).get(1, (p - 1, 1))
        if f is None:
            f = DEFAULT_MODULI.get(p, {}).get(e)
            if f is None:
                f = _first_irreducible_fp(p, e)
        self.f = tuple(int(c) % p for c in f)
        if len(self.f) != e + 1 or self.f[-1] != 1:
            raise FieldError(f"modulus {self.f} is not monic of degree {e}")
        if m > 1:
            if g is None:
                g = default_tower_modulus(p, e, self.f, m)
            self.g = tuple(int(c) for c in g)
            if len(self.g) != m + 1 or self.g[-1] != 1:
                raise FieldError(f"tower modulus {self.g} is not monic of degree {m}")
        else:
            self.g = None
        self._build()
        if e > 1 and not _fp_poly_irreducible(p, self.f):
            raise FieldError(f"modulus {self.f} is reducible over F_{p}")
        if m > 1 and not pl_is_irreducible(self.base, self.g):
            raise FieldError(f"tower modulus {self.g} is reducible over F_{self.q}")

    # -- construction -----------------------------------------------------
    def _build(self):
        p, e, m, n = self.p, self.e, self.m, self.n
        Mz_small = _companion(self.f, p) if e > 1 else np.eye(1, dtype=np.int64)
        Mz = np.kron(np.eye(m, dtype=np.int64), Mz_small) % p
        if m > 1:
            # multiplication by w: shifts w-blocks, w^m = -sum g_k w^k
            Mw = np.zeros((n, n), dtype=np.int64)
            for j in range(m - 1):
                Mw[(j + 1) * e:(j + 2) * e, j * e:(j + 1) * e] = np.eye(e, dtype=np.int64)
            for k, gk in enumerate(self.g[:m]):
                dig = _digits(gk, p, e)
                Mg = np.zeros((e, e), dtype=np.int64)
                for i, d in enumerate(dig):
                    if d:
                        Mg = (Mg + d * _matpow(Mz_small, i, p)) % p
                Mw[k * e:(k + 1) * e, (m - 1) * e:m * e] = (-Mg) % p
        else:
            Mw = np.eye(n, dtype=np.int64)
        self._Mz, self._Mw = Mz, Mw
        self._pw = [p ** k for k in range(n)]
        self._pw_arr = np.array(self._pw, dtype=np.int64)
        Q = self.order
        if Q == 2:
            exp = np.array([1], dtype=np.int64)
        else:
            exp = None
            cofactors = [(Q - 1) // r for r in prime_factors(Q - 1)]
            for cand in range(2, Q):
                M = self._matrix_of_digits(_digits(cand, p, n))
                # primitive iff g^((Q-1)/r) != 1 for every prime r | Q-1
                if all(_matpow(M, k, p)[0, 0] != 1 or _matpow(M, k, p)[1:, 0].any() for k in cofactors):
                    exp = self._orbit(M)
                    break
            else:  # pragma: no cover
                raise FieldError("no primitive element found")
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(Q - 1, dtype=np.int64)
        d0 = exp % p
        plus1 = exp - d0 + (d0 + 1) % p
        zech = np.where(plus1 == 0, -1, log[plus1])
        self.exp_arr, self.log_arr, self.zech_arr = exp, log, zech
        self._exp, self._log, self._zech = exp.tolist(), log.tolist(), zech.tolist()
        self._half = (Q - 1) // 2 if p != 2 else 0
        if self.m > 1:
            self.base = get_field(p, e, self.f)
        else:
            self.base = self

    def _matrix_of_digits(self, dig):
        p, e, n = self.p, self.e, self.n
        M = np.zeros((n, n), dtype=np.int64)
        Zi = np.eye(n, dtype=np.int64)
        for i in range(e):
            Wj = Zi.copy()
            for j in range(self.m):
                d = dig[i + e * j]
                if d:
                    M = (M + d * Wj) % p
                Wj = (self._Mw @ Wj) % p
            Zi = (self._Mz @ Zi) % p
        return M

    def _orbit(self, M):
        """Codes of g^0, g^1, ..., g^(Q-2) where M is multiplication by g."""
        p, Q = self.p, self.order
        V = np.zeros((self.n, 1), dtype=np.int64)
        V[0, 0] = 1
        step = M.copy()
        while V.shape[1] < Q - 1:
            V = np.concatenate([V, (step @ V) % p], axis=1)
            step = (step @ step) % p
        V = V[:, :Q - 1]
        return self._pw_arr @ V

    # -- scalar arithmetic on codes ----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.order - 1)]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[(self._log[a] + self._half) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a^(q^k)."""
        return self.pow(a, pow(self.q, k, self.order - 1) if self.order > 2 else 1)

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[a]

    def gen_power(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def from_int(self, c: int) -> int:
        return c % self.p

    def in_base(self, a: int) -> bool:
        return a < self.q

    def elements(self):
        return range(self.order)

    def units(self):
        return range(1, self.order)

    def base_units(self):
        return range(1, self.q)

    # -- F_p-linear structure -----------------------------------------------
    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.n)

    def from_digits(self, dig) -> int:
        return int(sum(int(d) % self.p * w for d, w in zip(dig, self._pw)))

    def codes_from_digit_rows(self, rows: np.ndarray) -> np.ndarray:
        return (np.asarray(rows, dtype=np.int64) % self.p) @ self._pw_arr

    def mul_matrix(self, a: int) -> np.ndarray:
        """F_p-matrix of x -> a*x in the digit basis (columns are images of basis vectors)."""
        return self._matrix_of_digits(self.digits(a))

    def frob_matrix(self, k: int = 1) -> np.ndarray:
        cols = [self.digits(self.frob(w, k)) for w in self._pw]
        return np.array(cols, dtype=np.int64).T

    # -- vectorised helpers ----------------------------------------------------
    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        la = self.log_arr[np.where(nz, a, 1)]
        lb = self.log_arr[np.where(nz, b, 1)]
        out[nz] = self.exp_arr[((la + lb) % (self.order - 1))[nz]]
        return out

    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pw:
            out += (((a // w) % p + (b // w) % p) % p) * w
        return out

    # -- misc ------------------------------------------------------------------
    def elem(self, code: int) -> "FieldElem":
        return FieldElem(self, code)

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def from_fq(self, c: int) -> "FieldElem":
        return FieldElem(self, c)

    @property
    def key(self):
        return (self.p, self.e, self.f, self.m, self.g)

    def __eq__(self, other):
        return isinstance(other, GF) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.q})"
        return f"GF({self.q}^{self.m})"

    def describe(self) -> dict:
        d = {"p": self.p, "e": self.e, "modulus": list(self.f)}
        if self.m > 1:
            d["tower"] = {"m": self.m, "modulus": list(self.g)}
        return d


def _digits(a: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _fp_poly_irreducible(p, f) -> bool:
    return pl_is_irreducible(prime_field(p), list(f))


def _first_irreducible_fp(p, e):
    F = prime_field(p)
    for code in range(p ** e):
        g = _digits(code, p, e) + [1]
        if g[0] != 0 and pl_is_irreducible(F, g):
            return tuple(g)
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return get_field(p)


@lru_cache(maxsize=None)
def default_tower_modulus(p: int, e: int, f: tuple, m: int) -> tuple:
    """Lexicographically first monic irreducible of degree m over F_q with nonzero constant term."""
    F = get_field(p, e, f)
    q = F.q
    for code in range(q ** m):
        g = _digits(code, q, m) + [1]
        if g[0] != 0 and pl_is_irreducible(F, g):
            return tuple(g)
    raise FieldError("no irreducible tower modulus")  # pragma: no cover


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1, f: tuple | None = None, m: int = 1, g: tuple | None = None) -> GF:
    """Cached field constructor; identical parameters share one table set."""
    if e == 1:
        f = DEFAULT_MODULI.get(p, {}).get(1, (p - 1, 1))
    elif f is None:
        f = DEFAULT_MODULI.get(p, {}).get(e)
    return GF(p, e, f, m, g)


def fq(q: int, f: tuple | None = None) -> GF:
    """F_q from its order."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                break
            return get_field(p, e, f)
    raise FieldError(f"{q} is not a prime power")


def extension(F: GF, m: int, g: tuple | None = None) -> GF:
    """F_{q^m} over the base field of F (which must have m == 1)."""
    if F.m != 1:
        raise FieldError("towers are built over the base field F_q")
    if m == 1:
        return F
    return get_field(F.p, F.e, F.f, m, g)


def embedding(K: GF, L: GF) -> list[int]:
    """Images in L of the F_p-basis digits of K, for an F_q-embedding K -> L.

    Both fields must share the base F_q and K.m must divide L.m.  The image of
    w is the smallest-code root of K's tower modulus inside L.
    """
    if (K.p, K.e, K.f) != (L.p, L.e, L.f):
        raise FieldError("fields do not share a base")
    if L.m % K.m:
        raise FieldError(f"F_q^{K.m} does not embed in F_q^{L.m}")
    if K.m == 1:
        return list(L._pw[:K.e])
    sub_step = (L.order - 1) // (K.order - 1)
    root = None
    for k in range(K.order - 1):
        r = L.gen_power(k * sub_step)
        acc = 0
        for c in reversed(K.g):
            acc = L.add(L.mul(acc, r), c)
        if acc == 0 and (root is None or r < root):
            root = r
    if root is None:  # pragma: no cover
        raise FieldError("tower modulus has no root in the larger field")
    images = []
    rj = 1
    for j in range(K.m):
        for i in range(K.e):
            images.append(L.mul(L._pw[i], rj))
        rj = L.mul(rj, root)
    return images


class Embedding:
    """F_q-linear field embedding K -> L given on the F_p digit basis."""

    def __init__(self, K: GF, L: GF):
        self.K, self.L = K, L
        self.images = embedding(K, L)
        M = np.array([L.digits(c) for c in self.images], dtype=np.int64).T
        self.matrix = M
        self._cache: dict[int, int] = {}

    def __call__(self, a: int) -> int:
        r = self._cache.get(a)
        if r is None:
            dig = np.array(self.K.digits(a), dtype=np.int64)
            r = self.L.from_digits((self.matrix @ dig) % self.L.p)
            self._cache[a] = r
        return r


class FieldElem:
    """An element of a finite field, wrapping its integer code."""

    __slots__ = ("parent", "code")

    def __init__(self, parent: GF, code: int):
        self.parent = parent
        self.code = int(code)

    def _c(self, other):
        if isinstance(other, FieldElem):
            if other.parent is not self.parent and other.parent != self.parent:
                raise FieldError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.parent.from_int(other)
        return NotImplemented

    def __add__(self, other):
        c = self._c(other)
        if c is NotImplemented:
            return c
        return FieldElem(self.parent, self.parent.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._c(other)
        if c is NotImplemented:
            return c
        return FieldElem(self.parent, self.parent.sub(self.code, c))

    def __rsub__(self, other):
        c = self._c(other)
        if c is NotImplemented:
            return c
        return FieldElem(self.parent, self.parent.sub(c, self.code))

    def __mul__(self, other):
        c = self._c(other)
        if c is NotImplemented:
            return c
        return FieldElem(self.parent, self.parent.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._c(other)
        if c is NotImplemented:
            return c
        return FieldElem(self.parent, self.parent.div(self.code, c))

    def __rtruediv__(self, other):
        c = self._c(other)
        if c is NotImplemented:
            return c
        return FieldElem(self.parent, self.parent.div(c, self.code))

    def __neg__(self):
        return FieldElem(self.parent, self.parent.neg(self.code))

    def __pow__(self, k: int):
        return FieldElem(self.parent, self.parent.pow(self.code, k))

    def inverse(self):
        return FieldElem(self.parent, self.parent.inv(self.code))

    def frob(self, k: int = 1):
        return FieldElem(self.parent, self.parent.frob(self.code, k))

    def is_zero(self) -> bool:
        return self.code == 0

    def is_unit(self) -> bool:
        return self.code != 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.code == other.code and self.parent == other.parent
        if isinstance(other, int):
            return self.code == self.parent.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.parent.key, self.code))

    def __repr__(self):
        return f"{self.parent!r}({self.code})"

    def digits(self) -> list[int]:
        return self.parent.digits(self.code)


def fp_rank(rows, p) -> int:
    return rank_mod_p(np.asarray(rows, dtype=np.int64), p)


def fp_nullspace(m, p):
    return nullspace_mod_p(np.asarray(m, dtype=np.int64), p)
