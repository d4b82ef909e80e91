"""Truncated Laurent series in x over F_q, A = F_q[t] or A/(n).

A series is x^v * (c_0 + c_1 x + ...) known modulo x^N.  Coefficients are kept
dense in an int64 array of shape (rows, T, e): row i is the coefficient of
x^(v+i), axis 1 the power of t, axis 2 the F_p-digits of an F_q element.
``prec=None`` marks an exact series (finitely many terms, nothing unknown).
The zero series has ``val=None`` and still carries its precision.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .fields import GF, FieldElem, FieldError
from .poly import ModElem, Poly, PolyRing, QuotientRing

KINDS = ("Fq", "A", "A/n")


class PrecisionError(ArithmeticError):
    """A requested digit lies at or beyond the known precision."""


def _minp(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class SeriesRing:
    """R((x)) for R one of F_q, A = F_q[t] or A/(n)."""

    def __init__(self, field: GF, kind: str = "A", modulus: Poly | None = None, var: str = "x"):
        if field.m != 1:
            raise FieldError("series coefficients live over the base field F_q")
        if kind not in KINDS:
            raise ValueError(f"unknown coefficient ring {kind!r}")
        self.field = field
        self.kind = kind
        self.var = var
        self.p, self.e, self.q = field.p, field.e, field.q
        self.poly_ring = PolyRing(field)
        self.quotient = None
        if kind == "A/n":
            if modulus is None:
                raise ValueError("A/n series need a modulus")
            self.quotient = QuotientRing(modulus)
            n = self.quotient.modulus
            self._nmats = [field.mul_matrix(c) for c in n.coeffs[:-1]]
            self._ndeg = n.degree
        self._fneg = np.array([(-c) % self.p for c in field.f[:self.e]], dtype=np.int64)
        self._fq_mats: dict[int, np.ndarray] = {}

    # -- coefficient conversions ------------------------------------------------
    def _fq_digits(self, c: int) -> np.ndarray:
        return np.array(self.field.digits(c), dtype=np.int64)

    def coeff_to_array(self, c) -> np.ndarray:
        """(T, e) digit array for a coefficient-ring element."""
        if isinstance(c, FieldElem):
            c = c.code
        if isinstance(c, ModElem):
            c = c.value
        if isinstance(c, int):
            return self._fq_digits(c).reshape(1, self.e)
        if isinstance(c, Poly):
            if self.kind == "Fq" and c.degree > 0:
                raise FieldError("polynomial coefficient in an F_q-series")
            if self.kind == "A/n":
                c = c % self.quotient.modulus
            if c.is_zero():
                return np.zeros((1, self.e), dtype=np.int64)
            return np.array([self.field.digits(a) for a in c.coeffs], dtype=np.int64)
        raise TypeError(f"cannot use {type(c).__name__} as a series coefficient")

    def array_to_coeff(self, arr: np.ndarray):
        F = self.field
        codes = [F.from_digits(row) for row in arr]
        if self.kind == "Fq":
            return codes[0] if codes else 0
        poly = Poly(self.poly_ring, codes)
        if self.kind == "A/n":
            return ModElem(self.quotient, poly)
        return poly

    def fq_matrix(self, c: int) -> np.ndarray:
        M = self._fq_mats.get(c)
        if M is None:
            M = self.field.mul_matrix(c)
            self._fq_mats[c] = M
        return M

    # -- reductions -----------------------------------------------------------------
    def reduce_z(self, arr: np.ndarray) -> np.ndarray:
        """Reduce a digit axis of length up to 2e-1 modulo f."""
        e, p = self.e, self.p
        L = arr.shape[-1]
        if L <= e:
            if L < e:
                pad = np.zeros(arr.shape[:-1] + (e - L,), dtype=np.int64)
                arr = np.concatenate([arr, pad], axis=-1)
            return arr % p
        arr = arr % p
        for k in range(L - 1, e - 1, -1):
            lead = arr[..., k:k + 1]
            arr[..., k - e:k] = (arr[..., k - e:k] + lead * self._fneg) % p
        return arr[..., :e]

    def reduce_t(self, arr: np.ndarray) -> np.ndarray:
        if self.kind != "A/n":
            return arr
        d, p = self._ndeg, self.p
        T = arr.shape[1]
        if T <= d:
            return arr
        arr = arr.copy()
        for j in range(T - 1, d - 1, -1):
            lead = arr[:, j, :]
            if not lead.any():
                continue
            for i, M in enumerate(self._nmats):
                arr[:, j - d + i, :] = (arr[:, j - d + i, :] - lead @ M.T) % p
            arr[:, j, :] = 0
        return arr[:, :d, :]

    # -- constructors ----------------------------------------------------------------
    def make(self, val, prec, arr) -> "TruncSeries":
        return TruncSeries._normalize(self, val, prec, arr)

    def zero(self, prec=None) -> "TruncSeries":
        return TruncSeries(self, None, prec, np.zeros((0, 1, self.e), dtype=np.int64))

    def const(self, c, prec=None) -> "TruncSeries":
        arr = self.coeff_to_array(c)
        return self.make(0, prec, arr.reshape((1,) + arr.shape))

    def one(self) -> "TruncSeries":
        return self.const(1)

    def from_fq(self, c: int) -> "TruncSeries":
        return self.const(int(c))

    def x(self, k: int = 1) -> "TruncSeries":
        return self.one().shift(k)

    def t(self) -> "TruncSeries":
        if self.kind == "Fq":
            raise FieldError("no t in an F_q-series ring")
        return self.const(Poly(self.poly_ring, [0, 1]))

    def series(self, coeffs, val: int = 0, prec=None) -> "TruncSeries":
        """From a list of coefficient-ring elements for x^val, x^(val+1), ..."""
        if not coeffs:
            return self.zero(prec)
        arrs = [self.coeff_to_array(c) for c in coeffs]
        T = max(a.shape[0] for a in arrs)
        out = np.zeros((len(arrs), T, self.e), dtype=np.int64)
        for i, a in enumerate(arrs):
            out[i, :a.shape[0]] = a
        return self.make(val, prec, out)

    def __eq__(self, other):
        return (isinstance(other, SeriesRing) and self.field == other.field and self.kind == other.kind
                and self.quotient == other.quotient and self.var == other.var)

    def __hash__(self):
        return hash((self.field, self.kind, self.var))

    def __repr__(self):
        base = {"Fq": repr(self.field), "A": f"{self.field!r}[t]",
                "A/n": repr(self.quotient)}[self.kind]
        return f"{base}(({self.var}))"


class TruncSeries:
    """Immutable truncated Laurent series; see the module docstring for the layout."""

    __slots__ = ("ring", "val", "prec", "c")

    def __init__(self, ring: SeriesRing, val, prec, arr):
        self.ring = ring
        self.val = val
        self.prec = prec
        self.c = arr

    # -- normal form -----------------------------------------------------------------
    @staticmethod
    def _normalize(ring, start, prec, arr) -> "TruncSeries":
        arr = ring.reduce_t(np.asarray(arr, dtype=np.int64) % ring.p)
        if prec is not None:
            arr = arr[:max(0, prec - start)]
        rows = np.flatnonzero(arr.reshape(arr.shape[0], -1).any(axis=1)) if arr.size else np.array([], dtype=np.int64)
        if rows.size == 0:
            return TruncSeries(ring, None, prec, np.zeros((0, 1, ring.e), dtype=np.int64))
        first, last = int(rows[0]), int(rows[-1])
        arr = arr[first:last + 1]
        tcols = np.flatnonzero(arr.any(axis=(0, 2)))
        arr = arr[:, :int(tcols[-1]) + 1]
        return TruncSeries(ring, start + first, prec, np.ascontiguousarray(arr))

    # -- basic queries -----------------------------------------------------------------
    @property
    def valuation(self):
        return self.val

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return self.val is None

    def __bool__(self):
        return self.val is not None

    @property
    def relprec(self):
        if self.prec is None:
            return None
        return self.prec - (self.val if self.val is not None else self.prec)

    def coeff(self, k: int):
        """Coefficient of x^k (a code, Poly or ModElem depending on the ring)."""
        if self.prec is not None and k >= self.prec:
            raise PrecisionError(f"x^{k} is beyond precision {self.prec}")
        if self.val is None or k < self.val or k - self.val >= self.c.shape[0]:
            return self.ring.array_to_coeff(np.zeros((1, self.ring.e), dtype=np.int64))
        return self.ring.array_to_coeff(self.c[k - self.val])

    def coeffs(self, start: int | None = None, stop: int | None = None) -> list:
        if start is None:
            start = self.val if self.val is not None else 0
        if stop is None:
            stop = self.prec if self.prec is not None else (self.val or 0) + self.c.shape[0]
        return [self.coeff(k) for k in range(start, stop)]

    def leading_coeff(self):
        if self.val is None:
            raise PrecisionError("zero series has no leading coefficient")
        return self.ring.array_to_coeff(self.c[0])

    def t_degree(self) -> int:
        return self.c.shape[1] - 1

    def _check(self, other):
        if isinstance(other, TruncSeries):
            if other.ring != self.ring:
                raise FieldError("series over different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other % self.ring.p)
        if isinstance(other, (Poly, ModElem, FieldElem)):
            return self.ring.const(other)
        return None

    # -- arithmetic ---------------------------------------------------------------------
    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return _add(self, o)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.ring, self.val, self.prec, (-self.c) % self.ring.p)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return _add(self, -o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return _add(o, -self)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inv(self._inv_target(o))

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inv(o._inv_target(self))

    def _inv_target(self, divisor):
        """Precision for divisor^-1 that does not limit self * divisor^-1."""
        if divisor.prec is not None:
            return None
        if self.prec is None:
            raise PrecisionError("exact division needs an explicit precision; use inv(prec)")
        if divisor.val is None:
            raise ZeroDivisionError("division by zero series")
        sv = self.val if self.val is not None else self.prec
        return self.prec - sv - divisor.val

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.ring.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def inv(self, prec: int | None = None) -> "TruncSeries":
        """Multiplicative inverse; ``prec`` is the absolute precision wanted (required if exact)."""
        return _inv(self, prec)

    def frob(self, k: int = 1) -> "TruncSeries":
        """The q^k-th power, computed as x^i t^j -> x^(Qi) t^(Qj) with Q = q^k."""
        R = self.ring
        Q = R.q ** k
        if self.val is None:
            return R.zero(None if self.prec is None else self.prec * Q)
        n, T, e = self.c.shape
        out = np.zeros(((n - 1) * Q + 1, (T - 1) * Q + 1, e), dtype=np.int64)
        out[::Q, ::Q, :] = self.c
        prec = None if self.prec is None else self.prec * Q
        return R.make(self.val * Q, prec, out)

    def derivative(self) -> "TruncSeries":
        """d/dx, treating t as a constant."""
        R = self.ring
        prec = None if self.prec is None else self.prec - 1
        if self.val is None:
            return R.zero(prec)
        ks = (np.arange(self.c.shape[0]) + self.val) % R.p
        out = (self.c * ks[:, None, None]) % R.p
        return R.make(self.val - 1, prec, out)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x^k."""
        prec = None if self.prec is None else self.prec + k
        if self.val is None:
            return TruncSeries(self.ring, None, prec, self.c)
        return TruncSeries(self.ring, self.val + k, prec, self.c)

    def truncate(self, prec: int) -> "TruncSeries":
        if self.prec is not None and prec > self.prec:
            raise PrecisionError(f"cannot raise precision {self.prec} to {prec}")
        if self.val is None:
            return self.ring.zero(prec)
        return self.ring.make(self.val, prec, self.c)

    def scale_x(self, c: int) -> "TruncSeries":
        """Substitute x -> c*x for c in F_q^x."""
        R, F = self.ring, self.ring.field
        if self.val is None:
            return self
        out = np.empty_like(self.c)
        for i in range(self.c.shape[0]):
            M = R.fq_matrix(F.pow(c, self.val + i))
            out[i] = (self.c[i] @ M.T) % R.p
        return TruncSeries(R, self.val, self.prec, out)

    def fq_scale(self, c: int) -> "TruncSeries":
        """Multiply by c in F_q."""
        R = self.ring
        if c == 0:
            return R.zero(self.prec)
        if self.val is None:
            return self
        M = R.fq_matrix(c)
        return TruncSeries(R, self.val, self.prec, (self.c @ M.T) % R.p)

    def in_x_power_subring(self, step: int) -> bool:
        """All known nonzero coefficients sit at exponents divisible by ``step``."""
        if self.val is None:
            return True
        rows = np.flatnonzero(self.c.reshape(self.c.shape[0], -1).any(axis=1)) + self.val
        return bool(np.all(rows % step == 0))

    def is_unit(self) -> bool:
        """Units of R((x)): nonzero with a unit leading coefficient."""
        return self.val is not None and _coeff_is_unit(self.ring, self.c[0])

    def inverse(self) -> "TruncSeries":
        return self.inv()

    def is_unit_power_series(self) -> bool:
        """Valuation 0 with a unit constant coefficient."""
        if self.val != 0:
            return False
        return _coeff_is_unit(self.ring, self.c[0])

    def root_q_minus_1(self, prec: int | None = None) -> "TruncSeries":
        return series_root_q_minus_1(self, prec)

    # -- comparison -------------------------------------------------------------------
    def __eq__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def identical(self, other: "TruncSeries") -> bool:
        """Same valuation, precision and digits."""
        return (self.val == other.val and self.prec == other.prec
                and self.c.shape == other.c.shape and bool(np.array_equal(self.c, other.c)))

    def __repr__(self):
        R = self.ring
        if self.val is None:
            return "0" if self.prec is None else f"O({R.var}^{self.prec})"
        terms = []
        for i in range(self.c.shape[0]):
            if not self.c[i].any():
                continue
            k = self.val + i
            cf = R.array_to_coeff(self.c[i])
            terms.append(f"({cf!r})*{R.var}^{k}")
            if len(terms) >= 6:
                terms.append("...")
                break
        if self.prec is not None:
            terms.append(f"O({R.var}^{self.prec})")
        return " + ".join(terms)


# ---------------------------------------------------------------------------

def _coeff_is_unit(R: SeriesRing, row: np.ndarray) -> bool:
    if not row.any():
        return False
    if R.kind == "A":
        return not row[1:].any()
    if R.kind == "A/n":
        return R.array_to_coeff(row).is_unit()
    return True


def _coeff_inverse(R: SeriesRing, row: np.ndarray) -> np.ndarray:
    c = R.array_to_coeff(row)
    if R.kind == "Fq":
        return R.coeff_to_array(R.field.inv(c))
    if R.kind == "A":
        if c.degree != 0:
            raise ZeroDivisionError(f"leading coefficient {c!r} is not a unit of A")
        return R.coeff_to_array(R.field.inv(c.coeffs[0]))
    return R.coeff_to_array(c.inverse())


def _add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    R = a.ring
    prec = _minp(a.prec, b.prec)
    if a.val is None or b.val is None:
        s = b if a.val is None else a
        if s.val is None:
            return R.zero(prec)
        return R.make(s.val, prec, s.c)
    start = min(a.val, b.val)
    end = max(a.val + a.c.shape[0], b.val + b.c.shape[0])
    if prec is not None:
        end = min(end, prec)
        if end <= start:
            return R.zero(prec)
    T = max(a.c.shape[1], b.c.shape[1])
    out = np.zeros((end - start, T, R.e), dtype=np.int64)
    for s in (a, b):
        lo = s.val - start
        n = min(s.c.shape[0], end - s.val)
        if n > 0:
            out[lo:lo + n, :s.c.shape[1]] += s.c[:n]
    return R.make(start, prec, out)


def _mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    R = a.ring
    if a.val is None or b.val is None:
        if a.val is None and b.val is None:
            exact = a.prec is None or b.prec is None
            return R.zero(None if exact else a.prec + b.prec)
        z, s = (a, b) if a.val is None else (b, a)
        return R.zero(None if z.prec is None else z.prec + s.val)
    start = a.val + b.val
    cand = []
    if b.prec is not None:
        cand.append(a.val + b.prec)
    if a.prec is not None:
        cand.append(b.val + a.prec)
    prec = min(cand) if cand else None
    nrows = (prec - start) if prec is not None else a.c.shape[0] + b.c.shape[0] - 1
    out = _kernels.conv3(a.c, b.c, R.p, nrows)
    if R.e > 1:
        out = R.reduce_z(out)
    return R.make(start, prec, out)


def _inv(a: TruncSeries, prec=None) -> TruncSeries:
    R = a.ring
    if a.val is None:
        raise ZeroDivisionError("inverse of a (tracked) zero series")
    v = a.val
    if a.prec is None:
        if prec is None:
            raise PrecisionError("inverting an exact series needs a target precision")
        rel = prec + v
    else:
        rel = a.prec - v
        if prec is not None:
            if prec + v > rel:
                raise PrecisionError(f"inverse known only to x^{rel - v}, asked for x^{prec}")
            rel = prec + v
    if rel <= 0:
        return R.zero(rel - v)
    if not _coeff_is_unit(R, a.c[0]):
        raise ZeroDivisionError("leading coefficient is not a unit")
    u = a.c[:rel]
    y = _coeff_inverse(R, a.c[0]).reshape(1, -1, R.e)
    two = np.zeros((1, 1, R.e), dtype=np.int64)
    two[0, 0, 0] = 2 % R.p
    n = 1
    while n < rel:
        n = min(2 * n, rel)
        uy = _mul(R.make(0, n, u[:n]), R.make(0, n, y))
        corr = _add(R.make(0, n, two), -uy)
        y_s = _mul(R.make(0, n, y), corr)
        y = np.zeros((n, max(1, y_s.c.shape[1]), R.e), dtype=np.int64)
        if y_s.val is not None:
            y[y_s.val:y_s.val + y_s.c.shape[0]] = y_s.c
    return R.make(-v, rel - v, y)


def series_root_q_minus_1(u: TruncSeries, prec: int | None = None) -> TruncSeries:
    """The unique s with s^(q-1) = u and s = 1 mod x, by Newton iteration.

    Each step is s <- s + (s^(q-1) - u) * s^(2-q); the derivative of s^(q-1)
    is -s^(q-2), a unit, so the iteration doubles the number of correct digits.
    """
    R = u.ring
    q = R.q
    if u.val != 0:
        raise ValueError("root needs a unit power series (valuation 0)")
    c0 = u.c[0]
    if not (np.array_equal(c0[0], R.coeff_to_array(1)[0]) and not c0[1:].any()):
        raise ValueError("constant coefficient must be 1 for a (q-1)-th root to exist")
    target = u.prec if prec is None else prec
    if target is None:
        raise PrecisionError("an exact input needs a target precision")
    if u.prec is not None and target > u.prec:
        raise PrecisionError(f"input known only to x^{u.prec}")
    if q == 2:
        return u.truncate(target)
    s = R.one().truncate(1)
    n = 1
    while n < target:
        n = min(2 * n, target)
        uu = u.truncate(n)
        sn = R.make(0, n, s.c) if s.val is not None else R.zero(n)
        err = sn ** (q - 1) - uu
        s = sn + err * (sn.inv() ** (q - 2) if q > 2 else 1)
    return s.truncate(target)
