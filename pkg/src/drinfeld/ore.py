"""Twisted polynomials B{tau} with tau*b = b^q*tau, and their additive kernels."""
from __future__ import annotations

import itertools

import numpy as np

from . import _kernels
from .fields import GF, Embedding, FieldElem, ResourceCapError, extension, get_field


class InseparableError(ValueError):
    """The constant coefficient vanishes, so the kernel cannot reach full size."""


class KernelDegreeError(ResourceCapError):
    """No extension of degree <= maxdeg contains the full kernel."""

    def __init__(self, msg, largest=0):
        super().__init__(msg)
        self.largest = largest


def _is_zero(b) -> bool:
    return b.is_zero()


class OrePoly:
    """sum_i coeffs[i] * tau^i over a commutative ring of characteristic p.

    ``base`` is the coefficient ring object (it supplies zero(), one(), from_fq());
    coefficients are its elements and must provide + - * and frob(k).
    """

    __slots__ = ("base", "q", "coeffs")

    def __init__(self, base, coeffs, q: int | None = None):
        self.base = base
        self.q = q if q is not None else base.q
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, base, b):
        return cls(base, [b])

    @classmethod
    def tau(cls, base, k: int = 1):
        return cls(base, [base.zero()] * k + [base.one()])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.base.zero()

    def _lift(self, other):
        if isinstance(other, OrePoly):
            return other
        return OrePoly(self.base, [other if not isinstance(other, int) else self.base.from_fq(other)], self.q)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return OrePoly(self.base, [self.coeff(i) + o.coeff(i) for i in range(n)], self.q)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.base, [-c for c in self.coeffs], self.q)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return ore_mul(self, o)

    def __rmul__(self, other):
        return ore_mul(self._lift(other), self)

    def __pow__(self, k: int):
        r = OrePoly(self.base, [self.base.one()], self.q)
        for _ in range(k):
            r = r * self
        return r

    def scalar_mul(self, b) -> "OrePoly":
        """Left multiplication b*f."""
        return OrePoly(self.base, [b * c for c in self.coeffs], self.q)

    def truncate(self, deg: int) -> "OrePoly":
        """Drop tau-powers above ``deg``."""
        return OrePoly(self.base, self.coeffs[:deg + 1], self.q)

    def __call__(self, pt, embed=None):
        return ore_eval(self, pt, embed)

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(i) == other.coeff(i) for i in range(n))

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            parts.append(f"({c!r})" + ("" if i == 0 else ("*tau" if i == 1 else f"*tau^{i}")))
        return " + ".join(parts)


def ore_mul(f: OrePoly, g: OrePoly, maxdeg: int | None = None) -> OrePoly:
    """f*g under tau*b = b^q*tau, optionally dropping tau-degrees above maxdeg."""
    if f.is_zero() or g.is_zero():
        return OrePoly(f.base, [], f.q)
    n = len(f.coeffs) + len(g.coeffs) - 1
    if maxdeg is not None:
        n = min(n, maxdeg + 1)
    out = [None] * n
    frob_cache = {}
    for i, a in enumerate(f.coeffs):
        if i >= n or _is_zero(a):
            continue
        for j, b in enumerate(g.coeffs):
            if i + j >= n:
                break
            if _is_zero(b):
                continue
            bq = frob_cache.get((i, j))
            if bq is None:
                bq = b.frob(i) if i else b
                frob_cache[(i, j)] = bq
            term = a * bq
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    zero = f.base.zero()
    return OrePoly(f.base, [zero if c is None else c for c in out], f.q)


def ore_eval(f: OrePoly, pt, embed=None):
    """sum b_i pt^(q^i).

    ``pt`` may be a FieldElem of a larger field (then ``embed`` maps the
    coefficient codes into it) or an element of the coefficient ring itself.
    """
    if isinstance(pt, FieldElem):
        L = pt.parent
        acc = 0
        x = pt.code
        for i, b in enumerate(f.coeffs):
            code = b.code if isinstance(b, FieldElem) else int(b)
            if embed is not None:
                code = embed(code)
            if code:
                acc = L.add(acc, L.mul(code, L.frob(x, i) if i else x))
        return FieldElem(L, acc)
    acc = None
    xi = pt
    for i, b in enumerate(f.coeffs):
        if i:
            xi = xi.frob(1)
        term = b * xi
        acc = term if acc is None else acc + term
    if acc is None:
        return pt * 0
    return acc


def eval_codes(f_codes, L: GF, x: int) -> int:
    """Evaluate an additive polynomial with coefficient codes already in L."""
    acc = 0
    xi = x
    for i, c in enumerate(f_codes):
        if i:
            xi = L.frob(xi, 1)
        if c:
            acc = L.add(acc, L.mul(c, xi))
    return acc


def linear_map_matrix(f_codes, L: GF) -> np.ndarray:
    """F_p-matrix (digit basis of L) of pt -> sum c_i pt^(q^i), coefficients given as codes of L."""
    n = L.n
    M = np.zeros((n, n), dtype=np.int64)
    for i, c in enumerate(f_codes):
        if c:
            M = (M + L.mul_matrix(c) @ L.frob_matrix(i)) % L.p
    return M


def span_points(basis_digits: np.ndarray, L: GF) -> list[int]:
    """All F_p-combinations of the given digit vectors, as codes (sorted)."""
    k = basis_digits.shape[0]
    if k == 0:
        return [0]
    combos = np.array(list(itertools.product(range(L.p), repeat=k)), dtype=np.int64)
    vecs = (combos @ basis_digits) % L.p
    return sorted(set(L.codes_from_digit_rows(vecs).tolist()))


def fq_basis(points_digits: np.ndarray, L: GF) -> list[int]:
    """Greedy F_q-basis (as codes) of the F_p-span of the given digit vectors."""
    out = []
    span_rows = np.zeros((0, L.n), dtype=np.int64)
    zpows = [L.pow(L._pw[1], i) for i in range(L.e)] if L.e > 1 else [1]
    for row in points_digits:
        code = L.from_digits(row)
        test = np.vstack([span_rows, row[None, :]])
        if _kernels.rank_mod_p(test, L.p) > span_rows.shape[0]:
            out.append(code)
            extra = np.array([L.digits(L.mul(z, code)) for z in zpows], dtype=np.int64)
            span_rows = np.vstack([span_rows, extra])
            r = _kernels.rank_mod_p(span_rows, L.p)
            red, piv = _kernels.rref_mod_p(span_rows, L.p)
            span_rows = red[:r]
    return out


class KernelResult:
    def __init__(self, M, field, basis, points, digits):
        self.M = M
        self.field = field
        self.basis = basis
        self.points = points
        self.basis_digits = digits

    def __iter__(self):
        return iter((self.M, self.basis, self.points))


def additive_kernel(f: OrePoly, maxdeg: int = 12, full: bool = True) -> KernelResult:
    """Kernel of pt -> f(pt) over the smallest F_{q^(mM)}, M <= maxdeg, where it has q^deg(f) points.

    With full=False only the kernel over the coefficient field itself is returned.
    """
    K = f.base
    if not isinstance(K, GF):
        raise TypeError("additive_kernel needs coefficients in a finite field")
    if f.is_zero():
        raise ValueError("kernel of the zero polynomial is everything")
    codes = [c.code for c in f.coeffs]
    base = get_field(K.p, K.e, K.f)
    if not full:
        M_ = linear_map_matrix(codes, K)
        ns = _kernels.nullspace_mod_p(M_, K.p)
        return KernelResult(1, K, fq_basis(ns, K), span_points(ns, K), ns)
    if codes[0] == 0:
        raise InseparableError("constant coefficient is zero; f is inseparable")
    target = K.e * f.degree  # F_p-dimension of the full kernel
    largest = 0
    for M in range(1, maxdeg + 1):
        try:
            L = extension(base, K.m * M)
        except ResourceCapError as exc:
            raise KernelDegreeError(f"extension degree {K.m * M} too large: {exc}", largest) from exc
        emb = Embedding(K, L)
        lc = [emb(c) for c in codes]
        ns = _kernels.nullspace_mod_p(linear_map_matrix(lc, L), L.p)
        largest = max(largest, L.p ** ns.shape[0])
        if ns.shape[0] == target:
            return KernelResult(M, L, fq_basis(ns, L), span_points(ns, L), ns)
    raise KernelDegreeError(f"kernel not split over degree <= {maxdeg}; largest kernel found has {largest} points",
                            largest)
