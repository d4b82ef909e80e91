"""The formal Tate-Drinfeld module over A((x)).

The lattice is Lambda = {Phi^C_a(1/x) : a in A} for the Carlitz module
Phi^C_t = t + tau.  Its exponential is expanded from the product formula
truncated at x-precision N, the module Phi^Lambda is obtained by conjugating
the Carlitz module by e_Lambda, and the cusp data (a1, a2, b_h, l) is read off.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dmodule import DrinfeldModule, HStructure, carlitz, dm_phi, h_structure_find
from .fields import fq
from .ore import OrePoly, ore_mul
from .poly import Poly, PolyRing
from .series import PrecisionError, SeriesRing, TruncSeries


class TDError(ArithmeticError):
    pass


MAX_PREC = 1024
MAX_XDEG = 3 ** 6


def guard_digits(q: int) -> int:
    return 2 * (q - 1)


@lru_cache(maxsize=None)
def td_ring(q: int) -> SeriesRing:
    return SeriesRing(fq(q), "A")


def monic_polys(q: int, d: int):
    """Monic a in F_q[t] of degree < d, by degree and then lexicographically on coefficients."""
    A = PolyRing(fq(q))
    out = []
    for k in range(d):
        out.extend(A.monic_of_degree(k))
    return out


def lattice_point(a: Poly, prec: int | None = None) -> TruncSeries:
    """Phi^C_a(1/x), an exact Laurent series of valuation -q^deg(a); truncated if prec is given."""
    q = a.field.q
    R = td_ring(q)
    if a.is_zero():
        return R.zero(prec)
    C = carlitz(R)
    val = dm_phi(C, Poly(PolyRing(R.field), list(a.coeffs)))(R.x(-1))
    return val if prec is None else val.truncate(prec)


def _lattice_basis_points(q: int, d: int) -> list[TruncSeries]:
    """Phi^C_{t^k}(1/x) for k < d."""
    R = td_ring(q)
    pts = [R.x(-1)]
    t = R.t()
    for _ in range(1, d):
        z = pts[-1]
        pts.append(t * z + z.frob(1))
    return pts


class AdditiveSeries:
    """sum_i e_i X^(q^i) with coefficients in A[[x]] known to x^N, for X-degree at most D."""

    def __init__(self, q: int, coeffs, N: int, D: int):
        self.q, self.N, self.D = q, N, D
        self.coeffs = tuple(coeffs)
        self.ring = td_ring(q)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def ntau(self) -> int:
        return len(self.coeffs) - 1

    def ore(self) -> OrePoly:
        return OrePoly(self.ring, self.coeffs, self.q)

    def truncate(self, N: int) -> "AdditiveSeries":
        if N > self.N:
            raise PrecisionError(f"known only to x^{self.N}")
        return AdditiveSeries(self.q, [c.truncate(N) for c in self.coeffs], N, self.D)

    def compose(self, other: "AdditiveSeries") -> "AdditiveSeries":
        """self(other(X)) up to X-degree min(D)."""
        D = min(self.D, other.D)
        n = _ntau(self.q, D)
        prod = ore_mul(self.ore(), other.ore(), n)
        N = min(self.N, other.N)
        cs = [_trunc(prod.coeff(i), N) for i in range(n + 1)]
        return AdditiveSeries(self.q, cs, N, D)

    def is_identity(self) -> bool:
        R = self.ring
        return (self.coeffs[0] - R.one()).is_zero() and all(c.is_zero() for c in self.coeffs[1:])

    def in_x_power_subring(self) -> bool:
        return all(c.in_x_power_subring(self.q - 1) for c in self.coeffs)

    def valuation_bound_holds(self) -> bool:
        """val(e_i) >= (q^(2i) - 1)/(q + 1), or e_i = 0 to precision."""
        q = self.q
        return all(c.is_zero() or c.val >= (q ** (2 * i) - 1) // (q + 1) for i, c in enumerate(self.coeffs))


def _trunc(b: TruncSeries, N: int) -> TruncSeries:
    """Truncate to x^N; exact series are cut as well."""
    if b.prec is not None and b.prec < N:
        raise PrecisionError(f"known only to x^{b.prec}, asked for x^{N}")
    if b.val is None:
        return b.ring.zero(N)
    return b.ring.make(b.val, N, b.c)


def _ntau(q: int, D: int) -> int:
    n = 0
    while q ** (n + 1) <= D:
        n += 1
    return n


@dataclass
class ProductExpansion:
    poly: list  # coefficient of X^(1 + k(q-1)) for k = 0..K
    q: int
    N: int

    def non_additive_terms(self) -> list[int]:
        """X-degrees that are not q-powers but carry a nonzero coefficient."""
        q = self.q
        pw = {(q ** i - 1) // (q - 1) for i in range(64)}
        return [1 + k * (q - 1) for k, c in enumerate(self.poly) if k not in pw and not c.is_zero()]


def lattice_product(q: int, N: int, D: int) -> ProductExpansion:
    """X * prod over monic a of (1 - X^(q-1) alpha_a^(1-q)) as a polynomial in X up to degree D."""
    if N < 1 or D < 1:
        raise ValueError("N and D must be positive")
    if N > MAX_PREC or D > MAX_XDEG:
        from .fields import ResourceCapError
        raise ResourceCapError(f"precision {N} or X-degree {D} exceeds the budget")
    R = td_ring(q)
    d = 0
    while (q - 1) * q ** d < N:
        d += 1
    K = (D - 1) // (q - 1)
    P = [R.one().truncate(N)] + [R.zero(N) for _ in range(K)]
    if K == 0:
        return ProductExpansion(P, q, N)
    basis = _lattice_basis_points(q, d)
    for a in monic_polys(q, d):
        alpha = None
        for c, pt in zip(a.coeffs, basis):
            if c:
                term = pt.fq_scale(c)
                alpha = term if alpha is None else alpha + term
        Y = (alpha ** (q - 1)).inv(N)
        for k in range(K, 0, -1):
            if not P[k - 1].is_zero():
                P[k] = P[k] - Y * P[k - 1]
    return ProductExpansion([p.truncate(N) for p in P], q, N)


@lru_cache(maxsize=64)
def exp_lattice(q: int, N: int, D: int) -> AdditiveSeries:
    """e_Lambda(X) to x^N, for X-degree at most D."""
    prod = lattice_product(q, N, D)
    bad = prod.non_additive_terms()
    if bad:
        raise TDError(f"lattice product is not additive at X-degrees {bad}")
    n = _ntau(q, D)
    cs = [prod.poly[(q ** i - 1) // (q - 1)] for i in range(n + 1)]
    return AdditiveSeries(q, cs, N, D)


def exp_inverse(e: AdditiveSeries) -> AdditiveSeries:
    """Compositional inverse: f_0 = 1, f_k = -sum_{i=1..k} e_i f_(k-i)^(q^i)."""
    R = e.ring
    if not (e[0] - R.one()).is_zero():
        raise TDError("e_0 must be 1")
    f = [R.one().truncate(e.N)]
    for k in range(1, len(e)):
        acc = R.zero(e.N)
        for i in range(1, k + 1):
            if not e[i].is_zero():
                acc = acc + e[i] * f[k - i].frob(i)
        f.append((-acc).truncate(e.N))
    return AdditiveSeries(e.q, f, e.N, e.D)


def _conjugate(e: AdditiveSeries, einv: AdditiveSeries, phiC: OrePoly, deg: int) -> OrePoly:
    return ore_mul(ore_mul(e.ore(), phiC, deg), einv.ore(), deg)


def _work_prec(q: int, prec: int) -> int:
    return prec + guard_digits(q)


def _as_A(q: int, a: Poly) -> Poly:
    return Poly(PolyRing(fq(q)), list(a.coeffs))


def td_phi(a: Poly, prec: int, extra: int = 0) -> OrePoly:
    """Phi^Lambda_a = e Phi^C_a e^-1 to x^prec, with τ-degree 2 deg(a) (+ extra vanishing terms checked)."""
    q = a.field.q
    R = td_ring(q)
    a = _as_A(q, a)
    deg = 2 * max(a.degree, 0)
    top = deg + extra
    Nw = _work_prec(q, prec)
    e = exp_lattice(q, Nw, q ** top)
    einv = exp_inverse(e)
    phiC = dm_phi(carlitz(R), a)
    conj = _conjugate(e, einv, phiC, top)
    for i in range(deg + 1, top + 1):
        if not _trunc(conj.coeff(i), prec).is_zero():
            raise TDError(f"tau^{i} coefficient of the conjugate does not vanish")
    cs = [_trunc(conj.coeff(i), prec) for i in range(deg + 1)]
    return OrePoly(R, cs, q)


def td_coefficients_oracle(q: int, prec: int):
    """a1 = 1 + e1(t^q - t), a2 = e2(t^(q^2) - t) + e1 - a1 e1^q, read off e Phi^C = Phi^Lambda e."""
    R = td_ring(q)
    Nw = _work_prec(q, prec)
    e = exp_lattice(q, Nw, q ** 2)
    t = R.t()
    a1 = R.one() + e[1] * (t.frob(1) - t)
    a2 = e[2] * (t.frob(2) - t) + e[1] - a1 * e[1].frob(1)
    return a1.truncate(prec), a2.truncate(prec)


@lru_cache(maxsize=64)
def td_coefficients(q: int, prec: int):
    """(a1, a2) of Phi^Lambda_t to x^prec."""
    A = PolyRing(fq(q))
    phi = td_phi(A.gen(), prec)
    R = td_ring(q)
    return phi.coeff(1), phi.coeff(2) if phi.degree >= 2 else R.zero(prec)


def td_module(q: int, prec: int) -> DrinfeldModule:
    R = td_ring(q)
    a1, a2 = td_coefficients(q, prec)
    return DrinfeldModule(R, R.t(), [a1, a2])


def membership_checks(q: int, a1: TruncSeries, a2: TruncSeries) -> dict:
    """a1 in 1 + x^(q-1) A[[x^(q-1)]] and a2 in x^(q-1) A[[x^(q-1)]]^x."""
    R = td_ring(q)
    s = q - 1
    d1 = a1 - R.one()
    return {
        "a1_in_subring": a1.in_x_power_subring(s),
        "a1_minus_1_val": d1.is_zero() or d1.val >= s,
        "a2_in_subring": a2.in_x_power_subring(s),
        "a2_val": a2.val == s,
        "a2_unit_tail": a2.val is not None and a2.shift(-a2.val).is_unit_power_series(),
    }


def functional_equation_check(a: Poly, prec: int, xdeg: int) -> bool:
    """e(Phi^C_a(X)) = Phi^Lambda_a(e(X)) up to X-degree xdeg, with Phi^Lambda_a = a(Phi^Lambda_t)."""
    q = a.field.q
    R = td_ring(q)
    a = _as_A(q, a)
    n = _ntau(q, xdeg)
    e = exp_lattice(q, _work_prec(q, prec), q ** n).ore()
    E = td_module(q, prec)
    lhs = ore_mul(e, dm_phi(carlitz(R), a), n)
    rhs = ore_mul(dm_phi(E, a), e, n)
    return all((lhs.coeff(i) - rhs.coeff(i)).truncate(prec).is_zero() for i in range(n + 1))


def carlitz_root_series(q: int, prec: int) -> TruncSeries:
    """s = e(beta)/beta = sum_i e_i (-t)^((q^i - 1)/(q - 1)) for beta^(q-1) = -t, beta in C[t]."""
    R = td_ring(q)
    Nw = _work_prec(q, prec)
    n = 0
    while (q ** (2 * (n + 1)) - 1) // (q + 1) < Nw:
        n += 1
    e = exp_lattice(q, Nw, q ** n)
    mt = -R.t()
    s = R.zero(Nw)
    for i in range(len(e)):
        s = s + e[i] * (mt ** ((q ** i - 1) // (q - 1)))
    return s.truncate(prec)


def td_product_formula_check(a: Poly, prec: int) -> dict:
    """Best-effort check of Phi^Lambda_t = t X prod (1 - X/e(beta)).

    The linear coefficient and the degree are read off, and the roots e(beta)
    for beta in C[t] are verified through s = e(beta)/beta, which must satisfy
    t s - t a1 s^q + (-t)^(q+1) a2 s^(q^2) = 0.  The roots coming from the
    division points of the lattice generator need a wildly ramified extension
    of A((x)), so they are reported as unverified.
    """
    q = a.field.q
    A = PolyRing(fq(q))
    if _as_A(q, a) != A.gen():
        raise TDError("the product formula check is implemented for a = t")
    R = td_ring(q)
    phi = td_phi(A.gen(), prec)
    a1, a2 = phi.coeff(1), phi.coeff(2)
    t = R.t()
    s = carlitz_root_series(q, prec)
    mt = -t
    rel = t * s - t * a1 * s.frob(1) + (mt ** (q + 1)) * a2 * s.frob(2)
    out = {
        "linear_coefficient": (phi.coeff(0) - t).is_zero(),
        "degree": phi.degree == 2 and q ** phi.degree == q * q,
        "carlitz_torsion_roots": rel.truncate(prec).is_zero(),
    }
    ok = all(out.values())
    out["status"] = "unverified" if ok else "fail"
    return out


# ---------------------------------------------------------------------------

@dataclass
class CuspData:
    q: int
    prec: int
    a1: TruncSeries
    a2: TruncSeries
    bh: TruncSeries
    l: TruncSeries

    @property
    def dX(self):
        return (self.a1, self.a2)

    @property
    def eta(self):
        R = td_ring(self.q)
        return (-(self.l.shift(2)), R.zero(self.prec))

    def h_structure(self) -> HStructure:
        return HStructure(td_module_from(self), self.bh)


def td_module_from(cd: CuspData) -> DrinfeldModule:
    R = td_ring(cd.q)
    return DrinfeldModule(R, R.t(), [cd.a1, cd.a2])


def l_series(a1: TruncSeries, a2: TruncSeries) -> TruncSeries:
    """l = da1/dx - (a1/a2) da2/dx."""
    return a1.derivative() - a1 * a2.derivative() / a2


@lru_cache(maxsize=64)
def cusp_data(q: int, prec: int) -> CuspData:
    if prec < q * q:
        raise ValueError(f"precision must be at least q^2 = {q * q}")
    Nw = _work_prec(q, prec)
    a1w, a2w = td_coefficients(q, Nw)
    E = DrinfeldModule(td_ring(q), td_ring(q).t(), [a1w, a2w])
    h = h_structure_find(E)
    if h is None:
        raise TDError("no b_h: the leading coefficient of -a2 is not 1")
    lw = l_series(a1w, a2w)
    return CuspData(q, prec, a1w.truncate(prec), a2w.truncate(prec), h.H.truncate(prec),
                    lw.truncate(prec))


def l_unit_check(l: TruncSeries) -> bool:
    """l in x^-1 A[[x]]^x."""
    return l.val == -1 and l.shift(1).is_unit_power_series()


def g_c(b: TruncSeries, c: int) -> TruncSeries:
    """x -> c^-1 x."""
    F = b.ring.field
    return b.scale_x(F.inv(c))


def theta_c(coords, c: int):
    """(b1, b2) -> (c g_c(b1), c g_c(b2)): pull back along x -> c^-1 x and scale tau by c."""
    return tuple(g_c(b, c).fq_scale(c) for b in coords)


def fq_action_check(q: int, c: int, prec: int) -> dict:
    if not 0 < c < q:
        raise ValueError("c must be a nonzero element of F_q")
    cd = cusp_data(q, prec)
    dX, eta = cd.dX, cd.eta
    tdX, teta = theta_c(dX, c), theta_c(eta, c)
    return {
        "dX": all((u - v.fq_scale(c)).is_zero() for u, v in zip(tdX, dX)),
        "eta": all((u - v).is_zero() for u, v in zip(teta, eta)),
        "a_invariant": all((g_c(b, c) - b).is_zero() for b in dX),
    }
