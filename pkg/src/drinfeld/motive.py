"""Torsion points, tau-motives mod n, their etale fixed points, and the h-structure Weil pairing.

Conventions.  A Drinfeld module E lives over K = F_{q^m}; torsion and fixed
points live over an extension L = F_{q^(mM)}.  Elements of A/(n) are handled
as coefficient vectors (tuples of F_q codes, length deg n).  An element of
M(E)/n tensored with L is a tuple of r vectors over L[t]/(n): the coordinates
c_i in the basis m_i = tau^i, where c*m_i means sum_j c_j tau^i Phi_{t^j}.
"""
from __future__ import annotations

import itertools
from math import gcd

import numpy as np

from . import _kernels, linalg
from .dmodule import DrinfeldModule, HStructure, carlitz, dm_phi
from .fields import GF, Embedding, FieldElem, ResourceCapError, extension, get_field
from .ore import KernelDegreeError, linear_map_matrix, span_points
from .poly import ModElem, Poly, PolyRing, QuotientRing, residue_at_infinity


class MotiveError(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


def _base(K: GF) -> GF:
    return get_field(K.p, K.e, K.f)


# ---------------------------------------------------------------------------
# L[t]/(n) as lists of L-codes

def _lt_reduce(L: GF, a: list, n: tuple) -> list:
    a = list(a)
    d = len(n) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d):
                if n[i]:
                    a[k - d + i] = L.sub(a[k - d + i], L.mul(c, n[i]))
            a[k] = 0
    a = a[:d]
    return a + [0] * (d - len(a))


def _lt_mul(L: GF, a: list, b: list, n: tuple) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = L.add(out[i + j], L.mul(x, y))
    return _lt_reduce(L, out, n)


def _lt_add(L: GF, a: list, b: list) -> list:
    return [L.add(x, y) for x, y in zip(a, b)]


def _lt_sub(L: GF, a: list, b: list) -> list:
    return [L.sub(x, y) for x, y in zip(a, b)]


def _lt_sigma(L: GF, a: list, k: int = 1) -> list:
    return [L.frob(x, k) for x in a]


def _lt_scal(L: GF, c: int, a: list) -> list:
    return [L.mul(c, x) for x in a]


def _eval_fq_poly(K: GF, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a.coeffs):
        acc = K.add(K.mul(acc, x), c)
    return acc


def _vec_of(ring: QuotientRing, v) -> tuple:
    if isinstance(v, ModElem):
        return tuple(v.vector())
    return tuple(v)


# ---------------------------------------------------------------------------

class TorsionModule:
    """E[n] over L as an explicit A/(n)-module of points (integer codes of L)."""

    def __init__(self, E: DrinfeldModule, n: Poly, L: GF, M: int, basis_digits: np.ndarray):
        self.E, self.n, self.field, self.M = E, n, L, M
        K = E.base
        self.emb = Embedding(K, L)
        self.quot = QuotientRing(n)
        self.d = n.degree
        self.q = E.q
        self.phi_codes = [self.emb(c.code) for c in E.phi_t.coeffs]
        self.points = span_points(basis_digits, L)
        self.point_set = set(self.points)
        self._tpow: dict[int, list[int]] = {}
        self.rank = E.rank
        self.basis = self._find_basis()
        self._coords = None

    # -- A-action ------------------------------------------------------------------
    def t_action(self, pt: int) -> int:
        L = self.field
        acc, xi = 0, pt
        for i, c in enumerate(self.phi_codes):
            if i:
                xi = L.frob(xi, 1)
            if c:
                acc = L.add(acc, L.mul(c, xi))
        return acc

    def t_powers(self, pt: int, k: int | None = None) -> list[int]:
        """[pt, t.pt, t^2.pt, ...] up to t^(k-1), default 2*deg n."""
        k = k or 2 * self.d
        lst = self._tpow.get(pt)
        if lst is None or len(lst) < k:
            lst = [pt]
            for _ in range(k - 1):
                lst.append(self.t_action(lst[-1]))
            self._tpow[pt] = lst
        return lst[:k]

    def act(self, a, pt: int) -> int:
        """a.pt for a in A (Poly) or an A/(n) coefficient vector."""
        L = self.field
        coeffs = a.coeffs if isinstance(a, Poly) else (a.vector() if isinstance(a, ModElem) else tuple(a))
        pw = self.t_powers(pt, max(len(coeffs), 1))
        acc = 0
        for c, x in zip(coeffs, pw):
            if c:
                acc = L.add(acc, L.mul(c, x))
        return acc

    def add(self, a: int, b: int) -> int:
        return self.field.add(a, b)

    def neg(self, a: int) -> int:
        return self.field.neg(a)

    # -- structure -----------------------------------------------------------------------
    def _span_rank(self, gens) -> int:
        L = self.field
        rows = []
        zc = [L.pow(L._pw[1], i) for i in range(L.e)] if L.e > 1 else [1]
        for g in gens:
            for x in self.t_powers(g, self.d):
                for z in zc:
                    rows.append(L.digits(L.mul(z, x)))
        if not rows:
            return 0
        return _kernels.rank_mod_p(np.array(rows, dtype=np.int64), L.p)

    def generated_order(self, gens) -> int:
        """Number of points in the A-submodule generated by ``gens``."""
        return self.field.p ** self._span_rank(gens)

    def is_free_generator(self, pt: int) -> bool:
        return self.generated_order([pt]) == self.q ** self.d

    def _find_basis(self):
        out = []
        full = self.q ** self.d
        for pt in self.points:
            if self.generated_order(out + [pt]) == full ** (len(out) + 1):
                out.append(pt)
                if len(out) == self.rank:
                    break
        if len(out) != self.rank:  # pragma: no cover
            raise MotiveError("torsion is not free of the expected rank")
        return tuple(out)

    def coordinates(self) -> dict:
        """point -> tuple of A/(n) vectors with point = sum a_i basis_i."""
        if self._coords is None:
            L = self.field
            vecs = [tuple(v.vector()) for v in self.quot.elements()]
            coords = {}
            for combo in itertools.product(vecs, repeat=self.rank):
                pt = 0
                for a, b in zip(combo, self.basis):
                    pt = L.add(pt, self.act(a, b))
                coords[pt] = combo
            self._coords = coords
        return self._coords

    def frobenius(self, pt: int) -> int:
        """The q^m-power Frobenius of the base field K acting on a point."""
        return self.field.frob(pt, self.E.base.m)

    def is_closed(self) -> bool:
        S = self.point_set
        for a in self.points:
            if self.t_action(a) not in S:
                return False
        for a, b in itertools.combinations(self.points, 2):
            if self.field.add(a, b) not in S:
                return False
        return True

    def killed_by_n(self) -> bool:
        return all(self.act(self.n, pt) == 0 for pt in self.points)


def _theta_check(E: DrinfeldModule, n: Poly):
    K = E.base
    if _eval_fq_poly(K, n, E.theta.code) == 0:
        raise MotiveError("n(theta) = 0: torsion is not etale")


def _kernel_over(E: DrinfeldModule, n: Poly, L: GF):
    phin = dm_phi(E, n)
    emb = Embedding(E.base, L)
    codes = [emb(c.code) for c in phin.coeffs]
    return _kernels.nullspace_mod_p(linear_map_matrix(codes, L), L.p)


def splitting_degree(E: DrinfeldModule, n: Poly, maxdeg: int = 12) -> int:
    """Smallest M with E[n] fully rational over F_{q^(mM)}."""
    _theta_check(E, n)
    K = E.base
    target = K.e * E.rank * n.degree
    for M in range(1, maxdeg + 1):
        try:
            L = extension(_base(K), K.m * M)
        except ResourceCapError as exc:
            raise KernelDegreeError(str(exc)) from exc
        if _kernel_over(E, n, L).shape[0] == target:
            return M
    raise KernelDegreeError(f"E[n] not rational over any extension of degree <= {maxdeg}")


def torsion_points(E: DrinfeldModule, n: Poly, maxdeg: int = 12, M: int | None = None) -> TorsionModule:
    """E[n] with its A/(n)-structure, over F_{q^(mM)} (M found if not given)."""
    _theta_check(E, n)
    K = E.base
    if M is None:
        M = splitting_degree(E, n, maxdeg)
    L = extension(_base(K), K.m * M)
    ns = _kernel_over(E, n, L)
    if ns.shape[0] != K.e * E.rank * n.degree:
        raise MotiveError(f"E[n] is not rational over degree {M}")
    return TorsionModule(E, n, L, M, ns)


def common_torsion(E: DrinfeldModule, n: Poly, maxdeg: int = 12):
    """(E[n], C[n]) over one field, C the Carlitz module with the same theta."""
    C = carlitz(E.base, E.theta)
    M = _lcm(splitting_degree(E, n, maxdeg), splitting_degree(C, n, maxdeg))
    if E.base.m * M > maxdeg * E.base.m:
        raise KernelDegreeError(f"common splitting degree {M} exceeds {maxdeg}")
    return torsion_points(E, n, M=M), torsion_points(C, n, M=M)


def gamma1_structures(Ct: TorsionModule, Et: TorsionModule) -> list[int]:
    """Images of the fixed generator of C[n] under all injective A-linear maps C[n] -> E[n]."""
    if Ct.field != Et.field:
        raise MotiveError("torsion computed over different fields")
    return [pt for pt in Et.points if Et.is_free_generator(pt)]


# ---------------------------------------------------------------------------

class MotiveModN:
    """M(E)/n over K[t]/(n): tau(sum c_i m_i) = sum sigma(c_i) tau(m_i), tau(m_i) = sum_j T[j][i] m_j."""

    def __init__(self, E: DrinfeldModule, n: Poly, T):
        self.E, self.n = E, n
        self.K = E.base
        self.rank = len(T)
        self.T = T  # T[j][i]: K-code lists of length deg n
        self.nc = tuple(n.monic().coeffs)
        self.d = n.degree

    def tau(self, v, L: GF, emb) -> tuple:
        """Apply tau to v (tuple of r coefficient lists over L)."""
        r = self.rank
        out = [[0] * self.d for _ in range(r)]
        for i in range(r):
            s = _lt_sigma(L, v[i])
            if not any(s):
                continue
            for j in range(r):
                Tj = [emb(c) for c in self.T[j][i]]
                out[j] = _lt_add(L, out[j], _lt_mul(L, s, Tj, self.nc))
        return tuple(tuple(o) for o in out)

    def tau_elem(self, i: int, j: int) -> ModElem:
        """T[j][i] as an element of K[t]/(n)."""
        R = QuotientRing(Poly(PolyRing(self.K), list(self.nc)))
        return R.from_vector(self.T[j][i])


def _kt(K: GF, n: Poly):
    return QuotientRing(Poly(PolyRing(K), list(n.monic().coeffs)))


def motive_mod_n(E: DrinfeldModule, n: Poly) -> MotiveModN:
    """The tau-matrix of M(E)/n in the basis {1, tau} (or {1} in rank 1)."""
    K = E.base
    R = _kt(K, n)
    tt = R.t()
    th = R.from_vector([E.theta.code])
    if E.rank == 1:
        a1inv = R.from_vector([E.a1.inverse().code])
        T = [[(a1inv * (tt - th)).vector()]]
    elif E.rank == 2:
        a2inv = R.from_vector([E.a2.inverse().code])
        a1 = R.from_vector([E.a1.code])
        zero = R.zero().vector()
        one = R.one().vector()
        # tau(m0) = m1 ; tau(m1) = a2^-1 ((t - theta) m0 - a1 m1)
        T = [[zero, (a2inv * (tt - th)).vector()],
             [one, (-(a2inv * a1)).vector()]]
    else:
        raise MotiveError("rank must be 1 or 2")
    return MotiveModN(E, n, T)


def det_motive(Mot: MotiveModN) -> MotiveModN:
    """The rank-1 motive D(E) with tau(1) = (theta - t) alpha_2^-1."""
    if Mot.rank != 2:
        raise MotiveError("det_motive needs rank 2")
    E = Mot.E
    R = _kt(Mot.K, Mot.n)
    val = (R.from_vector([E.theta.code]) - R.t()) * R.from_vector([E.a2.inverse().code])
    return MotiveModN(E, Mot.n, [[val.vector()]])


def wedge_tau(Mot: MotiveModN) -> ModElem:
    """tau(m0 ^ m1) = tau(m0) ^ tau(m1) = det(T) m0 ^ m1, computed from the tau-matrix."""
    R = _kt(Mot.K, Mot.n)
    T = [[R.from_vector(Mot.T[j][i]) for i in range(2)] for j in range(2)]
    return T[0][0] * T[1][1] - T[0][1] * T[1][0]


def nu_h_check(h: HStructure, n: Poly) -> bool:
    """nu_H(m0^m1) = H^-1 intertwines tau on D(E) with tau(1) = t - theta on M(C)."""
    E = h.module
    K = E.base
    R = _kt(K, n)
    rho = det_motive(motive_mod_n(E, n)).tau_elem(0, 0)
    Hinv = R.from_vector([h.H.inverse().code])
    lhs = rho * Hinv
    rhs = R.from_vector([K.frob(h.H.inverse().code, 1)]) * (R.t() - R.from_vector([E.theta.code]))
    return lhs == rhs


# ---------------------------------------------------------------------------

class EtaleFixed:
    """tau-fixed vectors of M/n tensored with L, with an A/(n)-basis."""

    def __init__(self, Mot: MotiveModN, L: GF, M: int, basis_rows: np.ndarray):
        self.motive, self.field, self.M = Mot, L, M
        self.rank = Mot.rank
        self.d = Mot.d
        self.emb = Embedding(Mot.K, L)
        self._rows = basis_rows
        self.count = L.p ** basis_rows.shape[0]
        self.basis = self._find_basis()

    def _unflat(self, row) -> tuple:
        L, d, r = self.field, self.d, self.rank
        n = L.n
        out = []
        for i in range(r):
            out.append(tuple(L.from_digits(row[(i * d + j) * n:(i * d + j + 1) * n]) for j in range(d)))
        return tuple(out)

    def _flat(self, v) -> list[int]:
        L = self.field
        out = []
        for comp in v:
            for c in comp:
                out.extend(L.digits(c))
        return out

    def t_mul(self, v, k: int = 1) -> tuple:
        L = self.field
        nc = self.motive.nc
        tk = [0] * k + [1]
        return tuple(tuple(_lt_mul(L, list(c), tk, nc)) for c in v)

    def scal(self, a, v) -> tuple:
        """a.v for a in A/(n) (coefficient vector of F_q codes)."""
        L = self.field
        nc = self.motive.nc
        av = list(a) + [0] * (self.d - len(a))
        return tuple(tuple(_lt_mul(L, list(c), av, nc)) for c in v)

    def add(self, u, v) -> tuple:
        L = self.field
        return tuple(tuple(_lt_add(L, a, b)) for a, b in zip(u, v))

    def _span_rank(self, gens) -> int:
        L = self.field
        zc = [L.pow(L._pw[1], i) for i in range(L.e)] if L.e > 1 else [1]
        rows = []
        for g in gens:
            for k in range(self.d):
                tg = self.t_mul(g, k) if k else g
                for z in zc:
                    rows.append(self._flat(tuple(tuple(L.mul(z, c) for c in comp) for comp in tg)))
        if not rows:
            return 0
        return _kernels.rank_mod_p(np.array(rows, dtype=np.int64), L.p)

    def _find_basis(self):
        q, d = self.motive.E.q, self.d
        pts = self.all_vectors(limit=None)
        out = []
        for v in pts:
            if self.field.p ** self._span_rank(out + [v]) == q ** (d * (len(out) + 1)):
                out.append(v)
                if len(out) == self.rank:
                    break
        if len(out) != self.rank:  # pragma: no cover
            raise MotiveError("fixed module is not free of full rank")
        return tuple(out)

    def all_vectors(self, limit=None):
        L = self.field
        k = self._rows.shape[0]
        combos = itertools.product(range(L.p), repeat=k)
        out = []
        for cb in combos:
            if not any(cb):
                continue
            row = (np.array(cb, dtype=np.int64) @ self._rows) % L.p
            out.append(self._unflat(row))
            if limit and len(out) >= limit:
                break
        return out

    def is_fixed(self, v) -> bool:
        return self.motive.tau(v, self.field, self.emb) == tuple(tuple(c) for c in v)


def _tau_minus_one_matrix(Mot: MotiveModN, L: GF, emb) -> np.ndarray:
    r, d, n = Mot.rank, Mot.d, L.n
    dim = r * d * n
    cols = []
    for idx in range(dim):
        comp, rem = divmod(idx, d * n)
        j, k = divmod(rem, n)
        v = [[0] * d for _ in range(r)]
        v[comp][j] = L._pw[k]
        tv = Mot.tau(tuple(tuple(x) for x in v), L, emb)
        flat = []
        for ci in range(r):
            for cj in range(d):
                flat.extend(L.digits(tv[ci][cj]))
        flat[idx] = (flat[idx] - 1) % L.p
        cols.append(flat)
    return np.array(cols, dtype=np.int64).T


def etale_fixed(Mot: MotiveModN, maxdeg: int = 12, M: int | None = None) -> EtaleFixed:
    """Smallest M' <= maxdeg with q^(r deg n) tau-fixed vectors over F_{q^(mM')}."""
    K = Mot.K
    target = K.e * Mot.rank * Mot.d
    rng = [M] if M is not None else range(1, maxdeg + 1)
    for Mp in rng:
        try:
            L = extension(_base(K), K.m * Mp)
        except ResourceCapError as exc:
            raise KernelDegreeError(str(exc)) from exc
        emb = Embedding(K, L)
        ns = _kernels.nullspace_mod_p(_tau_minus_one_matrix(Mot, L, emb), L.p)
        if ns.shape[0] == target:
            return EtaleFixed(Mot, L, Mp, ns)
        if M is not None:
            raise MotiveError(f"fixed module not full over degree {M}")
    raise KernelDegreeError(f"fixed module not full over any degree <= {maxdeg}")


# ---------------------------------------------------------------------------

class ResidueDual:
    """Solve sum_k r_k Res(n^-1 t^(i+k) dt) = ell_i for r in A/(n)."""

    def __init__(self, n: Poly):
        self.n = n
        self.F = n.field
        d = n.degree
        R = n.ring
        self.gram = [[residue_at_infinity(Poly(R, [0] * (i + k) + [1]), n) for k in range(d)] for i in range(d)]
        if linalg.det(self.F, self.gram) == 0:  # pragma: no cover
            raise MotiveError("residue pairing is degenerate")

    def solve(self, ell) -> tuple:
        x = linalg.solve(self.F, self.gram, list(ell))
        return tuple(x)


class BoeckleDuality:
    """The pairing E[n] x (M(E)/n)_et -> A/(n) of (e, f) -> residue dual of a -> f(a e)."""

    def __init__(self, tor: TorsionModule, fixed: EtaleFixed):
        if tor.field != fixed.field:
            raise MotiveError("torsion and fixed module over different fields")
        self.tor, self.fixed = tor, fixed
        self.field = tor.field
        self.d = tor.d
        self.q = tor.q
        self.dual = ResidueDual(tor.n)

    def evaluate(self, f, pt: int) -> int:
        """f(pt) = sum_i sum_j c_ij (Phi_{t^j} pt)^(q^i)."""
        L = self.field
        pw = self.tor.t_powers(pt, self.d)
        acc = 0
        for i, comp in enumerate(f):
            for c, x in zip(comp, pw):
                if c:
                    acc = L.add(acc, L.mul(c, L.frob(x, i) if i else x))
        return acc

    def functional(self, pt: int, f) -> list[int]:
        """[f(t^i pt)] for i < deg n; values lie in F_q for tau-fixed f."""
        pw = self.tor.t_powers(pt, 2 * self.d)
        out = []
        for i in range(self.d):
            val = self.evaluate(f, pw[i])
            if val >= self.q:
                raise MotiveError("functional value outside F_q: f is not tau-fixed")
            out.append(val)
        return out

    def pair(self, pt: int, f) -> tuple:
        return self.dual.solve(self.functional(pt, f))

    def gram(self):
        return [[self.pair(P, f) for f in self.fixed.basis] for P in self.tor.basis]


def aq_det(quot: QuotientRing, G) -> ModElem:
    """Determinant of a matrix of A/(n)-vectors."""
    M = [[quot.from_vector(list(x)) for x in row] for row in G]
    if len(M) == 1:
        return M[0][0]
    if len(M) == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    raise MotiveError("only 1x1 and 2x2 Gram matrices are needed")


def boeckle_duality(E: DrinfeldModule, n: Poly, maxdeg: int = 12, M: int | None = None) -> BoeckleDuality:
    tor = torsion_points(E, n, maxdeg, M)
    fixed = etale_fixed(motive_mod_n(E, n), M=tor.M)
    return BoeckleDuality(tor, fixed)


# ---------------------------------------------------------------------------

class WeilPairing:
    """f_H : wedge^2 E[n] -> C[n] built from D(E), nu_H and the Carlitz duality.

    For P, Q in E[n] and an A/(n)-basis (f1, f2) of the fixed module,
    val = <P,f1><Q,f2> - <Q,f1><P,f2> is the value of the functional
    delta_E(P^Q) on omega = f1^f2; nu_H(omega) = (a0 b1 - a1 b0) H^-1 is a
    generator of the Carlitz fixed module, and f_H(P^Q) is the unique
    lambda in C[n] with <lambda, nu_H(omega)>_C = val.
    """

    def __init__(self, Et: TorsionModule, Ct: TorsionModule, h: HStructure):
        if Et.field != Ct.field:
            raise MotiveError("E[n] and C[n] over different fields")
        if h.module is not Et.E and h.module != Et.E:
            raise MotiveError("h-structure is for another module")
        if not h.is_valid():
            raise MotiveError("invalid h-structure")
        self.Et, self.Ct, self.h = Et, Ct, h
        self.E = Et.E
        self.n = Et.n
        self.L = L = Et.field
        self.quot = Et.quot
        self.d = Et.d
        M = Et.M
        self.fixedE = etale_fixed(motive_mod_n(self.E, self.n), M=M)
        self.fixedC = etale_fixed(motive_mod_n(Ct.E, self.n), M=M)
        self.dE = BoeckleDuality(Et, self.fixedE)
        self.dC = BoeckleDuality(Ct, self.fixedC)
        f1, f2 = self.fixedE.basis
        nc = self.fixedE.motive.nc
        a0, a1 = f1
        b0, b1 = f2
        delta = _lt_sub(L, _lt_mul(L, list(a0), list(b1), nc), _lt_mul(L, list(a1), list(b0), nc))
        Hinv = self.fixedE.emb(h.H.inverse().code)
        self.nu_omega = (tuple(_lt_scal(L, Hinv, delta)),)
        self.lam0 = Ct.basis[0]
        self.u = self.quot.from_vector(list(self.dC.pair(self.lam0, self.nu_omega)))
        if not self.u.is_unit():
            raise MotiveError("nu_H(omega) does not generate the Carlitz fixed module")
        self.uinv = self.u.inverse()
        self._pairs: dict[int, tuple] = {}

    def nu_omega_is_fixed(self) -> bool:
        return self.fixedC.is_fixed(self.nu_omega)

    def _pe(self, pt: int):
        r = self._pairs.get(pt)
        if r is None:
            f1, f2 = self.fixedE.basis
            r = (self.quot.from_vector(list(self.dE.pair(pt, f1))),
                 self.quot.from_vector(list(self.dE.pair(pt, f2))))
            self._pairs[pt] = r
        return r

    def value(self, P: int, Q: int) -> ModElem:
        """delta_E(P^Q)(f1^f2) in A/(n)."""
        p1, p2 = self._pe(P)
        q1, q2 = self._pe(Q)
        return p1 * q2 - q1 * p2

    def __call__(self, P: int, Q: int) -> int:
        if P not in self.Et.point_set or Q not in self.Et.point_set:
            raise MotiveError("points are not n-torsion")
        a = self.value(P, Q) * self.uinv
        return self.Ct.act(a, self.lam0)

    def solve_exhaustive(self, P: int, Q: int) -> int:
        """Oracle: search C[n] for lambda with <lambda, nu_H(omega)>_C = val."""
        val = self.value(P, Q)
        hits = [lam for lam in self.Ct.points
                if self.quot.from_vector(list(self.dC.pair(lam, self.nu_omega))) == val]
        if len(hits) != 1:  # pragma: no cover
            raise MotiveError(f"Carlitz duality not bijective: {len(hits)} solutions")
        return hits[0]

    def table(self):
        """f_H on all pairs of basis points."""
        B = self.Et.basis
        return [[self(P, Q) for Q in B] for P in B]

    def is_generator(self, lam: int) -> bool:
        return self.Ct.is_free_generator(lam)


def weil_pairing(E: DrinfeldModule, n: Poly, h: HStructure, P: int, Q: int, maxdeg: int = 12) -> int:
    Et, Ct = common_torsion(E, n, maxdeg)
    return WeilPairing(Et, Ct, h)(P, Q)


def mu_from_h(W: WeilPairing, lam_image: int) -> int:
    """mu_H(1): the class e + Im(lambda) with f_H(lambda(lambda_0) ^ e) = lambda_0.

    Returns the smallest-code representative of the coset.
    """
    Et = W.Et
    if not Et.is_free_generator(lam_image):
        raise MotiveError("lambda is not injective")
    image = {Et.act(a, lam_image) for a in (tuple(v.vector()) for v in W.quot.elements())}
    for e in Et.points:
        if W(lam_image, e) == W.lam0:
            L = Et.field
            return min(L.add(e, x) for x in image)
    raise MotiveError("no preimage for mu_H")  # pragma: no cover


def coset_rep(Et: TorsionModule, lam_image: int, e: int) -> int:
    L = Et.field
    quot = Et.quot
    return min(L.add(e, Et.act(tuple(v.vector()), lam_image)) for v in quot.elements())
