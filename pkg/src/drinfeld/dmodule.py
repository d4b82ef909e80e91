"""Drinfeld modules with trivialized line bundle, Taguchi duals and h-structures."""
from __future__ import annotations

from .fields import GF, FieldElem
from .ore import OrePoly
from .poly import ModElem, Poly, PolyRing, QuotientRing
from .series import SeriesRing, TruncSeries


class DrinfeldError(ValueError):
    pass


def _inv(b):
    if isinstance(b, TruncSeries):
        return b.inv()
    return b.inverse()


def _is_unit(b) -> bool:
    return b.is_unit()


class DrinfeldModule:
    """Phi_t = theta + alpha_1 tau + ... + alpha_r tau^r over the coefficient ring ``base``."""

    def __init__(self, base, theta, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise DrinfeldError("rank must be at least 1")
        if len(coeffs) > 2:
            raise DrinfeldError("only ranks 1 and 2 are supported")
        if not _is_unit(coeffs[-1]):
            raise DrinfeldError("leading coefficient alpha_r must be a unit")
        self.base = base
        self.theta = theta
        self.rank = len(coeffs)
        self.alphas = tuple(coeffs)
        self.phi_t = OrePoly(base, [theta] + coeffs)
        self.q = base.q

    def alpha(self, i: int):
        if i == 0:
            return self.theta
        return self.alphas[i - 1] if i <= self.rank else self.base.zero()

    @property
    def a1(self):
        return self.alpha(1)

    @property
    def a2(self):
        return self.alpha(2)

    def phi(self, a: Poly) -> OrePoly:
        return dm_phi(self, a)

    def __eq__(self, other):
        return (isinstance(other, DrinfeldModule) and self.rank == other.rank
                and self.theta == other.theta and self.phi_t == other.phi_t)

    __hash__ = None

    def __repr__(self):
        return f"DrinfeldModule(rank={self.rank}, phi_t={self.phi_t!r})"


def dm_make(base, theta, coeffs) -> DrinfeldModule:
    return DrinfeldModule(base, theta, coeffs)


def carlitz(base, theta=None) -> DrinfeldModule:
    """Phi_t = theta + tau; over A (or A((x))) theta defaults to t."""
    if theta is None:
        if isinstance(base, PolyRing):
            theta = base.gen()
        elif isinstance(base, SeriesRing):
            theta = base.t()
        else:
            raise DrinfeldError("theta must be given for this base ring")
    return DrinfeldModule(base, theta, [base.one()])


def dm_phi(E: DrinfeldModule, a: Poly) -> OrePoly:
    """Phi_a = a(Phi_t) by Horner's rule in B{tau}."""
    B = E.base
    r = OrePoly(B, [], E.q)
    for c in reversed(a.coeffs):
        r = r * E.phi_t
        if c:
            r = r + OrePoly(B, [B.from_fq(c)], E.q)
    return r


def j_invariant(E: DrinfeldModule):
    if E.rank != 2:
        raise DrinfeldError("j-invariant is defined for rank 2")
    a1, a2 = E.alphas
    return (a1 ** (E.q + 1)) * _inv(a2)


def dual(E: DrinfeldModule) -> DrinfeldModule:
    """Taguchi dual: Phi_t = theta - alpha_1/alpha_2 tau + alpha_2^(-q) tau^2."""
    if E.rank != 2:
        raise DrinfeldError("the dual formula is for rank 2")
    a1, a2 = E.alphas
    a2inv = _inv(a2)
    return DrinfeldModule(E.base, E.theta, [-(a1 * a2inv), a2inv.frob(1)])


def twist(E: DrinfeldModule, u) -> DrinfeldModule:
    """The module F with Phi^F_t = u Phi^E_t u^-1, i.e. alpha_i u^(1-q^i)."""
    uinv = _inv(u)
    return DrinfeldModule(E.base, E.theta, [u * a * uinv.frob(i + 1) for i, a in enumerate(E.alphas)])


def hom_check(u, E: DrinfeldModule, F: DrinfeldModule) -> bool:
    """Is multiplication by u a morphism E -> F, i.e. Phi^F_t u = u Phi^E_t?"""
    if E.rank != F.rank:
        return False
    U = OrePoly(E.base, [u], E.q)
    return F.phi_t * U == U * E.phi_t


# ---------------------------------------------------------------------------

class HStructure:
    """A unit H with H^(q-1) = -alpha_2 on a rank-2 module."""

    def __init__(self, module: DrinfeldModule, H, check: bool = True):
        if module.rank != 2:
            raise DrinfeldError("h-structures live on rank-2 modules")
        self.module = module
        self.H = H
        if check and not self.is_valid():
            raise DrinfeldError("H^(q-1) != -alpha_2")

    def is_valid(self) -> bool:
        E = self.module
        return _is_unit(self.H) and self.H ** (E.q - 1) == -E.a2

    def act(self, c: int) -> "HStructure":
        """[c](H) = c^-1 H for c in F_q^x."""
        B = self.module.base
        cinv = B.from_fq(_fq_inv(B, c))
        return HStructure(self.module, cinv * self.H)

    def scaled(self, c: int) -> "HStructure":
        """The h-structure c*H."""
        return HStructure(self.module, self.module.base.from_fq(c) * self.H)

    def __repr__(self):
        return f"HStructure(H={self.H!r})"


def _fq_inv(B, c: int) -> int:
    F = _base_field(B)
    return F.inv(c)


def _base_field(B) -> GF:
    if isinstance(B, GF):
        return B
    return B.field


def h_structure_find(E: DrinfeldModule):
    """An H with H^(q-1) = -alpha_2, or None if the base ring has none.

    Over a finite field the root is read off the discrete log table: a root
    exists iff (q-1) divides log(-alpha_2), i.e. (-alpha_2)^((Q-1)/(q-1)) = 1.
    Over A((x)) the x-valuation must be divisible by q-1, the leading
    coefficient must be 1, and the unit part is handled by Newton iteration;
    the result is normalized to H = x^(v/(q-1)) (1 + O(x)).
    """
    if E.rank != 2:
        raise DrinfeldError("h-structures need rank 2")
    B, q = E.base, E.q
    beta = -E.a2
    if isinstance(B, GF):
        F = B
        b = beta.code
        if F.order == 2 or q == 2:
            return HStructure(E, beta)
        L = F.log(b)
        if L % (q - 1):
            return None
        return HStructure(E, FieldElem(F, F.gen_power(L // (q - 1))))
    if isinstance(B, SeriesRing):
        v = beta.val
        if v is None or v % (q - 1):
            return None
        lead = beta.leading_coeff()
        one = B.array_to_coeff(B.coeff_to_array(1))
        if lead != one:
            return None
        u = beta.shift(-v)
        s = u.root_q_minus_1()
        return HStructure(E, s.shift(v // (q - 1)))
    if isinstance(B, PolyRing):
        if beta.degree != 0:
            return None
        F = B.field
        c = beta.coeffs[0]
        if q == 2:
            return HStructure(E, beta)
        L = F.log(c)
        if L % (q - 1):
            return None
        return HStructure(E, B.from_fq(F.gen_power(L // (q - 1))))
    raise DrinfeldError(f"h-structures over {B!r} are not supported")


def h_exists_criterion(E: DrinfeldModule) -> bool:
    """(-alpha_2)^((Q-1)/(q-1)) == 1 over a finite field of order Q."""
    F = E.base
    if not isinstance(F, GF):
        raise DrinfeldError("the exponent criterion is for finite fields")
    return F.pow((-E.a2).code, (F.order - 1) // (E.q - 1)) == 1


def h_structures_bruteforce(E: DrinfeldModule) -> list:
    """All H in k^x with H^(q-1) = -alpha_2, by enumeration."""
    F = E.base
    target = (-E.a2).code
    return [FieldElem(F, h) for h in F.units() if F.pow(h, E.q - 1) == target]


def autoduality_check(h: HStructure) -> bool:
    """Phi^{E^D}_t * H == H * Phi^E_t in B{tau}."""
    E = h.module
    D = dual(E)
    Hp = OrePoly(E.base, [h.H], E.q)
    return D.phi_t * Hp == Hp * E.phi_t
