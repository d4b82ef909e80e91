"""De Rham module of a trivialized rank-2 Drinfeld module in the coordinates b1 tau + b2 tau^2.

Elements are pairs (b1, b2) over the base ring.  The Hodge maps, the
Gauss-Manin connection along a derivation D, the Kodaira-Spencer coordinate and
the pairing attached to an h-structure are all explicit formulas in these
coordinates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .dmodule import DrinfeldModule, HStructure, carlitz, dm_phi
from .fields import GF, FieldElem
from .ore import OrePoly
from .poly import Poly, PolyRing
from .series import TruncSeries


class DerhamError(ValueError):
    pass


def _inv(b):
    return b.inv() if isinstance(b, TruncSeries) else b.inverse()


def _is_zero(b) -> bool:
    return b.is_zero()


@dataclass(frozen=True)
class DRElement:
    module: DrinfeldModule
    b1: object
    b2: object

    @property
    def coords(self):
        return (self.b1, self.b2)

    def __add__(self, other: "DRElement") -> "DRElement":
        return DRElement(self.module, self.b1 + other.b1, self.b2 + other.b2)

    def __sub__(self, other: "DRElement") -> "DRElement":
        return DRElement(self.module, self.b1 - other.b1, self.b2 - other.b2)

    def __neg__(self):
        return DRElement(self.module, -self.b1, -self.b2)

    def scale(self, b) -> "DRElement":
        return DRElement(self.module, b * self.b1, b * self.b2)

    def is_zero(self) -> bool:
        return _is_zero(self.b1) and _is_zero(self.b2)

    def equals(self, other: "DRElement") -> bool:
        return (self - other).is_zero()

    def ore(self) -> OrePoly:
        E = self.module
        return OrePoly(E.base, [E.base.zero(), self.b1, self.b2], E.q)


def dr(E: DrinfeldModule, b1, b2) -> DRElement:
    return DRElement(E, b1, b2)


# ---------------------------------------------------------------------------

class Derivation:
    """A derivation of the base ring, given as a coefficient map."""

    def __init__(self, action: Callable, name: str = "D", samples=(), check: bool = True):
        self.action = action
        self.name = name
        if check:
            bad = self.check(samples)
            if bad:
                raise DerhamError(f"{name} is not a derivation: {bad}")

    def __call__(self, b):
        return self.action(b)

    def check(self, samples) -> list[str]:
        """Leibniz, additivity and D(b^q) = 0 on the sample elements; returns failures."""
        bad = []
        samples = list(samples)
        for f in samples:
            if not _is_zero(self(f.frob(1))):
                bad.append("D(b^q) != 0")
        for f, g in zip(samples, samples[1:]):
            if not _is_zero(self(f * g) - (f * self(g) + g * self(f))):
                bad.append("Leibniz")
            if not _is_zero(self(f + g) - self(f) - self(g)):
                bad.append("additivity")
        return bad

    def scaled(self, b) -> "Derivation":
        return Derivation(lambda f: b * self(f), f"{self.name}*b", check=False)


def d_dx() -> Derivation:
    return Derivation(lambda f: f.derivative(), "d/dx", check=False)


def x2_d_dx(sign: int = -1) -> Derivation:
    """sign * x^2 d/dx."""
    def act(f):
        g = f.derivative().shift(2)
        return -g if sign < 0 else g
    return Derivation(act, "-x^2 d/dx" if sign < 0 else "x^2 d/dx", check=False)


def zero_derivation() -> Derivation:
    return Derivation(lambda f: f - f, "0", check=False)


# ---------------------------------------------------------------------------

def _phi_G(E: DrinfeldModule, G: str, a: Poly) -> OrePoly:
    B = E.base
    if G == "Ga":
        return OrePoly(B, [_eval_theta(E, a)], E.q)
    if G == "C":
        return dm_phi(carlitz(B, E.theta), a)
    raise DerhamError(f"unknown target {G!r}")


def _eval_theta(E: DrinfeldModule, a: Poly):
    B = E.base
    acc = B.zero()
    for c in reversed(a.coeffs):
        acc = acc * E.theta + B.from_fq(c)
    return acc


def biderivation(E: DrinfeldModule, G: str, delta_t: OrePoly, a: Poly) -> OrePoly:
    """delta_a from delta_t by delta_(t^(k+1)) = Phi^G_t delta_(t^k) + delta_t Phi^E_(t^k), F_q-linearly in a."""
    B = E.base
    out = OrePoly(B, [], E.q)
    dk = OrePoly(B, [], E.q)  # delta_1 = 0
    phiG_t = _phi_G(E, G, a.ring.gen())
    phiE_k = OrePoly(B, [B.one()], E.q)
    for k, c in enumerate(a.coeffs):
        if k:
            dk = phiG_t * dk + delta_t * phiE_k
            phiE_k = phiE_k * E.phi_t
        if c:
            out = out + dk.scalar_mul(B.from_fq(c))
    return out


def biderivation_check(E: DrinfeldModule, G: str, delta_t: OrePoly, a: Poly, b: Poly, der0: bool = False) -> bool:
    """delta_(ab) = Phi^G_a delta_b + delta_a Phi^E_b for the biderivation generated by delta_t."""
    if der0 and not _is_zero(delta_t.coeff(0)):
        return False
    da, db, dab = (biderivation(E, G, delta_t, x) for x in (a, b, a * b))
    return dab == _phi_G(E, G, a) * db + da * dm_phi(E, b)


def inner_biderivation(E: DrinfeldModule, G: str, f: OrePoly) -> OrePoly:
    """delta^(f)_t = f Phi^E_t - Phi^G_t f."""
    return f * E.phi_t - _phi_G(E, G, Poly(_poly_ring(E), [0, 1])) * f


def _poly_ring(E: DrinfeldModule):
    B = E.base
    return PolyRing(B.base if isinstance(B, GF) else B.field)


# ---------------------------------------------------------------------------

def _check_rank2(E: DrinfeldModule):
    if E.rank != 2:
        raise DerhamError("the de Rham coordinates are for rank 2")


def hodge_i(E: DrinfeldModule) -> DRElement:
    """i(dX) = alpha_1 tau + alpha_2 tau^2."""
    _check_rank2(E)
    return DRElement(E, E.a1, E.a2)


def hodge_pi(E: DrinfeldModule, phi: DRElement):
    """pi(b1 tau + b2 tau^2) = alpha_2^-1 (alpha_2 b1 - alpha_1 b2), the d/dY coordinate."""
    _check_rank2(E)
    return _inv(E.a2) * (E.a2 * phi.b1 - E.a1 * phi.b2)


def hodge_pr(h: HStructure, phi: DRElement):
    """pi twisted by the autoduality: pi(phi) / H, the coordinate in the dual of omega."""
    return hodge_pi(h.module, phi) * _inv(h.H)


def nabla(E: DrinfeldModule, D: Derivation, phi: DRElement) -> DRElement:
    return DRElement(E, D(phi.b1), D(phi.b2))


def kodaira_spencer(E: DrinfeldModule, D: Derivation):
    """pi(nabla_D(i(dX))) = alpha_2^-1 (alpha_2 D(alpha_1) - alpha_1 D(alpha_2))."""
    return hodge_pi(E, nabla(E, D, hodge_i(E)))


def ks_autodual(h: HStructure, D: Derivation):
    return _inv(h.H) * kodaira_spencer(h.module, D)


def derham_pairing(h: HStructure, phi: DRElement, psi: DRElement):
    """(phi_1 psi_2 - psi_1 phi_2) H^-q."""
    E = h.module
    Hq = h.H.frob(1)
    return (phi.b1 * psi.b2 - psi.b1 * phi.b2) * _inv(Hq)


def h_tau(h: HStructure) -> DRElement:
    E = h.module
    return DRElement(E, h.H, E.base.zero())


def hodge_compatibility_check(h: HStructure, phis) -> bool:
    """<dX, phi> = pr(phi) for every phi given."""
    dX = hodge_i(h.module)
    return all(_is_zero(derham_pairing(h, dX, phi) - hodge_pr(h, phi)) for phi in phis)


def gram(h: HStructure, basis):
    return [[derham_pairing(h, u, v) for v in basis] for u in basis]


def det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def random_dr(E: DrinfeldModule, rng: random.Random) -> DRElement:
    K = E.base
    if not isinstance(K, GF):
        raise DerhamError("random elements are drawn over finite fields")
    return DRElement(E, FieldElem(K, rng.randrange(K.order)), FieldElem(K, rng.randrange(K.order)))


def pi_nabla_i_linear_check(E: DrinfeldModule, D: Derivation, b) -> bool:
    """pi(nabla_D(b dX)) = b KS(D) once the inner representative of b dX is used.

    b dX is represented by b (Phi_t - theta) = b alpha_1 tau + b alpha_2 tau^2; the
    extra terms D(b) (alpha_1, alpha_2) = D(b) i(dX) lie in the kernel of pi.
    """
    i = hodge_i(E).scale(b)
    lhs = hodge_pi(E, nabla(E, D, i))
    return _is_zero(lhs - b * kodaira_spencer(E, D))


def connection_leibniz_check(E: DrinfeldModule, D: Derivation, b, phi: DRElement) -> bool:
    lhs = nabla(E, D, phi.scale(b))
    rhs = phi.scale(D(b)) + nabla(E, D, phi).scale(b)
    return lhs.equals(rhs)
