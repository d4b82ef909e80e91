import random

import pytest
from hypothesis import given, strategies as st

from drinfeld import derham as DR
from drinfeld import fq
from drinfeld import tate as TD
from drinfeld.dmodule import HStructure
from drinfeld.fields import FieldElem
from drinfeld.ore import OrePoly
from drinfeld.poly import Poly, PolyRing
from drinfeld.verify import random_h_modules


def td(q, prec=32):
    cd = TD.cusp_data(q, prec)
    E = TD.td_module_from(cd)
    return cd, E, HStructure(E, cd.bh)


@pytest.mark.parametrize("q", [2, 3])
def test_cusp_identities(q):
    cd, E, h = td(q)
    R = TD.td_ring(q)
    dX = DR.hodge_i(E)
    eta = DR.DRElement(E, *cd.eta)
    assert DR.hodge_pi(E, dX).is_zero()
    assert (DR.derham_pairing(h, dX, DR.h_tau(h)) - R.one()).is_zero()
    det = DR.det2([[cd.a1, cd.eta[0]], [cd.a2, cd.eta[1]]])
    assert det.val == q and det.shift(-q).is_unit_power_series()
    g = DR.derham_pairing(h, dX, eta)
    assert g.is_unit_power_series()
    assert (g - cd.l.shift(2) * cd.a2 * cd.bh.frob(1).inv()).is_zero()


@pytest.mark.parametrize("q", [2, 3])
def test_kodaira_spencer(q):
    cd, E, h = td(q)
    D = DR.d_dx()
    assert (DR.kodaira_spencer(E, D) - cd.l).is_zero()
    ka = DR.ks_autodual(h, D)
    assert ka.val == -2 and ka.shift(2).is_unit_power_series()
    assert DR.pi_nabla_i_linear_check(E, D, cd.a2 * cd.l)
    assert DR.connection_leibniz_check(E, D, cd.a1, DR.DRElement(E, *cd.eta))


@pytest.mark.parametrize("q", [2, 3])
def test_eta_from_connection(q):
    cd, E, _ = td(q)
    dX = DR.hodge_i(E)
    lhs = DR.nabla(E, DR.x2_d_dx(), dX) + dX.scale(cd.a2.derivative().shift(2) / cd.a2)
    assert lhs.equals(DR.DRElement(E, *cd.eta))


@pytest.mark.parametrize("q", [2, 3])
def test_gram_is_alternating_unit(q):
    cd, E, h = td(q)
    G = DR.gram(h, [DR.hodge_i(E), DR.DRElement(E, *cd.eta)])
    assert G[0][0].is_zero() and G[1][1].is_zero() and (G[0][1] + G[1][0]).is_zero()
    assert DR.det2(G).is_unit_power_series()


def finite_h_modules():
    return [(E, h) for q in (2, 3) for E, h in random_h_modules(q, 40, seed=1) if h is not None]


@given(st.sampled_from(finite_h_modules()), st.randoms(use_true_random=False))
def test_hodge_compatibility_finite(mod, rng):
    E, h = mod
    phis = [DR.random_dr(E, rng) for _ in range(3)] + [DR.hodge_i(E), DR.h_tau(h)]
    assert DR.hodge_compatibility_check(h, phis)
    u = phis[0]
    assert DR.derham_pairing(h, u, u).is_zero()


@given(st.sampled_from(finite_h_modules()), st.randoms(use_true_random=False))
def test_biderivation_rule(mod, rng):
    E, _ = mod
    K = E.base
    A = PolyRing(fq(E.q))
    dt = OrePoly(K, [K.zero()] + [FieldElem(K, rng.randrange(K.order)) for _ in range(3)])
    a = Poly(A, [rng.randrange(E.q) for _ in range(3)])
    b = Poly(A, [rng.randrange(E.q) for _ in range(3)])
    for G in ("Ga", "C"):
        assert DR.biderivation_check(E, G, dt, a, b, der0=True)


def test_inner_biderivation():
    for E, _ in finite_h_modules()[:10]:
        K = E.base
        assert DR.inner_biderivation(E, "Ga", OrePoly(K, [K.one()])) == E.phi_t - E.theta


def test_derivation_checks():
    q = 3
    R = TD.td_ring(q)
    A = PolyRing(fq(q))
    rng = random.Random(5)
    samples = [R.series([Poly(A, [rng.randrange(q) for _ in range(3)]) for _ in range(8)], rng.randrange(-2, 3), 20)
               for _ in range(5)]
    assert DR.d_dx().check(samples) == []
    bad = DR.Derivation(lambda f: f, "identity", check=False)
    assert bad.check(samples)
    with pytest.raises(DR.DerhamError):
        DR.Derivation(lambda f: f, "identity", samples=samples)


def test_rank_check():
    from drinfeld import carlitz
    K = fq(2)
    with pytest.raises(DR.DerhamError):
        DR.hodge_i(carlitz(K, K.one()))
