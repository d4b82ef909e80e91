from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from drinfeld import carlitz, dm_make, extension, fq
from drinfeld import motive as MO
from drinfeld.fields import FieldElem
from drinfeld.poly import Poly, PolyRing
from drinfeld.verify import random_h_modules, weil_cases, weil_checks

CASES = [(2, (0, 1)), (2, (1, 1)), (2, (1, 1, 1)), (3, (0, 1))]


@lru_cache(maxsize=None)
def cases(q, ncoef):
    return tuple(weil_cases(q, ncoef, 3, seed=0))


@pytest.mark.parametrize("q,ncoef", CASES)
def test_weil_pairing_identities(q, ncoef):
    found = cases(q, ncoef)
    assert len(found) == 3
    for case in found:
        res = weil_checks(case)
        assert all(res.values()), {k: v for k, v in res.items() if not v}


@pytest.mark.parametrize("q,ncoef", CASES)
def test_torsion_structure(q, ncoef):
    case = cases(q, ncoef)[0]
    Et, Ct = case.Et, case.Ct
    d = len(ncoef) - 1
    assert len(Et.points) == q ** (2 * d) and len(Ct.points) == q ** d
    assert Et.is_closed() and Et.killed_by_n()
    assert Ct.is_closed() and Ct.killed_by_n()
    assert len(Et.coordinates()) == len(Et.points)


@st.composite
def pairing_inputs(draw):
    q, ncoef = draw(st.sampled_from(CASES))
    case = draw(st.sampled_from(cases(q, ncoef)))
    pts = case.Et.points
    P, P2, Q = (draw(st.sampled_from(pts)) for _ in range(3))
    a = draw(st.lists(st.integers(0, q - 1), min_size=len(ncoef) - 1, max_size=len(ncoef) - 1))
    return case, P, P2, Q, tuple(a)


@given(pairing_inputs())
def test_weil_bilinear_alternating(data):
    case, P, P2, Q, a = data
    W, Et, Ct, L = case.W, case.Et, case.Ct, case.Et.field
    assert W(L.add(P, P2), Q) == L.add(W(P, Q), W(P2, Q))
    assert W(Et.act(a, P), Q) == Ct.act(a, W(P, Q))
    assert W(P, Q) == L.neg(W(Q, P))
    assert W(P, P) == 0


@given(pairing_inputs(), st.data())
def test_weil_scaling(data, d):
    case, P, _, Q, _ = data
    c = d.draw(st.integers(1, case.E.q - 1))
    L = case.Et.field
    Wc = MO.WeilPairing(case.Et, case.Ct, case.h.act(c))
    assert Wc(P, Q) == L.mul(L.inv(c), case.W(P, Q))


def test_weil_value_generates():
    case = cases(2, (1, 1, 1))[0]
    P, Q = case.Et.basis
    assert case.W.is_generator(case.W(P, Q))
    assert case.W.solve_exhaustive(P, Q) == case.W(P, Q)


def test_weil_rejects_non_torsion():
    case = cases(2, (0, 1))[0]
    bad = next(x for x in range(case.Et.field.order) if x not in case.Et.point_set)
    with pytest.raises(MO.MotiveError):
        case.W(bad, case.Et.basis[0])


@pytest.mark.parametrize("q", [2, 3])
def test_nu_h_on_random_modules(q):
    A = PolyRing(fq(q))
    for E, h in random_h_modules(q, 60, seed=3):
        if h is None:
            continue
        for ncoef in ((0, 1), (1, 0, 1)):
            assert MO.nu_h_check(h, Poly(A, list(ncoef)))


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1)])
def test_boeckle_gram_unit_without_h(q, m):
    K = extension(fq(q), m)
    A = PolyRing(fq(q))
    n = Poly(A, [0, 1])
    checked = 0
    for th in range(1, K.order):
        for a2 in range(1, K.order):
            E = dm_make(K, FieldElem(K, th), [FieldElem(K, 1), FieldElem(K, a2)])
            try:
                B = MO.boeckle_duality(E, n, maxdeg=6)
            except MO.KernelDegreeError:
                continue
            assert MO.aq_det(B.tor.quot, B.gram()).is_unit()
            checked += 1
    assert checked


def test_carlitz_torsion_is_free_rank_one():
    K = fq(3)
    A = PolyRing(K)
    C = carlitz(K, FieldElem(K, 1))
    tor = MO.torsion_points(C, Poly(A, [0, 0, 1]))
    assert len(tor.basis) == 1 and tor.is_free_generator(tor.basis[0])
    assert len(tor.points) == 9


def test_theta_root_rejected():
    K = fq(2)
    A = PolyRing(K)
    E = dm_make(K, FieldElem(K, 0), [FieldElem(K, 1), FieldElem(K, 1)])
    with pytest.raises(MO.MotiveError):
        MO.torsion_points(E, Poly(A, [0, 1]))


def test_mu_scaling_and_coset():
    case = cases(3, (0, 1))[0]
    Et = case.Et
    lam = next(p for p in Et.points if Et.is_free_generator(p))
    mu = MO.mu_from_h(case.W, lam)
    assert MO.coset_rep(Et, lam, mu) == mu
    W2 = MO.WeilPairing(Et, case.Ct, case.h.act(2))
    assert MO.mu_from_h(W2, lam) == MO.coset_rep(Et, lam, Et.field.mul(2, mu))
