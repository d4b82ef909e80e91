import pytest

from drinfeld import fq
from drinfeld import tate as TD
from drinfeld.dmodule import autoduality_check
from drinfeld.poly import Poly, PolyRing
from drinfeld.series import PrecisionError


def A(q):
    return PolyRing(fq(q))


@pytest.mark.parametrize("q", [2, 3])
def test_leading_terms_by_hand(q):
    # with only the lattice points c/x, c in F_q^x, e(X) = X (1 - x^(q-1) X^(q-1)) + ...
    # so e1 = -x^(q-1) + ..., a1 = 1 - x^(q-1) (t^q - t) + ..., a2 = -x^(q-1) + ...
    cd = TD.cusp_data(q, 16)
    t = A(q).gen()
    s = q - 1
    assert cd.a1.coeff(0) == A(q).one()
    assert cd.a1.coeff(s) == -(t.frob(1) - t)
    assert cd.a2.val == s and cd.a2.coeff(s) == A(q).from_fq(fq(q).neg(1))
    assert cd.bh.val == 1 and cd.bh.coeff(1) == A(q).one()


@pytest.mark.parametrize("q,prec", [(2, 16), (2, 32), (3, 16), (3, 32)])
def test_coefficients_match_oracle(q, prec):
    a1, a2 = TD.td_coefficients(q, prec)
    o1, o2 = TD.td_coefficients_oracle(q, prec)
    assert (a1 - o1).is_zero() and (a2 - o2).is_zero()
    assert all(TD.membership_checks(q, a1, a2).values())


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("acoef", [(0, 1), (1, 1), (0, 0, 1)])
def test_functional_equation(q, acoef):
    assert TD.functional_equation_check(Poly(A(q), list(acoef)), 32, q ** 3)


@pytest.mark.parametrize("q", [2, 3])
def test_lattice_points(q):
    for a in TD.monic_polys(q, 3):
        s = TD.lattice_point(a)
        assert s.val == -q ** a.degree and s.leading_coeff() == A(q).one()


@pytest.mark.parametrize("q", [2, 3])
def test_exponential(q):
    e = TD.exp_lattice(q, 32, q ** 3)
    assert (e[0] - TD.td_ring(q).one()).is_zero()
    assert e.in_x_power_subring() and e.valuation_bound_holds()
    inv = TD.exp_inverse(e)
    assert e.compose(inv).is_identity() and inv.compose(e).is_identity()
    with pytest.raises(PrecisionError):
        e.truncate(33)


@pytest.mark.parametrize("q", [2, 3])
def test_bh_root_and_extension(q):
    lo, hi = TD.cusp_data(q, 32), TD.cusp_data(q, 64)
    assert (lo.bh ** (q - 1) + lo.a2).is_zero()
    for k in ("a1", "a2", "bh", "l"):
        assert getattr(hi, k).truncate(32).identical(getattr(lo, k))
    assert autoduality_check(lo.h_structure())


@pytest.mark.parametrize("q", [2, 3])
def test_l_and_fq_action(q):
    cd = TD.cusp_data(q, 32)
    assert TD.l_unit_check(cd.l)
    for c in range(1, q):
        assert all(TD.fq_action_check(q, c, 32).values())


def test_multiplicativity():
    t = A(2).gen()
    p1, p2 = TD.td_phi(t, 24), TD.td_phi(t * t, 24, extra=1)
    prod = p1 * p1
    assert all((prod.coeff(i) - p2.coeff(i)).truncate(24).is_zero() for i in range(5))


@pytest.mark.parametrize("q", [2, 3])
def test_product_formula_partial(q):
    r = TD.td_product_formula_check(A(q).gen(), 16)
    assert r["status"] == "unverified"
    assert r["linear_coefficient"] and r["degree"] and r["carlitz_torsion_roots"]


def test_argument_checks():
    with pytest.raises(ValueError):
        TD.cusp_data(3, 8)
    with pytest.raises(TD.TDError):
        TD.td_product_formula_check(A(2).gen() + 1, 16)
    with pytest.raises(ValueError):
        TD.fq_action_check(3, 0, 16)
    assert TD.guard_digits(3) == 4
