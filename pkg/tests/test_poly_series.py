import pytest
from hypothesis import assume, given, strategies as st

from drinfeld import PrecisionError, fq
from drinfeld import linalg
from drinfeld.poly import Poly, PolyRing, QuotientRing, residue_at_infinity, residue_gram, residue_pairing
from drinfeld.series import SeriesRing

QS = [2, 3, 4]


@st.composite
def polys(draw, k=2, maxdeg=6):
    q = draw(st.sampled_from(QS))
    A = PolyRing(fq(q))
    return A, [Poly(A, draw(st.lists(st.integers(0, q - 1), max_size=maxdeg + 1))) for _ in range(k)]


@given(polys(3))
def test_poly_ring_axioms(data):
    A, (a, b, c) = data
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == A.zero()


@given(polys(2))
def test_division_and_xgcd(data):
    A, (a, b) = data
    assume(not b.is_zero())
    quo, rem = a.divmod(b)
    assert quo * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree
    g, u, v = a.xgcd(b)
    assert u * a + v * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


def _monic(A, cs):
    return Poly(A, list(cs) + [1])


@st.composite
def modulus_and_lifts(draw):
    q = draw(st.sampled_from([2, 3]))
    A = PolyRing(fq(q))
    n = _monic(A, draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=3)))
    coeffs = st.lists(st.integers(0, q - 1), max_size=5)
    a, b, k1, k2 = (Poly(A, draw(coeffs)) for _ in range(4))
    return n, a, b, k1, k2


@given(modulus_and_lifts())
def test_residue_pairing_is_lift_independent(data):
    n, a, b, k1, k2 = data
    assert residue_at_infinity(a * b, n) == residue_at_infinity((a + k1 * n) * (b + k2 * n), n)


@given(modulus_and_lifts())
def test_residue_pairing_symmetric_and_bilinear(data):
    n, a, b, k1, _ = data
    Q = QuotientRing(n)
    x, y, z = Q(a), Q(b), Q(k1)
    assert residue_pairing(n, x, y) == residue_pairing(n, y, x)
    F = n.field
    assert residue_pairing(n, x + z, y) == F.add(residue_pairing(n, x, y), residue_pairing(n, z, y))


@pytest.mark.parametrize("q,ncoef", [(2, (0, 1)), (2, (1, 1, 1)), (2, (0, 0, 1)), (3, (0, 1)), (3, (1, 0, 1)),
                                     (3, (0, 1, 2, 1))])
def test_residue_pairing_is_perfect(q, ncoef):
    A = PolyRing(fq(q))
    n = Poly(A, list(ncoef))
    assert linalg.det(fq(q), residue_gram(n)) != 0


def test_residue_known_values():
    A = PolyRing(fq(3))
    t = A.gen()
    # Res_inf(dt / t) = -1
    assert residue_at_infinity(A.one(), t) == fq(3).neg(1)
    assert residue_at_infinity(t, t * t * t) == 0


def test_quotient_ring_units():
    A = PolyRing(fq(2))
    Q = QuotientRing(Poly(A, [1, 1, 1]))
    units = [x for x in Q.elements() if x.is_unit()]
    assert len(units) == 3
    for u in units:
        assert u * u.inverse() == Q.one()
    Z = QuotientRing(Poly(A, [0, 0, 1]))
    with pytest.raises(ZeroDivisionError):
        Z.t().inverse()


# -- series -------------------------------------------------------------------------

@st.composite
def series(draw, unit=False, kind="A"):
    q = draw(st.sampled_from([2, 3]))
    F = fq(q)
    R = SeriesRing(F, kind)
    A = PolyRing(F)
    n = draw(st.integers(1, 10))
    if kind == "A":
        cs = [Poly(A, draw(st.lists(st.integers(0, q - 1), max_size=3))) for _ in range(n)]
        if unit:
            cs[0] = A.from_fq(draw(st.integers(1, q - 1)))
    else:
        cs = [draw(st.integers(0, q - 1)) for _ in range(n)]
        if unit:
            cs[0] = draw(st.integers(1, q - 1))
    val = draw(st.integers(-3, 3))
    return q, R, R.series(cs, val, None)


@given(series(unit=True), st.integers(5, 25))
def test_series_inverse(data, prec):
    q, R, s = data
    inv = s.inv(prec)
    prod = s * inv - R.one()
    assert prod.is_zero()
    assert prod.prec >= prec + s.val


@given(series(unit=True, kind="Fq"), st.integers(5, 25))
def test_series_inverse_over_fq(data, prec):
    q, R, s = data
    assert (s * s.inv(prec) - R.one()).is_zero()


@given(st.sampled_from([2, 3, 4]), st.lists(st.integers(0, 1), min_size=4, max_size=14))
def test_root_q_minus_1(q, bits):
    F = fq(q)
    R = SeriesRing(F, "A")
    A = PolyRing(F)
    u = R.series([A.one()] + [Poly(A, [b, 1 - b]) for b in bits], 0, len(bits) + 1)
    r = u.root_q_minus_1()
    assert (r ** (q - 1) - u).is_zero()
    assert (r.truncate(1) - R.one().truncate(1)).is_zero()


@given(series(), series())
def test_series_multiplication_commutes(a, b):
    qa, Ra, x = a
    qb, _, y = b
    assume(qa == qb)
    x, y = x.truncate(12), Ra.series(y.coeffs(y.val, y.val + 5) if y.val is not None else [], y.val or 0, 12)
    assert (x * y - y * x).is_zero()


@given(series(), series())
def test_derivative_leibniz(a, b):
    qa, R, x = a
    qb, _, y = b
    assume(qa == qb)
    y = R.series(y.coeffs(y.val, y.val + 6) if y.val is not None else [], y.val or 0, None)
    lhs = (x * y).derivative()
    rhs = x.derivative() * y + x * y.derivative()
    assert (lhs - rhs).is_zero()


def test_derivative_kills_qth_powers():
    R = SeriesRing(fq(3), "A")
    A = PolyRing(fq(3))
    s = R.series([Poly(A, [1, 2]), Poly(A, [0, 1]), A.one()], -1, 20)
    assert s.frob(1).derivative().is_zero()


def test_precision_is_tracked():
    R = SeriesRing(fq(2), "A")
    s = R.series([R.poly_ring.one()] * 5, 0, 5)
    assert (s + R.x(7)).prec == 5
    assert (s * R.x(3)).prec == 8
    assert s.truncate(3).prec == 3
    with pytest.raises(PrecisionError):
        s.coeff(5)


def test_series_identical_and_shift():
    R = SeriesRing(fq(2), "A")
    s = R.series([R.poly_ring.gen(), R.poly_ring.one()], 1, 10)
    assert s.shift(-1).val == 0 and s.shift(-1).prec == 9
    assert s.identical(s.shift(2).shift(-2))
    assert not s.identical(s.truncate(9))
