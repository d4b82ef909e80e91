import pytest
from hypothesis import given, strategies as st

from drinfeld import FieldError, extension, fq
from drinfeld.fields import Embedding, FieldElem, ResourceCapError, get_field, is_prime, prime_factors

FIELDS = [(2, 1), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (9, 1), (5, 2)]


def field(qm):
    q, m = qm
    return extension(fq(q), m)


@st.composite
def field_and_elems(draw, k=3):
    K = field(draw(st.sampled_from(FIELDS)))
    return K, [draw(st.integers(0, K.order - 1)) for _ in range(k)]


@given(field_and_elems())
def test_ring_axioms(data):
    K, (a, b, c) = data
    assert K.add(a, K.add(b, c)) == K.add(K.add(a, b), c)
    assert K.mul(a, K.mul(b, c)) == K.mul(K.mul(a, b), c)
    assert K.mul(a, b) == K.mul(b, a)
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.add(a, K.neg(a)) == 0
    assert K.sub(a, b) == K.add(a, K.neg(b))


@given(field_and_elems(1))
def test_inverse_and_log(data):
    K, (a,) = data
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            K.inv(0)
        return
    assert K.mul(a, K.inv(a)) == 1
    assert K.gen_power(K.log(a)) == a
    assert K.pow(a, K.order - 1) == 1


@given(field_and_elems(2))
def test_frobenius_is_ring_map(data):
    K, (a, b) = data
    assert K.frob(K.add(a, b)) == K.add(K.frob(a), K.frob(b))
    assert K.frob(K.mul(a, b)) == K.mul(K.frob(a), K.frob(b))
    assert K.frob(a) == K.pow(a, K.q)


@pytest.mark.parametrize("qm", FIELDS)
def test_frobenius_fixed_field(qm):
    K = field(qm)
    q, m = qm
    assert [a for a in range(K.order) if K.frob(a) == a] == list(range(q))
    assert all(K.frob(a, m) == a for a in range(K.order))


@pytest.mark.parametrize("qm", FIELDS)
def test_digits_round_trip(qm):
    K = field(qm)
    for a in range(K.order):
        assert K.from_digits(K.digits(a)) == a


def test_elem_wrapper():
    K = extension(fq(3), 2)
    a, b = FieldElem(K, 4), FieldElem(K, 7)
    assert (a * b) / b == a
    assert a - a == 0 and (a + 0) == a
    assert a ** (K.order - 1) == 1
    assert a.inverse() * a == 1
    with pytest.raises(FieldError):
        _ = a + FieldElem(fq(3), 1)


@pytest.mark.parametrize("q,m,k", [(2, 2, 2), (3, 1, 3), (2, 3, 2), (4, 1, 2)])
def test_embedding_is_homomorphism(q, m, k):
    K = extension(fq(q), m)
    L = extension(fq(q), m * k)
    iota = Embedding(K, L)
    for a in range(K.order):
        for b in range(0, K.order, max(1, K.order // 7)):
            assert iota(K.mul(a, b)) == L.mul(iota(a), iota(b))
            assert iota(K.add(a, b)) == L.add(iota(a), iota(b))
    assert iota(1) == 1


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factors(360) == [2, 3, 5]


def test_bad_modulus_and_cap():
    with pytest.raises(FieldError):
        get_field(2, 2, (0, 0, 1))  # t^2 is reducible
    with pytest.raises(ResourceCapError):
        extension(fq(2), 21)
