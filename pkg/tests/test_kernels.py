import importlib.util
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from drinfeld import _kernels as K


def mats(p):
    return hnp.arrays(np.int64, hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=12),
                      elements=st.integers(0, p - 1))


@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), mats(p))))
def test_rref_backends_agree(data):
    p, m = data
    inv = K.inverse_table(p)
    red, piv = K._rref_numpy(m, p, inv)
    red2, piv2 = K._rref_loops(m.copy(), p, inv)
    assert np.array_equal(red, red2) and np.array_equal(piv, piv2)
    if K.HAVE_NUMBA:
        red3, piv3 = K._rref_compiled(m.copy(), p, inv)
        assert np.array_equal(red, red3) and np.array_equal(piv, piv3)


@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), mats(p))))
def test_nullspace_and_solve(data):
    p, m = data
    ns = K.nullspace_mod_p(m, p)
    assert ns.shape[0] == m.shape[1] - K.rank_mod_p(m, p)
    if ns.size:
        assert not ((m @ ns.T) % p).any()
    x = np.arange(m.shape[1], dtype=np.int64) % p
    sol = K.solve_mod_p(m, (m @ x) % p, p)
    assert sol is not None and not (((m @ sol) - (m @ x)) % p).any()


@st.composite
def conv_inputs(draw):
    p = draw(st.sampled_from([2, 3]))
    shape = (draw(st.integers(1, 8)), draw(st.integers(1, 4)), draw(st.integers(1, 2)))
    arr = hnp.arrays(np.int64, shape, elements=st.integers(0, p - 1))
    return p, draw(arr), draw(arr), draw(st.integers(1, 16))


@given(conv_inputs())
def test_conv3_backends_agree(data):
    p, a, b, n = data
    ref = K._conv3_numpy(a, b, p, n)
    assert np.array_equal(ref, K._conv3_loops(a, b, p, n))
    if K.HAVE_NUMBA:
        assert np.array_equal(ref, K._conv3_compiled(a, b, p, n))


def test_inverse_table():
    for p in (2, 3, 5, 7):
        inv = K.inverse_table(p)
        assert all((a * inv[a]) % p == 1 for a in range(1, p))


@pytest.mark.parametrize("flag,want", [("1", "numpy"), ("0", "numba" if importlib.util.find_spec("numba") else "numpy")])
def test_env_flag_selects_backend(flag, want):
    env = dict(os.environ, DRINFELD_DISABLE_NUMBA=flag)
    code = "from drinfeld import backend, tate; print(backend()); print(tate.cusp_data(3, 16).bh.coeffs(1, 6))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    name, digits = out.splitlines()
    assert name == want
    from drinfeld import tate
    assert digits == str(tate.cusp_data(3, 16).bh.coeffs(1, 6))
