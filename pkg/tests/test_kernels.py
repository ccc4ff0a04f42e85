import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from waringcert import _kernels_py, kernels
from waringcert.fields import DEFAULT_PRIME

P = DEFAULT_PRIME

try:
    from waringcert import _kernels as compiled
except ImportError:
    compiled = None


def _reference_rank(m, p):
    a = [[int(x) % p for x in row] for row in m]
    r = 0
    for c in range(len(a[0]) if a else 0):
        sel = next((i for i in range(r, len(a)) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


matrices = st.tuples(st.integers(1, 9), st.integers(1, 9), st.integers(0, 2**32)).map(
    lambda t: np.random.default_rng(t[2]).integers(0, 5, size=(t[0], t[1])).astype(np.int64))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_numpy_kernel_matches_reference(m):
    red, piv = kernels.rref_mod(m, P)
    assert len(piv) == _reference_rank(m, P)


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
@given(matrices)
@settings(max_examples=60, deadline=None)
def test_backends_agree(m):
    a, b = m.copy(), m.copy()
    pa = list(_kernels_py.rref_inplace(a, P))
    pb = list(compiled.rref_inplace(b, P))
    assert pa == pb
    assert np.array_equal(a, b)


def test_backend_switch_round_trips():
    prev = kernels.use_backend("python")
    assert kernels.BACKEND == "python"
    if compiled is not None:
        kernels.use_backend("cython")
        assert kernels.BACKEND == "cython"
    kernels.use_backend(prev)
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.parametrize("shape", [(3, 4, 5), (40, 300, 200)])
def test_matmul_mod_is_exact(shape):
    rng = np.random.default_rng(1)
    n, k, m = shape
    a = rng.integers(0, P, size=(n, k), dtype=np.int64)
    b = rng.integers(0, P, size=(k, m), dtype=np.int64)
    exact = (a.astype(object) @ b.astype(object)) % P
    assert np.array_equal(kernels.matmul_mod(a, b, P), exact.astype(np.int64))
