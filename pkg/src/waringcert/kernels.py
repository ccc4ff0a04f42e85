"""Selects the compiled elimination kernel when available.

Set ``WARINGCERT_PURE_PYTHON=1`` to force the numpy fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("WARINGCERT_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"


def use_backend(name):
    """Switch backend at runtime ("cython" or "python"); returns the previous one."""
    global _impl, BACKEND
    prev = BACKEND
    if name == "python":
        _impl, BACKEND = _kernels_py, "python"
    elif name == "cython":
        from . import _kernels as compiled
        _impl, BACKEND = compiled, "cython"
    else:
        raise ValueError("unknown backend %r" % name)
    return prev


def as_mod(m, p):
    """Copy of ``m`` as a C-contiguous int64 array reduced into [0, p)."""
    a = np.array(m, dtype=np.int64, copy=True, order="C")
    if a.ndim != 2:
        a = a.reshape(len(a), -1) if a.size else np.zeros((len(a), 0), dtype=np.int64)
    a %= p
    return np.ascontiguousarray(a)


def rref_mod(m, p):
    """Reduced row echelon form over GF(p): (basis rows, pivot columns)."""
    a = as_mod(m, p)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a[:0].copy(), []
    pivots = list(_impl.rref_inplace(a, p))
    return a[: len(pivots)].copy(), pivots


def matmul_mod(a, b, p):
    """Product mod p without overflow.

    Small products split the left factor in 16-bit halves and use int64.
    Large ones split both factors into 16-bit limbs and use float64 BLAS:
    each limb product sums at most n terms below 2^32, exact while n < 2^21.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    n = a.shape[-1]
    if a.size * (b.shape[-1] if b.ndim > 1 else 1) < 20000 or n >= 2**21:
        hi = a >> 16
        lo = a & 0xFFFF
        return ((hi @ b) % p * 65536 + (lo @ b) % p) % p
    ah = (a >> 16).astype(np.float64)
    al = (a & 0xFFFF).astype(np.float64)
    bh = (b >> 16).astype(np.float64)
    bl = (b & 0xFFFF).astype(np.float64)
    hh = (ah @ bh).astype(np.int64) % p
    mid = ((ah @ bl).astype(np.int64) + (al @ bh).astype(np.int64)) % p
    ll = (al @ bl).astype(np.int64) % p
    s = 65536 % p
    return ((hh * s % p) * s + mid * s + ll) % p
