# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled three-term-recurrence kernels for Laguerre polynomial evaluation.

Hot path of the number-state concurrence sweeps and of the root-isolation
bisections; `degjc._laguerre_py` provides the drop-in fallback.
"""

import numpy as np


cpdef double laguerre_scalar(long n, double x):
    """L_n(x) by the upward recurrence (k+1)L_{k+1} = (2k+1-x)L_k - k L_{k-1}."""
    cdef double lkm1 = 1.0
    cdef double lk = 1.0 - x
    cdef double nxt
    cdef long k
    if n == 0:
        return 1.0
    if n == 1:
        return lk
    for k in range(1, n):
        # multiply by the reciprocal: the division depends only on k and
        # stays off the serial dependency chain
        nxt = ((2 * k + 1 - x) * lk - k * lkm1) * (1.0 / (k + 1))
        lkm1 = lk
        lk = nxt
    return lk


def laguerre_array(long n, double[::1] xs):
    """Vectorized L_n over a contiguous float64 array."""
    cdef Py_ssize_t m = xs.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(m):
        o[i] = laguerre_scalar(n, xs[i])
    return out
