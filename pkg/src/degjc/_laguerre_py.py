"""Pure-Python/numpy fallback for the compiled Laguerre recurrence kernels."""

import numpy as np


def laguerre_scalar(n, x):
    """L_n(x) by the upward recurrence (k+1)L_{k+1} = (2k+1-x)L_k - k L_{k-1}.

    The step multiplies by the reciprocal of k+1 (same arithmetic as the
    compiled kernel, so the two backends agree bit for bit).
    """
    if n == 0:
        return 1.0
    lkm1, lk = 1.0, 1.0 - x
    for k in range(1, n):
        lkm1, lk = lk, ((2 * k + 1 - x) * lk - k * lkm1) * (1.0 / (k + 1))
    return lk


def laguerre_array(n, xs):
    """Vectorized L_n: the recurrence runs over n with numpy doing the x axis."""
    xs = np.asarray(xs, dtype=np.float64)
    if n == 0:
        return np.ones_like(xs)
    lkm1, lk = np.ones_like(xs), 1.0 - xs
    for k in range(1, n):
        lkm1, lk = lk, ((2 * k + 1 - xs) * lk - k * lkm1) * (1.0 / (k + 1))
    return lk
