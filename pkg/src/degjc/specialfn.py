"""Scalar special functions used by the closed-form dynamics.

Laguerre evaluation is delegated to a compiled kernel when the optional
extension was built; otherwise the numpy fallback is used.  The selected
backend is exported as ``KERNEL_BACKEND`` ("cython" or "python") and can
be forced to the fallback with the environment variable
``DEGJC_PURE_PYTHON=1``.
"""

import math
import os

import numpy as np

from . import _laguerre_py

if os.environ.get("DEGJC_PURE_PYTHON") == "1":
    _kernels = _laguerre_py
    KERNEL_BACKEND = "python"
else:
    try:
        from . import _laguerre_cy as _kernels

        KERNEL_BACKEND = "cython"
    except ImportError:
        _kernels = _laguerre_py
        KERNEL_BACKEND = "python"

MAX_LAGUERRE_ORDER = 10_000


def laguerre(n, x):
    """Evaluate the (unassociated) Laguerre polynomial L_n(x).

    Uses the stable upward recurrence; accepts a scalar or an array of
    arguments.  ``n`` must be an integer in [0, 10_000] and ``x`` finite.
    """
    if n != int(n) or n < 0:
        raise ValueError(f"Laguerre order must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n > MAX_LAGUERRE_ORDER:
        raise ValueError(f"Laguerre order {n} exceeds supported maximum {MAX_LAGUERRE_ORDER}")
    if np.ndim(x) == 0:
        if not math.isfinite(x):
            raise ValueError(f"Laguerre argument must be finite, got {x!r}")
        return _kernels.laguerre_scalar(n, float(x))
    xs = np.ascontiguousarray(x, dtype=np.float64)
    if not np.all(np.isfinite(xs)):
        raise ValueError("Laguerre argument must be finite")
    if n > 128:
        # the numpy recurrence pipelines across elements and overtakes the
        # serial per-element compiled chain at large order
        return _laguerre_py.laguerre_array(n, xs)
    return _kernels.laguerre_array(n, xs)


def laguerre_roots(n, x_max=None, grid_points=None):
    """Positive real roots of L_n below ``x_max``, isolated by bisection.

    All n roots lie in (0, 4n+2); a sign-change scan on a dense grid
    brackets them and 80 bisection steps polish each bracket.
    """
    if n == 0:
        return np.array([])
    hi = 4.0 * n + 2.0
    if x_max is not None:
        hi = min(hi, float(x_max))
    if hi <= 0.0:
        return np.array([])
    m = grid_points if grid_points is not None else max(4000, 200 * n)
    xs = np.linspace(0.0, hi, m + 1)
    vals = laguerre(n, xs)
    vals[0] = 1.0  # L_n(0) = 1 exactly
    roots = [xs[i] for i in np.nonzero(vals == 0.0)[0]]  # roots hit by the grid
    sign_flip = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    for i in sign_flip:
        a, b = xs[i], xs[i + 1]
        fa = vals[i]
        for _ in range(80):
            mid = 0.5 * (a + b)
            fm = laguerre(n, mid)
            if fa * fm <= 0.0:
                b = mid
            else:
                a, fa = mid, fm
        roots.append(0.5 * (a + b))
    return np.sort(np.array(roots))


def thermal_weights(nbar, ncut):
    """Fock-diagonal weights of a thermal state, p_n = nbar^n / (1+nbar)^(n+1).

    Returns ``(weights, tail)`` for n = 0..ncut.  The weights are left
    unnormalized: ``tail`` is the exact probability mass beyond ncut,
    (nbar/(1+nbar))^(ncut+1), and feeds the truncation-error bound.
    """
    if nbar < 0 or not math.isfinite(nbar):
        raise ValueError(f"thermal occupation must be finite and >= 0, got {nbar!r}")
    if ncut < 0:
        raise ValueError(f"ncut must be >= 0, got {ncut!r}")
    n = np.arange(ncut + 1)
    if nbar == 0.0:
        weights = np.zeros(ncut + 1)
        weights[0] = 1.0
        return weights, 0.0
    ratio = nbar / (1.0 + nbar)
    weights = np.exp(n * math.log(ratio)) / (1.0 + nbar)
    tail = ratio ** (ncut + 1)
    return weights, tail


def coherent_overlap(a, b):
    """Inner product of two coherent states, <a|b> = exp(-|a|^2/2 - |b|^2/2 + a* b)."""
    a = complex(a)
    b = complex(b)
    return np.exp(-0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + np.conj(a) * b)
