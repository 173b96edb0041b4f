"""Special-function tests against exact rational oracles."""

import math
from fractions import Fraction

import numpy as np
import pytest

from degjc import _laguerre_py, specialfn
from degjc.specialfn import coherent_overlap, laguerre, laguerre_roots, thermal_weights


def laguerre_exact(n, x):
    """Exact rational L_n(x) from the explicit coefficient sum,
    independent of the recurrence used by the implementation."""
    x = Fraction(x)
    return sum(
        Fraction((-1) ** k * math.comb(n, k), math.factorial(k)) * x**k for k in range(n + 1)
    )


def test_order_zero_is_one_everywhere():
    assert laguerre(0, 17.3) == 1.0
    assert laguerre(0, 0.0) == 1.0


def test_first_order_root():
    assert laguerre(1, 1.0) == 0.0


def test_second_order_value():
    # L_2(x) = 1 - 2x + x^2/2 evaluated exactly: L_2(2) = -1
    assert laguerre_exact(2, 2) == -1
    assert laguerre(2, 2.0) == pytest.approx(-1.0, abs=1e-14)


def test_recurrence_against_rational_oracle_integer_grid():
    for n in range(0, 51, 5):
        for x in range(0, 101, 7):
            exact = laguerre_exact(n, x)
            got = laguerre(n, float(x))
            if exact == 0:
                assert abs(got) < 1e-12
            else:
                assert abs(got - float(exact)) <= 1e-10 * abs(float(exact))


def test_recurrence_against_rational_oracle_dense_orders():
    xs = [Fraction(k, 2) for k in range(50)]
    for n in range(21):
        for x in xs:
            exact = laguerre_exact(n, x)
            got = laguerre(n, float(x))
            scale = max(1e-30, abs(float(exact)))
            assert abs(got - float(exact)) <= 1e-10 * max(scale, 1e-10)


def test_array_evaluation_matches_scalar():
    xs = np.linspace(0.0, 30.0, 57)
    vals = laguerre(12, xs)
    for x, v in zip(xs, vals):
        assert v == pytest.approx(laguerre(12, x), rel=1e-14, abs=1e-300)


def test_backends_agree():
    xs = np.linspace(0.0, 50.0, 201)
    for n in (0, 1, 7, 25, 120):
        compiled = laguerre(n, xs)
        fallback = _laguerre_py.laguerre_array(n, xs)
        np.testing.assert_allclose(compiled, fallback, rtol=1e-13, atol=1e-300)
        assert _laguerre_py.laguerre_scalar(n, 3.25) == pytest.approx(
            laguerre(n, 3.25), rel=1e-13
        )


def test_backend_reported():
    assert specialfn.KERNEL_BACKEND in ("cython", "python")


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        laguerre(-1, 1.0)
    with pytest.raises(ValueError):
        laguerre(2.5, 1.0)
    with pytest.raises(ValueError):
        laguerre(10_001, 1.0)
    with pytest.raises(ValueError):
        laguerre(3, float("nan"))
    with pytest.raises(ValueError):
        laguerre(3, np.array([1.0, float("inf")]))


def test_root_count_and_bounds():
    for n in (1, 2, 5, 25):
        roots = laguerre_roots(n)
        assert len(roots) == n
        assert np.all(roots > 0.0)
        assert np.all(roots < 4 * n + 2)
        # each isolated root changes the sign of L_n
        for r in roots:
            assert laguerre(n, r - 1e-6) * laguerre(n, r + 1e-6) < 0 or abs(
                laguerre(n, r)
            ) < 1e-12


def test_roots_below_cutoff():
    # L_1's single root is exactly 1; a cutoff below it finds nothing
    assert len(laguerre_roots(1, 0.5)) == 0
    assert len(laguerre_roots(1, 4.0)) == 1
    assert laguerre_roots(1, 4.0)[0] == pytest.approx(1.0, abs=1e-12)


def test_thermal_weights_vacuum_limit():
    w, tail = thermal_weights(0.0, 5)
    assert w[0] == 1.0
    assert np.all(w[1:] == 0.0)
    assert tail == 0.0


def test_thermal_weights_unit_occupation():
    # nbar = 1: p_n = 1 / 2^(n+1)
    w, tail = thermal_weights(1.0, 2)
    np.testing.assert_allclose(w, [0.5, 0.25, 0.125], rtol=1e-15)
    assert tail == pytest.approx(0.125, rel=1e-15)


def test_thermal_weights_never_exceed_unity():
    for nbar in (0.0, 0.3, 1.0, 7.5, 25.0):
        for ncut in (0, 3, 40):
            w, tail = thermal_weights(nbar, ncut)
            assert w.sum() <= 1.0 + 1e-14
            assert w.sum() + tail == pytest.approx(1.0, abs=1e-12)


def test_thermal_weights_reject_negative():
    with pytest.raises(ValueError):
        thermal_weights(-0.1, 5)


def test_overlap_normalization():
    for z in (0.0, 1.0, 0.3 - 2.0j):
        assert coherent_overlap(z, z) == pytest.approx(1.0, abs=1e-15)


def test_overlap_vacuum():
    b = 0.7 + 0.2j
    assert coherent_overlap(0.0, b) == pytest.approx(math.exp(-abs(b) ** 2 / 2), abs=1e-15)


def test_overlap_opposite_amplitudes():
    assert coherent_overlap(1.0, -1.0) == pytest.approx(math.exp(-2.0), rel=1e-14)


def test_overlap_against_fock_series(rng):
    # independent check: truncated sum_n conj(c_n(a)) c_n(b)
    def fock(z, ncut=70):
        c = np.empty(ncut + 1, dtype=complex)
        c[0] = math.exp(-0.5 * abs(z) ** 2)
        for n in range(ncut):
            c[n + 1] = c[n] * z / math.sqrt(n + 1)
        return c

    for _ in range(20):
        a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        b = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        series = np.vdot(fock(a), fock(b))
        assert coherent_overlap(a, b) == pytest.approx(series, abs=1e-12)


def test_overlap_bounded_by_one(rng):
    for _ in range(200):
        a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        b = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        mag = abs(coherent_overlap(a, b))
        assert mag <= 1.0 + 1e-12
        if abs(a - b) > 1e-6:
            assert mag < 1.0
