"""Closed-form dynamics of degenerate qubits coupled to local oscillators.

Everything here is an exact function of the dimensionless phase w*t (omega
times time).  The single time-dependent control variable is

    gamma(t) = exp(i w t) - 1,       |gamma|^2 = 2 - 2 cos(w t) in [0, 4],

a circle of radius 1 around -1 in the complex plane.  A qubit coherence
picks up the field-independent envelope exp(-2 beta^2 |gamma|^2) times the
normally-ordered characteristic function of the initial field evaluated at
-2 beta gamma; two-qubit corner coherences carry the doubled exponent
4 beta^2 |gamma|^2 and the characteristic factor squared.

All functions accept scalar or array ``omega_t`` and are pure.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import BellState, Coherent, Number, Thermal, Vacuum
from .specialfn import laguerre


def _scalar(omega_t):
    return np.ndim(omega_t) == 0


@dataclass(frozen=True)
class GammaValue:
    """exp(i w t) - 1 together with |gamma|^2 = 2 - 2 cos(w t)."""

    omega_t: object
    gamma: object
    abs2: object


@dataclass(frozen=True)
class CoherenceFactor:
    """Magnitude and phase of Q_updown(t)/Q_updown(0) for a given field.

    For fields with a nonnegative diagonal coherent-state weight (vacuum,
    coherent, thermal) the magnitude never exceeds the field-independent
    envelope exp(-2 beta^2 |gamma|^2).  Number states are nonclassical:
    |L_N(x)| may exceed 1, but |L_N(x)| <= e^{x/2} keeps the magnitude <= 1.
    """

    magnitude: float
    phase: float
    field: object
    beta: float
    omega_t: float

    @property
    def envelope(self):
        return modulation_factor(self.beta, self.omega_t)


def gamma(omega_t):
    """The circulating displacement factor exp(i w t) - 1."""
    g = np.exp(1j * np.asarray(omega_t, dtype=float)) - 1.0
    abs2 = 2.0 - 2.0 * np.cos(omega_t)
    if _scalar(omega_t):
        return GammaValue(float(omega_t), complex(g), float(abs2))
    return GammaValue(np.asarray(omega_t, dtype=float), g, abs2)


def modulation_factor(beta, omega_t):
    """Field-independent single-qubit coherence envelope exp(-2 b^2 |gamma|^2)."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    return np.exp(-2.0 * beta**2 * gamma(omega_t).abs2)


def characteristic_integral(field, beta, g):
    """Fourier transform of the field's diagonal coherent-state weight.

    Equals the normally-ordered characteristic function at -2 beta gamma:

    * Coherent(a0):  exp(4 i beta Im[a0 gamma*])   (pure phase),
    * Number(N):     L_N(4 beta^2 |gamma|^2)        (real),
    * Thermal(nbar): exp(-4 nbar beta^2 |gamma|^2)  (real Gaussian),
    * Vacuum:        1.
    """
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    if isinstance(field, Vacuum):
        if _scalar(g.abs2):
            return 1.0 + 0.0j
        return np.ones_like(g.abs2, dtype=complex)
    if isinstance(field, Coherent):
        return np.exp(4j * beta * np.imag(field.alpha0 * np.conj(g.gamma)))
    if isinstance(field, Number):
        val = laguerre(field.n, 4.0 * beta**2 * g.abs2)
        return complex(val) if _scalar(val) else val.astype(complex)
    if isinstance(field, Thermal):
        val = np.exp(-4.0 * field.nbar * beta**2 * g.abs2)
        return complex(val) if _scalar(val) else val.astype(complex)
    raise TypeError(f"unsupported field class: {field!r}")


def single_qubit_coherence(q0, field, beta, omega_t):
    """Evolved off-diagonal element of one qubit's reduced density matrix.

    Q_updown(t) = q0 * exp(-2 beta^2 |gamma|^2) * characteristic_integral.
    A density-matrix coherence satisfies |q0| <= 1/2; q0 = 1 is accepted and
    returns the bare propagation factor.
    """
    if abs(q0) > 1.0 + 1e-12:
        raise ValueError(f"|q0| must be <= 1, got {abs(q0)!r}")
    g = gamma(omega_t)
    return q0 * np.exp(-2.0 * beta**2 * g.abs2) * characteristic_integral(field, beta, g)


def coherence_factor(field, beta, omega_t):
    """Package the unit-coherence evolution as magnitude and phase."""
    val = single_qubit_coherence(0.5, field, beta, omega_t) / 0.5
    return CoherenceFactor(
        magnitude=float(np.abs(val)),
        phase=float(np.angle(val)),
        field=field,
        beta=beta,
        omega_t=float(omega_t),
    )


def two_qubit_offdiagonal(bell, field, beta, omega_t):
    """The single nonvanishing off-diagonal element of the evolved pair state.

    For Phi+ (sigma_x corner up-up/down-down):
        (1/2) exp(-4 beta^2 |gamma|^2) * I^2,
    for Phi- (sigma_x middle up-down/down-up):
        (1/2) exp(-4 beta^2 |gamma|^2) * |I|^2,
    with I the characteristic integral of the (identical) initial fields.
    Psi+- evolve into local-unitary images of Phi+- and are mapped to the
    same values; only the magnitude enters the concurrence.
    """
    g = gamma(omega_t)
    env = np.exp(-4.0 * beta**2 * g.abs2)
    ci = characteristic_integral(field, beta, g)
    if bell in (BellState.PHI_PLUS, BellState.PSI_PLUS):
        return 0.5 * env * ci * ci
    if bell in (BellState.PHI_MINUS, BellState.PSI_MINUS):
        return 0.5 * env * np.abs(ci) ** 2
    raise TypeError(f"unsupported Bell state: {bell!r}")


def concurrence_closed(bell, field, beta, omega_t):
    """Concurrence of the evolved pair state, C = 2 |off-diagonal element|.

    Identical for all four Bell inputs.  Per field class:

    * Coherent / Vacuum:  exp(-4 beta^2 |gamma|^2),
    * Number(N):          exp(-4 beta^2 |gamma|^2) L_N(4 beta^2 |gamma|^2)^2,
    * Thermal(nbar):      exp(-4 (1+2 nbar) beta^2 |gamma|^2).
    """
    if bell not in BellState:
        raise TypeError(f"unsupported Bell state: {bell!r}")
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    g = gamma(omega_t)
    if isinstance(field, (Vacuum, Coherent)):
        return np.exp(-4.0 * beta**2 * g.abs2)
    if isinstance(field, Number):
        return np.exp(-4.0 * beta**2 * g.abs2) * laguerre(field.n, 4.0 * beta**2 * g.abs2) ** 2
    if isinstance(field, Thermal):
        return np.exp(-4.0 * (1.0 + 2.0 * field.nbar) * beta**2 * g.abs2)
    raise TypeError(f"unsupported field class: {field!r}")


def concurrence_at_half_period(field, beta):
    """Concurrence at w t = pi, where 4 beta^2 |gamma|^2 peaks at 16 beta^2.

    Coherent: exp(-16 b^2); Number(N): exp(-16 b^2) L_N(16 b^2)^2;
    Thermal(nbar): exp(-16 b^2 (1+2 nbar)).  Coincides bit-for-bit with
    ``concurrence_closed`` at omega_t = pi because |gamma(pi)|^2 == 4.
    """
    return concurrence_closed(BellState.PHI_PLUS, field, beta, math.pi)


def esd_concurrence_closed(beta, nbar, omega_t):
    """Concurrence of the evolved 3/4-Phi+ + 1/8 + 1/8 mixture, thermal fields.

    The diagonals stay at (3/8, 1/8, 1/8, 3/8) while the corner coherence
    follows the Phi+ thermal factor, giving the X-state value

        max(0, (3/4) exp(-4 (1+2 nbar) beta^2 |gamma|^2) - 1/4),

    which vanishes on a finite interval iff 16 (1+2 nbar) beta^2 >= ln 3.
    Validated against the truncated-Fock propagator in the test suite.
    """
    g = gamma(omega_t)
    val = 0.75 * np.exp(-4.0 * (1.0 + 2.0 * nbar) * beta**2 * g.abs2) - 0.25
    return np.maximum(0.0, val)


def evolved_vacuum_state_amplitude(beta, omega_t):
    """Coherent amplitude beta * gamma*(t) of the vacuum-field evolved branches.

    The Phi+ x vacuum x vacuum initial state evolves into
    (|up up, b(t), b(t)> + |down down, -b(t), -b(t)>)/sqrt(2) with
    b(t) = beta (exp(-i w t) - 1).
    """
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    return beta * np.conj(gamma(omega_t).gamma)


def evolve_spin_coherent(alpha, spin_up, beta, omega_t):
    """Exact evolution of |spin, alpha> in the degenerate regime.

    Returns ``(amplitude, phase)``: the evolved coherent amplitude and the
    accumulated unit-modulus phase factor, for real beta >= 0:

        spin up:   (alpha+beta) e^{-i w t} - beta,
                   e^{-i beta^2 sin w t} e^{ i beta Im[alpha gamma*(t)]},
        spin down: (alpha-beta) e^{-i w t} + beta,
                   e^{-i beta^2 sin w t} e^{ i beta Im[alpha* gamma(t)]}.

    alpha = -beta (spin up) sits at the center of its displacement circle
    and is a fixed point of the amplitude map.

    The phases are for the convention in which the subsystem ground energy
    is shifted to zero.  The numerical propagator omits that constant
    (ground energy -beta^2 omega), so its states carry an extra global
    factor exp(i beta^2 w t); relative phases are convention-free.
    """
    if beta < 0:
        raise ValueError(f"beta must be real and >= 0, got {beta!r}")
    alpha = complex(alpha)
    g = gamma(omega_t)
    rot = np.exp(-1j * np.asarray(omega_t, dtype=float))
    common = np.exp(-1j * beta**2 * np.sin(omega_t))
    if spin_up:
        amplitude = (alpha + beta) * rot - beta
        phase = common * np.exp(1j * beta * np.imag(alpha * np.conj(g.gamma)))
    else:
        amplitude = (alpha - beta) * rot + beta
        phase = common * np.exp(1j * beta * np.imag(np.conj(alpha) * g.gamma))
    if _scalar(omega_t):
        return complex(amplitude), complex(phase)
    return amplitude, phase
