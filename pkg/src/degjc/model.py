"""Domain types, basis conventions and initial-state constructors.

Conventions used throughout the package:

* the qubit sigma_x eigenbasis is written (up, down) with
  sigma_x|up> = |up>, sigma_x|down> = -|down>; the sigma_z eigenbasis is
  (e, g) with sigma_z|e> = |e>, sigma_z|g> = -|g>;
* |up> = (|e> + |g>)/sqrt(2), so coordinates transform between the two
  bases by the (self-inverse) Hadamard map per qubit;
* two-qubit indices are ordered (qubit A, qubit B): in the sigma_x basis
  the product states are (up up, up down, down up, down down).

Bell states are defined in the sigma_z basis, Phi+- = (|ee> +- |gg>)/sqrt(2)
and Psi+- = (|eg> +- |ge>)/sqrt(2); a basis tag on every two-qubit density
matrix keeps the representation explicit.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
HADAMARD2 = np.kron(HADAMARD, HADAMARD)

# Density-matrix validation tolerances: ~100x machine-epsilon headroom for
# accumulated 4x4 algebra.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10


class QubitBasis(Enum):
    SIGMA_X = "sigma_x"
    SIGMA_Z = "sigma_z"


class BellState(Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


@dataclass(frozen=True)
class ModelParams:
    """Oscillator frequency, qubit splitting and coupling (all rad/time).

    ``beta`` is always recomputed as lam/omega, never stored.  Closed-form
    results are only valid in the degenerate regime omega0 == 0; the
    numerical propagator accepts any omega0 >= 0.
    """

    omega: float
    omega0: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be finite and > 0, got {self.omega!r}")
        if not (math.isfinite(self.omega0) and self.omega0 >= 0):
            raise ValueError(f"omega0 must be finite and >= 0, got {self.omega0!r}")
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise ValueError(f"lambda must be finite and >= 0, got {self.lam!r}")

    @property
    def beta(self):
        return self.lam / self.omega

    @property
    def degenerate(self):
        return self.omega0 == 0.0

    def require_degenerate(self):
        if not self.degenerate:
            raise ValueError(
                f"closed-form results require omega0 == 0, got omega0={self.omega0!r}"
            )

    @classmethod
    def from_beta(cls, beta, omega=1.0, omega0=0.0):
        return cls(omega=omega, omega0=omega0, lam=beta * omega)


@dataclass(frozen=True)
class Vacuum:
    def __str__(self):
        return "vacuum"


@dataclass(frozen=True)
class Coherent:
    alpha0: complex

    def __post_init__(self):
        a = complex(self.alpha0)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ValueError(f"coherent amplitude must be finite, got {self.alpha0!r}")
        object.__setattr__(self, "alpha0", a)

    def __str__(self):
        return f"coherent:alpha={self.alpha0.real:g},{self.alpha0.imag:g}"


@dataclass(frozen=True)
class Number:
    n: int

    def __post_init__(self):
        if self.n != int(self.n) or self.n < 0:
            raise ValueError(f"Fock index must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def __str__(self):
        return f"number:n={self.n}"


@dataclass(frozen=True)
class Thermal:
    nbar: float

    def __post_init__(self):
        if not (math.isfinite(self.nbar) and self.nbar >= 0):
            raise ValueError(f"thermal occupation must be finite and >= 0, got {self.nbar!r}")

    def __str__(self):
        return f"thermal:nbar={self.nbar:g}"


FieldSpec = Union[Vacuum, Coherent, Number, Thermal]


@dataclass(frozen=True)
class QubitPairState:
    """A validated 4x4 two-qubit density matrix with an explicit basis tag."""

    rho: np.ndarray
    basis: QubitBasis
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"two-qubit density matrix must be 4x4, got shape {rho.shape}")
        if self.validate:
            herm = np.max(np.abs(rho - rho.conj().T))
            if herm > HERMITICITY_TOL:
                raise ValueError(f"density matrix not Hermitian: deviation {herm:.3e}")
            tr = np.trace(rho)
            if abs(tr - 1.0) > TRACE_TOL:
                raise ValueError(f"density matrix trace {tr!r} differs from 1")
            lo = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
            if lo < PSD_TOL:
                raise ValueError(f"density matrix not positive semidefinite: min eig {lo:.3e}")
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)


_BELL_KETS_Z = {
    BellState.PHI_PLUS: np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0),
    BellState.PHI_MINUS: np.array([1.0, 0.0, 0.0, -1.0]) / math.sqrt(2.0),
    BellState.PSI_PLUS: np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2.0),
    BellState.PSI_MINUS: np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0),
}


def bell_ket(variant, basis):
    """State vector of a Bell state in the requested basis coordinates."""
    ket = _BELL_KETS_Z[variant]
    if basis is QubitBasis.SIGMA_X:
        ket = HADAMARD2 @ ket
    return ket


def make_bell(variant, basis=QubitBasis.SIGMA_Z):
    """Density matrix of a Bell state, expressed in the requested basis."""
    ket = bell_ket(variant, basis)
    return QubitPairState(np.outer(ket, ket.conj()), basis)


def make_esd_mixture():
    """Mixed two-qubit state 3/4 Phi+ + 1/8 |ud><ud| + 1/8 |du><du|.

    An X-shaped matrix in the sigma_x basis: diagonal (3/8, 1/8, 1/8, 3/8)
    with corner coherences 3/8.  Unlike pure Bell inputs it can lose all
    entanglement for a finite interval under thermal fields.
    """
    rho = np.diag([3.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0, 3.0 / 8.0]).astype(complex)
    rho[0, 3] = rho[3, 0] = 3.0 / 8.0
    return QubitPairState(rho, QubitBasis.SIGMA_X)


def change_basis(state, target):
    """Re-express a two-qubit state in the target basis (per-qubit Hadamard)."""
    if state.basis is target:
        return state
    rho = HADAMARD2 @ state.rho @ HADAMARD2
    return QubitPairState(rho, target)
