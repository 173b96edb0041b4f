"""Brute-force verifier in a truncated Fock space.

Builds the full (no rotating-wave approximation) qubit-oscillator
Hamiltonian

    H / omega = a'a + beta (a' + a) sigma_x + (omega0 / 2 omega) sigma_z

as a dense Hermitian matrix on C^2 x C^(ncut+1), diagonalizes it once and
propagates by phase multiplication in the eigenbasis.  All two-qubit
observables are reconstructed from single-subsystem conditional maps; the
joint four-party state is only materialized (as a vector) for the
field-field separability witness.  Nothing here references the closed
forms: agreement between the two routes is the correctness argument.

The truncation policy (default cutoff heuristic, thermal mixture cutoff
from the tail tolerance, cutoff-doubling convergence check) is a library
convention and is reported in all output metadata.

Qubit matrices are written in the sigma_x eigenbasis (up, down), matching
the two-qubit index convention of :mod:`degjc.model`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import wootters_concurrence
from .model import (
    Coherent,
    ModelParams,
    Number,
    QubitBasis,
    QubitPairState,
    Thermal,
    Vacuum,
    bell_ket,
)
from .specialfn import thermal_weights


class TruncationError(RuntimeError):
    """Truncated basis too small for the requested accuracy, or solver failure."""


@dataclass(frozen=True)
class TruncationSpec:
    """Fock cutoff (states 0..ncut) and acceptable truncated probability mass."""

    ncut: int
    tail_tol: float = 1e-10

    def __post_init__(self):
        if self.ncut < 1:
            raise ValueError(f"ncut must be >= 1, got {self.ncut!r}")
        if not (0 < self.tail_tol < 1):
            raise ValueError(f"tail_tol must be in (0, 1), got {self.tail_tol!r}")

    def doubled(self):
        return TruncationSpec(2 * self.ncut, self.tail_tol)


@dataclass(frozen=True)
class SubsystemPropagator:
    """Eigendecomposition of one qubit-oscillator block.

    ``energies`` holds the dimensionless eigenvalues E/omega, ``modes`` the
    orthonormal eigenvector matrix; U(w t) = modes exp(-i energies w t) modes'.
    """

    params: ModelParams
    trunc: TruncationSpec
    energies: np.ndarray
    modes: np.ndarray

    @property
    def dim(self):
        return self.energies.shape[0]

    @property
    def fock_dim(self):
        return self.trunc.ncut + 1


def build_hamiltonian(params, trunc):
    """Dense Hermitian subsystem Hamiltonian, eigendecomposed once."""
    f = trunc.ncut + 1
    n = np.arange(f, dtype=float)
    ad_a = np.diag(n)
    x_op = np.diag(np.sqrt(n[1:]), 1) + np.diag(np.sqrt(n[1:]), -1)
    sx = np.diag([1.0, -1.0])  # sigma_x in its own eigenbasis
    sz = np.array([[0.0, 1.0], [1.0, 0.0]])  # sigma_z flips up <-> down
    h = (
        np.kron(np.eye(2), ad_a)
        + params.beta * np.kron(sx, x_op)
        + (params.omega0 / (2.0 * params.omega)) * np.kron(sz, np.eye(f))
    )
    try:
        energies, modes = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise TruncationError(
            f"eigensolver failed for dim={2 * f}, beta={params.beta:g}, "
            f"max|H|={np.max(np.abs(h)):.3e}: {exc}"
        ) from exc
    return SubsystemPropagator(params=params, trunc=trunc, energies=energies, modes=modes)


def propagate_state(prop, state, omega_t):
    """Apply U(w t) = V exp(-i E w t) V' to a subsystem state vector."""
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != prop.dim:
        raise ValueError(f"state dimension {state.shape[0]} != propagator dimension {prop.dim}")
    w = prop.modes.conj().T @ state
    phases = np.exp(-1j * prop.energies * omega_t)
    if state.ndim == 1:
        return prop.modes @ (phases * w)
    return prop.modes @ (phases[:, None] * w)


def coherent_fock_vector(alpha, ncut):
    """Truncated Fock expansion of |alpha>; returns (vector, lost mass)."""
    alpha = complex(alpha)
    c = np.empty(ncut + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(ncut):
        c[n + 1] = c[n] * alpha / math.sqrt(n + 1)
    return c, max(0.0, 1.0 - float(np.vdot(c, c).real))


def thermal_component_count(nbar, tail_tol):
    """Smallest K with thermal mass beyond K at most tail_tol."""
    if nbar == 0.0:
        return 0
    r = nbar / (1.0 + nbar)
    k = max(0, math.ceil(math.log(tail_tol) / math.log(r)) - 1)
    while r ** (k + 1) > tail_tol:
        k += 1
    return k


def field_components(field, trunc):
    """Decompose a field state into weighted pure Fock-space vectors.

    Returns ``(weights, vectors, tail)`` with ``vectors`` of shape
    (ncut+1, K): coherent/number/vacuum give a single column, thermal
    states a Fock-diagonal mixture truncated at the tail tolerance.
    """
    f = trunc.ncut + 1
    if isinstance(field, Vacuum):
        v = np.zeros((f, 1), dtype=complex)
        v[0, 0] = 1.0
        return np.array([1.0]), v, 0.0
    if isinstance(field, Number):
        if field.n > trunc.ncut:
            raise TruncationError(f"Fock index {field.n} exceeds cutoff {trunc.ncut}")
        v = np.zeros((f, 1), dtype=complex)
        v[field.n, 0] = 1.0
        return np.array([1.0]), v, 0.0
    if isinstance(field, Coherent):
        c, tail = coherent_fock_vector(field.alpha0, trunc.ncut)
        if tail > trunc.tail_tol:
            raise TruncationError(
                f"coherent state |alpha|={abs(field.alpha0):g} loses mass {tail:.3e} "
                f"at ncut={trunc.ncut} (tolerance {trunc.tail_tol:g})"
            )
        return np.array([1.0]), c[:, None], tail
    if isinstance(field, Thermal):
        k = min(thermal_component_count(field.nbar, trunc.tail_tol), trunc.ncut)
        weights, tail = thermal_weights(field.nbar, k)
        if tail > trunc.tail_tol:
            raise TruncationError(
                f"thermal mixture nbar={field.nbar:g} has tail {tail:.3e} at "
                f"ncut={trunc.ncut} (tolerance {trunc.tail_tol:g})"
            )
        vecs = np.zeros((f, k + 1), dtype=complex)
        vecs[np.arange(k + 1), np.arange(k + 1)] = 1.0
        return weights, vecs, tail
    raise TypeError(f"unsupported field class: {field!r}")


@dataclass(frozen=True)
class SubsystemConditionalMap:
    """The four 2x2 qubit operators M_ik(t) = Tr_field[U (|i><k| x F) U'].

    ``ops[i, k]`` is the 2x2 matrix M_ik; M_uu and M_dd are Hermitian with
    trace equal to the (truncated) field norm, and M_ud = M_du'.
    """

    ops: np.ndarray
    tail_mass: float
    omega_t: float

    def op(self, i, k):
        return self.ops[i, k]


class _MapEngine:
    """Propagates the field components of both qubit rails and assembles
    conditional maps at arbitrary phases, reusing the eigenbasis overlap."""

    def __init__(self, prop, field, trunc=None):
        trunc = trunc if trunc is not None else prop.trunc
        self.prop = prop
        self.weights, vecs, self.tail = field_components(field, trunc)
        f = prop.fock_dim
        k = vecs.shape[1]
        psi0 = np.zeros((prop.dim, 2 * k), dtype=complex)
        psi0[:f, :k] = vecs
        psi0[f:, k:] = vecs
        self._w = prop.modes.conj().T @ psi0
        self._k = k

    def evolved(self, omega_t):
        phases = np.exp(-1j * self.prop.energies * omega_t)
        return self.prop.modes @ (phases[:, None] * self._w)

    def maps_at(self, omega_t):
        f = self.prop.fock_dim
        k = self._k
        a = self.evolved(omega_t).reshape(2, f, 2, k)
        ops = np.einsum("pmin,qmkn,n->ikpq", a, a.conj(), self.weights, optimize=True)
        return SubsystemConditionalMap(ops=ops, tail_mass=self.tail, omega_t=float(omega_t))


def conditional_maps(prop, field, trunc, omega_t):
    """Conditional maps of one subsystem for a given initial field."""
    return _MapEngine(prop, field, trunc).maps_at(omega_t)


def two_qubit_reduced(map_a, map_b, initial):
    """Reduced two-qubit state Q(t) from per-subsystem conditional maps.

    Valid because the two subsystem Hamiltonians commute, so
    Q(t) = sum rho[(ij),(kl)] M^A_ik x M^B_jl.  ``initial`` must be given
    in the sigma_x basis and describe qubits that are uncorrelated with
    the fields.  The truncated-mixture trace deficit (bounded by the tail
    masses) is renormalized away; tail masses stay reported on the maps.
    """
    if initial.basis is not QubitBasis.SIGMA_X:
        raise ValueError("initial two-qubit state must be expressed in the sigma_x basis")
    rho4 = initial.rho.reshape(2, 2, 2, 2)
    q = np.einsum("ijkl,ikpr,jlqs->pqrs", rho4, map_a.ops, map_b.ops, optimize=True).reshape(4, 4)
    q = 0.5 * (q + q.conj().T)
    q /= np.trace(q).real
    return QubitPairState(q, QubitBasis.SIGMA_X)


def _four_party_tensor(prop, bell, field, trunc, omega_t):
    """Evolved pure state of (qubit A, field a, qubit B, field b) as a
    (2, F, 2, F) tensor, for identical pure fields on both subsystems."""
    if isinstance(field, Thermal):
        raise ValueError("four-party pure-state construction requires a pure field")
    weights, vecs, tail = field_components(field, trunc)
    f = prop.fock_dim
    psi0 = np.zeros((prop.dim, 2), dtype=complex)
    psi0[:f, 0] = vecs[:, 0]
    psi0[f:, 1] = vecs[:, 0]
    evolved = propagate_state(prop, psi0, omega_t)  # columns: rails up, down
    rails = evolved.T.reshape(2, 2, f)  # [initial rail, qubit out, field out]
    c2 = bell_ket(bell, QubitBasis.SIGMA_X).astype(complex).reshape(2, 2)
    psi = np.einsum("pq,prm,qsn->rmsn", c2, rails, rails, optimize=True)
    return psi, tail


def field_field_reduced(prop, bell, field, trunc, omega_t):
    """Reduced density matrix of the two fields, with both qubits traced out.

    The initial state is the Bell state ``bell`` with identical pure fields
    on both subsystems.  Returns the (F^2, F^2) matrix, trace-normalized.
    """
    psi, _ = _four_party_tensor(prop, bell, field, trunc, omega_t)
    f = prop.fock_dim
    rho = np.einsum("rmsn,rMsN->mnMN", psi, psi.conj(), optimize=True).reshape(f * f, f * f)
    rho /= np.trace(rho).real
    return rho


def four_party_purities(prop, bell, field, trunc, omega_t):
    """Single-party reduced purities of the evolved four-party pure state.

    Returns ``(qubit_purity, field_purity)``: Tr[rho_A^2] for one qubit and
    Tr[rho_a^2] for one field.  For a Bell input the qubit purity stays at
    1/2 exactly; the field purity is 1/2 + |<b(t)|-b(t)>|^2 / 2 for vacuum
    input and approaches 1/2 as the branches become orthogonal.
    """
    psi, _ = _four_party_tensor(prop, bell, field, trunc, omega_t)
    norm = np.vdot(psi, psi).real
    rho_q = np.einsum("rmsn,Rmsn->rR", psi, psi.conj(), optimize=True) / norm
    rho_f = np.einsum("rmsn,rMsn->mM", psi, psi.conj(), optimize=True) / norm
    return (
        float(np.trace(rho_q @ rho_q).real),
        float(np.trace(rho_f @ rho_f).real),
    )


def low_spectrum(prop, k):
    """Lowest k dimensionless eigenvalues shifted so the ground level is 0."""
    e = np.sort(prop.energies)[:k]
    return e - e[0]


def default_ncut(field, beta, tail_tol=1e-10):
    """Starting cutoff: reach of the displaced dynamics plus margin.

    ceil((|alpha0| + 2 beta + 3 sqrt(nbar) + sqrt(N))^2) + 20, raised for
    thermal states so the mixture tail fits the tolerance.  The
    cutoff-doubling convergence check is the actual contract; this is only
    the initial guess.
    """
    a0 = abs(field.alpha0) if isinstance(field, Coherent) else 0.0
    nb = field.nbar if isinstance(field, Thermal) else 0.0
    nn = field.n if isinstance(field, Number) else 0
    ncut = math.ceil((a0 + 2.0 * beta + 3.0 * math.sqrt(nb) + math.sqrt(nn)) ** 2) + 20
    if nb > 0:
        ncut = max(ncut, thermal_component_count(nb, tail_tol) + 30)
    return max(ncut, 1)


@dataclass(frozen=True)
class OracleTrace:
    """Concurrence trace with the truncation evidence that backs it.

    ``doubling_error`` is the largest entrywise disagreement between the
    reconstructed two-qubit matrices at ncut and 2*ncut on the checked
    subgrid (an extraction-noise-free measure of truncation convergence).
    """

    omega_ts: np.ndarray
    values: np.ndarray
    ncut: int
    tail_mass: float
    doubling_error: float
    doubling_points: int


def _reconstruct(params, field, initial, omega_ts, trunc):
    prop = build_hamiltonian(params, trunc)
    engine = _MapEngine(prop, field)
    values = np.empty(len(omega_ts))
    qmats = np.empty((len(omega_ts), 4, 4), dtype=complex)
    for i, wt in enumerate(omega_ts):
        maps = engine.maps_at(wt)
        q = two_qubit_reduced(maps, maps, initial)
        qmats[i] = q.rho
        values[i] = wootters_concurrence(q).value
    return values, qmats, engine.tail


def concurrence_trace(
    params,
    field,
    initial,
    omega_ts,
    trunc=None,
    check_convergence=True,
    convergence_tol=1e-8,
    max_doubling_points=9,
):
    """Oracle concurrence of ``initial`` (sigma_x basis) under identical fields.

    Runs at the requested cutoff and, unless disabled, re-runs a subsample
    of the grid at twice the cutoff; entrywise matrix disagreement beyond
    ``convergence_tol`` raises :class:`TruncationError`.
    """
    omega_ts = np.asarray(omega_ts, dtype=float)
    if trunc is None:
        trunc = TruncationSpec(default_ncut(field, params.beta))
    values, qmats, tail = _reconstruct(params, field, initial, omega_ts, trunc)
    doubling_error = 0.0
    n_check = 0
    if check_convergence:
        n_check = min(len(omega_ts), max_doubling_points)
        idx = np.unique(np.round(np.linspace(0, len(omega_ts) - 1, n_check)).astype(int))
        _, qcheck, _ = _reconstruct(params, field, initial, omega_ts[idx], trunc.doubled())
        doubling_error = float(np.max(np.abs(qcheck - qmats[idx])))
        if doubling_error > convergence_tol:
            raise TruncationError(
                f"cutoff-doubling disagreement {doubling_error:.3e} exceeds "
                f"{convergence_tol:g} (ncut={trunc.ncut}); raise ncut"
            )
    return OracleTrace(
        omega_ts=omega_ts,
        values=values,
        ncut=trunc.ncut,
        tail_mass=tail,
        doubling_error=doubling_error,
        doubling_points=n_check,
    )
