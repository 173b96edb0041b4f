"""Entanglement measures: Wootters concurrence, X-state shortcut, negativity."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import QubitBasis, change_basis

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SYSY = np.kron(_SY, _SY)

X_SHAPE_TOL = 1e-12


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence value with the method used and (for the general method)
    the four descending square-rooted eigenvalues of rho rho-tilde."""

    value: float
    method: str
    spectrum: Optional[np.ndarray] = None


def _psd_sqrt(rho):
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def wootters_concurrence(state):
    """Concurrence C = max(0, s1 - s2 - s3 - s4) of a two-qubit state.

    The s_i are the descending square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy).  The complex conjugation is taken in the
    sigma_z product basis (the basis in which the spin flip sy x sy is
    defined), so the state is converted there first; the result is
    invariant under local unitaries.  The eigenvalues are obtained from
    the equivalent Hermitian product sqrt(rho) rho-tilde sqrt(rho).
    """
    rho = change_basis(state, QubitBasis.SIGMA_Z).rho
    rho_tilde = _SYSY @ rho.conj() @ _SYSY
    rt = _psd_sqrt(rho)
    m = rt @ rho_tilde @ rt
    vals = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    s = np.sqrt(np.clip(vals, 0.0, None))[::-1]
    return ConcurrenceResult(max(0.0, s[0] - s[1] - s[2] - s[3]), "general", s)


def xstate_concurrence(state):
    """Closed-form concurrence for an X-shaped density matrix.

    C = 2 max(0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)),
    evaluated in the state's own basis.  Raises if any entry off the
    diagonal and anti-diagonal exceeds 1e-12.
    """
    rho = state.rho
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = True
    mask[np.arange(4), 3 - np.arange(4)] = True
    off = np.max(np.abs(rho[~mask])) if np.any(~mask) else 0.0
    if off > X_SHAPE_TOL:
        raise ValueError(f"density matrix is not X-shaped: off-X magnitude {off:.3e}")
    d = np.clip(np.real(np.diag(rho)), 0.0, None)
    c_corner = abs(rho[0, 3]) - np.sqrt(d[1] * d[2])
    c_middle = abs(rho[1, 2]) - np.sqrt(d[0] * d[3])
    return ConcurrenceResult(2.0 * max(0.0, c_corner, c_middle), "x-state")


def negativity(rho, dims):
    """Sum of |negative eigenvalues| of the partial transpose over part B.

    ``dims = (dA, dB)`` gives the bipartition of the density matrix; any
    separable state returns 0 (PPT is necessary for separability), so a
    value at numerical zero is the witness used for separability claims.
    """
    rho = np.asarray(rho, dtype=complex)
    da, db = dims
    if rho.shape != (da * db, da * db):
        raise ValueError(f"density matrix shape {rho.shape} does not match dims {dims}")
    pt = rho.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(da * db, da * db)
    vals = np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))
    return float(-vals[vals < 0.0].sum())
