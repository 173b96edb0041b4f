"""Truncated-Fock propagator: invariants and closed-form cross-checks."""

import math

import numpy as np
import pytest

from degjc.closedform import (
    concurrence_closed,
    esd_concurrence_closed,
    evolve_spin_coherent,
    single_qubit_coherence,
    two_qubit_offdiagonal,
)
from degjc.entanglement import negativity
from degjc.model import (
    BellState,
    Coherent,
    ModelParams,
    Number,
    QubitBasis,
    Thermal,
    Vacuum,
    make_bell,
    make_esd_mixture,
)
from degjc.oracle import (
    TruncationError,
    TruncationSpec,
    build_hamiltonian,
    coherent_fock_vector,
    concurrence_trace,
    conditional_maps,
    default_ncut,
    field_components,
    field_field_reduced,
    four_party_purities,
    low_spectrum,
    propagate_state,
    two_qubit_reduced,
)

PI = math.pi


def _spin_field_vector(prop, alpha, spin_up):
    f = prop.fock_dim
    vec, _ = coherent_fock_vector(alpha, prop.trunc.ncut)
    psi = np.zeros(prop.dim, dtype=complex)
    psi[0:f] = vec if spin_up else 0.0
    if not spin_up:
        psi[f:] = vec
    return psi


class TestHamiltonian:
    def test_free_spectrum_doubly_degenerate(self):
        prop = build_hamiltonian(ModelParams(omega=1.0), TruncationSpec(30))
        expected = np.repeat(np.arange(10, dtype=float), 2)
        np.testing.assert_allclose(np.sort(prop.energies)[:20], expected, atol=1e-12)

    def test_free_spectrum_with_splitting(self):
        prop = build_hamiltonian(ModelParams(omega=1.0, omega0=0.4), TruncationSpec(30))
        lowest = np.sort(prop.energies)[:4]
        np.testing.assert_allclose(lowest, [-0.2, 0.2, 0.8, 1.2], atol=1e-12)

    @pytest.mark.parametrize("beta", [0.25, 0.5, 1.0])
    def test_degenerate_spectrum_is_equally_spaced(self, beta):
        prop = build_hamiltonian(ModelParams.from_beta(beta), TruncationSpec(40))
        expected = np.repeat(np.arange(5, dtype=float), 2)
        np.testing.assert_allclose(low_spectrum(prop, 10), expected, atol=1e-8)

    def test_ground_energy_is_depth_of_displaced_well(self):
        beta = 0.5
        prop = build_hamiltonian(ModelParams.from_beta(beta), TruncationSpec(40))
        assert np.min(prop.energies) == pytest.approx(-(beta**2), abs=1e-10)

    def test_cutoff_doubling_agreement(self):
        a = build_hamiltonian(ModelParams.from_beta(0.5), TruncationSpec(40))
        b = build_hamiltonian(ModelParams.from_beta(0.5), TruncationSpec(80))
        diff = np.abs(np.sort(a.energies)[:10] - np.sort(b.energies)[:10])
        assert np.max(diff) <= 1e-10

    def test_modes_are_unitary(self):
        prop = build_hamiltonian(ModelParams.from_beta(0.7, omega0=0.3), TruncationSpec(25))
        gram = prop.modes.conj().T @ prop.modes
        assert np.max(np.abs(gram - np.eye(prop.dim))) <= 1e-10


class TestPropagation:
    def test_zero_time_is_identity(self, rng):
        prop = build_hamiltonian(ModelParams.from_beta(0.4), TruncationSpec(15))
        psi = rng.normal(size=prop.dim) + 1j * rng.normal(size=prop.dim)
        psi /= np.linalg.norm(psi)
        np.testing.assert_allclose(propagate_state(prop, psi, 0.0), psi, atol=1e-12)

    def test_norm_preserved(self, rng):
        prop = build_hamiltonian(ModelParams.from_beta(0.6, omega0=0.2), TruncationSpec(20))
        psi = rng.normal(size=prop.dim) + 1j * rng.normal(size=prop.dim)
        psi /= np.linalg.norm(psi)
        out = propagate_state(prop, psi, 3.7)
        assert abs(np.linalg.norm(out) - 1.0) <= 1e-10

    def test_composition(self, rng):
        prop = build_hamiltonian(ModelParams.from_beta(0.5), TruncationSpec(20))
        psi = rng.normal(size=prop.dim) + 1j * rng.normal(size=prop.dim)
        psi /= np.linalg.norm(psi)
        once = propagate_state(prop, psi, 1.1 + 2.3)
        twice = propagate_state(prop, propagate_state(prop, psi, 1.1), 2.3)
        assert np.max(np.abs(once - twice)) <= 1e-9

    def test_norm_drift_over_many_composed_steps(self, rng):
        prop = build_hamiltonian(ModelParams.from_beta(0.5), TruncationSpec(8))
        psi = rng.normal(size=prop.dim) + 1j * rng.normal(size=prop.dim)
        psi /= np.linalg.norm(psi)
        for _ in range(10_000):
            psi = propagate_state(prop, psi, 0.01)
        assert abs(np.linalg.norm(psi) - 1.0) <= 1e-10

    def test_sigma_x_expectation_conserved(self, rng):
        prop = build_hamiltonian(ModelParams.from_beta(0.45), TruncationSpec(25))
        f = prop.fock_dim
        sx_op = np.kron(np.diag([1.0, -1.0]), np.eye(f))
        psi = rng.normal(size=prop.dim) + 1j * rng.normal(size=prop.dim)
        psi /= np.linalg.norm(psi)
        ref = np.vdot(psi, sx_op @ psi).real
        for wt in (0.3, 1.9, 4.4, 11.0):
            out = propagate_state(prop, psi, wt)
            assert abs(np.vdot(out, sx_op @ out).real - ref) <= 1e-10

    def test_dimension_mismatch_rejected(self):
        prop = build_hamiltonian(ModelParams.from_beta(0.4), TruncationSpec(10))
        with pytest.raises(ValueError):
            propagate_state(prop, np.zeros(7), 1.0)

    @pytest.mark.parametrize("spin_up", [True, False])
    def test_matches_analytic_displaced_state(self, spin_up, rng):
        # the propagator omits the constant level shift, hence the extra
        # global factor exp(i beta^2 w t) relative to the analytic phases
        params = ModelParams.from_beta(0.3)
        trunc = TruncationSpec(default_ncut(Coherent(0.4), 0.3))
        prop = build_hamiltonian(params, trunc)
        f = prop.fock_dim
        alpha, wt = 0.4, 1.7
        psi0 = _spin_field_vector(prop, alpha, spin_up)
        evolved = propagate_state(prop, psi0, wt)
        amp, phase = evolve_spin_coherent(alpha, spin_up, 0.3, wt)
        phase *= np.exp(1j * 0.3**2 * wt)
        ref_field, _ = coherent_fock_vector(amp, trunc.ncut)
        ref = np.zeros(prop.dim, dtype=complex)
        if spin_up:
            ref[0:f] = phase * ref_field
        else:
            ref[f:] = phase * ref_field
        assert abs(np.vdot(ref, evolved) - 1.0) <= 1e-8


class TestFieldComponents:
    def test_vacuum_and_number(self):
        trunc = TruncationSpec(10)
        w, v, tail = field_components(Vacuum(), trunc)
        assert w[0] == 1.0 and v[0, 0] == 1.0 and tail == 0.0
        w, v, tail = field_components(Number(4), trunc)
        assert v[4, 0] == 1.0 and tail == 0.0

    def test_number_beyond_cutoff(self):
        with pytest.raises(TruncationError):
            field_components(Number(11), TruncationSpec(10))

    def test_coherent_norm_and_tail(self):
        trunc = TruncationSpec(40)
        w, v, tail = field_components(Coherent(1.2 + 0.3j), trunc)
        assert abs(np.vdot(v[:, 0], v[:, 0]).real + tail - 1.0) <= 1e-12
        assert tail <= trunc.tail_tol

    def test_coherent_truncation_error(self):
        with pytest.raises(TruncationError):
            field_components(Coherent(3.0), TruncationSpec(2))

    def test_thermal_components_and_tail(self):
        trunc = TruncationSpec(80)
        w, v, tail = field_components(Thermal(1.0), trunc)
        assert tail <= trunc.tail_tol
        assert w[0] == pytest.approx(0.5, rel=1e-14)
        assert v.shape[1] == len(w)

    def test_thermal_truncation_error(self):
        with pytest.raises(TruncationError):
            field_components(Thermal(5.0), TruncationSpec(10))


class TestConditionalMaps:
    def test_zero_time_identity_maps(self):
        params = ModelParams.from_beta(0.4)
        trunc = TruncationSpec(default_ncut(Thermal(1.0), 0.4))
        prop = build_hamiltonian(params, trunc)
        maps = conditional_maps(prop, Thermal(1.0), trunc, 0.0)
        norm = 1.0 - maps.tail_mass
        for i in range(2):
            for k in range(2):
                expected = np.zeros((2, 2))
                expected[i, k] = norm
                np.testing.assert_allclose(maps.op(i, k), expected, atol=1e-12)

    def test_structure_invariants(self, rng):
        params = ModelParams.from_beta(0.35, omega0=0.15)
        field = Coherent(0.8)
        trunc = TruncationSpec(default_ncut(field, 0.35))
        prop = build_hamiltonian(params, trunc)
        for wt in rng.uniform(0.0, 2 * PI, size=5):
            maps = conditional_maps(prop, field, trunc, wt)
            m_uu, m_dd = maps.op(0, 0), maps.op(1, 1)
            assert np.max(np.abs(m_uu - m_uu.conj().T)) <= 1e-12
            assert np.max(np.abs(m_dd - m_dd.conj().T)) <= 1e-12
            assert np.trace(m_uu).real == pytest.approx(1.0 - maps.tail_mass, abs=1e-10)
            assert np.trace(m_dd).real == pytest.approx(1.0 - maps.tail_mass, abs=1e-10)
            np.testing.assert_allclose(maps.op(0, 1), maps.op(1, 0).conj().T, atol=1e-12)

    def test_degenerate_diagonal_maps_time_independent(self, rng):
        params = ModelParams.from_beta(0.5)
        field = Number(2)
        trunc = TruncationSpec(default_ncut(field, 0.5))
        prop = build_hamiltonian(params, trunc)
        ref = conditional_maps(prop, field, trunc, 0.0)
        for wt in rng.uniform(0.0, 2 * PI, size=5):
            maps = conditional_maps(prop, field, trunc, wt)
            assert np.max(np.abs(maps.op(0, 0) - ref.op(0, 0))) <= 1e-10
            assert np.max(np.abs(maps.op(1, 1) - ref.op(1, 1))) <= 1e-10

    def test_coherent_entry_matches_closed_form(self):
        params = ModelParams.from_beta(0.3)
        field = Coherent(1.0)
        trunc = TruncationSpec(default_ncut(field, 0.3))
        prop = build_hamiltonian(params, trunc)
        maps = conditional_maps(prop, field, trunc, PI)
        closed = single_qubit_coherence(1.0, field, 0.3, PI)
        assert abs(maps.op(0, 1)[0, 1] - closed) <= 1e-8

    def test_thermal_entry_matches_closed_form(self):
        params = ModelParams.from_beta(0.3)
        field = Thermal(1.0)
        trunc = TruncationSpec(60)
        prop = build_hamiltonian(params, trunc)
        for wt in (0.9, PI, 4.0):
            maps = conditional_maps(prop, field, trunc, wt)
            closed = single_qubit_coherence(1.0, field, 0.3, wt)
            assert maps.tail_mass <= 1e-10
            assert abs(maps.op(0, 1)[0, 1] - closed) <= 1e-7


class TestTwoQubitReduced:
    def _maps(self, beta, field, wt, ncut=None):
        params = ModelParams.from_beta(beta)
        trunc = TruncationSpec(ncut if ncut else default_ncut(field, beta))
        prop = build_hamiltonian(params, trunc)
        return conditional_maps(prop, field, trunc, wt)

    def test_corner_matches_closed_form(self, rng):
        initial = make_bell(BellState.PHI_PLUS, QubitBasis.SIGMA_X)
        for wt in rng.uniform(0.0, 2 * PI, size=4):
            maps = self._maps(0.4, Vacuum(), wt)
            q = two_qubit_reduced(maps, maps, initial)
            closed = two_qubit_offdiagonal(BellState.PHI_PLUS, Vacuum(), 0.4, wt)
            assert abs(q.rho[0, 3] - closed) <= 1e-9

    def test_psi_plus_corner_magnitude(self):
        initial = make_bell(BellState.PSI_PLUS, QubitBasis.SIGMA_X)
        maps = self._maps(0.4, Vacuum(), 1.3)
        q = two_qubit_reduced(maps, maps, initial)
        closed = two_qubit_offdiagonal(BellState.PSI_PLUS, Vacuum(), 0.4, 1.3)
        assert abs(abs(q.rho[0, 3]) - abs(closed)) <= 1e-9

    def test_diagonal_constant_in_time(self, rng):
        initial = make_esd_mixture()
        for wt in rng.uniform(0.0, 2 * PI, size=4):
            maps = self._maps(0.5, Coherent(0.7), wt)
            q = two_qubit_reduced(maps, maps, initial)
            np.testing.assert_allclose(
                np.diag(q.rho).real, np.diag(initial.rho).real, atol=1e-10
            )

    def test_esd_mixture_validates_derived_formula(self):
        # the validation gate for the derived mixed-state concurrence law
        grid = np.linspace(0.0, 2 * PI, 17)
        trace = concurrence_trace(
            ModelParams.from_beta(0.5), Thermal(2.0), make_esd_mixture(), grid
        )
        closed = np.asarray(esd_concurrence_closed(0.5, 2.0, grid))
        assert np.max(np.abs(trace.values - closed)) <= 1e-7

    def test_requires_sigma_x_basis(self):
        maps = self._maps(0.3, Vacuum(), 1.0)
        with pytest.raises(ValueError):
            two_qubit_reduced(maps, maps, make_bell(BellState.PHI_PLUS, QubitBasis.SIGMA_Z))

    def test_output_passes_state_invariants(self, rng):
        # QubitPairState construction re-validates hermiticity/trace/psd
        maps = self._maps(0.6, Thermal(1.0), rng.uniform(0, 2 * PI))
        q = two_qubit_reduced(maps, maps, make_bell(BellState.PHI_MINUS, QubitBasis.SIGMA_X))
        assert abs(np.trace(q.rho) - 1.0) <= 1e-12


class TestConcurrenceTrace:
    def test_vacuum_grid_against_closed_form(self):
        grid = np.linspace(0.0, 2 * PI, 33)
        trace = concurrence_trace(
            ModelParams.from_beta(0.5),
            Vacuum(),
            make_bell(BellState.PHI_PLUS, QubitBasis.SIGMA_X),
            grid,
        )
        closed = concurrence_closed(BellState.PHI_PLUS, Vacuum(), 0.5, grid)
        assert np.max(np.abs(trace.values - closed)) <= 1e-7
        assert trace.doubling_error <= 1e-8

    def test_truncation_error_not_wrong_number(self):
        grid = np.linspace(0.0, 2 * PI, 5)
        with pytest.raises(TruncationError):
            concurrence_trace(
                ModelParams.from_beta(0.1),
                Coherent(3.0),
                make_bell(BellState.PHI_PLUS, QubitBasis.SIGMA_X),
                grid,
                trunc=TruncationSpec(2),
            )

    def test_doubling_check_detects_coarse_cutoff(self):
        # a cutoff that truncates real dynamics must be flagged, not silently used
        grid = np.linspace(0.0, 2 * PI, 5)
        with pytest.raises(TruncationError):
            concurrence_trace(
                ModelParams.from_beta(1.0),
                Vacuum(),
                make_bell(BellState.PHI_PLUS, QubitBasis.SIGMA_X),
                grid,
                trunc=TruncationSpec(3, tail_tol=0.5),
                convergence_tol=1e-10,
            )


class TestFieldField:
    def _prop(self, beta, field):
        trunc = TruncationSpec(default_ncut(field, beta))
        return build_hamiltonian(ModelParams.from_beta(beta), trunc), trunc

    def test_zero_time_product_state(self):
        prop, trunc = self._prop(0.5, Vacuum())
        f = prop.fock_dim
        rho = field_field_reduced(prop, BellState.PHI_PLUS, Vacuum(), trunc, 0.0)
        assert negativity(rho, (f, f)) <= 1e-12

    def test_separability_at_half_period(self):
        prop, trunc = self._prop(0.75, Vacuum())
        f = prop.fock_dim
        rho = field_field_reduced(prop, BellState.PHI_PLUS, Vacuum(), trunc, PI)
        assert negativity(rho, (f, f)) <= 1e-9

    def test_purities(self):
        prop, trunc = self._prop(0.75, Vacuum())
        qp, fp = four_party_purities(prop, BellState.PHI_PLUS, Vacuum(), trunc, PI)
        assert qp == pytest.approx(0.5, abs=1e-12)
        # field branches +-b(t) with |b| = 2 beta: purity 1/2 + e^{-4|b|^2}/2
        assert fp == pytest.approx(0.5 + 0.5 * math.exp(-9.0), abs=1e-10)

    def test_mixed_field_rejected(self):
        prop, trunc = self._prop(0.3, Vacuum())
        with pytest.raises(ValueError):
            field_field_reduced(prop, BellState.PHI_PLUS, Thermal(1.0), trunc, 1.0)


class TestDefaultNcut:
    def test_minimum(self):
        assert default_ncut(Vacuum(), 0.0) >= 1

    def test_scales_with_occupation(self):
        assert default_ncut(Thermal(25.0), 0.1) > default_ncut(Thermal(1.0), 0.1)
        assert default_ncut(Number(25), 0.1) > default_ncut(Number(1), 0.1)
        assert default_ncut(Coherent(3.0), 0.1) > default_ncut(Coherent(0.5), 0.1)

    def test_thermal_tail_fits(self):
        for nbar in (0.5, 1.0, 2.0, 25.0):
            ncut = default_ncut(Thermal(nbar), 0.1)
            r = nbar / (1.0 + nbar)
            assert r ** (ncut + 1) <= 1e-10
