"""Gate protocol: ideal-oracle behavior, linearity, fidelity reductions
and the building blocks of the operating-point search."""

import math

import numpy as np
import pytest

from forstergate.gate import (
    REFERENCE_OPERATING_POINT,
    GateSimulator,
    OperatingPoint,
    QubitState,
    _find_root,
    _wrap,
    excitation_pattern,
    fidelity_to_pure,
    ideal_gate_unitary,
    single_qubit_rotation,
    uhlmann_fidelity,
)

TOFFOLI_PERMUTATION = [0, 1, 2, 3, 4, 7, 6, 5]


@pytest.fixture(scope="module")
def ideal_sim(model):
    return GateSimulator(model, REFERENCE_OPERATING_POINT, ideal_amplitudes=True)


@pytest.fixture(scope="module")
def real_sim(model):
    return GateSimulator(model, REFERENCE_OPERATING_POINT)


class TestExcitationPattern:
    def test_controls_excite_from_one(self):
        assert excitation_pattern(0b000) == (False, True, False)
        assert excitation_pattern(0b101) == (True, True, True)
        assert excitation_pattern(0b111) == (True, False, True)
        assert excitation_pattern(0b010) == (False, False, False)


class TestIdealOracle:
    def test_truth_table_is_toffoli_permutation(self, ideal_sim):
        table = ideal_sim.truth_table().truth_table
        for i, k in enumerate(TOFFOLI_PERMUTATION):
            assert table[i, k] == pytest.approx(1.0, abs=1e-12)
        off = table.copy()
        for i, k in enumerate(TOFFOLI_PERMUTATION):
            off[i, k] = 0.0
        assert np.max(off) < 1e-12

    def test_average_fidelity_is_one(self, ideal_sim):
        avg, fids = ideal_sim.average_fidelity()
        assert avg == pytest.approx(1.0, abs=1e-12)
        assert fids.min() == pytest.approx(1.0, abs=1e-12)

    def test_no_loss(self, ideal_sim):
        out = ideal_sim.run_gate(QubitState.computational(5))
        assert out.leakage == 0.0
        assert out.decay_loss == 0.0
        assert out.norm_budget() == pytest.approx(1.0, abs=1e-12)


class TestGateLinearity:
    def test_linear_in_amplitudes(self, real_sim, rng):
        a = rng.normal(size=8) + 1j * rng.normal(size=8)
        b = rng.normal(size=8) + 1j * rng.normal(size=8)
        c1, c2 = 0.3 - 0.2j, 0.5 + 0.7j
        out_sum = real_sim.run_gate(QubitState(c1 * a + c2 * b)).amplitudes
        out_parts = (
            c1 * real_sim.run_gate(QubitState(a.copy())).amplitudes
            + c2 * real_sim.run_gate(QubitState(b.copy())).amplitudes
        )
        assert np.max(np.abs(out_sum - out_parts)) < 1e-10

    def test_norm_budget_conserved(self, real_sim):
        out = real_sim.run_gate(QubitState.computational(7))
        assert out.norm_budget() == pytest.approx(1.0, abs=1e-9)
        assert out.decay_loss > 0.0


class TestRotations:
    def test_rotation_unitary(self):
        state = QubitState.computational(3)
        rotated = single_qubit_rotation(state, 2, math.pi / 2)
        back = single_qubit_rotation(rotated, 2, -math.pi / 2)
        assert np.max(np.abs(back.amplitudes - state.amplitudes)) < 1e-14

    def test_rejects_bad_atom_index(self):
        with pytest.raises(ValueError):
            single_qubit_rotation(QubitState.computational(0), 4, 0.1)

    def test_ideal_unitary_is_unitary(self):
        u = ideal_gate_unitary()
        assert np.max(np.abs(u.conj().T @ u - np.eye(8))) < 1e-14


class TestFidelity:
    def test_pure_state_reduction(self, rng):
        """The matrix-square-root form collapses to |<psi|phi>| for pure
        density matrices."""
        for _ in range(5):
            psi = rng.normal(size=8) + 1j * rng.normal(size=8)
            phi = rng.normal(size=8) + 1j * rng.normal(size=8)
            psi /= np.linalg.norm(psi)
            phi /= np.linalg.norm(phi)
            f_full = uhlmann_fidelity(np.outer(psi, psi.conj()), np.outer(phi, phi.conj()))
            f_pure = fidelity_to_pure(psi, phi)
            assert f_full == pytest.approx(f_pure, abs=1e-12)

    def test_identical_states(self):
        psi = np.zeros(8, dtype=complex)
        psi[2] = 1.0
        assert fidelity_to_pure(psi, psi) == pytest.approx(1.0, abs=1e-15)

    def test_subnormalized_output_penalized(self):
        psi = np.zeros(8, dtype=complex)
        psi[2] = 1.0
        assert fidelity_to_pure(psi, 0.9 * psi) == pytest.approx(0.9, abs=1e-15)


class TestPatternAmplitudes:
    def test_vacuum_pattern_trivial(self, real_sim):
        res = real_sim.interaction_return_amplitude((False, False, False))
        assert res.amplitude == 1.0 + 0j

    def test_single_excitation_decay_only(self, real_sim, model):
        from forstergate.gate import RYDBERG_TARGETS

        res = real_sim.interaction_return_amplitude((True, False, False))
        gamma = model.decay_rate(RYDBERG_TARGETS[0])
        expected = math.exp(-0.5 * gamma * REFERENCE_OPERATING_POINT.tau)
        assert res.amplitude == pytest.approx(expected, rel=1e-12)
        assert res.amplitude.imag == 0.0

    def test_cached(self, real_sim):
        a = real_sim.interaction_return_amplitude((True, True, True))
        b = real_sim.interaction_return_amplitude((True, True, True))
        assert a is b


class TestOptimizerPieces:
    def test_wrap_range(self):
        for x in (-7.0, -3.2, 0.0, 3.1, 9.42):
            w = _wrap(x)
            assert -math.pi < w <= math.pi
            assert math.cos(w) == pytest.approx(math.cos(x), abs=1e-12)

    def test_find_root_simple(self):
        root = _find_root(lambda x: x * x - 2.0, 0.0, 2.0, 21, 1e-12)
        assert root == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_find_root_skips_wraps(self):
        """A pi-sized jump is a branch cut, not a sign change to bracket."""
        root = _find_root(lambda x: _wrap(x), 2.0, 4.5, 26, 1e-10)
        assert root is None

    def test_operating_point_fields(self):
        op = OperatingPoint(e_field=0.119, b_field=3.5, spacing=12.5, tau=2.42)
        f = op.fields()
        assert f.e_field == 0.119 and f.tau == 2.42
