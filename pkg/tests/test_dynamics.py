"""Propagation: norm conservation, agreement between the spectral and the
stepped integrators, and the scan/trace observables."""

import numpy as np
import pytest

from forstergate.basis import FieldConfiguration
from forstergate.dynamics import (
    Propagator,
    Trace,
    compute_trace,
    field_scan,
    observable_f,
    propagate,
    propagate_stepped,
)
from forstergate.hamiltonian import Geometry, assemble

FIELDS2 = FieldConfiguration(e_field=0.117, b_field=0.0, spacing=25.0, tau=1.8)


@pytest.fixture(scope="module")
def h2_closed(model, basis2):
    return assemble(basis2, Geometry(25.0), FIELDS2, model, with_decay=False)


@pytest.fixture(scope="module")
def h2_open(model, basis2):
    return assemble(basis2, Geometry(25.0), FIELDS2, model, with_decay=True)


def _initial(basis):
    psi = np.zeros(len(basis), dtype=complex)
    psi[basis.initial_index] = 1.0
    return psi


class TestPropagator:
    def test_norm_conserved_closed(self, basis2, h2_closed):
        psi = propagate(_initial(basis2), h2_closed, 5.0)
        assert np.sum(np.abs(psi) ** 2) == pytest.approx(1.0, abs=1e-9)

    def test_norm_decays_open(self, basis2, h2_open):
        psi = propagate(_initial(basis2), h2_open, 5.0)
        assert np.sum(np.abs(psi) ** 2) < 1.0

    def test_matches_stepped_integrator(self, basis2, h2_open):
        psi_a = propagate(_initial(basis2), h2_open, 1.8)
        psi_b = propagate_stepped(_initial(basis2), h2_open, 1.8)
        assert np.max(np.abs(psi_a - psi_b)) < 1e-6

    def test_zero_time_is_identity(self, basis2, h2_open):
        psi = propagate(_initial(basis2), h2_open, 0.0)
        assert np.allclose(psi, _initial(basis2), atol=1e-14)

    def test_composition(self, basis2, h2_open):
        """Propagating t then s equals propagating t+s for constant H."""
        p = Propagator(h2_open)
        psi_a = p.apply(p.apply(_initial(basis2), 0.7), 1.1)
        psi_b = p.apply(_initial(basis2), 1.8)
        assert np.max(np.abs(psi_a - psi_b)) < 1e-10

    def test_apply_many_matches_apply(self, basis2, h2_open):
        p = Propagator(h2_open)
        times = np.array([0.3, 0.9, 1.8])
        many = p.apply_many(_initial(basis2), times)
        for i, t in enumerate(times):
            assert np.max(np.abs(many[i] - p.apply(_initial(basis2), t))) < 1e-12


class TestObservables:
    def test_fraction_bounds(self, basis2, h2_open):
        psi = propagate(_initial(basis2), h2_open, 1.8)
        f = observable_f(psi, h2_open.basis)
        assert 0.0 <= f <= 0.5

    def test_trace_fields(self, basis2, h2_open):
        times = np.linspace(0.01, 1.8, 50)
        tr = compute_trace(h2_open, times)
        assert isinstance(tr, Trace)
        assert tr.population.shape == times.shape
        assert np.all(tr.population <= 1.0 + 1e-12)
        assert np.all(np.diff(tr.norm) <= 1e-12)  # monotone loss

    def test_trace_rejects_unsorted_times(self, h2_open):
        with pytest.raises(ValueError):
            compute_trace(h2_open, np.array([1.0, 0.5]))

    def test_phase_starts_near_zero(self, h2_open):
        """In the defect-relative frame the early-time phase is small."""
        tr = compute_trace(h2_open, np.linspace(1e-4, 0.01, 10))
        assert abs(tr.phase[0]) < 0.1


class TestFieldScan:
    def test_single_point(self, model, basis2):
        rows = field_scan(np.array([0.117]), FIELDS2, basis2, model)
        assert len(rows) == 1
        assert rows[0]["error"] == ""
        assert 0.0 <= rows[0]["f"] <= 0.5

    def test_parallel_matches_serial(self, model, basis2):
        es = np.linspace(0.116, 0.118, 6)
        serial = field_scan(es, FIELDS2, basis2, model, workers=1)
        parallel = field_scan(es, FIELDS2, basis2, model, workers=3)
        for a, b in zip(serial, parallel):
            assert a["f"] == pytest.approx(b["f"], abs=1e-12)
