"""The eight-pulse Toffoli protocol: conditional Rydberg excitation,
interaction interval at the operating point, phase compensation, truth
table, 216-state average fidelity and the four-step operating-point
optimizer.

Computational ordering is |c1 t c3> with atom 1 the left control, atom 2
the target and atom 3 the right control; basis index = 4*c1 + 2*t + c3.
Pulses are ideal and instantaneous; everything that does not come back to
the addressed Rydberg level is classified as leakage.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .atom import AtomModel, RydbergLevel
from .basis import CollectiveBasis, CollectiveState, FieldConfiguration, build_basis
from .dynamics import Propagator, compute_trace
from .hamiltonian import Geometry, assemble

__all__ = [
    "QubitState",
    "OperatingPoint",
    "GateResult",
    "GateSimulator",
    "single_qubit_rotation",
    "ideal_gate_unitary",
    "fidelity_to_pure",
    "uhlmann_fidelity",
    "optimize_operating_point",
    "OptimizerResult",
    "OptimizationError",
    "REFERENCE_OPERATING_POINT",
    "DEFAULT_MANIFOLDS",
]

# Rydberg targets of laser pulses 2-4: |1>->|r> on atom 1, |0>->|r'> on
# atom 2, |1>->|r''> on atom 3.
RYDBERG_TARGETS = (
    RydbergLevel(80, 1, 3, 3),
    RydbergLevel(81, 1, 3, 3),
    RydbergLevel(81, 1, 3, -3),
)

DEFAULT_MANIFOLDS = [
    (80, 0, 1), (81, 0, 1), (82, 0, 1),
    (80, 1, 1), (80, 1, 3), (81, 1, 1), (81, 1, 3),
]

DEFAULT_CUTOFF_MHZ = 1000.0
PULSE_DURATION_US = 0.01  # 10 ns per pulse, 8 pulses


@dataclass(frozen=True)
class OperatingPoint:
    e_field: float   # V/cm
    b_field: float   # G, signed (positive = antiparallel to Z)
    spacing: float   # um
    tau: float       # us

    def fields(self) -> FieldConfiguration:
        return FieldConfiguration(
            e_field=self.e_field, b_field=self.b_field, spacing=self.spacing, tau=self.tau
        )


REFERENCE_OPERATING_POINT = OperatingPoint(e_field=0.11912, b_field=3.5, spacing=12.5, tau=2.42)


@dataclass
class QubitState:
    """Amplitudes over the 8-dim computational basis plus loss weights."""

    amplitudes: np.ndarray           # complex, shape (8,)
    leakage: float = 0.0             # population left in Rydberg states
    decay_loss: float = 0.0          # population lost to spontaneous/BBR decay

    @classmethod
    def computational(cls, index: int) -> "QubitState":
        a = np.zeros(8, dtype=complex)
        a[index] = 1.0
        return cls(amplitudes=a)

    @classmethod
    def product(cls, q1: np.ndarray, q2: np.ndarray, q3: np.ndarray) -> "QubitState":
        return cls(amplitudes=np.kron(np.kron(q1, q2), q3).astype(complex))

    def norm_budget(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) + self.leakage + self.decay_loss)


def single_qubit_rotation(state: QubitState, atom: int, angle: float) -> QubitState:
    """Ideal rotation exp(-i angle Y / 2) on one atom's logical subspace."""
    if atom not in (1, 2, 3):
        raise ValueError("atom index must be 1, 2 or 3")
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    r = np.array([[c, -s], [s, c]], dtype=complex)
    ops = [r if atom == k else np.eye(2) for k in (1, 2, 3)]
    u = np.kron(np.kron(ops[0], ops[1]), ops[2])
    return QubitState(u @ state.amplitudes, leakage=state.leakage, decay_loss=state.decay_loss)


def excitation_pattern(index: int) -> tuple[bool, bool, bool]:
    """Which atoms get promoted to Rydberg states for one computational
    component: controls excite from |1>, the target excites from |0>."""
    c1, t, c3 = (index >> 2) & 1, (index >> 1) & 1, index & 1
    return (c1 == 1, t == 0, c3 == 1)


@dataclass
class PatternAmplitude:
    amplitude: complex     # return amplitude of the addressed collective state
    survival: float        # total population still in the simulated basis
    trace_population: float


class GateSimulator:
    """Caches bases and interaction return amplitudes per operating point."""

    def __init__(
        self,
        model: AtomModel,
        op: OperatingPoint,
        manifolds: list[tuple[int, int, int]] | None = None,
        cutoff_mhz: float = DEFAULT_CUTOFF_MHZ,
        ideal_amplitudes: bool = False,
        with_decay: bool = True,
    ):
        self.model = model
        self.op = op
        self.manifolds = list(manifolds or DEFAULT_MANIFOLDS)
        self.cutoff_mhz = cutoff_mhz
        self.ideal_amplitudes = ideal_amplitudes
        self.with_decay = with_decay
        self._basis_cache: dict = {}
        self._amp_cache: dict = {}

    # -- interaction interval ------------------------------------------

    def _pattern_basis(self, excited: tuple[int, ...]) -> tuple[CollectiveBasis, float]:
        """Collective basis over the excited atoms and their spacing."""
        key = excited
        if key not in self._basis_cache:
            atoms = tuple(RYDBERG_TARGETS[i] for i in excited)
            initial = CollectiveState(atoms=atoms)
            basis = build_basis(initial, self.manifolds, self.cutoff_mhz, self.model)
            # neighbor spacing within the subsystem: atoms 1,3 alone sit 2R apart
            spacing = self.op.spacing * (2 if excited == (0, 2) else 1)
            self._basis_cache[key] = (basis, spacing)
        return self._basis_cache[key]

    def interaction_return_amplitude(self, pattern: tuple[bool, bool, bool]) -> PatternAmplitude:
        """Amplitude for the excited collective state to return to itself
        after tau, in the frame where single-atom Stark+Zeeman phases are
        already compensated (pulses 5-7)."""
        if pattern in self._amp_cache:
            return self._amp_cache[pattern]
        excited = tuple(i for i, e in enumerate(pattern) if e)
        if self.ideal_amplitudes:
            amp = -1.0 + 0j if excited == (0, 2) else 1.0 + 0j
            result = PatternAmplitude(amplitude=amp, survival=1.0, trace_population=abs(amp) ** 2)
        elif not excited:
            result = PatternAmplitude(amplitude=1.0 + 0j, survival=1.0, trace_population=1.0)
        elif len(excited) == 1:
            # no interaction partner: pure decay with zero compensated phase
            if self.with_decay:
                gamma = self.model.decay_rate(RYDBERG_TARGETS[excited[0]])
                amp = complex(math.exp(-0.5 * gamma * self.op.tau))
            else:
                amp = 1.0 + 0j
            result = PatternAmplitude(amplitude=amp, survival=abs(amp) ** 2, trace_population=abs(amp) ** 2)
        else:
            basis, spacing = self._pattern_basis(excited)
            fields = FieldConfiguration(
                e_field=self.op.e_field, b_field=self.op.b_field,
                spacing=spacing, tau=self.op.tau,
            )
            h = assemble(basis, Geometry(spacing), fields, self.model, with_decay=self.with_decay)
            psi0 = np.zeros(len(basis), dtype=complex)
            psi0[basis.initial_index] = 1.0
            psi = Propagator(h).apply(psi0, self.op.tau)
            amp = complex(psi[basis.initial_index])
            result = PatternAmplitude(
                amplitude=amp,
                survival=float(np.sum(np.abs(psi) ** 2)),
                trace_population=abs(amp) ** 2,
            )
        self._amp_cache[pattern] = result
        return result

    # -- full protocol -------------------------------------------------

    def run_gate(self, state: QubitState) -> QubitState:
        """Apply pulses 1-8 to a normalized computational input."""
        out = single_qubit_rotation(state, 2, math.pi / 2)
        amps = out.amplitudes.copy()
        leakage = out.leakage
        decay_loss = out.decay_loss
        for idx in range(8):
            w = abs(amps[idx]) ** 2
            if w == 0.0:
                continue
            pat = excitation_pattern(idx)
            res = self.interaction_return_amplitude(pat)
            amps[idx] *= res.amplitude
            returned = abs(res.amplitude) ** 2
            decay_loss += w * max(0.0, 1.0 - res.survival)
            leakage += w * max(0.0, res.survival - returned)
        out = QubitState(amps, leakage=leakage, decay_loss=decay_loss)
        return single_qubit_rotation(out, 2, -math.pi / 2)

    def truth_table(self) -> "GateResult":
        table = np.zeros((8, 8))
        leak = np.zeros(8)
        decay = np.zeros(8)
        outputs = []
        for i in range(8):
            out = self.run_gate(QubitState.computational(i))
            table[i] = np.abs(out.amplitudes) ** 2
            leak[i] = out.leakage
            decay[i] = out.decay_loss
            outputs.append(out.amplitudes)
        return GateResult(
            truth_table=table, leakage=leak, decay_loss=decay,
            output_amplitudes=np.array(outputs), operating_point=self.op,
        )

    def average_fidelity(self) -> tuple[float, np.ndarray]:
        """Mean Uhlmann fidelity of the simulated output against the ideal
        protocol output over all 216 products of the 6 single-qubit states."""
        u_ideal = ideal_gate_unitary()
        singles = _fidelity_input_states()
        fids = np.zeros((6, 6, 6))
        for i1, q1 in enumerate(singles):
            for i2, q2 in enumerate(singles):
                for i3, q3 in enumerate(singles):
                    inp = QubitState.product(q1, q2, q3)
                    out = self.run_gate(inp)
                    etalon = u_ideal @ inp.amplitudes
                    fids[i1, i2, i3] = fidelity_to_pure(etalon, out.amplitudes)
        return float(fids.mean()), fids

    def protocol_duration_us(self) -> float:
        return 8 * PULSE_DURATION_US + self.op.tau


@dataclass(frozen=True)
class GateResult:
    truth_table: np.ndarray       # (8, 8) probabilities, rows = inputs
    leakage: np.ndarray           # per input
    decay_loss: np.ndarray        # per input
    output_amplitudes: np.ndarray # (8, 8) complex
    operating_point: OperatingPoint

    def renormalized_table(self) -> np.ndarray:
        sums = self.truth_table.sum(axis=1, keepdims=True)
        return np.divide(self.truth_table, sums, where=sums > 0)


def ideal_gate_unitary() -> np.ndarray:
    """The lossless protocol: R_y(-pi/2) CCZ R_y(pi/2) on the target.

    Equals the Toffoli permutation up to the conditional sign the Y-axis
    rotations leave on the doubly-controlled subspace; used as the etalon
    so that the ideal-amplitude gate has fidelity exactly 1.
    """
    ccz = np.eye(8, dtype=complex)
    ccz[7, 7] = -1.0
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    ry = np.array([[c, -s], [s, c]], dtype=complex)
    u1 = np.kron(np.kron(np.eye(2), ry), np.eye(2))
    u8 = np.kron(np.kron(np.eye(2), ry.T), np.eye(2))  # R_y(-pi/2) = R_y(pi/2)^T
    return u8 @ ccz @ u1


def _fidelity_input_states() -> list[np.ndarray]:
    s = 1 / math.sqrt(2)
    return [
        np.array([1, 0], dtype=complex),
        np.array([0, 1], dtype=complex),
        np.array([s, s], dtype=complex),
        np.array([s, -s], dtype=complex),
        np.array([s, 1j * s], dtype=complex),
        np.array([s, -1j * s], dtype=complex),
    ]


def fidelity_to_pure(etalon: np.ndarray, out_amplitudes: np.ndarray) -> float:
    """F = sqrt(<psi_et| rho_sim |psi_et>) for an unnormalized output kept
    as a pure (sub-normalized) state; loss penalizes fidelity."""
    return abs(np.vdot(etalon, out_amplitudes))


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def uhlmann_fidelity(rho_et: np.ndarray, rho_sim: np.ndarray) -> float:
    """General form F = Tr sqrt(sqrt(rho_et) rho_sim sqrt(rho_et)).

    Square roots go through eigendecompositions with eigenvalue clipping;
    the generic Schur-based matrix square root loses too much precision on
    the rank-deficient density matrices of pure states.
    """
    sq = _psd_sqrt(rho_et)
    w = np.linalg.eigvalsh(sq @ rho_sim @ sq)
    # rounding noise at eps*||M|| would blow up to sqrt(eps) in the sum
    floor = max(w.max(), 0.0) * 1e-14
    return float(np.sum(np.sqrt(w[w > floor])))


# ---------------------------------------------------------------------------
# operating-point optimization
# ---------------------------------------------------------------------------


class OptimizationError(Exception):
    """Joint phase conditions did not converge; try a different spacing."""

    def __init__(self, message: str, residuals: dict | None = None):
        super().__init__(message)
        self.residuals = residuals or {}


@dataclass
class OptimizerResult:
    operating_point: OperatingPoint
    residuals: dict            # phase residuals in rad
    iterations: int
    history: list              # per-iteration dicts
    average_fidelity: float | None = None


def _wrap(x: float) -> float:
    return (x + math.pi) % (2 * math.pi) - math.pi


class _PhaseProbe:
    """Phase/population of the three interacting excitation patterns as a
    function of (E, B, tau)."""

    def __init__(self, model: AtomModel, spacing: float,
                 manifolds=None, cutoff=DEFAULT_CUTOFF_MHZ, with_decay=True):
        self.model = model
        self.spacing = spacing
        self.with_decay = with_decay
        self.manifolds = list(manifolds or DEFAULT_MANIFOLDS)
        self._bases = {}
        for key, excited in (("three", (0, 1, 2)), ("pair13", (0, 2)), ("pair23", (1, 2))):
            atoms = tuple(RYDBERG_TARGETS[i] for i in excited)
            self._bases[key] = build_basis(CollectiveState(atoms=atoms), self.manifolds, cutoff, self.model)

    def trace(self, key: str, e: float, b: float, times: np.ndarray):
        spacing = self.spacing * (2 if key == "pair13" else 1)
        fields = FieldConfiguration(e_field=e, b_field=b, spacing=spacing)
        h = assemble(self._bases[key], Geometry(spacing), fields, self.model, with_decay=self.with_decay)
        return compute_trace(h, times)

    def phase_at(self, key: str, e: float, b: float, tau: float) -> tuple[float, float]:
        # dense trace so the unwrap is continuous from t=0
        times = np.linspace(1e-4, tau, max(200, int(tau * 400)))
        tr = self.trace(key, e, b, times)
        return float(tr.phase[-1]), float(tr.population[-1])


def _find_root(fun, lo: float, hi: float, n_grid: int, tol: float):
    """Bracketed root of a scalar function on [lo, hi] via grid + bisection;
    returns the root closest to the grid minimum of |fun|, or None."""
    import scipy.optimize

    xs = np.linspace(lo, hi, n_grid)
    vals = [fun(x) for x in xs]
    best = None
    for i in range(len(xs) - 1):
        a, b = vals[i], vals[i + 1]
        if np.isnan(a) or np.isnan(b) or a * b > 0 or abs(a - b) > math.pi:
            continue
        root = scipy.optimize.brentq(fun, xs[i], xs[i + 1], xtol=tol)
        if best is None or abs(fun(root)) < abs(fun(best)):
            best = root
    return best


def optimize_operating_point(
    spacing: float,
    model: AtomModel,
    b_candidates: np.ndarray | None = None,
    tau_window: tuple[float, float] = (1.8, 3.2),
    e_halfwidth: float = 0.0015,
    b_halfwidth: float = 1.0,
    max_iterations: int = 12,
    phase_tolerance: float = 0.05,
    scan_points: int = 240,
    with_decay: bool = True,
) -> OptimizerResult:
    """Four-step search for the operating point at a given spacing.

    (I)   choose B so the narrow three-body peaks sit clear of the broad
          two-body resonance in the field scan (>= 3 three-body widths);
    (II)  near the three-body resonance pick tau where the exchange-pattern
          phase crosses zero (mod 2 pi) close to a high revival;
    (III) adjust E so the two-excited-controls pattern accumulates phase pi;
    (IV)  fine-tune B so the fully excited pattern returns with zero phase;
    iterate II-IV until all residuals are below ``phase_tolerance``.
    """
    if not 8.0 <= spacing <= 20.0:
        raise ValueError("spacing outside the physically sensible 8-20 um window")
    probe = _PhaseProbe(model, spacing, with_decay=with_decay)
    history: list[dict] = []

    # ---- step I: magnetic field from scan separation ----
    if b_candidates is None:
        b_candidates = np.arange(2.0, 6.01, 0.5)
    e_grid = np.linspace(0.110, 0.130, scan_points)
    b0, e3 = _step_one_pick_b(probe, e_grid, b_candidates)

    e, b = e3, b0
    tau = 0.5 * (tau_window[0] + tau_window[1])
    residuals = {"exchange": math.nan, "two_body": math.nan, "three_body": math.nan}
    for it in range(1, max_iterations + 1):
        # ---- step II: tau from the exchange-phase zero near a revival ----
        tau_new = _step_two_pick_tau(probe, e, b, tau_window)
        if tau_new is not None:
            tau = tau_new

        # ---- step III: E for a pi two-body phase ----
        def two_body_residual(ee: float) -> float:
            ph, _ = probe.phase_at("pair13", ee, b, tau)
            return _wrap(ph - math.pi)

        root = _find_root(two_body_residual, e - e_halfwidth, e + e_halfwidth, 13, 1e-7)
        if root is not None:
            e = root

        # ---- step IV: B for zero three-body phase ----
        def three_body_residual(bb: float) -> float:
            ph, _ = probe.phase_at("three", e, bb, tau)
            return _wrap(ph)

        root = _find_root(three_body_residual, b - b_halfwidth, b + b_halfwidth, 17, 1e-5)
        if root is not None:
            b = root

        ph_x, _ = probe.phase_at("pair23", e, b, tau)
        ph_2, p_2 = probe.phase_at("pair13", e, b, tau)
        ph_3, p_3 = probe.phase_at("three", e, b, tau)
        residuals = {
            "exchange": _wrap(ph_x),
            "two_body": _wrap(ph_2 - math.pi),
            "three_body": _wrap(ph_3),
        }
        history.append({
            "iteration": it, "e_field": e, "b_field": b, "tau": tau,
            **residuals, "p_two_body": p_2, "p_three_body": p_3,
        })
        if all(abs(v) < phase_tolerance for v in residuals.values()):
            op = OperatingPoint(e_field=e, b_field=b, spacing=spacing, tau=tau)
            return OptimizerResult(operating_point=op, residuals=residuals,
                                   iterations=it, history=history)

    raise OptimizationError(
        f"phase conditions not met after {max_iterations} iterations at "
        f"R={spacing} um; a different interatomic distance should be selected",
        residuals=residuals,
    )


def _peak_center_width(e_grid: np.ndarray, f: np.ndarray, mask: np.ndarray):
    """Center and FWHM-style width of the largest peak within ``mask``."""
    idx = np.where(mask)[0]
    if idx.size == 0:
        return None, None
    i = idx[np.argmax(f[idx])]
    half = f[i] / 2
    lo = i
    while lo > 0 and f[lo] > half:
        lo -= 1
    hi = i
    while hi < len(f) - 1 and f[hi] > half:
        hi += 1
    return e_grid[i], max(e_grid[hi] - e_grid[lo], e_grid[1] - e_grid[0])


def _step_one_pick_b(probe: _PhaseProbe, e_grid: np.ndarray, b_candidates: np.ndarray):
    """Smallest candidate B whose strongest three-body peak is separated
    from the two-body peak by at least three of its own widths."""
    from .dynamics import field_scan

    basis2 = probe._bases["pair13"]
    basis3 = probe._bases["three"]
    model = probe.model
    # two-body resonance center (B-insensitive)
    rows = field_scan(e_grid, FieldConfiguration(b_field=0.0, spacing=2 * probe.spacing, tau=1.8),
                      basis2, model, with_decay=probe.with_decay)
    f2 = np.array([r["f"] for r in rows])
    e2 = e_grid[np.argmax(f2)]

    fallback = None
    for b in b_candidates:
        rows = field_scan(e_grid, FieldConfiguration(b_field=float(b), spacing=probe.spacing, tau=1.8),
                          basis3, model, with_decay=probe.with_decay)
        f3 = np.array([r["f"] for r in rows])
        # three-body peaks live to the right of the two-body feature
        mask = e_grid > e2 + 0.0008
        center, width = _peak_center_width(e_grid, f3, mask)
        if center is None:
            continue
        sep = abs(center - e2)
        if fallback is None or sep / width > fallback[2]:
            fallback = (float(b), float(center), sep / width)
        if sep >= 3 * width:
            return float(b), float(center)
    if fallback is not None:
        return fallback[0], fallback[1]
    raise OptimizationError("no candidate magnetic field separates the resonances")


def _step_two_pick_tau(probe: _PhaseProbe, e: float, b: float, tau_window: tuple[float, float]):
    """Zero (mod 2 pi) of the exchange-pattern phase closest to a strong
    three-body revival inside the window."""
    times = np.linspace(1e-4, tau_window[1], int(tau_window[1] * 500))
    tr_x = probe.trace("pair23", e, b, times)
    tr_3 = probe.trace("three", e, b, times)
    wrapped = np.vectorize(_wrap)(tr_x.phase)
    zeros = []
    for i in range(len(times) - 1):
        t = times[i]
        if t < tau_window[0] or t > tau_window[1]:
            continue
        a, c = wrapped[i], wrapped[i + 1]
        if np.isnan(a) or np.isnan(c) or a * c > 0 or abs(a - c) > math.pi:
            continue
        frac = abs(a) / (abs(a) + abs(c))
        zeros.append(times[i] + frac * (times[i + 1] - times[i]))
    if not zeros:
        return None
    # prefer the zero where the three-body population is closest to revival
    pops = [np.interp(z, times, tr_3.population) for z in zeros]
    return float(zeros[int(np.argmax(pops))])
