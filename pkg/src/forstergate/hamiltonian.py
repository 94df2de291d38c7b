"""Assembly of the collective-state Hamiltonian: pairwise dipole-dipole
couplings for atoms on the Z axis, field-dependent diagonal defects, and
optional non-Hermitian decay terms.

All matrix elements are stored as ordinary frequency (MHz); conversion to
angular frequency happens only inside the propagator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angular import clebsch_gordan
from .atom import AtomModel, RydbergLevel
from .basis import CollectiveBasis, FieldConfiguration, forster_defect
from .constants import HARTREE_MHZ, MICROMETER_AU
from .radial import dipole_matrix_element

__all__ = ["Geometry", "InteractionHamiltonian", "pair_coupling", "assemble", "coupling_matrix", "diagonal_defects"]

# C^{20}_{1q,1-q} for q = -1, 0, +1
_CG20 = {q: clebsch_gordan(1, q, 1, -q, 2, 0) for q in (-1, 0, 1)}


@dataclass(frozen=True)
class Geometry:
    """Three trap positions evenly spaced on the Z axis: -R, 0, +R."""

    spacing: float  # um between neighbors

    def __post_init__(self):
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")

    def pair_distance(self, i: int, k: int) -> float:
        """Distance in um between atom positions i and k (0-based)."""
        return abs(i - k) * self.spacing


@dataclass(frozen=True)
class InteractionHamiltonian:
    """Complex matrix over a collective basis, MHz ordinary frequency.

    With decay the diagonal carries -i * (gamma_total/2) / (2 pi) so that
    exp(-2 pi i H t) damps amplitudes as exp(-gamma t / 2).
    """

    matrix: np.ndarray
    decay_half_rates: np.ndarray  # gamma_i / 2 per state, 1/us
    basis: CollectiveBasis
    fields: FieldConfiguration


def pair_coupling(
    pair_from: tuple[RydbergLevel, RydbergLevel],
    pair_to: tuple[RydbergLevel, RydbergLevel],
    distance_um: float,
    model: AtomModel,
) -> float:
    """Dipole-dipole matrix element between two-atom states, in MHz.

    V = -sqrt(6) e^2/(4 pi eps0 R^3) sum_q C^{20}_{1q,1-q} a_q b_{-q};
    vanishes unless the pair's total projection is conserved.
    """
    if distance_um <= 0:
        raise ValueError("pair distance must be positive")
    a0, b0 = pair_from
    a1, b1 = pair_to
    if a0.twice_mj + b0.twice_mj != a1.twice_mj + b1.twice_mj:
        return 0.0
    qa = (a1.twice_mj - a0.twice_mj) // 2
    if abs(qa) > 1:
        return 0.0
    da = dipole_matrix_element(a0, a1, qa, model)
    if da == 0.0:
        return 0.0
    db = dipole_matrix_element(b0, b1, -qa, model)
    if db == 0.0:
        return 0.0
    r_au = distance_um * MICROMETER_AU
    return -np.sqrt(6.0) * _CG20[qa] * da * db / r_au**3 * HARTREE_MHZ


def coupling_matrix(basis: CollectiveBasis, geometry: Geometry, model: AtomModel) -> np.ndarray:
    """Field-independent off-diagonal part (real symmetric, MHz)."""
    n = len(basis)
    if n > 10_000:
        raise ValueError(f"basis too large for dense assembly: {n}")
    h = np.zeros((n, n))
    states = basis.states
    n_atoms = basis.n_atoms
    for i in range(n):
        ai = states[i].atoms
        for k in range(i + 1, n):
            ak = states[k].atoms
            diff = [p for p in range(n_atoms) if ai[p] != ak[p]]
            if len(diff) != 2:
                continue
            p, r = diff
            v = pair_coupling(
                (ai[p], ai[r]), (ak[p], ak[r]), geometry.pair_distance(p, r), model
            )
            if v:
                h[i, k] = h[k, i] = v
    return h


def diagonal_defects(basis: CollectiveBasis, fields: FieldConfiguration, model: AtomModel) -> np.ndarray:
    """Field-dependent diagonal: Forster defect of each state (MHz)."""
    init = basis.initial
    return np.array([forster_defect(s, init, fields, model) for s in basis.states])


def decay_half_rates(basis: CollectiveBasis, model: AtomModel) -> np.ndarray:
    """gamma_total/2 per collective state in 1/us (sum over atoms)."""
    return np.array(
        [0.5 * sum(model.decay_rate(a) for a in s.atoms) for s in basis.states]
    )


def assemble(
    basis: CollectiveBasis,
    geometry: Geometry,
    fields: FieldConfiguration,
    model: AtomModel,
    with_decay: bool = True,
) -> InteractionHamiltonian:
    """Full Hamiltonian over the basis at the given fields."""
    h = coupling_matrix(basis, geometry, model).astype(complex)
    diag = diagonal_defects(basis, fields, model).astype(complex)
    half = decay_half_rates(basis, model)
    if with_decay:
        diag = diag - 1j * half / (2.0 * np.pi)
    np.fill_diagonal(h, diag)
    return InteractionHamiltonian(matrix=h, decay_half_rates=half, basis=basis, fields=fields)
