"""Simulation of a fast three-qubit Toffoli gate built on the three-body
Forster resonance 3x nP3/2 -> nS + (n+1)S + nP of Rb Rydberg atoms.

The library covers single-atom Rydberg structure (quantum defects, dipole
matrix elements, polarizabilities, 300 K lifetimes), the truncated
collective three-atom basis, the non-Hermitian interaction Hamiltonian,
amplitude propagation, and the eight-pulse gate protocol with its
operating-point optimizer.
"""

__version__ = "1.0.0"

from .angular import AngularMomentum, clebsch_gordan, lande_g, wigner_3j, wigner_6j
from .atom import AtomicDataError, AtomModel, RydbergLevel
from .basis import CollectiveBasis, CollectiveState, FieldConfiguration, build_basis, forster_defect
from .dynamics import Trace, compute_trace, field_scan, propagate, propagate_stepped
from .gate import (
    GateResult,
    GateSimulator,
    OperatingPoint,
    OptimizationError,
    OptimizerResult,
    REFERENCE_OPERATING_POINT,
    QubitState,
    ideal_gate_unitary,
    optimize_operating_point,
)
from .hamiltonian import Geometry, InteractionHamiltonian, assemble, pair_coupling
from .radial import dipole_matrix_element, radial_matrix_element
from .stark import StarkConvergenceError, polarizability, stark_shift

__all__ = [
    "AngularMomentum",
    "AtomModel",
    "AtomicDataError",
    "CollectiveBasis",
    "CollectiveState",
    "FieldConfiguration",
    "GateResult",
    "GateSimulator",
    "Geometry",
    "InteractionHamiltonian",
    "OperatingPoint",
    "OptimizationError",
    "OptimizerResult",
    "REFERENCE_OPERATING_POINT",
    "QubitState",
    "RydbergLevel",
    "StarkConvergenceError",
    "Trace",
    "assemble",
    "build_basis",
    "clebsch_gordan",
    "compute_trace",
    "dipole_matrix_element",
    "field_scan",
    "forster_defect",
    "ideal_gate_unitary",
    "lande_g",
    "optimize_operating_point",
    "pair_coupling",
    "polarizability",
    "propagate",
    "propagate_stepped",
    "radial_matrix_element",
    "stark_shift",
    "wigner_3j",
    "wigner_6j",
]
