"""Collective two- and three-atom basis construction: product states over
single-atom manifolds, total-projection filter and energy-defect cutoff.

Atoms sit on the Z axis; position 0 is the left atom.  The designated
initial state defines the M sector and the zero of all energy defects.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from .atom import AtomModel, RydbergLevel
from .stark import polarizability

__all__ = ["FieldConfiguration", "CollectiveState", "CollectiveBasis", "build_basis", "forster_defect"]

MAX_BASIS_STATES = 10_000


@dataclass(frozen=True)
class FieldConfiguration:
    """dc electric field (V/cm), magnetic field (G, signed; positive =
    antiparallel to Z), neighbor spacing R (um), interaction time (us)."""

    e_field: float = 0.0
    b_field: float = 0.0
    spacing: float = 12.5
    tau: float = 2.42


@dataclass(frozen=True)
class CollectiveState:
    """Ordered tuple of single-atom Rydberg levels (left to right)."""

    atoms: tuple[RydbergLevel, ...]

    @property
    def twice_m(self) -> int:
        return sum(a.twice_mj for a in self.atoms)

    @property
    def m(self) -> float:
        return self.twice_m / 2

    def label(self) -> str:
        return "|" + " ".join(a.label() for a in self.atoms) + ">"

    def count_level(self, n: int, l: int, twice_j: int) -> int:
        return sum(1 for a in self.atoms if (a.n, a.l, a.twice_j) == (n, l, twice_j))


def _level_shift_mhz(level: RydbergLevel, fields: FieldConfiguration, model: AtomModel) -> float:
    shift = model.zeeman_shift(level, fields.b_field)
    if fields.e_field:
        shift -= 0.5 * polarizability(level, model) * fields.e_field**2
    return shift


def forster_defect(
    state: CollectiveState,
    initial: CollectiveState,
    fields: FieldConfiguration,
    model: AtomModel,
) -> float:
    """Energy of ``state`` minus energy of ``initial`` in MHz, including
    quadratic Stark and linear Zeeman shifts at the given fields."""
    d = 0.0
    for a, b in zip(state.atoms, initial.atoms):
        d += (model.level_energy(a) - model.level_energy(b)) * 1e3
        d += _level_shift_mhz(a, fields, model) - _level_shift_mhz(b, fields, model)
    return d


@dataclass(frozen=True)
class CollectiveBasis:
    states: tuple[CollectiveState, ...]
    initial_index: int
    manifolds: tuple[tuple[int, int, int], ...]
    defects0: tuple[float, ...]  # zero-field defect per state, MHz

    def __len__(self) -> int:
        return len(self.states)

    @property
    def initial(self) -> CollectiveState:
        return self.states[self.initial_index]

    @property
    def n_atoms(self) -> int:
        return len(self.initial.atoms)

    def index(self, state: CollectiveState) -> int:
        return self.states.index(state)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for s in self.states:
            h.update(s.label().encode())
        return h.hexdigest()[:16]


def build_basis(
    initial: CollectiveState,
    manifolds: list[tuple[int, int, int]],
    cutoff_mhz: float,
    model: AtomModel,
) -> CollectiveBasis:
    """All product states over every m_j sublevel of ``manifolds`` whose
    total projection matches the initial state and whose zero-field defect
    is within ``cutoff_mhz``.  Ordering is deterministic: by defect, then
    by state label."""
    if cutoff_mhz <= 0:
        raise ValueError("cutoff must be positive")
    mset = {(n, l, tj) for (n, l, tj) in manifolds}
    for a in initial.atoms:
        if (a.n, a.l, a.twice_j) not in mset:
            raise ValueError(f"initial-state level {a.label()} not among the manifolds")

    sublevels = []
    for (n, l, tj) in sorted(mset):
        for tmj in range(-tj, tj + 1, 2):
            sublevels.append(RydbergLevel(n, l, tj, tmj))

    zero = FieldConfiguration(e_field=0.0, b_field=0.0)
    tm0 = initial.twice_m
    found = []
    for combo in itertools.product(sublevels, repeat=len(initial.atoms)):
        if sum(a.twice_mj for a in combo) != tm0:
            continue
        st = CollectiveState(atoms=combo)
        d0 = forster_defect(st, initial, zero, model)
        if abs(d0) <= cutoff_mhz:
            found.append((d0, st.label(), st))
            if len(found) > MAX_BASIS_STATES:
                raise ValueError(f"basis exceeds {MAX_BASIS_STATES} states")

    found.sort(key=lambda t: (t[0], t[1]))
    states = tuple(t[2] for t in found)
    defects0 = tuple(t[0] for t in found)
    init_idx = states.index(initial)
    return CollectiveBasis(
        states=states,
        initial_index=init_idx,
        manifolds=tuple(sorted(mset)),
        defects0=defects0,
    )
