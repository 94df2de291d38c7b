"""Single-atom Rb Rydberg physics: level energies from quantum defects,
Zeeman shifts and 300 K effective decay rates.

All numeric parameters (quantum defects, lifetime model, core potential)
come from a versioned JSON data file shipped with the package and
overridable at load time.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .angular import lande_g
from .constants import BOHR_MAGNETON_MHZ_G, ELECTRON_MASS_U, RYDBERG_INF_GHZ

__all__ = ["RydbergLevel", "AtomModel", "AtomicDataError"]

_L_LETTERS = "SPDFGHI"


class AtomicDataError(Exception):
    """Raised for unknown series or malformed atomic-constants data."""


@dataclass(frozen=True, order=True)
class RydbergLevel:
    """One fine-structure Rydberg state |n l j m_j>, j and m_j doubled."""

    n: int
    l: int
    twice_j: int
    twice_mj: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.l < self.n:
            raise ValueError(f"need 0 <= l < n, got n={self.n}, l={self.l}")
        if self.twice_j not in (2 * self.l - 1, 2 * self.l + 1) or self.twice_j < 1:
            raise ValueError(f"j must be l +/- 1/2, got l={self.l}, 2j={self.twice_j}")
        if abs(self.twice_mj) > self.twice_j or (self.twice_j - self.twice_mj) % 2:
            raise ValueError(f"bad m_j: 2mj={self.twice_mj} for 2j={self.twice_j}")

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def mj(self) -> float:
        return self.twice_mj / 2

    def sublevel(self, twice_mj: int) -> "RydbergLevel":
        return RydbergLevel(self.n, self.l, self.twice_j, twice_mj)

    def label(self) -> str:
        letter = _L_LETTERS[self.l] if self.l < len(_L_LETTERS) else f"l{self.l}"
        sign = "-" if self.twice_mj < 0 else ""
        return f"{self.n}{letter}{self.twice_j}/2({sign}{abs(self.twice_mj)}/2)"


def _series_key(l: int, twice_j: int) -> str:
    return f"{l},{twice_j}"


def default_data_path() -> Path:
    return Path(str(resources.files("forstergate").joinpath("data/rb_atomic_data.json")))


@dataclass(frozen=True)
class AtomModel:
    """Immutable bundle of Rb atomic constants plus ambient temperature."""

    defects: dict
    lifetimes: dict
    model_potential: dict
    mass_u: float
    temperature: float
    data_version: int
    data_checksum: str
    _alpha_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def load(cls, path: str | Path | None = None, temperature: float | None = None) -> "AtomModel":
        path = Path(path) if path is not None else default_data_path()
        raw = path.read_bytes()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise AtomicDataError(f"cannot parse atomic data file {path}: {exc}") from exc
        if data.get("schema") != "forstergate-atomic-data":
            raise AtomicDataError(f"{path} is not a forstergate atomic-data file")
        temp = data["default_temperature_K"] if temperature is None else temperature
        if temp < 0:
            raise ValueError("temperature must be >= 0")
        return cls(
            defects=data["quantum_defects"]["series"],
            lifetimes=data["lifetimes"],
            model_potential=data["model_potential"],
            mass_u=data["mass_u"],
            temperature=temp,
            data_version=data["version"],
            data_checksum=hashlib.sha256(raw).hexdigest(),
        )

    def with_temperature(self, temperature: float) -> "AtomModel":
        return AtomModel(
            self.defects, self.lifetimes, self.model_potential, self.mass_u,
            temperature, self.data_version, self.data_checksum,
        )

    @property
    def rydberg_constant_ghz(self) -> float:
        return RYDBERG_INF_GHZ / (1 + ELECTRON_MASS_U / self.mass_u)

    # --- energies -----------------------------------------------------

    def quantum_defect(self, n: int, l: int, twice_j: int) -> float:
        key = _series_key(l, twice_j)
        try:
            s = self.defects[key]
        except KeyError:
            raise AtomicDataError(f"no quantum-defect data for series (l={l}, 2j={twice_j})")
        return s["d0"] + s["d2"] / (n - s["d0"]) ** 2

    def effective_n(self, n: int, l: int, twice_j: int) -> float:
        return n - self.quantum_defect(n, l, twice_j)

    def level_energy(self, level: RydbergLevel) -> float:
        """Zero-field energy in GHz relative to the ionization limit."""
        nstar = self.effective_n(level.n, level.l, level.twice_j)
        return -self.rydberg_constant_ghz / nstar**2

    def energy_au(self, level: RydbergLevel) -> float:
        """Level energy in Hartree (for the radial integrators)."""
        nstar = self.effective_n(level.n, level.l, level.twice_j)
        return -0.5 / nstar**2

    # --- field shifts -------------------------------------------------

    def zeeman_shift(self, level: RydbergLevel, b_field: float) -> float:
        """Linear Zeeman shift in MHz.

        ``b_field`` (Gauss) is signed: positive values mean the orientation
        used throughout this package, with B antiparallel to the Z/E axis
        (the shift is -mu_B g_j m_j B).
        """
        g = lande_g(level.l, 0.5, level.j)
        return -BOHR_MAGNETON_MHZ_G * g * level.mj * b_field

    # --- decay --------------------------------------------------------

    def decay_rate(self, level: RydbergLevel) -> float:
        """Effective decay rate 1/tau_eff in 1/us, radiative plus blackbody."""
        key = _series_key(level.l, level.twice_j)
        try:
            rad = self.lifetimes["radiative"][key]
        except KeyError:
            raise AtomicDataError(f"no lifetime data for series (l={level.l}, 2j={level.twice_j})")
        neff = self.effective_n(level.n, level.l, level.twice_j)
        rate_ns = 1.0 / (rad["tau_s_ns"] * neff ** rad["gamma"])
        if self.temperature > 0:
            bb = self.lifetimes["blackbody"][key]
            x = 315780.0 * bb["B"] / (neff ** bb["C"] * self.temperature)
            rate_ns += bb["A"] / neff ** bb["D"] * 21.4 / math.expm1(x)
        return rate_ns * 1e3  # 1/ns -> 1/us

    def lifetime_us(self, level: RydbergLevel) -> float:
        return 1.0 / self.decay_rate(level)
