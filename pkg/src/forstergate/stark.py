"""Quadratic Stark coefficients (polarizabilities) of single Rb Rydberg
levels, resolved by |m_j|.

The coefficient is extracted by diagonalizing the single-atom Stark
matrix in a truncated basis (n +/- 4, l <= 4) at a weak probe field and
fitting E(F) = E0 - alpha F^2 / 2.  Only this fit sees the full Stark
mixing; the three-atom dynamics uses the resulting quadratic diagonal
shifts alone.
"""

from __future__ import annotations

import numpy as np

from .atom import AtomicDataError, AtomModel, RydbergLevel
from .constants import FIELD_AU_VCM, HARTREE_MHZ
from .radial import dipole_matrix_element

__all__ = ["polarizability", "stark_shift", "StarkConvergenceError"]

PROBE_FIELD_VCM = 0.1
N_WINDOW = 4
L_MAX = 4


class StarkConvergenceError(Exception):
    """Polarizability changed by more than the allowed fraction when the
    basis was enlarged."""


def _stark_basis(n0: int, twice_mj: int, n_window: int, l_max: int) -> list[RydbergLevel]:
    out = []
    for n in range(n0 - n_window, n0 + n_window + 1):
        for l in range(0, l_max + 1):
            if l >= n:
                continue
            for tj in (2 * l - 1, 2 * l + 1):
                if tj < 1 or abs(twice_mj) > tj:
                    continue
                out.append(RydbergLevel(n, l, tj, twice_mj))
    return out


def _fit_alpha(level: RydbergLevel, model: AtomModel, field: float, n_window: int, l_max: int) -> float:
    basis = _stark_basis(level.n, level.twice_mj, n_window, l_max)
    idx = basis.index(level)
    nb = len(basis)
    h = np.zeros((nb, nb))
    for i, a in enumerate(basis):
        h[i, i] = model.level_energy(a) * 1e3  # MHz
        for k in range(i + 1, nb):
            b = basis[k]
            if abs(a.l - b.l) != 1:
                continue
            d = dipole_matrix_element(a, b, 0, model)
            if d:
                h[i, k] = h[k, i] = d * field / FIELD_AU_VCM * HARTREE_MHZ
    w, v = np.linalg.eigh(h)
    target = int(np.argmax(np.abs(v[idx, :])))
    e0 = model.level_energy(level) * 1e3
    return 2.0 * (e0 - w[target]) / field**2


def polarizability(
    level: RydbergLevel,
    model: AtomModel,
    probe_field: float = PROBE_FIELD_VCM,
    check_convergence: bool = True,
) -> float:
    """Effective quadratic Stark coefficient in MHz/(V/cm)^2 for the given
    |m_j| sublevel.  Positive alpha means the level shifts down with field.
    """
    key = (level.n, level.l, level.twice_j, abs(level.twice_mj), probe_field)
    cached = model._alpha_cache.get(key)
    if cached is not None:
        return cached
    ref = level.sublevel(abs(level.twice_mj))
    alpha = _fit_alpha(ref, model, probe_field, N_WINDOW, L_MAX)
    if check_convergence:
        alpha_big = _fit_alpha(ref, model, probe_field, N_WINDOW + 1, L_MAX)
        if abs(alpha_big - alpha) > 0.01 * abs(alpha):
            raise StarkConvergenceError(
                f"polarizability of {level.label()} moved by "
                f"{abs(alpha_big - alpha) / abs(alpha):.1%} on basis enlargement"
            )
    model._alpha_cache[key] = alpha
    return alpha


def stark_shift(level: RydbergLevel, e_field: float, model: AtomModel) -> float:
    """Quadratic diagonal Stark shift -alpha F^2 / 2 in MHz."""
    if e_field == 0.0:
        return 0.0
    return -0.5 * polarizability(level, model) * e_field**2
