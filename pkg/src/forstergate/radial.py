"""Radial and full dipole matrix elements between Rb Rydberg states.

The production path uses the quasiclassical (Kaulakys) approximation for
the radial integral <a|r|b>; the independent Numerov model-potential
integration in :mod:`forstergate.numerov` serves as its cross-check and
must agree to 2% for the state pairs entering the dynamics basis.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath

from .angular import wigner_3j, wigner_6j
from .atom import AtomModel, RydbergLevel

__all__ = ["radial_matrix_element", "dipole_matrix_element", "angular_dipole_factor"]


@lru_cache(maxsize=None)
def _quasiclassical(nu: float, l1: int, nu1: float, l2: int) -> float:
    """Kaulakys quasiclassical radial integral in atomic units."""
    l_c = (l1 + l2 + 1.0) / 2.0
    nu_c = math.sqrt(nu * nu1)
    dnu = nu - nu1
    gamma = (l2 - l1) * l_c / nu_c
    if abs(dnu) < 1e-12:
        g0, g1, g2, g3 = 1.0, 0.0, 0.0, 0.0
    else:
        ang_m = float(mpmath.angerj(dnu - 1.0, -dnu))
        ang_p = float(mpmath.angerj(dnu + 1.0, -dnu))
        g0 = (ang_m - ang_p) / (3.0 * dnu)
        g1 = -(ang_m + ang_p) / (3.0 * dnu)
        g2 = g0 - math.sin(math.pi * dnu) / (math.pi * dnu)
        g3 = (dnu / 2.0) * g0 + g1
    return (
        1.5
        * nu_c**2
        * math.sqrt(1.0 - (l_c / nu_c) ** 2)
        * (g0 + gamma * g1 + gamma**2 * g2 + gamma**3 * g3)
    )


def radial_matrix_element(a: RydbergLevel, b: RydbergLevel, model: AtomModel) -> float:
    """Quasiclassical <a|r|b> in atomic units; 0 for dipole-forbidden pairs."""
    if abs(a.l - b.l) != 1:
        return 0.0
    nu_a = model.effective_n(a.n, a.l, a.twice_j)
    nu_b = model.effective_n(b.n, b.l, b.twice_j)
    return _quasiclassical(nu_a, a.l, nu_b, b.l)


@lru_cache(maxsize=None)
def angular_dipole_factor(l1: int, tj1: int, tm1: int, q: int, l2: int, tj2: int, tm2: int) -> float:
    """<l2 j2 m2 | C^1_q | l1 j1 m1> for a spin-1/2 electron.

    Wigner-Eckart in j, then the 6j reduction from (l s) j to l.
    """
    if tm1 + 2 * q != tm2:
        return 0.0
    j1, j2 = tj1 / 2, tj2 / 2
    m1, m2 = tm1 / 2, tm2 / 2
    w3 = wigner_3j(j2, 1, j1, -m2, q, m1)
    if w3 == 0.0:
        return 0.0
    w3l = wigner_3j(l2, 1, l1, 0, 0, 0)
    if w3l == 0.0:
        return 0.0
    w6 = wigner_6j(j1, 1, j2, l2, 0.5, l1)
    red_l = (-1) ** l2 * math.sqrt((2 * l2 + 1) * (2 * l1 + 1)) * w3l
    red_j = (-1) ** round(l2 + 0.5 + j1 + 1) * math.sqrt((tj1 + 1) * (tj2 + 1)) * w6 * red_l
    phase = -1 if round(j2 - m2) % 2 else 1
    return phase * w3 * red_j


def dipole_matrix_element(a: RydbergLevel, b: RydbergLevel, q: int, model: AtomModel) -> float:
    """Spherical dipole component <b| r_q |a> in atomic units (signed).

    Zero unless m_j(b) = m_j(a) + q and the l, j selection rules hold.
    """
    if abs(a.l - b.l) != 1:
        return 0.0
    ang = angular_dipole_factor(a.l, a.twice_j, a.twice_mj, q, b.l, b.twice_j, b.twice_mj)
    if ang == 0.0:
        return 0.0
    return radial_matrix_element(a, b, model) * ang
