"""Angular-momentum algebra: Clebsch-Gordan coefficients, Wigner 3j/6j
symbols and Lande g-factors.

Half-integer momenta are carried as doubled integers so that j and m never
touch floating point equality.  Factorial ratios are evaluated in log space
(``math.lgamma``), which keeps every symbol finite up to 2j = 200 and
beyond.  Phases follow the Condon-Shortley convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "AngularMomentum",
    "clebsch_gordan",
    "wigner_3j",
    "wigner_6j",
    "lande_g",
]


@dataclass(frozen=True)
class AngularMomentum:
    """A single (j, m) pair stored as doubled integers."""

    twice_j: int
    twice_m: int

    def __post_init__(self):
        if self.twice_j < 0:
            raise ValueError(f"twice_j must be non-negative, got {self.twice_j}")
        if abs(self.twice_m) > self.twice_j:
            raise ValueError(f"|m| > j: twice_m={self.twice_m}, twice_j={self.twice_j}")
        if (self.twice_j - self.twice_m) % 2 != 0:
            raise ValueError(f"j and m must differ by an integer: {self}")

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def m(self) -> float:
        return self.twice_m / 2


def _twice(x) -> int:
    """Convert a half-integer (or AngularMomentum j) to a doubled integer."""
    t = round(2 * x)
    if abs(2 * x - t) > 1e-9:
        raise ValueError(f"{x} is not a half-integer")
    return t


def _lnfac(n: int) -> float:
    if n < 0:
        raise ValueError("negative factorial argument")
    return math.lgamma(n + 1)


def _triangle_ok(tj1: int, tj2: int, tj3: int) -> bool:
    # all arguments doubled; the sum must be even (integer perimeter)
    if (tj1 + tj2 + tj3) % 2 != 0:
        return False
    return abs(tj1 - tj2) <= tj3 <= tj1 + tj2


def _ln_triangle(tj1: int, tj2: int, tj3: int) -> float:
    """Log of the Racah triangle coefficient Delta(j1 j2 j3)."""
    return 0.5 * (
        _lnfac((tj1 + tj2 - tj3) // 2)
        + _lnfac((tj1 - tj2 + tj3) // 2)
        + _lnfac((-tj1 + tj2 + tj3) // 2)
        - _lnfac((tj1 + tj2 + tj3) // 2 + 1)
    )


def _signed_exp_sum(terms: list[tuple[int, float]]) -> tuple[float, float]:
    """Sum of sign*exp(log) terms, returned as (scale_log, mantissa)."""
    if not terms:
        return 0.0, 0.0
    peak = max(ln for _, ln in terms)
    acc = 0.0
    for sign, ln in terms:
        acc += sign * math.exp(ln - peak)
    return peak, acc


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3j symbol; returns 0 outside the selection domain."""
    tj1, tj2, tj3 = _twice(j1), _twice(j2), _twice(j3)
    tm1, tm2, tm3 = _twice(m1), _twice(m2), _twice(m3)
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if not _triangle_ok(tj1, tj2, tj3):
        return 0.0
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj or (tj - tm) % 2 != 0:
            return 0.0

    # Racah sum over t; all factorial arguments are integers
    t_min = max(0, (tj2 - tj3 - tm1) // 2, (tj1 - tj3 + tm2) // 2)
    t_max = min(
        (tj1 + tj2 - tj3) // 2,
        (tj1 - tm1) // 2,
        (tj2 + tm2) // 2,
    )
    if t_max < t_min:
        return 0.0

    ln_pref = _ln_triangle(tj1, tj2, tj3) + 0.5 * (
        _lnfac((tj1 + tm1) // 2)
        + _lnfac((tj1 - tm1) // 2)
        + _lnfac((tj2 + tm2) // 2)
        + _lnfac((tj2 - tm2) // 2)
        + _lnfac((tj3 + tm3) // 2)
        + _lnfac((tj3 - tm3) // 2)
    )

    terms = []
    for t in range(t_min, t_max + 1):
        ln_den = (
            _lnfac(t)
            + _lnfac((tj1 + tj2 - tj3) // 2 - t)
            + _lnfac((tj1 - tm1) // 2 - t)
            + _lnfac((tj2 + tm2) // 2 - t)
            + _lnfac((tj3 - tj2 + tm1) // 2 + t)
            + _lnfac((tj3 - tj1 - tm2) // 2 + t)
        )
        terms.append((-1 if t % 2 else 1, -ln_den))
    scale, mant = _signed_exp_sum(terms)
    phase = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    return phase * mant * math.exp(ln_pref + scale)


def wigner_6j(j1, j2, j3, j4, j5, j6) -> float:
    """Wigner 6j symbol; returns 0 when any triad violates the triangle rule."""
    t = [_twice(x) for x in (j1, j2, j3, j4, j5, j6)]
    tj1, tj2, tj3, tj4, tj5, tj6 = t
    triads = (
        (tj1, tj2, tj3),
        (tj1, tj5, tj6),
        (tj4, tj2, tj6),
        (tj4, tj5, tj3),
    )
    for tri in triads:
        if not _triangle_ok(*tri):
            return 0.0

    ln_pref = sum(_ln_triangle(*tri) for tri in triads)

    # Racah sum; arguments below are doubled sums, all even where used
    a = (tj1 + tj2 + tj3) // 2
    b = (tj1 + tj5 + tj6) // 2
    c = (tj4 + tj2 + tj6) // 2
    d = (tj4 + tj5 + tj3) // 2
    e = (tj1 + tj2 + tj4 + tj5) // 2
    f = (tj2 + tj3 + tj5 + tj6) // 2
    g = (tj3 + tj1 + tj6 + tj4) // 2

    z_min = max(a, b, c, d)
    z_max = min(e, f, g)
    if z_max < z_min:
        return 0.0

    terms = []
    for z in range(z_min, z_max + 1):
        ln_num = _lnfac(z + 1)
        ln_den = (
            _lnfac(z - a)
            + _lnfac(z - b)
            + _lnfac(z - c)
            + _lnfac(z - d)
            + _lnfac(e - z)
            + _lnfac(f - z)
            + _lnfac(g - z)
        )
        terms.append((-1 if z % 2 else 1, ln_num - ln_den))
    scale, mant = _signed_exp_sum(terms)
    return mant * math.exp(ln_pref + scale)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.

    Returns 0 when m1 + m2 != M or the triangle rule fails (out-of-domain
    inputs are not an error).
    """
    tm1, tm2, tM = _twice(m1), _twice(m2), _twice(M)
    if tm1 + tm2 != tM:
        return 0.0
    tj1, tj2, tJ = _twice(j1), _twice(j2), _twice(J)
    if not _triangle_ok(tj1, tj2, tJ):
        return 0.0
    phase = -1 if ((tj1 - tj2 + tM) // 2) % 2 else 1
    return phase * math.sqrt(tJ + 1) * wigner_3j(j1, j2, J, m1, m2, -M)


def lande_g(l, s, j) -> float:
    """Lande g-factor g_j = 3/2 + [s(s+1) - l(l+1)] / [2 j (j+1)]."""
    if j == 0:
        raise ValueError("g-factor undefined for j = 0")
    return 1.5 + (s * (s + 1) - l * (l + 1)) / (2 * j * (j + 1))
