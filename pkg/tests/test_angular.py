"""Angular-momentum algebra: tabulated values, symmetries and the
orthogonality/completeness sum rules."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forstergate.angular import AngularMomentum, clebsch_gordan, lande_g, wigner_3j, wigner_6j


class TestClebschGordan:
    def test_c20_table(self):
        """The C^{20}_{1q,1-q} coefficients entering the dipole-dipole sum."""
        assert clebsch_gordan(1, 0, 1, 0, 2, 0) == pytest.approx(math.sqrt(2 / 3), abs=1e-14)
        assert clebsch_gordan(1, 1, 1, -1, 2, 0) == pytest.approx(1 / math.sqrt(6), abs=1e-14)
        assert clebsch_gordan(1, -1, 1, 1, 2, 0) == pytest.approx(1 / math.sqrt(6), abs=1e-14)

    def test_identity_coupling(self):
        for j, m in [(0.5, 0.5), (1, 0), (1.5, -0.5), (2, 2)]:
            assert clebsch_gordan(j, m, 0, 0, j, m) == pytest.approx(1.0, abs=1e-14)

    def test_spin_half_table(self):
        assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
        assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
        assert clebsch_gordan(0.5, -0.5, 0.5, 0.5, 0, 0) == pytest.approx(-1 / math.sqrt(2), abs=1e-14)

    def test_projection_rule(self):
        assert clebsch_gordan(1, 1, 1, 1, 2, 0) == 0.0
        assert clebsch_gordan(1, 0, 1, 0, 2, 1) == 0.0

    def test_triangle_rule(self):
        assert clebsch_gordan(1, 0, 1, 0, 4, 0) == 0.0
        assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 2, 0) == 0.0

    @given(
        tj1=st.integers(0, 8), tj2=st.integers(0, 8),
        tm1=st.integers(-8, 8), tm2=st.integers(-8, 8),
    )
    @settings(max_examples=200, deadline=None)
    def test_completeness(self, tj1, tj2, tm1, tm2):
        """Sum over all J of CG^2 equals 1 for any valid (m1, m2)."""
        if abs(tm1) > tj1 or (tj1 + tm1) % 2 or abs(tm2) > tj2 or (tj2 + tm2) % 2:
            return
        total = sum(
            clebsch_gordan(tj1 / 2, tm1 / 2, tj2 / 2, tm2 / 2, tJ / 2, (tm1 + tm2) / 2) ** 2
            for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)
        )
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_orthogonality(self):
        """CG rows for fixed (j1, j2) = (3/2, 1) are orthonormal in J."""
        j1, j2 = 1.5, 1.0
        Js = [0.5, 1.5, 2.5]
        m1s = [-1.5, -0.5, 0.5, 1.5]
        for J in Js:
            for Jp in Js:
                for tM in range(-int(2 * J), int(2 * J) + 1, 2):
                    M = tM / 2
                    if abs(M) > Jp:
                        continue
                    s = sum(
                        clebsch_gordan(j1, m1, j2, M - m1, J, M)
                        * clebsch_gordan(j1, m1, j2, M - m1, Jp, M)
                        for m1 in m1s
                        if abs(M - m1) <= j2
                    )
                    expected = 1.0 if J == Jp else 0.0
                    assert s == pytest.approx(expected, abs=1e-12)


class TestWignerSymbols:
    def test_3j_even_permutation(self):
        a = wigner_3j(2, 1, 2, 1, 0, -1)
        b = wigner_3j(1, 2, 2, 0, -1, 1)
        c = wigner_3j(2, 2, 1, -1, 1, 0)
        assert a == pytest.approx(b, abs=1e-14)
        assert a == pytest.approx(c, abs=1e-14)

    def test_3j_known_values(self):
        assert wigner_3j(1, 1, 2, 0, 0, 0) == pytest.approx(math.sqrt(2 / 15), abs=1e-14)
        assert wigner_3j(1, 1, 0, 1, -1, 0) == pytest.approx(1 / math.sqrt(3), abs=1e-14)

    def test_3j_odd_sum_vanishes(self):
        assert wigner_3j(1, 1, 1, 0, 0, 0) == 0.0

    def test_6j_known_values(self):
        assert wigner_6j(1, 1, 1, 1, 1, 1) == pytest.approx(1 / 6, abs=1e-14)
        assert wigner_6j(0.5, 0.5, 1, 0.5, 0.5, 1) == pytest.approx(1 / 6, abs=1e-14)

    def test_6j_orthogonality(self):
        """sum_x (2x+1) {a b x; c d p}{a b x; c d q} = delta_pq/(2p+1)."""
        a = b = c = d = 1.5
        for p in (0, 1, 2, 3):
            for q in (0, 1, 2, 3):
                s = sum(
                    (2 * x + 1)
                    * wigner_6j(a, b, x, c, d, p)
                    * wigner_6j(a, b, x, c, d, q)
                    for x in (0, 1, 2, 3)
                )
                expected = (1.0 / (2 * p + 1)) if p == q else 0.0
                assert s == pytest.approx(expected, abs=1e-12)

    def test_large_arguments_finite(self):
        """The log-gamma path keeps 2j = 200 inputs finite and accurate."""
        assert wigner_3j(100, 100, 0, 1, -1, 0) == pytest.approx(-0.07053456158586, abs=1e-12)
        assert math.isfinite(wigner_6j(100, 100, 1, 100, 100, 1))


class TestAngularMomentum:
    def test_parity_validation(self):
        with pytest.raises(ValueError):
            AngularMomentum(3, 2)

    def test_projection_bound(self):
        with pytest.raises(ValueError):
            AngularMomentum(2, 4)

    def test_lande_g(self):
        assert lande_g(0, 0.5, 0.5) == pytest.approx(2.0, abs=2e-10)
        assert lande_g(1, 0.5, 0.5) == pytest.approx(2 / 3, abs=1e-12)
        assert lande_g(1, 0.5, 1.5) == pytest.approx(4 / 3, abs=1e-12)
        assert lande_g(2, 0.5, 2.5) == pytest.approx(6 / 5, abs=1e-12)
