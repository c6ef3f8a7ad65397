import io
import math

import numpy as np
import pytest
from scipy import stats

from edgedist import dist, jet, oracle, painleve
from edgedist.dist import DistRequest, DistTable


class TestRequestValidation:
    def test_bad_beta(self):
        with pytest.raises(ValueError, match="beta"):
            DistRequest(beta=3)

    def test_bad_m(self):
        with pytest.raises(ValueError, match="m must"):
            DistRequest(beta=2, m=0)
        with pytest.raises(ValueError):
            DistRequest(beta=2, m=1.5)

    def test_bad_grid(self):
        with pytest.raises(ValueError, match="ascending"):
            DistRequest(beta=2, s_grid=np.array([0.0, -1.0]))
        with pytest.raises(ValueError):
            DistRequest(beta=2, s_grid=np.array([1.0]))
        with pytest.raises(ValueError, match="finite"):
            DistRequest(beta=2, s_grid=np.array([0.0, np.nan]))

    def test_default_grid_frozen(self):
        req = DistRequest(beta=2)
        assert req.s_grid.size == 1901
        assert req.s_grid[0] == -13.0 and req.s_grid[-1] == 6.0
        with pytest.raises(ValueError):
            req.s_grid[0] = 0.0


class TestJetIdentities:
    # all at s = -2, a point with O(1) values on every branch

    def test_d1_at_lambda_one(self, sol_default):
        b = sol_default.jet_at(-2.0)
        c0 = dist.d1_jet(-2.0, sol_default).coeffs[0]
        ref = math.exp(-(b.I.coeffs[0] + b.J.coeffs[0]))
        assert abs(c0 - ref) <= 1e-12 * ref

    def test_d4_at_lambda_one(self, sol_default):
        b = sol_default.jet_at(-2.0)
        c0 = dist.d4_jet(-2.0, sol_default).coeffs[0]
        ref = (dist.d2_jet(-2.0, sol_default).coeffs[0]
               * math.cosh(0.5 * b.J.coeffs[0]) ** 2)
        assert abs(c0 - ref) <= 1e-12 * ref

    def test_d2_value_against_quadrature(self, sol_default):
        c0 = dist.d2_jet(-2.0, sol_default).coeffs[0]
        assert abs(c0 - oracle.nystrom_d2(-2.0)) <= 1e-9

    def test_d2_derivative_against_quadrature(self, sol_default):
        # one-sided second-order stencil: lambda cannot exceed 1
        h = 1e-3
        v = [oracle.nystrom_d2(-2.0, lam=1.0 - k * h) for k in range(3)]
        fd = (3.0 * v[0] - 4.0 * v[1] + v[2]) / (2.0 * h)
        c1 = dist.d2_jet(-2.0, sol_default).coeffs[1]
        assert abs(c1 - fd) <= 1e-8

    def test_d4_derivative_against_quadrature(self, sol_default):
        h = 1e-3
        v = [oracle._d4_lambda(-2.0, 1.0 - k * h, 120) for k in range(3)]
        fd = (3.0 * v[0] - 4.0 * v[1] + v[2]) / (2.0 * h)
        c1 = dist.d4_jet(-2.0, sol_default).coeffs[1]
        assert abs(c1 - fd) <= 1e-8

    def test_composition_through_lt_is_even(self, sol_default):
        # lt - 1 = -(lambda - 1)^2 kills the odd orders
        b = sol_default.jet_at(-2.0)
        inner = dist._tilde_minus_1(b.I.order)
        composed = jet.jet_compose(b.I, inner)
        assert composed.coeffs[1] == 0.0
        assert composed.coeffs[3] == 0.0


class TestCdf:
    def test_m_beyond_jet_order(self, sol_default):
        req = DistRequest(beta=2, m=5,
                          s_grid=np.linspace(-5.0, 5.0, 11))
        with pytest.raises(ValueError, match="capability error"):
            dist.cdf(req, sol_default)

    def test_grid_left_of_solution(self, sol_default):
        req = DistRequest(beta=2, s_grid=np.linspace(-11.0, 5.0, 11))
        with pytest.raises(ValueError, match="range error"):
            dist.cdf(req, sol_default)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    @pytest.mark.parametrize("m", [1, 2])
    def test_cdf_shape(self, sol_default, beta, m):
        grid = np.linspace(-10.0, 6.0, 321)
        table = dist.cdf(DistRequest(beta=beta, m=m, s_grid=grid), sol_default)
        assert np.all(table.F >= 0.0) and np.all(table.F <= 1.0)
        assert np.all(np.diff(table.F) >= -1e-12)
        # left tail is slower for m = 2, right tail slower for beta = 1
        assert table.F[0] <= (1e-8 if m == 1 else 1e-5)
        assert table.F[-1] >= 1.0 - (5e-6 if beta == 1 else 1e-6)
        assert table.beta == beta and table.m == m

    def test_left_tail_negligible(self, sol_wide, beta1_tables):
        # slowest-decaying case at the far left of the wide grid
        assert beta1_tables[1].F[0] <= 1e-10

    def test_beta_ordering_near_bulk(self, sol_default):
        # F1 <= F2 <= F4 holds to the right of the tail crossover
        grid = np.linspace(-3.0, 2.0, 26)
        F = {b: dist.cdf(DistRequest(beta=b, s_grid=grid), sol_default).F
             for b in (1, 2, 4)}
        assert np.all(F[1] <= F[2] + 1e-15)
        assert np.all(F[2] <= F[4] + 1e-15)

    def test_nonuniform_grid(self, sol_default):
        grid = np.array([-3.0, -2.5, -2.0, -1.0, 0.0, 2.0])
        table = dist.cdf(DistRequest(beta=2, s_grid=grid), sol_default)
        assert np.all(np.diff(table.F) > 0.0)
        assert np.all(np.isfinite(table.f))

    def test_deep_left_clamp(self, sol_deep):
        # the orthogonal-case exponent I0 + J0 passes 709 near s = -20,
        # so its determinant underflows and the square-root guard must
        # clamp the CDF to exactly zero; the unitary case with exponent
        # I0 alone is still representable there and stays positive
        grid = np.linspace(-20.0, -14.0, 61)
        t1 = dist.cdf(DistRequest(beta=1, s_grid=grid), sol_deep)
        assert t1.F[0] == 0.0
        t2 = dist.cdf(DistRequest(beta=2, s_grid=grid), sol_deep)
        assert 0.0 < t2.F[0] <= 1e-280
        for table in (t1, t2):
            assert np.all(np.isfinite(table.F))
            assert np.all(np.diff(table.F) >= 0.0)

    def test_interlacing_m1(self, sol_default):
        grid = np.linspace(-10.0, 6.0, 1601)
        assert dist.interlacing_residual(1, sol_default, grid) <= 1e-5

    def test_interlacing_m2(self, sol_default):
        grid = np.linspace(-10.0, 6.0, 1601)
        assert dist.interlacing_residual(2, sol_default, grid) <= 1e-4


class TestMoments:
    def test_normal_reference(self):
        # moments() only sees the table, so feed it an exact CDF
        s = np.linspace(-9.0, 9.0, 3601)
        table = DistTable(s=s, F=stats.norm.cdf(s), f=stats.norm.pdf(s),
                          beta=1, m=1)
        got = dist.moments(table)
        assert abs(got.mean) <= 1e-9
        assert abs(got.sd - 1.0) <= 1e-8
        assert abs(got.skewness) <= 1e-8
        assert abs(got.kurtosis) <= 1e-6

    def test_truncation_rejected(self, sol_default):
        grid = np.linspace(-3.0, 1.0, 101)
        table = dist.cdf(DistRequest(beta=2, s_grid=grid), sol_default)
        with pytest.raises(ValueError, match="truncation error"):
            dist.moments(table)


def test_to_csv_round_trip(sol_default):
    grid = np.linspace(-2.0, 0.0, 5)
    table = dist.cdf(DistRequest(beta=2, s_grid=grid), sol_default)
    buf = io.StringIO()
    table.to_csv(buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "s,F,f"
    assert len(lines) == 6
    s0, F0, _ = (float(tok) for tok in lines[1].split(","))
    assert s0 == -2.0
    assert F0 == pytest.approx(table.F[0], rel=1e-13)
