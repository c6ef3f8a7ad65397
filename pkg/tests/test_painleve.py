import io
import math

import numpy as np
import pytest
from scipy import integrate, special

from edgedist import painleve, specfun
from edgedist.painleve import SolverConfig


class TestConfig:
    def test_defaults(self):
        cfg = SolverConfig()
        assert cfg.x_right == 6.0
        assert cfg.x_left == -10.0
        assert cfg.patch_point == -8.0
        assert cfg.jet_order == 4

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            SolverConfig(x_left=-7.0)  # right of patch point
        with pytest.raises(ValueError):
            SolverConfig(grid_step=0.0)
        with pytest.raises(ValueError):
            SolverConfig(jet_order=-1)
        with pytest.raises(ValueError):
            SolverConfig(x_right=-1.0)

    def test_shallow_left_end_rejected(self):
        # asymptotic anchor needs -2*x_left inside the series range
        with pytest.raises(ValueError):
            painleve.solve(SolverConfig(x_left=-4.9, patch_point=-4.95))


def test_q0_asymptotic_leading_term():
    t = 16.0
    val = painleve.q0_asymptotic(t)
    lead = 0.5 * math.sqrt(t)
    # next correction after (1 - t^-3) is -36.5 t^-6
    resid = val / lead - (1.0 - t ** -3)
    assert resid == pytest.approx(-36.5 * t ** -6, rel=0.05)


def test_q0_asymptotic_range():
    with pytest.raises(ValueError):
        painleve.q0_asymptotic(9.99)


def test_q1_asymptotic_leading_term():
    t = 25.0
    val = painleve.q1_asymptotic(t)
    lead = math.exp(t ** 1.5 / 3.0) / (2.0 * math.sqrt(2.0 * math.pi)
                                       * t ** 0.25)
    resid = val / lead - 1.0
    assert resid == pytest.approx(17.0 / 24.0 * t ** -1.5, rel=0.05)


def test_q1_asymptotic_range():
    with pytest.raises(ValueError):
        painleve.q1_asymptotic(9.0)
    with pytest.raises(ValueError):
        painleve.q1_asymptotic(401.0)


def test_sqrt_lambda_coeffs():
    got = painleve.sqrt_lambda_coeffs(4)
    np.testing.assert_allclose(
        got, [1.0, 0.5, -0.125, 0.0625, -5.0 / 128.0], rtol=1e-15)


def test_boundary_jet():
    ai, aip = specfun.airy(6.0)
    qj, qpj = painleve.boundary_jet(6.0, order=3)
    np.testing.assert_allclose(
        qj.coeffs, [ai, 0.5 * ai, -0.125 * ai, 0.0625 * ai], rtol=1e-15)
    np.testing.assert_allclose(
        qpj.coeffs, [aip, 0.5 * aip, -0.125 * aip, 0.0625 * aip], rtol=1e-15)
    with pytest.raises(ValueError):
        painleve.boundary_jet(3.9)


class TestSolveInvariants:
    def test_right_boundary_is_airy(self, sol_default):
        xr = sol_default.config.x_right
        b = sol_default.jet_at(xr)
        pair = specfun.airy(xr)
        assert abs(b.q.coeffs[0] - pair.ai) < 1e-10
        assert abs(b.qprime.coeffs[0] - pair.aip) < 1e-10

    def test_right_boundary_tail_integrals(self, sol_default):
        xr = sol_default.config.x_right
        b = sol_default.jet_at(xr)
        w_ref, _ = integrate.quad(lambda u: special.airy(u)[0], xr, 46.0,
                                  epsabs=1e-15)
        assert abs(b.J.coeffs[0] - w_ref) < 1e-8
        assert abs(b.I.coeffs[0] - specfun.ai2_weighted_tail(xr)) < 1e-10
        assert abs(b.Iprime.coeffs[0] + specfun.ai2_tail(xr)) < 1e-10

    def test_q0_positive(self, sol_default):
        assert np.all(sol_default.q[0] > 0.0)

    def test_j0_positive_decreasing(self, sol_default):
        j0 = sol_default.J[0]
        assert np.all(j0 > 0.0)
        assert np.all(np.diff(j0) < 0.0)

    def test_painleve_residual(self, sol_default):
        # 5-point second derivative on the uniform output grid
        x = sol_default.grid
        q0 = sol_default.q[0]
        h = x[1] - x[0]
        idx = np.linspace(2, x.size - 3, 100).astype(int)
        qxx = (-q0[idx - 2] + 16 * q0[idx - 1] - 30 * q0[idx]
               + 16 * q0[idx + 1] - q0[idx + 2]) / (12.0 * h * h)
        rhs = x[idx] * q0[idx] + 2.0 * q0[idx] ** 3
        assert np.max(np.abs(qxx - rhs)) < 1e-8

    def test_variational_residual_order1(self, sol_default):
        x = sol_default.grid
        q0 = sol_default.q[0]
        q1 = sol_default.q[1]
        h = x[1] - x[0]
        idx = np.linspace(2, x.size - 3, 100).astype(int)
        qxx = (-q1[idx - 2] + 16 * q1[idx - 1] - 30 * q1[idx]
               + 16 * q1[idx + 1] - q1[idx + 2]) / (12.0 * h * h)
        rhs = (x[idx] + 6.0 * q0[idx] ** 2) * q1[idx]
        scale = np.maximum(np.abs(rhs), 1.0)
        assert np.max(np.abs(qxx - rhs) / scale) < 1e-7

    def test_second_derivative_of_I_is_q_squared(self, sol_default):
        x = sol_default.grid
        i0 = sol_default.I[0]
        q0 = sol_default.q[0]
        h = x[1] - x[0]
        idx = np.linspace(2, x.size - 3, 100).astype(int)
        ixx = (-i0[idx - 2] + 16 * i0[idx - 1] - 30 * i0[idx]
               + 16 * i0[idx + 1] - i0[idx + 2]) / (12.0 * h * h)
        assert np.max(np.abs(ixx - q0[idx] ** 2)) < 1e-6

    def test_asymptotic_match_at_minus8(self, sol_default):
        b = sol_default.jet_at(-8.0)
        q0_ref = painleve.q0_asymptotic(16.0)
        q1_ref = painleve.q1_asymptotic(16.0)
        assert abs(b.q.coeffs[0] - q0_ref) / q0_ref < 1e-6
        assert abs(b.q.coeffs[1] - q1_ref) / q1_ref < 1e-4

    def test_jet_order_consistency(self, sol_default, sol_order2):
        # truncation order must not change the shared coefficients
        for s in (-9.0, -4.0, 0.0, 3.0):
            full = sol_default.jet_at(s)
            low = sol_order2.jet_at(s)
            for name in ("q", "qprime", "I", "Iprime", "J"):
                a = getattr(full, name).coeffs[:3]
                b = getattr(low, name).coeffs
                for u, v in zip(a, b):
                    assert abs(u - v) <= 1e-10 * max(1.0, abs(v))

    def test_grid_refinement_stability(self, sol_default, sol_fine):
        a = math.exp(-sol_default.jet_at(-2.0).I.coeffs[0])
        b = math.exp(-sol_fine.jet_at(-2.0).I.coeffs[0])
        assert abs(a - b) <= 1e-9

    def test_diagnostics_present(self, sol_default):
        d = sol_default.diagnostics
        assert isinstance(d, dict) and d


class TestSolutionAccess:
    def test_jet_at_below_range(self, sol_default):
        with pytest.raises(ValueError):
            sol_default.jet_at(-10.5)

    def test_tail_jets_continuous_at_x_right(self, sol_default):
        inner = sol_default.jet_at(6.0 - 1e-9)
        outer = sol_default.jet_at(6.0 + 1e-9)
        for name in ("q", "qprime", "I", "Iprime", "J"):
            a = np.array(getattr(inner, name).coeffs)
            b = np.array(getattr(outer, name).coeffs)
            np.testing.assert_allclose(a, b, rtol=1e-6, atol=1e-13)

    def test_tail_jet_values(self, sol_default):
        s = 8.0
        b = sol_default.jet_at(s)
        ai = specfun.airy(s).ai
        np.testing.assert_allclose(
            b.q.coeffs, [c * ai for c in painleve.sqrt_lambda_coeffs(4)],
            rtol=1e-14)
        assert b.I.coeffs[0] == b.I.coeffs[1]
        assert b.I.coeffs[2] == 0.0

    def test_arrays_frozen(self, sol_default):
        with pytest.raises(ValueError):
            sol_default.q[0][0] = 1.0

    def test_jet_order_property(self, sol_default, sol_order2):
        assert sol_default.jet_order == 4
        assert sol_order2.jet_order == 2

    def test_to_csv_shape(self, sol_order2):
        buf = io.StringIO()
        sol_order2.to_csv(buf)
        lines = buf.getvalue().strip().split("\n")
        header = lines[0].split(",")
        assert header[0] == "x"
        assert len(header) == 1 + 3 * 3
        assert len(lines) - 1 == sol_order2.grid.size
        row = [float(tok) for tok in lines[1].split(",")]
        assert row[0] == pytest.approx(sol_order2.grid[0])


class TestLambdaSolve:
    def test_lambda_zero_is_zero(self):
        sol = painleve.solve_at_lambda(0.0)
        assert sol.at(-3.0) == (0.0, 0.0, 0.0, 0.0, 0.0)

    def test_lambda_half_boundary(self):
        sol = painleve.solve_at_lambda(0.5)
        q, qp, _, _, _ = sol.at(6.0)
        pair = specfun.airy(6.0)
        assert q == pytest.approx(math.sqrt(0.5) * pair.ai, rel=1e-10)
        assert qp == pytest.approx(math.sqrt(0.5) * pair.aip, rel=1e-10)

    def test_lambda_validation(self):
        with pytest.raises(ValueError):
            painleve.solve_at_lambda(1.0)
        with pytest.raises(ValueError):
            painleve.solve_at_lambda(-0.1)
