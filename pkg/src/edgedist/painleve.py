"""Painleve II boundary-value problem and its lambda-jet extension.

Solves q'' = x q + 2 q^3 with the right boundary condition
q(x, lambda) ~ sqrt(lambda) Ai(x), carrying Taylor coefficients in
eps = lambda - 1 through the solve together with the auxiliary integrals

    I(s) = int_s^inf (u - s) q(u)^2 du,    J(s) = int_s^inf q(u) du,

which every closed-form determinant downstream consumes.  The order-0
problem is nonlinear; each higher jet order satisfies a linear
variational equation driven by the lower orders.

Strategy: an adaptive Runge-Kutta sweep from the right boundary gives a
first approximation down to the patch point, the asymptotic expansions
continue it leftward, and a collocation solve over the full interval
refines everything.  The expansions also anchor the left boundary values
of the order-0 and order-1 components.
"""

import dataclasses
import math
from typing import NamedTuple

import numpy as np
from scipy import integrate

from . import specfun
from .jet import JetSeries


class SolverError(RuntimeError):
    """Raised when the collocation or integration stage fails."""


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    x_right: float = 6.0
    x_left: float = -10.0
    patch_point: float = -8.0
    grid_step: float = 0.005
    jet_order: int = 4
    ode_tolerance: float = 1e-12

    def __post_init__(self):
        if not (self.x_left < self.patch_point < 0.0 < self.x_right):
            raise ValueError("require x_left < patch_point < 0 < x_right")
        if self.grid_step <= 0.0:
            raise ValueError("grid_step must be positive")
        if self.jet_order < 0:
            raise ValueError("jet_order must be >= 0")


def q0_asymptotic(t):
    """Large-t value of q0(-t/2).

    Returns (sqrt(t)/2) (1 - t^-3 - (73/2) t^-6 - (10657/2) t^-9
    - (13912277/8) t^-12).
    """
    if t < 10.0:
        raise ValueError("expansion valid for t >= 10")
    u = t ** -3
    bracket = 1.0 - u * (1.0 + u * (36.5 + u * (5328.5 + u * 1739034.625)))
    return 0.5 * math.sqrt(t) * bracket


def _q0_asymptotic_dx(x):
    # d/dx of q0_asymptotic(-2x); termwise derivative of the expansion
    t = -2.0 * x
    fp = 0.5 * (0.5 * t ** -0.5 + 2.5 * t ** -3.5 + 200.75 * t ** -6.5
                + 45292.25 * t ** -9.5 + 19998898.1875 * t ** -12.5)
    return -2.0 * fp


def q1_asymptotic(t):
    """Large-t value of q1(-t/2).

    exp(t^{3/2}/3) / (2 sqrt(2 pi) t^{1/4}) times the bracket
    1 + 17/(24 t^{3/2}) + 1513/(1152 t^3) + 850193/(82944 t^{9/2})
    - 407117521/(7962624 t^6).
    """
    if t < 10.0:
        raise ValueError("expansion valid for t >= 10")
    if t > 400.0:
        raise ValueError("exponential overflow for t > 400")
    v = t ** -1.5
    bracket = 1.0 + v * (17.0 / 24.0 + v * (1513.0 / 1152.0 + v * (
        850193.0 / 82944.0 - v * 407117521.0 / 7962624.0)))
    try:
        pref = math.exp(t ** 1.5 / 3.0)
    except OverflowError:
        raise ValueError("exponential overflow in q1 expansion") from None
    return pref / (2.0 * math.sqrt(2.0 * math.pi) * t ** 0.25) * bracket


def sqrt_lambda_coeffs(order):
    """Taylor coefficients of sqrt(lambda) about lambda = 1 (binom(1/2, k))."""
    b = [1.0]
    for k in range(1, order + 1):
        b.append(b[-1] * (0.5 - (k - 1)) / k)
    return b


def boundary_jet(x, order=4):
    """Right-boundary jets of q and q' from q ~ sqrt(lambda) Ai.

    Coefficient k is binom(1/2, k) Ai(x) (respectively Ai'(x)).
    Requires x >= 4, inside the asymptotic regime.
    """
    if x < 4.0:
        raise ValueError("boundary data requires x >= 4")
    ai, aip = specfun.airy(x)
    b = sqrt_lambda_coeffs(order)
    return (JetSeries([bk * ai for bk in b]),
            JetSeries([bk * aip for bk in b]))


class JetBundle(NamedTuple):
    q: JetSeries
    qprime: JetSeries
    I: JetSeries
    Iprime: JetSeries
    J: JetSeries


class PainleveSolution:
    """Immutable gridded jets of the Painleve II system.

    Attributes
    ----------
    grid : ndarray
        Ascending x values, uniform with the configured step.
    q, qprime, I, Iprime, J : ndarray, shape (jet_order + 1, grid.size)
        Row k holds the k-th Taylor coefficient on the grid.
    config : SolverConfig
    diagnostics : dict
        Collocation residuals and node counts per jet order.
    """

    def __init__(self, grid, q, qprime, I, Iprime, J, config, dense,
                 diagnostics):
        self.grid = grid
        self.q = q
        self.qprime = qprime
        self.I = I
        self.Iprime = Iprime
        self.J = J
        self.config = config
        self.diagnostics = diagnostics
        self._dense = tuple(dense)
        for a in (grid, q, qprime, I, Iprime, J):
            a.setflags(write=False)

    @property
    def jet_order(self):
        return self.q.shape[0] - 1

    def jet_at(self, s):
        """Jets of q, q', I, I', J at a point.

        Valid for s >= x_left; beyond x_right the closed-form boundary
        jets (which the solve itself uses as right-end data) take over.
        """
        s = float(s)
        cfg = self.config
        if s < cfg.x_left - 1e-12:
            raise ValueError(f"s = {s} left of solved domain [{cfg.x_left}, inf)")
        M = self.jet_order
        if s > cfg.x_right:
            qj, qpj = boundary_jet(s, M)
            t = specfun.ai2_weighted_tail(s)
            v = specfun.ai2_tail(s)
            w = specfun.ai_tail(s)
            b = sqrt_lambda_coeffs(M)
            ij = [t, t] + [0.0] * (M - 1) if M >= 1 else [t]
            ipj = [-v, -v] + [0.0] * (M - 1) if M >= 1 else [-v]
            return JetBundle(qj, qpj, JetSeries(ij[:M + 1]),
                             JetSeries(ipj[:M + 1]),
                             JetSeries([bk * w for bk in b]))
        s = min(max(s, cfg.x_left), cfg.x_right)
        pt = np.array([s])
        cols = [d(pt)[:, 0] for d in self._dense]
        return JetBundle(
            JetSeries([c[0] for c in cols]),
            JetSeries([c[1] for c in cols]),
            JetSeries([c[2] for c in cols]),
            JetSeries([c[3] for c in cols]),
            JetSeries([c[4] for c in cols]),
        )

    def to_csv(self, fileobj):
        """Dump the solution grid: columns x, q0..qM, I0..IM, J0..JM."""
        M = self.jet_order
        cols = ["x"] + [f"q{k}" for k in range(M + 1)] \
            + [f"I{k}" for k in range(M + 1)] + [f"J{k}" for k in range(M + 1)]
        fileobj.write(",".join(cols) + "\n")
        for i, x in enumerate(self.grid):
            row = [f"{x:.14e}"]
            row += [f"{self.q[k, i]:.14e}" for k in range(M + 1)]
            row += [f"{self.I[k, i]:.14e}" for k in range(M + 1)]
            row += [f"{self.J[k, i]:.14e}" for k in range(M + 1)]
            fileobj.write(",".join(row) + "\n")


class LambdaSolution(NamedTuple):
    """Order-0 quantities of the lambda-deformed problem on [x_left, x_right]."""
    lam: float
    config: "SolverConfig"
    dense: object

    def at(self, s):
        """(q, q', I, I', J) at a point; closed-form tails beyond x_right."""
        cfg = self.config
        if s < cfg.x_left - 1e-12:
            raise ValueError(f"s = {s} left of solved domain")
        if s > cfg.x_right:
            ai, aip = specfun.airy(s)
            r = math.sqrt(self.lam)
            return (r * ai, r * aip, self.lam * specfun.ai2_weighted_tail(s),
                    -self.lam * specfun.ai2_tail(s), r * specfun.ai_tail(s))
        return tuple(self.dense(np.array([s]))[:, 0])


def solve_at_lambda(lam, config=None):
    """Order-0 solve of the deformed problem q ~ sqrt(lam) Ai, 0 <= lam < 1.

    Below lam = 1 the solution stays bounded as x -> -inf and the
    linearized modes oscillate instead of growing, so a single backward
    sweep from the right boundary is stable.  lam = 1 belongs to solve().
    """
    if not 0.0 <= lam < 1.0:
        raise ValueError("requires 0 <= lam < 1; use solve() at lam = 1")
    cfg = config or SolverConfig()
    xr, xl = cfg.x_right, cfg.x_left
    ai_r, aip_r = specfun.airy(xr)
    r = math.sqrt(lam)
    y0 = [r * ai_r, r * aip_r, lam * specfun.ai2_weighted_tail(xr),
          -lam * specfun.ai2_tail(xr), r * specfun.ai_tail(xr)]

    def rhs(x, y):
        q, qp, _, ip, _ = y
        return [qp, x * q + 2.0 * q ** 3, ip, q * q, -q]

    res = integrate.solve_ivp(rhs, (xr, xl), y0, method="DOP853",
                              rtol=max(cfg.ode_tolerance, 1e-13), atol=1e-20,
                              dense_output=True)
    if not res.success:
        raise SolverError(f"deformed sweep failed: {res.message}")
    return LambdaSolution(lam=lam, config=cfg, dense=res.sol)


def _cube_forcing(qlow, k):
    """Coefficient k of 2 q^3 from orders < k (the q_k term is excluded)."""
    r = 0.0
    for i in range(k + 1):
        for j in range(k + 1 - i):
            l = k - i - j
            if i < k and j < k and l < k:
                r = r + qlow[i] * qlow[j] * qlow[l]
    return 2.0 * r


def _square_forcing(qlow, k):
    """Coefficient k of q^2 from orders < k (the 2 q0 q_k term is excluded)."""
    s = 0.0
    for i in range(1, k):
        s = s + qlow[i] * qlow[k - i]
    return s


def solve(config=None):
    """Solve the Painleve II system with jets through the configured order.

    Parameters
    ----------
    config : SolverConfig, optional

    Returns
    -------
    PainleveSolution

    Raises
    ------
    SolverError
        On Runge-Kutta step failure (stiffness) or collocation
        non-convergence; the message carries the worst residual.
    """
    cfg = config or SolverConfig()
    xr, xl, M = cfg.x_right, cfg.x_left, cfg.jet_order
    if -2.0 * xl < 10.0:
        raise ValueError("x_left must be <= -5 so the left boundary "
                         "lies inside the asymptotic regime")
    # the collocation residual estimate bottoms out near 1e-10 in double
    # precision (spline-derivative roundoff on the integral components),
    # so tighter requests are clamped rather than left to fail
    tol = max(cfg.ode_tolerance, 1e-10)
    max_nodes = 400000

    ai_r, aip_r = specfun.airy(xr)
    T = specfun.ai2_weighted_tail(xr)
    V = specfun.ai2_tail(xr)
    W = specfun.ai_tail(xr)
    b = sqrt_lambda_coeffs(max(M, 1))
    diagnostics = {}

    # ---- first approximation: Runge-Kutta from the right boundary,
    # asymptotic expansion left of the patch point
    pp = cfg.patch_point
    ivp = integrate.solve_ivp(
        lambda x, y: [y[1], x * y[0] + 2.0 * y[0] ** 3],
        (xr, pp), [ai_r, aip_r], method="RK45",
        rtol=1e-10, atol=1e-13, dense_output=True)
    if not ivp.success:
        raise SolverError(f"stiffness error in trial integration: {ivp.message}")

    n_init = min(int(round((xr - xl) / cfg.grid_step)) + 1, 4001)
    xs = np.linspace(xl, xr, n_init)
    qg = np.empty_like(xs)
    qpg = np.empty_like(xs)
    right = xs >= pp
    qg[right], qpg[right] = ivp.sol(xs[right])
    if np.any(~right):
        qg[~right] = [q0_asymptotic(-2.0 * x) for x in xs[~right]]
        qpg[~right] = [_q0_asymptotic_dx(x) for x in xs[~right]]

    sq = qg * qg
    c_sq = integrate.cumulative_trapezoid(sq, xs, initial=0.0)
    ipg = -(V + (c_sq[-1] - c_sq))
    c_ip = integrate.cumulative_trapezoid(ipg, xs, initial=0.0)
    ig = T - (c_ip[-1] - c_ip)
    c_q = integrate.cumulative_trapezoid(qg, xs, initial=0.0)
    jg = W + (c_q[-1] - c_q)

    # ---- order 0: nonlinear collocation refinement
    def fun0(x, y):
        q, qp, _, ip, _ = y
        return np.vstack([qp, x * q + 2.0 * q ** 3, ip, q * q, -q])

    def jac0(x, y):
        q = y[0]
        J = np.zeros((5, 5, x.size))
        J[0, 1] = 1.0
        J[1, 0] = x + 6.0 * q * q
        J[2, 3] = 1.0
        J[3, 0] = 2.0 * q
        J[4, 0] = -1.0
        return J

    q0_left = q0_asymptotic(-2.0 * xl)

    def bc0(ya, yb):
        return np.array([ya[0] - q0_left, yb[0] - ai_r,
                         yb[2] - T, yb[3] + V, yb[4] - W])

    def bc0_jac(ya, yb):
        dya = np.zeros((5, 5))
        dyb = np.zeros((5, 5))
        dya[0, 0] = 1.0
        dyb[1, 0] = 1.0
        dyb[2, 2] = 1.0
        dyb[3, 3] = 1.0
        dyb[4, 4] = 1.0
        return dya, dyb

    res = integrate.solve_bvp(fun0, bc0, xs, np.vstack([qg, qpg, ig, ipg, jg]),
                              fun_jac=jac0, bc_jac=bc0_jac,
                              tol=tol, max_nodes=max_nodes)
    if res.status != 0:
        raise SolverError(f"order-0 collocation failed: {res.message}; "
                          f"max residual {res.rms_residuals.max():.3e}")
    dense = [res.sol]
    diagnostics["order0"] = {"nodes": res.x.size,
                             "max_rms_residual": float(res.rms_residuals.max())}

    # ---- orders 1..M: linear variational sweeps from the right boundary.
    # All side data for these orders sits at x_right, and the wanted
    # solution grows leftward at least as fast as any homogeneous mode,
    # so backward integration keeps the relative error bounded.
    rtol_ivp = max(cfg.ode_tolerance, 1e-13)
    for k in range(1, M + 1):
        def rhs(x, y, k=k):
            xa = np.array([x])
            qlow = [float(d(xa)[0, 0]) for d in dense[:k]]
            q0 = qlow[0]
            q, qp, _, ip, _ = y
            return [qp,
                    (x + 6.0 * q0 * q0) * q + _cube_forcing(qlow, k),
                    ip,
                    2.0 * q0 * q + _square_forcing(qlow, k),
                    -q]

        y0 = [b[k] * ai_r,
              b[k] * aip_r,
              T if k == 1 else 0.0,
              -V if k == 1 else 0.0,
              b[k] * W]
        resk = integrate.solve_ivp(rhs, (xr, xl), y0, method="DOP853",
                                   rtol=rtol_ivp, atol=1e-20,
                                   dense_output=True)
        if not resk.success:
            raise SolverError(f"order-{k} sweep failed: {resk.message}")
        dense.append(resk.sol)
        diagnostics[f"order{k}"] = {"steps": resk.t.size}

    # ---- sample everything on the uniform output grid
    n_out = int(round((xr - xl) / cfg.grid_step)) + 1
    x_out = np.linspace(xl, xr, n_out)
    stacked = np.array([d(x_out) for d in dense])  # (M+1, 5, n)
    return PainleveSolution(
        grid=x_out,
        q=stacked[:, 0].copy(),
        qprime=stacked[:, 1].copy(),
        I=stacked[:, 2].copy(),
        Iprime=stacked[:, 3].copy(),
        J=stacked[:, 4].copy(),
        config=cfg,
        dense=dense,
        diagnostics=diagnostics,
    )
