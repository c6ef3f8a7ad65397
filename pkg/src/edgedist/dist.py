"""Edge-scaled eigenvalue distributions F_beta(s, m) for beta in {1, 2, 4}.

The three determinants are closed forms in the Painleve jets:

    D2(s, lambda) = exp(-I(s, lambda))
    D1(s, lambda) = D2(s, lt) (lambda - 1 - cosh mu(s, lt)
                    + sqrt(lt) sinh mu(s, lt)) / (lambda - 2),   lt = 2 lambda - lambda^2
    D4(s, lambda) = D2(s, lambda) cosh^2(mu(s, lambda) / 2)

with mu = J.  F_beta(s, m) then telescopes out of the Taylor
coefficients at lambda = 1: the step from m to m+1 equals
(-1)^m/m! times the m-th lambda-derivative of D (of sqrt(D) for
beta in {1, 4}), and derivative/m! is precisely Taylor coefficient m,
so F(s, m) = sum_{k=0}^{m-1} (-1)^k c_k.
"""

import dataclasses
import math

import numpy as np
from scipy.integrate import simpson

from .jet import JetSeries, jet_compose, jet_exp, jet_recip, jet_sqrt

# below this the jet square root is dominated by roundoff of the
# underflowing constant term; the distribution value there is 0 anyway
_UNDERFLOW = 1e-280


def _default_grid():
    return np.linspace(-13.0, 6.0, 1901)


@dataclasses.dataclass(frozen=True, eq=False)
class DistRequest:
    beta: int
    m: int = 1
    s_grid: np.ndarray = None

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError("beta must be one of 1, 2, 4")
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError("m must be an integer >= 1")
        grid = self.s_grid if self.s_grid is not None else _default_grid()
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ValueError("s_grid must be a 1-d array of at least 2 points")
        if not np.all(np.isfinite(grid)) or not np.all(np.diff(grid) > 0):
            raise ValueError("s_grid must be finite and strictly ascending")
        grid.setflags(write=False)
        object.__setattr__(self, "s_grid", grid)


@dataclasses.dataclass(frozen=True, eq=False)
class DistTable:
    s: np.ndarray
    F: np.ndarray
    f: np.ndarray
    beta: int
    m: int

    def to_csv(self, fileobj):
        fileobj.write("s,F,f\n")
        for s, F, f in zip(self.s, self.F, self.f):
            fileobj.write(f"{s:.14e},{F:.14e},{f:.14e}\n")


@dataclasses.dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    skewness: float
    kurtosis: float


def _lambda_minus_1(order):
    c = [0.0] * (order + 1)
    if order >= 1:
        c[1] = 1.0
    return JetSeries(c)


def _tilde_minus_1(order):
    # lt - 1 = 2 lambda - lambda^2 - 1 = -(lambda - 1)^2
    c = [0.0] * (order + 1)
    if order >= 2:
        c[2] = -1.0
    return JetSeries(c)


def _d2_of(bundle):
    return jet_exp(-bundle.I)


def _d1_of(bundle):
    # assembled from pure exponentials: hyperbolics of mu times D2 would
    # produce e^{J0}-sized intermediates cancelling down to tiny
    # coefficients, while the exponents -I +- J only involve the much
    # smaller coefficient differences
    order = bundle.I.order
    inner = _tilde_minus_1(order)
    i_t = jet_compose(bundle.I, inner)
    mu_t = jet_compose(bundle.J, inner)
    root_lt = jet_sqrt(1.0 + inner)
    lin = _lambda_minus_1(order)
    combo = lin * jet_exp(-i_t) \
        - 0.5 * ((1.0 - root_lt) * jet_exp(mu_t - i_t)) \
        - 0.5 * ((1.0 + root_lt) * jet_exp(-(i_t + mu_t)))
    # lambda - 2 = (lambda - 1) - 1
    return combo * jet_recip(lin - 1.0)


def _root4_of(bundle):
    # sqrt(D4) = e^{-I/2} cosh(J/2), split the same way
    return 0.5 * (jet_exp(0.5 * (bundle.J - bundle.I))
                  + jet_exp(-0.5 * (bundle.I + bundle.J)))


def _d4_of(bundle):
    r = _root4_of(bundle)
    return r * r


def d2_jet(s, sol):
    """Jet of D2(s, lambda) about lambda = 1.

    Raises a range error (ValueError) left of the solved domain; beyond
    x_right the solution's closed-form tail jets apply.
    """
    return _d2_of(sol.jet_at(s))


def d1_jet(s, sol):
    """Jet of D1(s, lambda) about lambda = 1 (composition through lt)."""
    return _d1_of(sol.jet_at(s))


def d4_jet(s, sol):
    """Jet of D4(s, lambda) about lambda = 1."""
    return _d4_of(sol.jet_at(s))


def _root_of(bundle, beta):
    # the jet whose Taylor coefficients feed the telescoping sum:
    # D2 itself, or the square root of D1/D4
    if beta == 2:
        return _d2_of(bundle)
    if beta == 4:
        return _root4_of(bundle)
    d1 = _d1_of(bundle)
    if d1.coeffs[0] < _UNDERFLOW:
        return None
    return jet_sqrt(d1)


def _telescope(root, m):
    # F(s, m) = sum_{k < m} (-1)^k c_k: the step from index m to m+1 is
    # (-1)^m/m! times the m-th lambda-derivative, i.e. (-1)^m c_m
    if root is None:
        return 0.0
    total = math.fsum((-1.0) ** k * root.coeffs[k] for k in range(m))
    return min(max(total, 0.0), 1.0)


def _density(F, h):
    # 5-point first-derivative stencils, one-sided at the edges
    n = F.size
    f = np.empty_like(F)
    f[2:-2] = (F[:-4] - 8.0 * F[1:-3] + 8.0 * F[3:-1] - F[4:]) / (12.0 * h)
    f[0] = (-25.0 * F[0] + 48.0 * F[1] - 36.0 * F[2]
            + 16.0 * F[3] - 3.0 * F[4]) / (12.0 * h)
    f[1] = (-3.0 * F[0] - 10.0 * F[1] + 18.0 * F[2]
            - 6.0 * F[3] + F[4]) / (12.0 * h)
    f[n - 2] = (3.0 * F[n - 1] + 10.0 * F[n - 2] - 18.0 * F[n - 3]
                + 6.0 * F[n - 4] - F[n - 5]) / (12.0 * h)
    f[n - 1] = (25.0 * F[n - 1] - 48.0 * F[n - 2] + 36.0 * F[n - 3]
                - 16.0 * F[n - 4] + 3.0 * F[n - 5]) / (12.0 * h)
    return f


def cdf(req, sol):
    """Tabulate F_beta(s, m) and its density on the requested grid.

    Parameters
    ----------
    req : DistRequest
    sol : PainleveSolution

    Returns
    -------
    DistTable

    Raises
    ------
    ValueError
        If m exceeds what the jet order can produce (coefficients
        0..m-1 are required) or the grid extends left of the solution.
    """
    if req.m > sol.jet_order:
        raise ValueError(f"capability error: m = {req.m} exceeds the "
                         f"solution jet order {sol.jet_order}")
    if req.s_grid[0] < sol.config.x_left - 1e-9:
        raise ValueError(f"range error: grid starts at {req.s_grid[0]}, "
                         f"solution at {sol.config.x_left}")
    F = np.empty(req.s_grid.size)
    for i, s in enumerate(req.s_grid):
        F[i] = _telescope(_root_of(sol.jet_at(float(s)), req.beta), req.m)

    steps = np.diff(req.s_grid)
    h = steps[0]
    if req.s_grid.size >= 5 and np.allclose(steps, h, rtol=1e-8, atol=0.0):
        f = _density(F, h)
    else:
        f = np.gradient(F, req.s_grid)
    return DistTable(s=req.s_grid, F=F, f=f, beta=req.beta, m=req.m)


def moments(table):
    """First four moments (mean, sd, skewness, excess kurtosis) of a table.

    Requires the grid to carry essentially all mass:
    F(s_min) < 1e-8 and F(s_max) > 1 - 1e-8.
    """
    F, f, s = table.F, table.f, table.s
    if not (F[0] < 1e-8 and F[-1] > 1.0 - 1e-8):
        raise ValueError(
            f"truncation error: mass outside grid, F(s_min) = {F[0]:.3e}, "
            f"1 - F(s_max) = {1.0 - F[-1]:.3e}")
    m0 = simpson(f, x=s)
    mean = simpson(s * f, x=s) / m0
    c = s - mean
    var = simpson(c * c * f, x=s) / m0
    sd = math.sqrt(var)
    g1 = simpson(c ** 3 * f, x=s) / (m0 * sd ** 3)
    g2 = simpson(c ** 4 * f, x=s) / (m0 * sd ** 4) - 3.0
    return SummaryStats(mean=mean, sd=sd, skewness=g1, kurtosis=g2)


def interlacing_residual(m, sol, s_grid=None):
    """sup_s |F4(s, m) - F1(s, 2m)| over the grid (default -13..6)."""
    if s_grid is None:
        s_grid = _default_grid()
    t4 = cdf(DistRequest(beta=4, m=m, s_grid=s_grid), sol)
    t1 = cdf(DistRequest(beta=1, m=2 * m, s_grid=s_grid), sol)
    return float(np.max(np.abs(t4.F - t1.F)))
