"""Monte-Carlo sampling of Gaussian and Wishart spectra.

Matrices are drawn from a counter-based generator keyed by
(seed, rep_index), so any rep can be produced independently of the
others and parallel runs merge deterministically.  Edge rescaling
brings the top eigenvalues onto the scale of the limiting laws
computed by the dist module.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .dist import SummaryStats

_ENSEMBLES = ("goe", "gue", "gse", "wishart")

# relative gap above which a doubled symplectic eigenvalue pair is
# considered broken (eigensolver trouble rather than roundoff)
_PAIR_TOL = 1e-8


class SampleError(RuntimeError):
    """Eigensolver failure for one rep; carries the rep index."""

    def __init__(self, message, rep_index):
        super().__init__(message)
        self.rep_index = rep_index


@dataclass(frozen=True)
class EnsembleConfig:
    ensemble: str
    size: int = 0
    reps: int = 1
    seed: int = 0
    top_k: int = 1
    rows: int = 0  # Wishart sample count n
    cols: int = 0  # Wishart dimension p

    def __post_init__(self):
        kind = self.ensemble.lower()
        if kind not in _ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}")
        object.__setattr__(self, "ensemble", kind)
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if kind == "wishart":
            if self.rows < 2 or self.cols < 1:
                raise ValueError("Wishart needs rows >= 2 and cols >= 1")
            if self.top_k > min(self.rows, self.cols):
                raise ValueError("top_k exceeds the nonzero spectrum")
            object.__setattr__(self, "size", self.cols)
        else:
            if self.size < self.top_k:
                raise ValueError("size must be >= top_k")


class SpectrumSample(NamedTuple):
    scaled_top: np.ndarray
    raw_top: np.ndarray


@dataclass(frozen=True)
class PercentileReport:
    """Per-percentile ordinates and empirical proportions.

    ordinates[i][j] is the point where the theoretical distribution of
    the (j+1)-th largest eigenvalue reaches percentiles[i];
    proportions[i][j] the fraction of samples in column j at or below
    it.
    """

    percentiles: tuple
    ordinates: tuple
    proportions: tuple

    def to_csv(self, fileobj):
        k = len(self.ordinates[0]) if self.ordinates else 0
        cols = ["percentile"]
        for j in range(k):
            cols += [f"ordinate_{j + 1}", f"proportion_{j + 1}"]
        fileobj.write(",".join(cols) + "\n")
        for p, o, q in zip(self.percentiles, self.ordinates,
                           self.proportions):
            row = [f"{p:.15g}"]
            for a, b in zip(o, q):
                row += [f"{a:.15g}", f"{b:.15g}"]
            fileobj.write(",".join(row) + "\n")


def _rng(seed, rep_index):
    key = np.array([seed, rep_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def edge_scale(raw_top, n):
    """Gaussian-ensemble edge rescaling (l - sqrt(2n)) * sqrt(2) * n^(1/6)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    raw = np.asarray(raw_top, dtype=float)
    return (raw - math.sqrt(2.0 * n)) * math.sqrt(2.0) * n ** (1.0 / 6.0)


def _goe_matrix(rng, n):
    # diagonal variance 1, off-diagonal 1/2
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2.0


def _gue_matrix(rng, n):
    # diagonal variance 1/2, off-diagonal real/imag parts 1/4 each
    g = rng.standard_normal((n, n))
    k = rng.standard_normal((n, n))
    return (g + g.T) / (2.0 * math.sqrt(2.0)) \
        + 1j * (k - k.T) / (2.0 * math.sqrt(2.0))


def _gse_matrix(rng, n):
    # quaternion self-dual, embedded as 2n x 2n complex Hermitian with
    # every eigenvalue doubled; diagonal variance 1/2, each of the four
    # quaternion components 1/4
    a = _gue_matrix(rng, n)
    p = rng.standard_normal((n, n))
    r = rng.standard_normal((n, n))
    b = ((p - p.T) + 1j * (r - r.T)) / (2.0 * math.sqrt(2.0))
    return np.block([[a, b], [-b.conj(), a.conj()]])


def _dedup_pairs(vals, rep_index):
    pairs = vals.reshape(-1, 2)
    gap = np.abs(pairs[:, 1] - pairs[:, 0])
    scale = np.maximum(1.0, np.abs(pairs).max(axis=1))
    if np.any(gap > _PAIR_TOL * scale):
        raise SampleError("doubled eigenvalue pairing broke", rep_index)
    return pairs.mean(axis=1)


def _eigvalsh(m, rep_index):
    try:
        vals = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise SampleError(f"eigensolver failed: {exc}", rep_index) from exc
    if not np.all(np.isfinite(vals)):
        raise SampleError("non-finite eigenvalues", rep_index)
    return vals


def johnstone_center(n, p):
    """Soft-edge centering and scale for an n x p Wishart matrix."""
    mu = (math.sqrt(n - 1.0) + math.sqrt(p)) ** 2
    sigma = (math.sqrt(n - 1.0) + math.sqrt(p)) \
        * (1.0 / math.sqrt(n - 1.0) + 1.0 / math.sqrt(p)) ** (1.0 / 3.0)
    return mu, sigma


def sample_spectrum(config, rep_index):
    """Draw one matrix and return its top_k edge-rescaled eigenvalues.

    Deterministic in (config.seed, rep_index).  The symplectic spectrum
    of quaternion dimension N sits at the edge of an orthogonal
    ensemble of dimension 2N+1 (its eigenvalues are every second one of
    that larger ensemble), so its rescaling uses 2N+1.
    """
    if not 0 <= rep_index < config.reps:
        raise ValueError("rep_index out of range")
    if config.ensemble == "wishart":
        return wishart_spectrum(config.rows, config.cols, config.seed,
                                rep_index, top_k=config.top_k)
    rng = _rng(config.seed, rep_index)
    n = config.size
    if config.ensemble == "goe":
        vals = _eigvalsh(_goe_matrix(rng, n), rep_index)
        scale_dim = n
    elif config.ensemble == "gue":
        vals = _eigvalsh(_gue_matrix(rng, n), rep_index)
        scale_dim = n
    else:
        vals = _dedup_pairs(_eigvalsh(_gse_matrix(rng, n), rep_index),
                            rep_index)
        scale_dim = 2 * n + 1
    raw = vals[::-1][:config.top_k]
    return SpectrumSample(edge_scale(raw, scale_dim), raw)


def wishart_spectrum(n, p, seed, rep_index, top_k=1):
    """Top eigenvalues of X^t X for X an n x p standard-normal matrix.

    Scaled output is (l - mu_np) / sigma_np.  When p > n the nonzero
    spectrum of X^t X equals that of X X^t, so the smaller Gram matrix
    is diagonalized.
    """
    if n < 2 or p < 1:
        raise ValueError("need n >= 2 and p >= 1")
    if not 1 <= top_k <= min(n, p):
        raise ValueError("top_k exceeds the nonzero spectrum")
    rng = _rng(seed, rep_index)
    x = rng.standard_normal((n, p))
    gram = x @ x.T if p > n else x.T @ x
    vals = _eigvalsh(gram, rep_index)
    raw = vals[::-1][:top_k]
    mu, sigma = johnstone_center(n, p)
    return SpectrumSample((raw - mu) / sigma, raw)


def collect(config, max_workers=None):
    """Sample every rep, in parallel, merged in rep order.

    Returns (samples, failures): samples is an array of shape
    (successful reps, top_k) of scaled eigenvalues, failures the list
    of SampleError instances for reps that broke.
    """
    if max_workers is None:
        env = os.environ.get("EDGEDIST_THREADS", "")
        max_workers = int(env) if env else (os.cpu_count() or 1)
    max_workers = max(1, max_workers)

    def one(i):
        try:
            return sample_spectrum(config, i).scaled_top
        except SampleError as exc:
            return exc

    if max_workers == 1:
        results = [one(i) for i in range(config.reps)]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(one, range(config.reps)))
    failures = [r for r in results if isinstance(r, SampleError)]
    rows = [r for r in results if not isinstance(r, SampleError)]
    samples = np.array(rows) if rows else np.empty((0, config.top_k))
    return samples, failures


def summarize(samples):
    """Sample mean, sd (unbiased), skewness and excess kurtosis."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("need at least 2 samples")
    sd = float(np.std(arr, ddof=1))
    if sd == 0.0:
        raise ValueError("constant sample, moments undefined")
    return SummaryStats(
        mean=float(np.mean(arr)),
        sd=sd,
        skewness=float(stats.skew(arr)),
        kurtosis=float(stats.kurtosis(arr)),
    )


def _invert_cdf(table, p):
    f, s = table.F, table.s
    if p < f[0] or p > f[-1]:
        raise ValueError(
            f"range error: percentile {p} outside table mass "
            f"[{f[0]:.3g}, {f[-1]:.3g}]")
    # F is nondecreasing; flat stretches at 0 and 1 are harmless since
    # searchsorted picks the first crossing
    i = int(np.searchsorted(f, p, side="left"))
    if i == 0:
        return float(s[0])
    if f[i] == f[i - 1]:
        return float(s[i])
    t = (p - f[i - 1]) / (f[i] - f[i - 1])
    return float(s[i - 1] + t * (s[i] - s[i - 1]))


def percentile_report(samples, tables, percentiles):
    """Empirical proportions at theoretical percentile ordinates.

    samples: array (reps, k) of scaled eigenvalues, column j holding
    the (j+1)-th largest.  tables: k DistTable objects, the theoretical
    law for each column.  For each percentile p and column j, the
    ordinate s_p solves F_j(s_p) = p and the report holds the fraction
    of column j at or below s_p.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.shape[1] != len(tables):
        raise ValueError("one table per sample column required")
    ordinates = []
    proportions = []
    for p in percentiles:
        row_s = [_invert_cdf(t, p) for t in tables]
        row_q = [float(np.mean(arr[:, j] <= row_s[j]))
                 for j in range(len(tables))]
        ordinates.append(tuple(row_s))
        proportions.append(tuple(row_q))
    return PercentileReport(percentiles=tuple(percentiles),
                            ordinates=tuple(ordinates),
                            proportions=tuple(proportions))
