"""Serially dependent wild bootstrap for the robust two-sample mean test.

Instead of resampling blocks, the bootstrap perturbs each group's residuals
with external multipliers eta that are serially dependent by construction:

    eta_t = K*^{-1/2} sum_{l=1}^{K*} [cos(2 pi l t/T) v_{1l}
                                      + sin(2 pi l t/T) v_{2l}],

with 2K* iid mean-zero unit-variance innovations v.  Using the cosine/sine
pair makes Var(eta_t) = 1 exactly for every t, while
Cov(eta_t, eta_s) = K*^{-1} sum_l cos(2 pi l (t-s)/T) decays with the lag,
so bootstrap samples inherit the dependence of the data.

Both groups' bootstrap samples are generated around the pooled mean
(T1 Ybar1 + T2 Ybar2)/(T1 + T2), which imposes the null of equal means, and
each bootstrap replicate is studentized with the same per-group basis
counts K1, K2 as the original statistic.  Critical values are empirical
quantiles of the replicate statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import phi_matrix, psi_matrices
from .errors import DegenerateReplicatesError, DegenerateSampleError, DomainError
from .lrv import TimeSeriesSample, resolve_k, series_lrv
from .statdist import DistKind, RefDistribution
from .ttests import TestReport

NORMAL_INNOVATIONS = "normal"
RADEMACHER_INNOVATIONS = "rademacher"

_MAX_CONSECUTIVE_REDRAWS = 100


@dataclass(frozen=True, eq=False)
class EtaDraw:
    """One draw of the dependent multiplier vector."""

    values: np.ndarray
    k_star: int
    law: str


@dataclass(frozen=True, eq=False)
class BootstrapRun:
    """Replicate statistics and the decision quantities built from them."""

    replicate_stats: np.ndarray
    crit_lo: float
    crit_hi: float
    p_value: float
    B: int
    seed: int
    k_star1: int
    k_star2: int
    K1: int
    K2: int
    n_redrawn: int = 0


def _check_k_star(n: int, k_star: int) -> None:
    if not 1 <= k_star <= n // 2:
        raise DomainError(
            f"k_star must lie in [1, {n // 2}] for T={n}, got {k_star}"
        )


def _draw_innovations(rng: np.random.Generator, shape, law: str) -> np.ndarray:
    if law == NORMAL_INNOVATIONS:
        return rng.standard_normal(shape)
    if law == RADEMACHER_INNOVATIONS:
        return rng.integers(0, 2, size=shape).astype(np.float64) * 2.0 - 1.0
    raise DomainError(f"unknown innovation law {law!r}")


def _eta_from_innovations(n: int, k_star: int, v: np.ndarray) -> np.ndarray:
    """Multipliers from given innovations v of shape (2, k_star[, B])."""
    cos_tab, sin_tab = psi_matrices(n, k_star)
    out = cos_tab.dot(v[0]) + sin_tab.dot(v[1])
    out /= math.sqrt(k_star)
    return out


def gen_eta(
    n: int, k_star: int, rng: np.random.Generator, law: str = NORMAL_INNOVATIONS
) -> EtaDraw:
    """Draw one dependent multiplier vector of length n."""
    _check_k_star(n, k_star)
    v = _draw_innovations(rng, (2, k_star), law)
    return EtaDraw(values=_eta_from_innovations(n, k_star, v), k_star=k_star, law=law)


def eta_autocov(n: int, k_star: int, lag: int) -> float:
    """Design covariance Cov(eta_t, eta_{t-lag}): the closed cosine sum."""
    _check_k_star(n, k_star)
    ells = np.arange(1, k_star + 1, dtype=np.float64)
    return float(np.mean(np.cos(2.0 * np.pi * ells * lag / n)))


def bootstrap_lrv_closed_form(residuals, k_star: int) -> float:
    """Exact conditional variance of n^{-1/2} sum_t u_t eta_t given the data.

    Equals K*^{-1} sum_l (c_l^2 + s_l^2), where c_l and s_l are the scaled
    cosine and sine projections of the residuals; nonnegative by
    construction.  The O(T^2) double sum over the multiplier covariances
    collapses to this O(T K*) form.
    """
    u = np.asarray(residuals, dtype=np.float64)
    if u.ndim != 1 or u.size < 2:
        raise DomainError("residuals must be a vector of length >= 2")
    _check_k_star(u.size, k_star)
    cos_tab, sin_tab = psi_matrices(u.size, k_star)
    c = cos_tab.T.dot(u) / math.sqrt(u.size)
    s = sin_tab.T.dot(u) / math.sqrt(u.size)
    return float(np.sum(c * c + s * s) / k_star)


def _pooled_mean(y1: TimeSeriesSample, y2: TimeSeriesSample) -> float:
    return (y1.n * y1.mean + y2.n * y2.mean) / (y1.n + y2.n)


def _replicate_stats_from_eta(
    y1: TimeSeriesSample,
    y2: TimeSeriesSample,
    k1: int,
    k2: int,
    eta1: np.ndarray,
    eta2: np.ndarray,
) -> np.ndarray:
    """Studentized replicate statistics for multiplier draws.

    eta_j may be (T_j,) for a single replicate or (T_j, B) for a batch.
    Degenerate replicates (zero bootstrap LRV in both groups) come back as
    NaN for the caller to handle.

    The common location both resamples are built around cancels identically
    from the studentized statistic (Ybar*_1 - Ybar*_2 = ubar*_1 - ubar*_2
    and the residuals u* - ubar* are location-free), so the computation
    runs on the multiplier-residual scale.
    """
    means = []
    omegas = []
    for sample, k, eta in ((y1, k1, eta1), (y2, k2, eta2)):
        ustar = sample.residuals.reshape(-1, *([1] * (eta.ndim - 1))) * eta
        mean_star = ustar.mean(axis=0)
        resid_star = ustar - mean_star
        z = phi_matrix(sample.n, k).T.dot(resid_star) / math.sqrt(sample.n)
        omega_star = np.mean(z * z, axis=0)
        means.append(mean_star)
        omegas.append(omega_star / sample.n)
    denom_sq = omegas[0] + omegas[1]
    with np.errstate(divide="ignore", invalid="ignore"):
        stats = np.where(
            denom_sq > 0.0, (means[0] - means[1]) / np.sqrt(denom_sq), np.nan
        )
    return stats


def bootstrap_replicate(
    y1: TimeSeriesSample,
    y2: TimeSeriesSample,
    k1: int,
    k2: int,
    k_star1: int,
    k_star2: int,
    rng1: np.random.Generator,
    rng2: np.random.Generator,
    law: str = NORMAL_INNOVATIONS,
) -> float:
    """One bootstrap replicate statistic, innovations drawn per group.

    Returns NaN when the replicate is degenerate (both bootstrap LRVs zero);
    the full test driver redraws such replicates.
    """
    _check_k_star(y1.n, k_star1)
    _check_k_star(y2.n, k_star2)
    eta1 = _eta_from_innovations(y1.n, k_star1, _draw_innovations(rng1, (2, k_star1), law))
    eta2 = _eta_from_innovations(y2.n, k_star2, _draw_innovations(rng2, (2, k_star2), law))
    return float(_replicate_stats_from_eta(y1, y2, k1, k2, eta1, eta2))


def _empirical_quantile(sorted_stats: np.ndarray, p: float) -> float:
    """Order-statistic quantile with index ceil(p*(B+1)), clamped to [1, B]."""
    b = sorted_stats.size
    idx = min(b, max(1, math.ceil(p * (b + 1))))
    return float(sorted_stats[idx - 1])


def shar_wb_test(
    y1: TimeSeriesSample,
    y2: TimeSeriesSample,
    alpha: float = 0.05,
    n_boot: int = 399,
    seed: int = 0,
    k1="auto",
    k2="auto",
    law: str = NORMAL_INNOVATIONS,
) -> tuple[TestReport, BootstrapRun]:
    """Wild-bootstrap two-sample mean test robust to serial dependence.

    Selects K_j (data-driven unless given), computes the studentized
    statistic, generates ``n_boot`` replicate statistics with dependent
    multipliers (K*_j = K_j), and rejects when the statistic falls outside
    the empirical alpha/2 and 1-alpha/2 quantiles.  The reported p-value is
    the symmetric two-tailed one, 2*min(F*(t), 1-F*(t)).  Fully
    reproducible from ``seed``.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if n_boot < 19:
        raise DomainError(f"need at least 19 bootstrap replicates, got {n_boot}")
    k1 = resolve_k(y1, k1)
    k2 = resolve_k(y2, k2)
    k_star1, k_star2 = k1, k2

    om1 = series_lrv(y1, k1).omega
    om2 = series_lrv(y2, k2).omega
    denom_sq = om1 / y1.n + om2 / y2.n
    if denom_sq <= 0.0:
        raise DegenerateSampleError("both long-run variances are zero")
    stat = (y1.mean - y2.mean) / math.sqrt(denom_sq)

    master = np.random.SeedSequence(seed)
    ss_g1, ss_g2, ss_redraw = master.spawn(3)
    rng1 = np.random.default_rng(ss_g1)
    rng2 = np.random.default_rng(ss_g2)

    eta1 = _eta_from_innovations(
        y1.n, k_star1, _draw_innovations(rng1, (2, k_star1, n_boot), law)
    )
    eta2 = _eta_from_innovations(
        y2.n, k_star2, _draw_innovations(rng2, (2, k_star2, n_boot), law)
    )
    stats = _replicate_stats_from_eta(y1, y2, k1, k2, eta1, eta2)

    n_redrawn = 0
    degenerate = np.flatnonzero(np.isnan(stats))
    if degenerate.size:
        ss_r1, ss_r2 = ss_redraw.spawn(2)
        rng_r1 = np.random.default_rng(ss_r1)
        rng_r2 = np.random.default_rng(ss_r2)
        for idx in degenerate:
            for attempt in range(_MAX_CONSECUTIVE_REDRAWS + 1):
                if attempt == _MAX_CONSECUTIVE_REDRAWS:
                    raise DegenerateReplicatesError(
                        f"{_MAX_CONSECUTIVE_REDRAWS} consecutive degenerate "
                        "bootstrap replicates; residuals too sparse for "
                        f"law={law!r}"
                    )
                value = bootstrap_replicate(
                    y1, y2, k1, k2, k_star1, k_star2, rng_r1, rng_r2, law
                )
                n_redrawn += 1
                if not math.isnan(value):
                    stats[idx] = value
                    break

    sorted_stats = np.sort(stats)
    crit_lo = _empirical_quantile(sorted_stats, alpha / 2.0)
    crit_hi = _empirical_quantile(sorted_stats, 1.0 - alpha / 2.0)
    reject = stat < crit_lo or stat > crit_hi
    ecdf_at_stat = float(np.count_nonzero(stats <= stat)) / n_boot
    p_value = 2.0 * min(ecdf_at_stat, 1.0 - ecdf_at_stat)

    stats.flags.writeable = False
    run = BootstrapRun(
        replicate_stats=stats,
        crit_lo=crit_lo,
        crit_hi=crit_hi,
        p_value=p_value,
        B=n_boot,
        seed=seed,
        k_star1=k_star1,
        k_star2=k_star2,
        K1=k1,
        K2=k2,
        n_redrawn=n_redrawn,
    )
    report = TestReport(
        name="t1_har_boot",
        statistic=stat,
        reference=RefDistribution(DistKind.BOOTSTRAP_EMPIRICAL),
        p_value=p_value,
        alpha=alpha,
        reject=reject,
        detail={
            "mean1": y1.mean,
            "mean2": y2.mean,
            "mu_pooled": _pooled_mean(y1, y2),
            "T1": y1.n,
            "T2": y2.n,
            "lrv1": om1,
            "lrv2": om2,
            "K1": k1,
            "K2": k2,
            "k_star1": k_star1,
            "k_star2": k_star2,
            "crit_lo": crit_lo,
            "crit_hi": crit_hi,
            "B": n_boot,
            "seed": seed,
            "n_redrawn": n_redrawn,
        },
    )
    return report, run
