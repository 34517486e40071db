"""Monte Carlo laboratory for size and power of the two-sample tests.

Data are AR(1) with unit-variance innovations,

    Y_t = mu + sigma * w_t,   w_t = rho * w_{t-1} + sqrt(1 - rho^2) * v_t,

with a stationary start (w_0 is one unit-variance innovation draw), so the
marginal variance of sigma * w_t is sigma^2 for every t.  Innovations are
standard normal or standardized chi-square(1) for a skewed alternative.

``run_cell`` evaluates all six tests (classical, Welch, robust pooled,
robust Welch under normal and adjusted-t references, and the wild
bootstrap) on ``n_mc`` fresh sample pairs and tallies rejection rates.
``run_table`` sweeps a scenario grid and writes a human-readable rate table
plus a machine-readable JSON artifact with raw counts, seeds, and excluded
replications.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DegenerateSampleError, DomainError
from .lrv import TimeSeriesSample, select_k
from .sharwb import shar_wb_test
from .ttests import NORMAL, T_ADJUSTED, classical_t, har_pooled_t, har_welch_t, welch_t

NORMAL_ERRORS = "normal"
CHISQ1_ERRORS = "chisq1"

# Report column order for the six tests.
TEST_COLUMNS = ("t0", "t1", "t0_har", "t1_har_norm", "t1_har", "t1_har_boot")


@dataclass(frozen=True)
class Scenario:
    """One Monte Carlo cell."""

    t1: int
    t2: int
    rho: float
    sigma1: float = 1.0
    sigma2: float = 1.0
    error_law: str = NORMAL_ERRORS
    mu1: float = 5.0
    a: float = 1.0  # mu2 = a * mu1
    n_mc: int = 2000
    n_boot: int = 199
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.t1 < 4 or self.t2 < 4:
            raise DomainError("scenario sample sizes must be >= 4")
        if not abs(self.rho) < 1.0:
            raise DomainError(f"|rho| must be < 1, got {self.rho}")
        if self.sigma1 <= 0.0 or self.sigma2 <= 0.0:
            raise DomainError("sigmas must be positive")
        if self.error_law not in (NORMAL_ERRORS, CHISQ1_ERRORS):
            raise DomainError(f"unknown error law {self.error_law!r}")
        if self.a <= 0.0:
            raise DomainError("mean multiplier a must be positive")
        if self.n_mc < 1:
            raise DomainError("n_mc must be >= 1")
        if self.n_boot < 19:
            raise DomainError("n_boot must be >= 19")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("alpha must lie in (0, 1)")

    @property
    def mu2(self) -> float:
        return self.a * self.mu1


@dataclass
class CellResult:
    """Rejection tallies for one scenario."""

    scenario: Scenario
    rejection_rates: dict
    mc_standard_errors: dict
    reject_counts: dict
    n_completed: int
    n_excluded: int
    runtime: float = field(compare=False, default=0.0)


def _innovations(rng: np.random.Generator, size: int, law: str) -> np.ndarray:
    if law == NORMAL_ERRORS:
        return rng.standard_normal(size)
    # chi-square(1) standardized to mean 0, variance 1
    return (rng.chisquare(1.0, size) - 1.0) / math.sqrt(2.0)


def simulate_series(
    n: int,
    rho: float,
    sigma: float,
    mu: float,
    error_law: str,
    rng: np.random.Generator,
) -> TimeSeriesSample:
    """Simulate one stationary AR(1) sample of length n."""
    if not abs(rho) < 1.0:
        raise DomainError(f"|rho| must be < 1, got {rho}")
    if error_law not in (NORMAL_ERRORS, CHISQ1_ERRORS):
        raise DomainError(f"unknown error law {error_law!r}")
    v = _innovations(rng, n + 1, error_law)
    w = np.empty(n + 1, dtype=np.float64)
    w[0] = v[0]  # stationary start: unit variance, like every later w_t
    scale = math.sqrt(1.0 - rho * rho)
    for t in range(1, n + 1):
        w[t] = rho * w[t - 1] + scale * v[t]
    return TimeSeriesSample.from_values(mu + sigma * w[1:])


def _run_replication(scenario: Scenario, rep_seed: np.random.SeedSequence) -> dict:
    ss_y1, ss_y2, ss_boot = rep_seed.spawn(3)
    y1 = simulate_series(
        scenario.t1,
        scenario.rho,
        scenario.sigma1,
        scenario.mu1,
        scenario.error_law,
        np.random.default_rng(ss_y1),
    )
    y2 = simulate_series(
        scenario.t2,
        scenario.rho,
        scenario.sigma2,
        scenario.mu2,
        scenario.error_law,
        np.random.default_rng(ss_y2),
    )
    k1 = select_k(y1).k_hat
    k2 = select_k(y2).k_hat
    alpha = scenario.alpha
    boot_seed = int(ss_boot.generate_state(1, np.uint64)[0])
    boot_report, _ = shar_wb_test(
        y1, y2, alpha=alpha, n_boot=scenario.n_boot, seed=boot_seed, k1=k1, k2=k2
    )
    return {
        "t0": classical_t(y1, y2, alpha).reject,
        "t1": welch_t(y1, y2, alpha).reject,
        "t0_har": har_pooled_t(y1, y2, k1, k2, alpha).reject,
        "t1_har_norm": har_welch_t(y1, y2, k1, k2, alpha, reference=NORMAL).reject,
        "t1_har": har_welch_t(y1, y2, k1, k2, alpha, reference=T_ADJUSTED).reject,
        "t1_har_boot": boot_report.reject,
    }


def run_cell(scenario: Scenario) -> CellResult:
    """Monte Carlo rejection rates of all six tests for one scenario.

    Replications that raise a degenerate-sample error are excluded from the
    rate denominators but counted in ``n_excluded``; with continuous error
    laws this never fires.
    """
    start = time.perf_counter()
    counts = {name: 0 for name in TEST_COLUMNS}
    completed = 0
    excluded = 0
    rep_seeds = np.random.SeedSequence(scenario.seed).spawn(scenario.n_mc)
    for rep_seed in rep_seeds:
        try:
            rejects = _run_replication(scenario, rep_seed)
        except DegenerateSampleError:
            excluded += 1
            continue
        completed += 1
        for name in TEST_COLUMNS:
            counts[name] += bool(rejects[name])
    if completed == 0:
        raise DegenerateSampleError("every replication was degenerate")
    rates = {name: counts[name] / completed for name in TEST_COLUMNS}
    ses = {
        name: math.sqrt(rates[name] * (1.0 - rates[name]) / completed)
        for name in TEST_COLUMNS
    }
    return CellResult(
        scenario=scenario,
        rejection_rates=rates,
        mc_standard_errors=ses,
        reject_counts=counts,
        n_completed=completed,
        n_excluded=excluded,
        runtime=time.perf_counter() - start,
    )


def _text_table(results: list[CellResult]) -> str:
    header = (
        ["T1", "T2", "rho", "a", "errors"]
        + [f"{name}%" for name in TEST_COLUMNS]
        + [f"se_{name}" for name in TEST_COLUMNS]
    )
    lines = ["\t".join(header)]
    for res in results:
        sc = res.scenario
        row = [
            str(sc.t1),
            str(sc.t2),
            f"{sc.rho:g}",
            f"{sc.a:g}",
            sc.error_law,
        ]
        row += [f"{100.0 * res.rejection_rates[n]:.2f}" for n in TEST_COLUMNS]
        row += [f"{100.0 * res.mc_standard_errors[n]:.2f}" for n in TEST_COLUMNS]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def _json_payload(results: list[CellResult]) -> dict:
    cells = []
    for res in results:
        sc = res.scenario
        cells.append(
            {
                "scenario": {
                    "t1": sc.t1,
                    "t2": sc.t2,
                    "rho": sc.rho,
                    "sigma1": sc.sigma1,
                    "sigma2": sc.sigma2,
                    "error_law": sc.error_law,
                    "mu1": sc.mu1,
                    "a": sc.a,
                    "n_mc": sc.n_mc,
                    "n_boot": sc.n_boot,
                    "alpha": sc.alpha,
                    "seed": sc.seed,
                },
                "reject_counts": dict(res.reject_counts),
                "rejection_rates": dict(res.rejection_rates),
                "mc_standard_errors": dict(res.mc_standard_errors),
                "n_completed": res.n_completed,
                "n_excluded": res.n_excluded,
            }
        )
    return {"version": __version__, "columns": list(TEST_COLUMNS), "cells": cells}


def run_table(
    scenarios: list[Scenario],
    text_path=None,
    json_path=None,
    progress=None,
) -> list[CellResult]:
    """Run a scenario grid; optionally write the text and JSON artifacts."""
    if not scenarios:
        raise DomainError("scenario grid is empty")
    results = []
    for scenario in scenarios:
        results.append(run_cell(scenario))
        if progress is not None:
            progress(results[-1])
    if text_path is not None:
        with open(text_path, "w", encoding="utf-8") as fh:
            fh.write(_text_table(results))
    if json_path is not None:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(_json_payload(results), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return results


# Desk-scale preset grids.  Size tables use three sample-size pairs (small,
# moderate, unbalanced) under each serial-correlation level; the power table
# uses the two larger sizes where the robust tests hold size.
_SIZE_PAIRS = ((30, 30), (200, 200), (100, 80))
_POWER_PAIRS = ((200, 200), (400, 400))
_RHOS = (0.0, 0.5, 0.8)
UNEQUAL_SIGMAS = (0.06, 0.18)

PRESET_NAMES = (
    "table1-desk",
    "table2-desk",
    "table3-desk",
    "table4-desk",
    "table5-desk",
)


def preset_scenarios(
    name: str, n_mc: int = 2000, n_boot: int = 199, seed: int = 2023
) -> list[Scenario]:
    """Named desk-scale scenario grids mirroring the size/power experiments."""
    if name not in PRESET_NAMES:
        raise DomainError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    common = {"n_mc": n_mc, "n_boot": n_boot}
    scenarios = []
    if name == "table5-desk":
        for rho in _RHOS:
            for t1, t2 in _POWER_PAIRS:
                for a in (1.1, 1.2):
                    scenarios.append(
                        Scenario(
                            t1=t1, t2=t2, rho=rho, a=a, seed=seed, **common
                        )
                    )
        return scenarios
    law = NORMAL_ERRORS if name in ("table1-desk", "table2-desk") else CHISQ1_ERRORS
    if name in ("table2-desk", "table4-desk"):
        sigma1, sigma2 = UNEQUAL_SIGMAS
    else:
        sigma1 = sigma2 = 1.0
    for rho in _RHOS:
        for t1, t2 in _SIZE_PAIRS:
            scenarios.append(
                Scenario(
                    t1=t1,
                    t2=t2,
                    rho=rho,
                    sigma1=sigma1,
                    sigma2=sigma2,
                    error_law=law,
                    seed=seed,
                    **common,
                )
            )
    return scenarios
