"""Monte Carlo lab: DGP moments, cell determinism, table artifacts."""

import json
import math

import numpy as np
import pytest

from harmeans.errors import DomainError
from harmeans.simlab import (
    TEST_COLUMNS,
    CellResult,
    Scenario,
    preset_scenarios,
    run_cell,
    run_table,
    simulate_series,
)

FAST = {"n_mc": 40, "n_boot": 29}


class TestSimulateSeries:
    def test_iid_normal_variance(self):
        rng = np.random.default_rng(0)
        s = simulate_series(100_000, 0.0, 1.0, 5.0, "normal", rng)
        assert 0.98 <= s.variance() <= 1.02
        assert s.mean == pytest.approx(5.0, abs=0.02)

    def test_lag_one_autocorrelation(self):
        rng = np.random.default_rng(1)
        s = simulate_series(100_000, 0.8, 1.0, 0.0, "normal", rng)
        u = s.residuals
        rho1 = float(u[1:].dot(u[:-1]) / u.dot(u))
        assert 0.79 <= rho1 <= 0.81

    def test_variance_targeting_across_rho(self):
        for seed, rho in enumerate((0.0, 0.5, 0.8)):
            rng = np.random.default_rng(10 + seed)
            s = simulate_series(100_000, rho, 2.5, 1.0, "normal", rng)
            assert s.variance() == pytest.approx(2.5**2, rel=0.03)

    def test_chisq_errors_skewed(self):
        # standardized chi-square(1) innovations keep skewness sqrt(8)
        rng = np.random.default_rng(2)
        s = simulate_series(1_000_000, 0.0, 1.0, 0.0, "chisq1", rng)
        u = s.residuals
        skew = float(np.mean(u**3) / np.mean(u**2) ** 1.5)
        assert 2.7 <= skew <= 2.95

    def test_rho_bounds(self):
        rng = np.random.default_rng(3)
        with pytest.raises(DomainError):
            simulate_series(50, 1.0, 1.0, 0.0, "normal", rng)
        with pytest.raises(DomainError):
            simulate_series(50, -1.2, 1.0, 0.0, "normal", rng)

    def test_unknown_law(self):
        rng = np.random.default_rng(4)
        with pytest.raises(DomainError):
            simulate_series(50, 0.0, 1.0, 0.0, "cauchy", rng)


class TestScenario:
    def test_validation(self):
        with pytest.raises(DomainError):
            Scenario(t1=2, t2=30, rho=0.0)
        with pytest.raises(DomainError):
            Scenario(t1=30, t2=30, rho=1.0)
        with pytest.raises(DomainError):
            Scenario(t1=30, t2=30, rho=0.0, a=-1.0)
        with pytest.raises(DomainError):
            Scenario(t1=30, t2=30, rho=0.0, n_boot=5)

    def test_mu2(self):
        sc = Scenario(t1=30, t2=30, rho=0.0, mu1=5.0, a=1.2)
        assert sc.mu2 == pytest.approx(6.0)


class TestRunCell:
    def test_structure_and_determinism(self):
        sc = Scenario(t1=40, t2=36, rho=0.3, seed=11, **FAST)
        res1 = run_cell(sc)
        res2 = run_cell(sc)
        assert isinstance(res1, CellResult)
        assert set(res1.rejection_rates) == set(TEST_COLUMNS)
        for name in TEST_COLUMNS:
            rate = res1.rejection_rates[name]
            assert 0.0 <= rate <= 1.0
            assert res1.reject_counts[name] == round(rate * res1.n_completed)
            se = res1.mc_standard_errors[name]
            assert se == pytest.approx(
                math.sqrt(rate * (1.0 - rate) / res1.n_completed)
            )
        # bit-for-bit reproducible given the seed (runtime excluded from eq)
        assert res1.rejection_rates == res2.rejection_rates
        assert res1.reject_counts == res2.reject_counts
        assert res1 == res2

    def test_no_exclusions_under_normal_errors(self):
        res = run_cell(Scenario(t1=30, t2=30, rho=0.5, seed=5, **FAST))
        assert res.n_excluded == 0
        assert res.n_completed == FAST["n_mc"]

    def test_power_exceeds_size_at_large_shift(self):
        null = run_cell(Scenario(t1=60, t2=60, rho=0.0, a=1.0, seed=21, **FAST))
        alt = run_cell(Scenario(t1=60, t2=60, rho=0.0, a=1.2, seed=21, **FAST))
        assert (
            alt.rejection_rates["t1_har_boot"] > null.rejection_rates["t1_har_boot"]
        )

    def test_bootstrap_null_calibration_moderate_dependence(self):
        # AR(1) rho=0.5, equal LRVs, T=200: the bootstrap test's size at
        # the 5% level should land within 1.5pp of the 4.61% target
        res = run_cell(
            Scenario(t1=200, t2=200, rho=0.5, seed=1234, n_mc=2000, n_boot=199)
        )
        assert abs(100.0 * res.rejection_rates["t1_har_boot"] - 4.61) <= 1.5

    def test_size_power_ordering_har_tests(self):
        # power(a=1.2) >= power(a=1.1) >= size(a=1) for every robust test
        cells = {
            a: run_cell(
                Scenario(t1=400, t2=400, rho=0.5, a=a, seed=14, n_mc=2000, n_boot=199)
            )
            for a in (1.0, 1.1, 1.2)
        }
        for name in ("t0_har", "t1_har_norm", "t1_har", "t1_har_boot"):
            r0 = cells[1.0].rejection_rates[name]
            r1 = cells[1.1].rejection_rates[name]
            r2 = cells[1.2].rejection_rates[name]
            assert r2 >= r1 >= r0, f"{name}: {r0}, {r1}, {r2}"


class TestRunTable:
    def test_single_cell_artifacts(self, tmp_path):
        sc = Scenario(t1=30, t2=30, rho=0.0, seed=7, **FAST)
        text_path = tmp_path / "cell.tsv"
        json_path = tmp_path / "cell.json"
        results = run_table([sc], text_path=text_path, json_path=json_path)
        assert len(results) == 1
        lines = text_path.read_text().strip().splitlines()
        assert len(lines) == 2  # header + one data row
        header = lines[0].split("\t")
        for name in TEST_COLUMNS:
            assert f"{name}%" in header
            assert f"se_{name}" in header
        payload = json.loads(json_path.read_text())
        assert payload["columns"] == list(TEST_COLUMNS)
        cell = payload["cells"][0]
        assert cell["scenario"]["seed"] == 7
        assert cell["n_excluded"] == 0
        assert set(cell["reject_counts"]) == set(TEST_COLUMNS)

    def test_empty_grid_rejected(self):
        with pytest.raises(DomainError):
            run_table([])

    def test_preset_shapes(self):
        grid1 = preset_scenarios("table1-desk", n_mc=10, n_boot=29)
        assert len(grid1) == 9  # three T pairs x three rho
        assert {s.error_law for s in grid1} == {"normal"}
        assert all(s.sigma1 == s.sigma2 == 1.0 for s in grid1)

        grid2 = preset_scenarios("table2-desk", n_mc=10, n_boot=29)
        assert all((s.sigma1, s.sigma2) == (0.06, 0.18) for s in grid2)

        grid4 = preset_scenarios("table4-desk", n_mc=10, n_boot=29)
        assert {s.error_law for s in grid4} == {"chisq1"}

        grid5 = preset_scenarios("table5-desk", n_mc=10, n_boot=29)
        assert {s.a for s in grid5} == {1.1, 1.2}
        assert len(grid5) == 12

    def test_unknown_preset(self):
        with pytest.raises(DomainError):
            preset_scenarios("table9-desk")

    def test_presets_never_exclude_replications(self):
        # continuous error laws cannot produce degenerate samples
        for name in ("table1-desk", "table3-desk"):
            for sc in preset_scenarios(name, n_mc=8, n_boot=29)[:3]:
                assert run_cell(sc).n_excluded == 0

    def test_desk_grid_runs_structurally(self, tmp_path):
        grid = preset_scenarios("table1-desk", n_mc=5, n_boot=29)
        text_path = tmp_path / "t1.tsv"
        results = run_table(grid, text_path=text_path)
        assert len(results) == 9
        lines = text_path.read_text().strip().splitlines()
        assert len(lines) == 10
        for line in lines[1:]:
            cols = line.split("\t")
            rates = [float(c) for c in cols[5:11]]
            assert all(0.0 <= r <= 100.0 for r in rates)
