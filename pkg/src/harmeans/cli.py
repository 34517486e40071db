"""Command-line front-end.

Two subcommands:

* ``test``      -- ingest two series from local delimited files, print
  group diagnostics and all six two-sample tests.
* ``simulate``  -- run a named preset or a single explicit scenario through
  the Monte Carlo lab and write the table artifacts.

Exit codes: 0 success, 2 input/usage error, 3 degenerate statistics,
4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .errors import (
    DegenerateReplicatesError,
    DegenerateSampleError,
    DomainError,
    IngestError,
)
from .lrv import TimeSeriesSample, ljung_box, resolve_k, series_lrv
from .sharwb import shar_wb_test
from .simlab import PRESET_NAMES, Scenario, preset_scenarios, run_table
from .ttests import NORMAL, T_ADJUSTED, classical_t, har_pooled_t, har_welch_t, welch_t

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_INTERNAL = 4

_MIN_GROUP_LEN = 4


def _read_rows(path: str) -> list[list[str]]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise IngestError(f"{path}: {exc.strerror or exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise IngestError(f"{path}: file is empty")
    try:
        dialect = csv.Sniffer().sniff("\n".join(lines[:20]), delimiters=",;\t")
        rows = [row for row in csv.reader(lines, dialect)]
    except csv.Error:
        # fall back to comma, then whitespace
        if "," in lines[0]:
            rows = [row for row in csv.reader(lines)]
        else:
            rows = [ln.split() for ln in lines]
    return [[cell.strip() for cell in row] for row in rows]


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _split_header(
    rows: list[list[str]], path: str
) -> tuple[list[str] | None, list[list[str]], int]:
    """Detect an optional header row; returns (header, data_rows, first_row_no)."""
    first = rows[0]
    if any(not _is_number(cell) for cell in first if cell != ""):
        if len(rows) == 1:
            raise IngestError(f"{path}: contains a header but no data rows")
        return first, rows[1:], 2
    return None, rows, 1


def _column_index(selector, header: list[str] | None, width: int, path: str) -> int:
    if selector is None:
        return 0
    if isinstance(selector, int) or (isinstance(selector, str) and selector.lstrip("-").isdigit()):
        idx = int(selector)
        if not 0 <= idx < width:
            raise IngestError(f"{path}: column index {idx} out of range (width {width})")
        return idx
    if header is None:
        raise IngestError(
            f"{path}: column name {selector!r} given but the file has no header"
        )
    if selector not in header:
        raise IngestError(f"{path}: no column named {selector!r} in header {header}")
    return header.index(selector)


def _parse_cell(row: list[str], idx: int, row_no: int, path: str) -> float:
    if idx >= len(row) or row[idx] == "":
        raise IngestError(f"{path}: row {row_no}: missing value in column {idx}")
    cell = row[idx]
    if not _is_number(cell):
        raise IngestError(f"{path}: row {row_no}: non-numeric value {cell!r}")
    return float(cell)


def read_series(path: str, column=None) -> np.ndarray:
    """Read one numeric column from a delimited file, rows in time order."""
    rows = _read_rows(path)
    header, data, start = _split_header(rows, path)
    idx = _column_index(column, header, max(len(r) for r in data), path)
    values = [
        _parse_cell(row, idx, row_no, path)
        for row_no, row in enumerate(data, start=start)
    ]
    return np.asarray(values, dtype=np.float64)


def read_grouped(path: str, group_col, value_col) -> tuple[np.ndarray, np.ndarray]:
    """Split one file into two series by a group column, keeping row order."""
    rows = _read_rows(path)
    header, data, start = _split_header(rows, path)
    width = max(len(r) for r in data)
    g_idx = _column_index(group_col, header, width, path)
    v_idx = _column_index(value_col, header, width, path)
    groups: dict[str, list[float]] = {}
    order: list[str] = []
    for row_no, row in enumerate(data, start=start):
        if g_idx >= len(row) or row[g_idx] == "":
            raise IngestError(f"{path}: row {row_no}: missing group label")
        label = row[g_idx]
        value = _parse_cell(row, v_idx, row_no, path)
        if label not in groups:
            groups[label] = []
            order.append(label)
        groups[label].append(value)
    if len(order) != 2:
        raise IngestError(
            f"{path}: expected exactly 2 group labels, found {len(order)}: {order}"
        )
    return (
        np.asarray(groups[order[0]], dtype=np.float64),
        np.asarray(groups[order[1]], dtype=np.float64),
    )


def ingest(args) -> tuple[TimeSeriesSample, TimeSeriesSample]:
    if args.data is not None:
        if args.y1 is not None or args.y2 is not None:
            raise IngestError("use either --data or --y1/--y2, not both")
        if args.group_col is None or args.value_col is None:
            raise IngestError("--data requires --group-col and --value-col")
        v1, v2 = read_grouped(args.data, args.group_col, args.value_col)
    else:
        if args.y1 is None or args.y2 is None:
            raise IngestError("two-file mode requires both --y1 and --y2")
        v1 = read_series(args.y1, args.col1)
        v2 = read_series(args.y2, args.col2)
    for label, values in (("group 1", v1), ("group 2", v2)):
        if values.size < _MIN_GROUP_LEN:
            raise IngestError(
                f"{label} has {values.size} observations; need at least {_MIN_GROUP_LEN}"
            )
    try:
        return TimeSeriesSample.from_values(v1), TimeSeriesSample.from_values(v2)
    except DomainError as exc:
        raise IngestError(str(exc)) from exc


def _ref_payload(report) -> dict:
    ref = {"kind": report.reference.kind.value}
    if report.reference.df is not None:
        ref["df"] = report.reference.df
    return ref


def _test_payload(report) -> dict:
    return {
        "statistic": report.statistic,
        "reference": _ref_payload(report),
        "p_value": report.p_value,
        "alpha": report.alpha,
        "reject": report.reject,
        "detail": report.detail,
    }


def _resolve_k_or_fallback(sample: TimeSeriesSample, requested):
    try:
        return resolve_k(sample, requested), None
    except DegenerateSampleError as exc:
        # keep reporting: K falls back to 1 and every test will come out NA
        return 1, str(exc)


def build_report(y1: TimeSeriesSample, y2: TimeSeriesSample, args) -> dict:
    """Run diagnostics and all six tests; degenerate tests become NA entries."""
    k1, k1_note = _resolve_k_or_fallback(y1, args.k1)
    k2, k2_note = _resolve_k_or_fallback(y2, args.k2)
    groups = []
    for sample, k, note in ((y1, k1, k1_note), (y2, k2, k2_note)):
        entry = {
            "n": sample.n,
            "mean": sample.mean,
            "lrv": series_lrv(sample, k).omega,
            "lrv_sqrt": series_lrv(sample, k).omega ** 0.5,
            "k": k,
        }
        if note is not None:
            entry["k_na"] = note
        try:
            q, p = ljung_box(sample, args.lb_lag)
            entry["ljung_box_q"] = q
            entry["ljung_box_p"] = p
        except (DegenerateSampleError, DomainError) as exc:
            entry["ljung_box_na"] = str(exc)
        groups.append(entry)

    tests: dict[str, dict] = {}
    bootstrap_payload = None

    def _run(name, fn):
        try:
            tests[name] = _test_payload(fn())
        except (DegenerateSampleError, DegenerateReplicatesError) as exc:
            tests[name] = {"na": str(exc)}

    _run("t0", lambda: classical_t(y1, y2, args.alpha))
    _run("t1", lambda: welch_t(y1, y2, args.alpha))
    _run("t0_har", lambda: har_pooled_t(y1, y2, k1, k2, args.alpha))
    _run(
        "t1_har_norm",
        lambda: har_welch_t(y1, y2, k1, k2, args.alpha, reference=NORMAL),
    )
    _run(
        "t1_har",
        lambda: har_welch_t(y1, y2, k1, k2, args.alpha, reference=T_ADJUSTED),
    )
    try:
        boot_report, boot_run = shar_wb_test(
            y1, y2, alpha=args.alpha, n_boot=args.n_boot, seed=args.seed, k1=k1, k2=k2
        )
        tests["t1_har_boot"] = _test_payload(boot_report)
        bootstrap_payload = {
            "B": boot_run.B,
            "seed": boot_run.seed,
            "crit_lo": boot_run.crit_lo,
            "crit_hi": boot_run.crit_hi,
            "p_value": boot_run.p_value,
            "K1": boot_run.K1,
            "K2": boot_run.K2,
            "k_star1": boot_run.k_star1,
            "k_star2": boot_run.k_star2,
            "n_redrawn": boot_run.n_redrawn,
            "replicate_stats": [float(v) for v in boot_run.replicate_stats],
        }
    except (DegenerateSampleError, DegenerateReplicatesError) as exc:
        tests["t1_har_boot"] = {"na": str(exc)}

    config = {
        "alpha": args.alpha,
        "n_boot": args.n_boot,
        "seed": args.seed,
        "k1": k1,
        "k2": k2,
        "k_mode": "auto" if args.k1 == "auto" or args.k2 == "auto" else "explicit",
        "lb_lag": args.lb_lag,
        "inputs": {
            "data": args.data,
            "y1": args.y1,
            "y2": args.y2,
            "col1": args.col1,
            "col2": args.col2,
            "group_col": args.group_col,
            "value_col": args.value_col,
        },
    }
    return {
        "version": __version__,
        "config": config,
        "groups": groups,
        "tests": tests,
        "bootstrap": bootstrap_payload,
    }


def render_text(report: dict) -> str:
    lines = []
    lines.append(f"harmeans {report['version']}  two-sample mean tests")
    lines.append("")
    lines.append(
        f"{'group':>5}  {'T':>6}  {'mean':>12}  {'lrv^1/2':>10}  {'K':>3}  "
        f"{'LB Q':>10}  {'LB p':>7}"
    )
    for i, g in enumerate(report["groups"], start=1):
        if "ljung_box_q" in g:
            lb_q, lb_p = f"{g['ljung_box_q']:.2f}", f"{g['ljung_box_p']:.3f}"
        else:
            lb_q, lb_p = "NA", "NA"
        lines.append(
            f"{i:>5}  {g['n']:>6}  {g['mean']:>12.4f}  {g['lrv_sqrt']:>10.4f}  "
            f"{g['k']:>3}  {lb_q:>10}  {lb_p:>7}"
        )
    lines.append("")
    alpha = report["config"]["alpha"]
    lines.append(
        f"{'test':<12}  {'statistic':>10}  {'reference':>14}  {'p-value':>8}  "
        f"reject@{alpha:g}"
    )
    ref_names = {
        "standard_normal": "N(0,1)",
        "student_t": "t",
        "chi_square": "chisq",
        "bootstrap_empirical": "bootstrap",
    }
    for name in ("t0", "t1", "t0_har", "t1_har_norm", "t1_har", "t1_har_boot"):
        entry = report["tests"][name]
        if "na" in entry:
            lines.append(f"{name:<12}  {'NA':>10}  {'':>14}  {'NA':>8}  ({entry['na']})")
            continue
        ref = entry["reference"]
        label = ref_names[ref["kind"]]
        if "df" in ref:
            label = f"t({ref['df']:.2f})" if ref["kind"] == "student_t" else label
        lines.append(
            f"{name:<12}  {entry['statistic']:>10.4f}  {label:>14}  "
            f"{entry['p_value']:>8.4f}  {'yes' if entry['reject'] else 'no'}"
        )
    boot = report.get("bootstrap")
    if boot is not None:
        lines.append("")
        lines.append(
            f"bootstrap: B={boot['B']} seed={boot['seed']} "
            f"crit=({boot['crit_lo']:.4f}, {boot['crit_hi']:.4f}) "
            f"K*=({boot['k_star1']}, {boot['k_star2']})"
        )
    return "\n".join(lines) + "\n"


def _write_output(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_test(args) -> int:
    y1, y2 = ingest(args)
    report = build_report(y1, y2, args)
    if args.format == "json":
        _write_output(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _write_output(render_text(report), args.out)
    if any("na" in entry for entry in report["tests"].values()):
        return EXIT_DEGENERATE
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.preset is not None:
        scenarios = preset_scenarios(
            args.preset, n_mc=args.n_mc, n_boot=args.n_boot, seed=args.seed
        )
    else:
        if args.t1 is None or args.t2 is None or args.rho is None:
            raise DomainError("explicit scenarios require --t1, --t2 and --rho")
        scenarios = [
            Scenario(
                t1=args.t1,
                t2=args.t2,
                rho=args.rho,
                sigma1=args.sigma1,
                sigma2=args.sigma2,
                error_law=args.law,
                mu1=args.mu1,
                a=args.a,
                n_mc=args.n_mc,
                n_boot=args.n_boot,
                alpha=args.alpha,
                seed=args.seed,
            )
        ]
    stem = args.out if args.out is not None else "harmeans_table"
    text_path = f"{stem}.tsv"
    json_path = f"{stem}.json"

    def _progress(cell):
        sc = cell.scenario
        rate = 100.0 * cell.rejection_rates["t1_har_boot"]
        sys.stderr.write(
            f"done T=({sc.t1},{sc.t2}) rho={sc.rho:g} a={sc.a:g} seed={sc.seed} "
            f"boot_rate={rate:.2f}% [{cell.runtime:.1f}s]\n"
        )

    run_table(scenarios, text_path=text_path, json_path=json_path, progress=_progress)
    sys.stdout.write(f"wrote {text_path} and {json_path} (seed={args.seed})\n")
    return EXIT_OK


def _k_value(raw: str):
    if raw == "auto":
        return "auto"
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("basis count must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmeans",
        description="Robust two-sample mean tests for serially dependent series.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="test equality of means for two series")
    p_test.add_argument("--y1", help="file with group 1 observations")
    p_test.add_argument("--y2", help="file with group 2 observations")
    p_test.add_argument("--col1", default=None, help="column (name or index) in --y1")
    p_test.add_argument("--col2", default=None, help="column (name or index) in --y2")
    p_test.add_argument("--data", help="single file holding both groups")
    p_test.add_argument("--group-col", default=None, help="group column in --data")
    p_test.add_argument("--value-col", default=None, help="value column in --data")
    p_test.add_argument("--alpha", type=float, default=0.05)
    p_test.add_argument("--B", dest="n_boot", type=int, default=399,
                        help="bootstrap replications (default 399)")
    p_test.add_argument("--seed", type=int, default=0)
    p_test.add_argument("--k1", type=_k_value, default="auto",
                        help="basis count for group 1 (integer or 'auto')")
    p_test.add_argument("--k2", type=_k_value, default="auto",
                        help="basis count for group 2 (integer or 'auto')")
    p_test.add_argument("--k-auto", action="store_true",
                        help="force data-driven basis counts for both groups")
    p_test.add_argument("--lb-lag", type=int, default=10,
                        help="Ljung-Box lag (default 10)")
    p_test.add_argument("--format", choices=("text", "json"), default="text")
    p_test.add_argument("--out", default=None, help="write the report here")
    p_test.set_defaults(func=_cmd_test)

    p_sim = sub.add_parser("simulate", help="run Monte Carlo size/power cells")
    p_sim.add_argument("--preset", choices=PRESET_NAMES, default=None)
    p_sim.add_argument("--t1", type=int, default=None)
    p_sim.add_argument("--t2", type=int, default=None)
    p_sim.add_argument("--rho", type=float, default=None)
    p_sim.add_argument("--sigma1", type=float, default=1.0)
    p_sim.add_argument("--sigma2", type=float, default=1.0)
    p_sim.add_argument("--law", choices=("normal", "chisq1"), default="normal")
    p_sim.add_argument("--mu1", type=float, default=5.0)
    p_sim.add_argument("--a", type=float, default=1.0,
                       help="mean multiplier: mu2 = a * mu1")
    p_sim.add_argument("--alpha", type=float, default=0.05)
    p_sim.add_argument("--n-mc", type=int, default=2000)
    p_sim.add_argument("--B", dest="n_boot", type=int, default=199)
    p_sim.add_argument("--seed", type=int, default=2023)
    p_sim.add_argument("--out", default=None, help="artifact path stem")
    p_sim.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k_auto", False):
        args.k1 = "auto"
        args.k2 = "auto"
    try:
        return args.func(args)
    except (IngestError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (DegenerateSampleError, DegenerateReplicatesError) as exc:
        sys.stderr.write(f"error: degenerate input: {exc}\n")
        return EXIT_DEGENERATE
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
