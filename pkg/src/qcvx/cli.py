"""Command-line front end.

Subcommands: ``analyze`` (semicontinuity, quasiconvexity verdict,
per-pair violation decompositions with checks, chord violations),
``certify`` (paired-maxima certificate with a revalidation block),
``oracle`` (brute-force grid verdict, optionally compared against the
exact analyzer), and ``corpus`` (write fixture function files).

Exit codes: 0 analysis completed (regardless of verdict), 1 usage or
parse error, 2 violation found under ``--fail-on-violation``, 3
precondition/audit failure, 4 differential-test inconsistency.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional, Sequence

import click

from . import __version__
from .core import ToleranceConfig, XReal, format_rational, parse_rational
from .corpus import corpus_function
from .certificates import paired_maxima_certificate, revalidate_certificate
from .certificates import check_no_strict_sided_maxima
from .errors import (
    ParameterRangeError,
    PreconditionError,
    QcvxError,
    SemicontinuityError,
    UnsupportedChordError,
    ValidationError,
)
from .functions import (
    Function1D,
    check_semicontinuity,
    function_from_dict,
    function_to_dict,
)
from .intervals import OpenIntervalSet, normalize
from .oracle import diff_report, oracle_quasiconvex, oracle_violation_set
from .violations import (
    convexity_violation_set,
    interior_witness_exists,
    is_quasiconvex,
    verify_component_property,
    violation_set,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_PRECONDITION = 3
EXIT_INCONSISTENT = 4


def _decimal(value) -> object:
    """JSON-safe decimal companion for an exact value."""
    if isinstance(value, XReal):
        if value.is_plus_infinity:
            return "inf"
        if value.is_minus_infinity:
            return "-inf"
        return float(value)
    return float(value)


def _load_function(path: str) -> Function1D:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ValidationError("file", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError("file", f"{path} is not valid JSON: {exc}") from exc
    return function_from_dict(doc)


def _parse_pair(x: str, y: str) -> tuple[Fraction, Fraction]:
    return parse_rational(x), parse_rational(y)


def _write_report(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2, allow_nan=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _base_report(f: Function1D, path: str, no_timestamp: bool, cfg: ToleranceConfig, jobs: int) -> dict:
    a, b = f.domain
    report: dict = {
        "tool": "qcvx",
        "tool_version": __version__,
    }
    if not no_timestamp:
        report["generated_at"] = datetime.now(timezone.utc).isoformat()
    report["config"] = {
        "grid_points": cfg.grid_points,
        "float_epsilon": format_rational(cfg.float_epsilon),
        "jobs": jobs,
    }
    summary = (
        function_to_dict(f) if f.is_exact else {"type": type(f).__name__.lower()}
    )
    report["function"] = {
        "source": path,
        "summary": summary,
        "domain": [format_rational(a), format_rational(b)],
        "breakpoint_count": len(f.breakpoints()),
    }
    # Large models: keep the summary light.
    for key in ("knots", "breaks", "piece_values", "point_values"):
        if key in summary and len(summary[key]) > 64:
            summary[key] = f"({len(summary[key])} entries)"
    return report


def analyze_pair(f: Function1D, x: Fraction, y: Fraction) -> dict:
    """The per-pair analysis record: decomposition, structural checks,
    interior-witness flag, and chord violations when the chord exists."""
    decomposition = violation_set(f, x, y)
    checks = verify_component_property(f, decomposition)
    record = decomposition.to_json()
    record["threshold_decimal"] = _decimal(decomposition.threshold)
    record["total_length_decimal"] = _decimal(decomposition.components.total_length())
    record["component_checks"] = [c.to_json() for c in checks]
    record["all_checks_passed"] = all(c.passed for c in checks)
    record["interior_witness_exists"] = interior_witness_exists(f, x, y)
    try:
        chord = convexity_violation_set(f, x, y)
        record["chord_violations"] = chord.to_json()
        record["chord_violations_total_length"] = format_rational(chord.total_length())
    except UnsupportedChordError:
        record["chord_violations"] = None
    return record


def _pair_worker(args) -> dict:
    f, x, y = args
    return analyze_pair(f, x, y)


def _run_pairs(f: Function1D, pairs: Sequence[tuple[Fraction, Fraction]], jobs: int) -> list[dict]:
    if getattr(f, "serial", False):
        jobs = 1  # the model declared its callback unsafe to parallelize
    if jobs <= 1 or len(pairs) <= 1:
        return [analyze_pair(f, x, y) for x, y in pairs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_pair_worker, [(f, x, y) for x, y in pairs]))


def _collect_pairs(
    f: Function1D,
    pair_options: Sequence[tuple[str, str]],
    all_breakpoint_pairs: bool,
) -> list[tuple[Fraction, Fraction]]:
    pairs: list[tuple[Fraction, Fraction]] = []
    for x_text, y_text in pair_options:
        pairs.append(_parse_pair(x_text, y_text))
    if all_breakpoint_pairs:
        bps = f.breakpoints()
        for i in range(len(bps)):
            for j in range(i + 1, len(bps)):
                pairs.append((bps[i], bps[j]))
    if not pairs:
        a, b = f.domain
        pairs.append((a, b))
    return pairs


def _default_jobs() -> int:
    env = os.environ.get("QCVX_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


@click.group(name="qcvx")
@click.version_option(version=__version__, prog_name="qcvx")
def cli():
    """Exact quasiconvexity analysis of piecewise function models."""


@cli.command()
@click.argument("function_file", type=click.Path())
@click.option("--pair", "pairs", nargs=2, multiple=True, metavar="X Y", help="Analyze the pair (X, Y); repeatable.")
@click.option("--all-breakpoint-pairs", is_flag=True, help="Analyze every ordered breakpoint pair.")
@click.option("--grid", "grid_points", type=int, default=201, show_default=True, help="Grid resolution for oracle/plot data.")
@click.option("--jobs", type=int, default=None, help="Worker pool size for pair analyses (default: QCVX_JOBS or 1).")
@click.option("--out", "out_path", type=click.Path(), default=None, help="Write the report here instead of stdout.")
@click.option("--fail-on-violation", is_flag=True, help="Exit 2 when the function is not quasiconvex.")
@click.option("--no-timestamp", is_flag=True, help="Omit the timestamp for byte-identical reruns.")
@click.option("--with-oracle", is_flag=True, help="Embed a brute-force oracle verdict.")
@click.option("--plot-points", type=int, default=0, help="Include (t, f(t)) columns at this resolution.")
def analyze(
    function_file,
    pairs,
    all_breakpoint_pairs,
    grid_points,
    jobs,
    out_path,
    fail_on_violation,
    no_timestamp,
    with_oracle,
    plot_points,
):
    """Run the full exact analysis of FUNCTION_FILE."""
    f = _load_function(function_file)
    cfg = ToleranceConfig(grid_points=grid_points)
    jobs = jobs if jobs is not None else _default_jobs()
    report = _base_report(f, function_file, no_timestamp, cfg, jobs)
    report["semicontinuity"] = check_semicontinuity(f).to_json()
    verdict = is_quasiconvex(f)
    report["quasiconvexity"] = verdict.to_json(f)
    pair_list = _collect_pairs(f, pairs, all_breakpoint_pairs)
    report["pairs"] = _run_pairs(f, pair_list, jobs)
    report["local_maxima_hypothesis"] = check_no_strict_sided_maxima(f).to_json()
    if with_oracle:
        report["oracle"] = oracle_quasiconvex(f, cfg).to_json()
    if plot_points >= 2:
        a, b = f.domain
        samples = []
        for i in range(plot_points):
            t = a + (b - a) * Fraction(i, plot_points - 1)
            v = f.evaluate(t)
            samples.append([format_rational(t), v.to_string(), _decimal(t), _decimal(v)])
        report["plot"] = {"resolution": plot_points, "columns": ["t", "f", "t_decimal", "f_decimal"], "samples": samples}
    _write_report(report, out_path)
    if fail_on_violation and not verdict.is_quasiconvex:
        return EXIT_VIOLATION
    return EXIT_OK


@cli.command()
@click.argument("function_file", type=click.Path())
@click.option("--interval", nargs=2, metavar="X0 Y0", required=True, help="Closed interval to certify.")
@click.option("--grid", "grid_points", type=int, default=201, show_default=True, help="Revalidation grid resolution.")
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--no-timestamp", is_flag=True)
def certify(function_file, interval, grid_points, out_path, no_timestamp):
    """Extract the paired-maxima certificate on an interval."""
    f = _load_function(function_file)
    cfg = ToleranceConfig(grid_points=grid_points)
    x0, y0 = _parse_pair(*interval)
    report = _base_report(f, function_file, no_timestamp, cfg, 1)
    report["semicontinuity"] = check_semicontinuity(f).to_json()
    cert = paired_maxima_certificate(f, x0, y0)
    if cert is None:
        report["certificates"] = []
        report["certificate"] = None
        report["quasiconvex_on_interval"] = True
    else:
        payload = cert.to_json()
        payload["revalidation"] = revalidate_certificate(f, cert, grid_points).to_json()
        report["certificates"] = [payload]
        report["certificate"] = payload
        report["quasiconvex_on_interval"] = False
    _write_report(report, out_path)
    return EXIT_OK


@cli.command()
@click.argument("function_file", type=click.Path())
@click.option("--grid", "grid_points", type=int, default=201, show_default=True)
@click.option("--compare", is_flag=True, help="Diff the oracle against the exact analyzer; exit 4 on inconsistency.")
@click.option("--pair", nargs=2, metavar="X Y", default=None, help="Pair for the violation-set comparison (default: domain ends).")
@click.option("--expect", "expect_path", type=click.Path(), default=None, help="Compare against a stored exact result instead of the live analyzer.")
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--no-timestamp", is_flag=True)
def oracle(function_file, grid_points, compare, pair, expect_path, out_path, no_timestamp):
    """Brute-force grid verdict, optionally checked for consistency."""
    f = _load_function(function_file)
    cfg = ToleranceConfig(grid_points=grid_points)
    report = _base_report(f, function_file, no_timestamp, cfg, 1)
    verdict = oracle_quasiconvex(f, cfg)
    report["oracle"] = verdict.to_json()
    exit_code = EXIT_OK
    if compare or expect_path:
        a, b = f.domain
        x, y = _parse_pair(*pair) if pair else (a, b)
        approx = oracle_violation_set(f, x, y, cfg)
        slack = (y - x) / (cfg.grid_points - 1)
        if expect_path:
            exact_set = _load_expected_components(expect_path)
        else:
            exact_set = violation_set(f, x, y).components
        diff = diff_report(exact_set, approx, slack)
        verdict_agrees = True
        if f.is_exact and not expect_path:
            verdict_agrees = (
                is_quasiconvex(f).is_quasiconvex == verdict.is_quasiconvex_on_grid
            )
        report["comparison"] = {
            "pair": [format_rational(x), format_rational(y)],
            "slack": format_rational(slack),
            "grid_set": approx.to_json(),
            "exact_set": exact_set.to_json(),
            "verdict_agrees": verdict_agrees,
            **diff.to_json(),
        }
        if not diff.consistent or not verdict_agrees:
            exit_code = EXIT_INCONSISTENT
    _write_report(report, out_path)
    return exit_code


def _load_expected_components(path: str) -> OpenIntervalSet:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError("expect", f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict) or "components" not in doc:
        raise ValidationError("expect.components", "missing components list")
    try:
        return normalize(
            (parse_rational(entry["u"]), parse_rational(entry["v"]))
            for entry in doc["components"]
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError("expect.components", f"malformed entry: {exc}") from exc


@cli.command()
@click.argument("name")
@click.option("--depth", type=int, default=None, help="Cantor approximant depth.")
@click.option("--mode", type=click.Choice(["set", "complement"]), default=None, help="Cantor mode.")
@click.option("--knots", type=int, default=None, help="Knot count for random-pl.")
@click.option("--seed", type=int, default=None, help="Seed for random-pl.")
@click.option("--out", "out_path", type=click.Path(), default=None, help="Output file (default: derived from the name).")
def corpus(name, depth, mode, knots, seed, out_path):
    """Write a corpus function file (see ``corpus_names`` for NAMEs)."""
    if name == "cantor":
        if depth is None or mode is None:
            raise click.UsageError("cantor needs --depth and --mode")
        # Generate (validates the parameters), but store the compact form.
        corpus_function("cantor", depth=depth, mode=mode)
        doc = {"type": "cantor", "depth": depth, "mode": mode}
        default_name = f"cantor{depth}{mode[0]}.json"
    elif name == "random-pl":
        if knots is None or seed is None:
            raise click.UsageError("random-pl needs --knots and --seed")
        f = corpus_function("random-pl", knots=knots, seed=seed)
        doc = function_to_dict(f)
        default_name = f"random_pl_k{knots}_s{seed}.json"
    else:
        try:
            f = corpus_function(name)
        except ParameterRangeError as exc:
            raise click.UsageError(str(exc)) from exc
        doc = function_to_dict(f)
        default_name = f"{name.replace('-', '_')}.json"
    path = out_path or default_name
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")
    click.echo(path)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI, mapping error classes to documented exit codes."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
        return int(result) if isinstance(result, int) else EXIT_OK
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except ValidationError as exc:
        click.echo(f"error: invalid function document: {exc}", err=True)
        return EXIT_USAGE
    except SemicontinuityError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_PRECONDITION
    except PreconditionError as exc:
        click.echo(f"error: precondition failed: {exc}", err=True)
        return EXIT_PRECONDITION
    except QcvxError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
