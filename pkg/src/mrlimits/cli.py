"""Command-line harness: ``mrlimits analyze|verify|run|oracle``.

Problems are written ``hd1:b=12``, ``tri:n=30``, ``join:na=2,nb=3,nc=4`` or
``groupby:na=2,nb=3``. Schemas are written ``pairwise``, ``single``,
``splitting:r=3``, ``weight:d=2,k=2``, ``tri:rho=5``, ``hashb:p=4``, ``hasha:p=4``.

Exit codes: 0 success, 2 parse error, 3 verification failure, 4 search budget exceeded.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import click
import numpy as np

from . import bounds
from .executor import generate_instance, read_instance, run
from .model import Kind, Problem, SpecError, parse_problem, replication_rate, verify_schema
from .oracle import DEFAULT_BUDGET, BudgetExceeded, max_coverable_outputs, solve_instance
from .schemas import parse_schema

SCHEMA_VERSION = 1
CSV_HEADER = ["schema", "q", "log2_q", "p", "r_achieved", "r_lower_bound", "ratio"]
HYPERBOLA_POINTS = 32

EXIT_PARSE = 2
EXIT_FAILED = 3
EXIT_BUDGET = 4


def split_schema_list(text: str) -> list[str]:
    """Split a comma list of schema specs; ``k=2`` style tokens continue the previous spec."""
    specs: list[str] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if "=" in token and ":" not in token and specs:
            specs[-1] += "," + token
        else:
            specs.append(token)
    return specs


@dataclass(frozen=True)
class TradeoffRow:
    schema_spec: str
    q: float
    log2_q: float
    p: Optional[int]
    r_achieved: Optional[float]
    r_lower_bound: float
    ratio: Optional[float]

    def cells(self) -> list[str]:
        def fmt(v):
            return "" if v is None else f"{v:.6f}"

        q = str(self.q) if isinstance(self.q, int) else fmt(self.q)
        return [self.schema_spec, q, fmt(self.log2_q), "" if self.p is None else str(self.p),
                fmt(self.r_achieved), fmt(self.r_lower_bound), fmt(self.ratio)]


def hyperbola(problem: Problem, points: int = HYPERBOLA_POINTS) -> list[TradeoffRow]:
    """The lower-bound curve sampled at log-spaced q."""
    n_in, _ = bounds.universe_counts(problem)
    lo = 2.0 if problem.kind is Kind.HD1 else 3.0
    rows = []
    for q in np.geomspace(lo, n_in, points):
        q = float(q)
        lb = bounds.lower_bound(problem, q).value
        rows.append(TradeoffRow("bound", q, math.log2(q), None, None, lb, None))
    return rows


def tradeoff_table(problem: Problem, schema_specs: list[str]) -> tuple[list[TradeoffRow], list]:
    rows, reports = [], []
    for spec in schema_specs:
        report = verify_schema(problem, parse_schema(spec, problem))
        reports.append(report)
        q = report.q_max_observed
        rows.append(TradeoffRow(spec, q, math.log2(q), report.p, float(report.r),
                                report.lower_bound, report.ratio))
    if problem.kind in (Kind.HD1, Kind.TRIANGLE):
        rows.extend(hyperbola(problem))
    rows.sort(key=lambda row: (row.schema_spec, row.q))
    return rows, reports


def render_csv(rows: list[TradeoffRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _parse(problem_spec: str, schema_spec: Optional[str] = None):
    try:
        problem = parse_problem(problem_spec)
        schema = parse_schema(schema_spec, problem) if schema_spec else None
    except SpecError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    return problem, schema


@click.group(help=__doc__)
def main():
    pass


@main.command()
@click.argument("problem_spec")
@click.option("--schemas", "schemas", multiple=True, required=True,
              help="Comma-separated schema specs; may be repeated.")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV path (default: stdout).")
def analyze(problem_spec, schemas, out):
    """Tradeoff table: achieved rate vs lower bound per schema, plus the bound curve."""
    problem, _ = _parse(problem_spec)
    specs = [s for group in schemas for s in split_schema_list(group)]
    try:
        rows, reports = tradeoff_table(problem, specs)
    except SpecError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    text = render_csv(rows)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    failed = [r.schema for r in reports if not r.coverage_ok]
    if failed:
        click.echo(f"coverage failed: {', '.join(failed)}", err=True)
        sys.exit(EXIT_FAILED)


@main.command()
@click.argument("problem_spec")
@click.argument("schema_spec")
@click.option("--json", "as_json", is_flag=True, help="Print the full JSON report.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the JSON report here.")
def verify(problem_spec, schema_spec, as_json, out):
    """Enumerate the universe and check a schema's coverage, loads and rate."""
    problem, schema = _parse(problem_spec, schema_spec)
    report = verify_schema(problem, schema)
    if as_json or out:
        _emit(report.to_dict(), out)
    if not as_json:
        click.echo(f"{schema.spec} on {problem}: coverage_ok={report.coverage_ok} "
                   f"p={report.p} q={report.q_max_observed} r={report.r} "
                   f"bound={report.lower_bound:.6f} ratio={report.ratio:.6f}")
    sys.exit(0 if report.coverage_ok else EXIT_FAILED)


@main.command(name="run")
@click.argument("problem_spec")
@click.argument("schema_spec")
@click.option("--x", "x", type=float, default=1.0, show_default=True,
              help="Probability each potential input is present.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--instance", "instance_path", type=click.Path(exists=True, dir_okay=False),
              help="Read present inputs from a newline-delimited file instead of sampling.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False))
def run_cmd(problem_spec, schema_spec, x, seed, instance_path, as_json, out):
    """Simulate one map-reduce round and compare with the single-reducer answer."""
    problem, schema = _parse(problem_spec, schema_spec)
    if instance_path:
        try:
            with open(instance_path) as fh:
                instance = read_instance(problem, fh)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PARSE)
    else:
        instance = generate_instance(problem, x, seed)
    report = run(problem, schema, instance, rate=replication_rate(schema))
    matches = report.outputs == solve_instance(problem, instance)
    if as_json or out:
        payload = report.to_dict()
        payload.update(present=len(instance), matches_oracle=matches, x=instance.x, seed=instance.seed)
        _emit(payload, out)
    if not as_json:
        click.echo(f"{schema.spec} on {problem}: present={len(instance)} "
                   f"outputs={len(report.outputs)} cost={report.communication_cost} "
                   f"expected={float(report.expected_cost):.3f} matches_oracle={matches}")
    sys.exit(0 if matches else EXIT_FAILED)


@main.command()
@click.argument("problem_spec")
@click.option("--q", "q", type=int, required=True, help="Inputs per reducer.")
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
              help="Maximum search nodes before giving up.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False))
def oracle(problem_spec, q, budget, as_json, out):
    """Exact maximum number of outputs one reducer with q inputs can cover."""
    problem, _ = _parse(problem_spec)
    try:
        result = max_coverable_outputs(problem, q, budget=budget)
    except BudgetExceeded as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    if as_json or out:
        _emit({"problem": str(problem), "q": q, **result.to_dict()}, out)
    if not as_json:
        click.echo(f"{problem} q={q}: best_count={result.best_count} witness={list(result.witness)}")


if __name__ == "__main__":
    main()
