"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 formula mismatch.
"""

from __future__ import annotations

import csv
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import click

from .arith import is_squarefree
from .classgrp import class_group, genus_of
from .cohom import CSV_COLUMNS, SCHEMA, cohomology_report, h1_N, h1_Nprime, h1_O
from .errors import FormulaMismatch, InputError
from .verify import reference_checks

EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3
DEFAULT_MAX_ABS_D = 10**6


def max_abs_d() -> int:
    raw = os.environ.get("NORMFORM_MAX_ABS_D")
    if raw is None:
        return DEFAULT_MAX_ABS_D
    try:
        return int(raw)
    except ValueError:
        fail(f"NORMFORM_MAX_ABS_D must be an integer, got {raw!r}")


def fail(msg: str, code: int = EXIT_INPUT):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def check_cap(name: str, value: int) -> None:
    cap = max_abs_d()
    if abs(value) > cap:
        fail(f"|{name}| = {abs(value)} exceeds NORMFORM_MAX_ABS_D = {cap}")


def emit_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


@click.group()
def main():
    """Binary norm forms, class groups and flat H^1 classification sets."""


@main.command()
@click.option("--disc", "D", type=int, required=True, help="Discriminant D = 0, 1 mod 4, nonsquare.")
@click.option("--output", type=click.Choice(["text", "json"]), default="text", show_default=True)
def classify(D: int, output: str):
    """List the proper classes of discriminant D with structure and genera."""
    check_cap("disc", D)
    try:
        group = class_group(D)
        wide = class_group(D, narrow=False)
        labels = [genus_of(cl) for cl in group.classes]
    except InputError as exc:
        fail(str(exc))
    if output == "json":
        data = {"schema": SCHEMA, **group.to_json()}
        data["genus"] = [lab.to_json() for lab in labels]
        data["wide"] = wide.to_json()
        emit_json(data)
        return
    kind = "narrow " if D > 0 else ""
    click.echo(f"discriminant {D}: {group.order} {kind}classes, structure {group.structure}")
    for cl, lab in zip(group.classes, labels):
        signs = " ".join(f"{n}={v:+d}" for n, v in zip(lab.character_names, lab.values))
        click.echo(f"  {cl.canonical.to_json()}  genus [{signs}]")
    if D > 0:
        click.echo(f"wide class group: {wide.order} classes, structure {wide.structure}")


@main.command()
@click.option("--d", "d", type=int, required=True, help="Square-free d not in {0, 1}.")
@click.option("--classes/--no-classes", default=False, help="Also list the class sets.")
def cohomology(d: int, classes: bool):
    """Print the JSON report of all invariants for Q(sqrt d)."""
    check_cap("d", d)
    try:
        report = cohomology_report(d, strict=False)
    except InputError as exc:
        fail(str(exc))
    except FormulaMismatch as exc:
        fail(str(exc), EXIT_MISMATCH)
    data = report.to_json()
    if classes:
        data["sets"] = {"N_d": h1_N(d).to_json(), "O_d": h1_O(d).to_json()}
        if report.nprime_disc is not None:
            data["sets"]["N_prime_minus_d"] = h1_Nprime(d).to_json()
    emit_json(data)
    if not report.formula_ok:
        fail("; ".join(report.mismatches()), EXIT_MISMATCH)


@dataclass(frozen=True)
class ScanConfig:
    d_min: int
    d_max: int
    residue_filter: int | None = None
    output: str = "csv"
    jobs: int = 1
    fail_fast: bool = False

    def values(self) -> list[int]:
        return [
            d for d in range(self.d_min, self.d_max + 1)
            if d not in (0, 1, -1)
            and is_squarefree(d)
            and (self.residue_filter is None or d % 4 == self.residue_filter)
        ]


def _scan_one(d: int):
    try:
        return d, cohomology_report(d, strict=False), None
    except FormulaMismatch as exc:
        return d, None, str(exc)


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if m is None:
        fail(f"range must look like a..b, got {text!r}")
    return int(m.group(1)), int(m.group(2))


@main.command()
@click.option("--range", "span", required=True, help="Inclusive range a..b of d values.")
@click.option("--residue", type=click.Choice(["1", "2", "3"]), default=None, help="Keep only d = r mod 4.")
@click.option("--output", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes (default: all cores).")
@click.option("--fail-fast", is_flag=True, help="Stop at the first formula mismatch.")
def scan(span: str, residue: str | None, output: str, jobs: int | None, fail_fast: bool):
    """Report every square-free d in a range; one row per d, ordered by d."""
    lo, hi = parse_range(span)
    if lo > hi:
        fail(f"empty range {lo}..{hi}")
    check_cap("d", lo)
    check_cap("d", hi)
    cfg = ScanConfig(lo, hi, int(residue) if residue else None, output, jobs or os.cpu_count() or 1, fail_fast)
    values = cfg.values()

    writer = csv.writer(sys.stdout, lineterminator="\n") if output == "csv" else None
    if writer:
        writer.writerow(CSV_COLUMNS)
    matches = mismatches = 0

    def consume(results):
        nonlocal matches, mismatches
        for d, report, error in results:
            if report is not None and report.formula_ok:
                matches += 1
            else:
                mismatches += 1
                msg = error or "; ".join(report.mismatches())
                click.echo(f"mismatch at d={d}: {msg}", err=True)
            if report is not None:
                if writer:
                    writer.writerow([_csv_cell(v) for v in report.csv_row()])
                else:
                    click.echo(json.dumps(report.to_json()))
            if mismatches and cfg.fail_fast:
                return False
        return True

    if cfg.jobs == 1 or len(values) < 2:
        finished = consume(map(_scan_one, values))
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            # map() yields in submission order, so output is ordered by d
            finished = consume(pool.map(_scan_one, values, chunksize=8))
    sys.stdout.flush()
    click.echo(
        f"scanned {matches + mismatches} values of d: {matches} formula matches, {mismatches} mismatches",
        err=True,
    )
    if mismatches or not finished:
        sys.exit(EXIT_MISMATCH)


@main.command("verify-paper")
def verify_paper():
    """Re-derive the reference table and worked examples."""
    checks = reference_checks()
    for c in checks:
        click.echo(c.line())
    failed = [c for c in checks if not c.ok]
    click.echo(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
