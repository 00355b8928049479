"""Command-line front end.

Exit codes: 0 success, 1 selftest failure, 2 invalid arguments,
3 malformed input file, 4 retries exhausted.
"""

from __future__ import annotations

import json
import math
import os
import sys
from pathlib import Path

import click

from .engine import Histogram
from .oracle import Distribution, ideal_distribution
from .selftest import run_all
from .shor import BASES, N, ShorParams, run_subroutine, shor_driver
from .sso import sso


def _fresh_seed() -> int:
    return int.from_bytes(os.urandom(4), "big")


def _check_base(ctx, param, value):
    if value is None or value in BASES:
        return value
    g = math.gcd(value, N)
    if g > 1:
        raise click.BadParameter(
            f"gcd({value},{N})={g}: not a valid subroutine base (valid: {BASES})"
        )
    raise click.BadParameter(f"base must be one of {BASES}")


def _load_histogram(path: str) -> Histogram:
    try:
        hist = Histogram.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        click.echo(f"malformed histogram file {path}: {exc}", err=True)
        sys.exit(3)
    if not hist.counts or hist.shots < 1:
        click.echo(f"malformed histogram file {path}: empty counts", err=True)
        sys.exit(3)
    return hist


def _write(path: str | None, text: str, default_name: str) -> Path:
    target = Path(path) if path else Path(default_name)
    target.write_text(text)
    return target


@click.group()
def main():
    """Two-bit-per-qubit simulation of the order-finding subroutine for N=15."""


@main.command()
@click.option("-a", "base", type=int, required=True, callback=_check_base)
@click.option("--shots", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=None, help="default: fresh entropy, echoed")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--threads", type=int, default=1, show_default=True)
def run(base, shots, seed, out, fmt, threads):
    """Sample the subroutine for one base and write the histogram."""
    if shots < 1:
        raise click.BadParameter("shots must be >= 1")
    if seed is None:
        seed = _fresh_seed()
    click.echo(f"seed: {seed}")
    hist = run_subroutine(ShorParams(base), shots, seed, threads=threads)
    text = hist.to_json() if fmt == "json" else hist.to_csv()
    target = _write(out, text, f"histogram_a{base}.{fmt}")
    click.echo(f"histogram: {target}")
    result = sso(hist, ideal_distribution(ShorParams(base)))
    click.echo(f"sso a={base}: {result}")


@main.command(name="sso")
@click.argument("histogram_file", type=click.Path(exists=False), required=False)
@click.option("--all", "all_bases", is_flag=True, help="sample and score all six bases")
@click.option("--shots", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--threads", type=int, default=1, show_default=True)
def sso_cmd(histogram_file, all_bases, shots, seed, threads):
    """Square statistical overlap of a histogram with the ideal distribution."""
    if all_bases:
        if seed is None:
            seed = _fresh_seed()
        click.echo(f"seed: {seed}")
        for a in BASES:
            hist = run_subroutine(ShorParams(a), shots, seed, threads=threads)
            result = sso(hist, ideal_distribution(ShorParams(a)))
            click.echo(f"sso a={a}: {result}")
        return
    if histogram_file is None:
        raise click.UsageError("either give a histogram file or use --all")
    hist = _load_histogram(histogram_file)
    if hist.a not in BASES:
        click.echo(f"malformed histogram file: base {hist.a} not in {BASES}", err=True)
        sys.exit(3)
    result = sso(hist, ideal_distribution(ShorParams(hist.a)))
    click.echo(f"sso a={hist.a}: {result}")


@main.command()
@click.option("-a", "base", type=int, default=None, callback=_check_base)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def oracle(base, out):
    """Exact subroutine outcome distribution predicted by quantum theory."""
    bases = [base] if base is not None else list(BASES)
    chunks = [ideal_distribution(ShorParams(a)).to_json() for a in bases]
    text = "".join(chunks)
    if out:
        Path(out).write_text(text)
        click.echo(f"distributions: {out}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--seed", type=int, default=None)
@click.option("--max-retries", type=int, default=32, show_default=True)
@click.option("-a", "base", type=int, default=None,
              help="force the base instead of drawing it at random")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def factor(seed, max_retries, base, out):
    """Run the full factoring procedure for N=15."""
    if seed is None:
        seed = _fresh_seed()
    click.echo(f"seed: {seed}")
    report = shor_driver(seed, max_retries=max_retries, a=base)
    if out:
        Path(out).write_text(report.to_json())
    click.echo(report.to_json(), nl=False)
    if not report.factors:
        click.echo(f"no factors after {report.invocations} subroutine calls", err=True)
        sys.exit(4)
    click.echo(f"factors: {sorted(report.factors)} ({report.invocations} subroutine calls)")


@main.command()
def selftest():
    """Exhaustive gate-table, multiplier, and oracle consistency checks."""
    failed = False
    for result in run_all():
        status = "ok" if result.ok else "FAIL"
        click.echo(f"{result.name}: {result.cases} checks ... {status}")
        for failure in result.failures[:5]:
            click.echo(f"  {failure}", err=True)
        failed = failed or not result.ok
    if failed:
        sys.exit(1)


@main.command()
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="report")
@click.option("--shots", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--threads", type=int, default=1, show_default=True)
def report(out_dir, shots, seed, threads):
    """Reproduction report: histograms, figures, and the overlap table."""
    from . import report as rendering

    if seed is None:
        seed = _fresh_seed()
    click.echo(f"seed: {seed}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pairs = []
    rows = []
    for a in BASES:
        hist = run_subroutine(ShorParams(a), shots, seed, threads=threads)
        ideal = ideal_distribution(ShorParams(a))
        (out / f"histogram_a{a}.json").write_text(hist.to_json())
        (out / f"histogram_a{a}.csv").write_text(hist.to_csv())
        rendering.render_distribution(hist, ideal, out / f"distribution_a{a}.png")
        result = sso(hist, ideal)
        rows.append((a, result))
        pairs.append((hist, ideal))
        click.echo(f"sso a={a}: {result}")
    rendering.render_grid(pairs, out / "distributions.png")
    rendering.write_sso_table(rows, out / "sso_table.csv")
    rendering.render_sso_figure(rows, out / "sso_table.png")
    click.echo(f"report written to {out}/")


if __name__ == "__main__":
    main()
