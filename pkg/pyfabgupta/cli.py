# pyfabgupta/cli.py

"""
Command-line interface for pyfabgupta.

Thin Click wrapper around the library modules. Defaults come from
config.py; every JSON report embeds the resolved RunConfig.

Words are written over {a, A, t, T} (uppercase = inverse), e.g. "atAA".

Exit codes: 0 success, 1 violations found, 2 usage error, 3 resource limit.
"""

import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Any, Dict, Optional

import click

from . import __version__
from .bounds import BoundParams, bounds_overlay, bounds_report
from .config import RunConfig, config as config_group, load_config, resolve_run_config
from .errors import EnumerationLimitError, FabGuptaError
from .lemmas import LEMMAS, run_lemma
from .metric_enum import (
    GROWTH_HEADER,
    OVERLAY_HEADER,
    cache_file,
    cached_radii,
    default_cache_dir,
    enumerate_ball,
    growth,
    growth_rows,
    inject_report,
    load_or_build,
    load_table,
    naive_gamma,
    save_table,
)
from .torsion import order
from .tree_group import format_word, normalize, portrait, portrait_dot
from .utils import pretty_json, render_csv, timestamp_filename, write_text_safe

logger = logging.getLogger(__name__)

# ============================================================================
# INTERNAL HELPERS
# ============================================================================

def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _progress(run: RunConfig) -> bool:
    return not run.quiet and sys.stderr.isatty()


def _emit(text: str, out: Optional[str], prefix: str, ext: str) -> None:
    if not out or out == "-":
        click.echo(text, nl=False)
        return
    path = timestamp_filename(prefix=prefix, ext=ext) if out == "auto" else out
    write_text_safe(path, text)
    click.echo(f"{prefix} written: {path}", err=True)


def _report(data: Dict[str, Any], run: RunConfig, prefix: str) -> None:
    data = dict(data)
    data["config"] = run.to_dict()
    _emit(pretty_json(data) + "\n", run.output, prefix, "json")


def _word(raw: str):
    """Parse a word option; syntax errors surface as usage errors with the position."""
    try:
        return normalize(raw)
    except FabGuptaError as exc:
        raise click.BadParameter(str(exc), param_hint="--word")


def _handle_errors(fn):
    """Turn library errors into a message on stderr and the error's exit code."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FabGuptaError as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(exc.exit_code)

    return wrapper


def _table(run: RunConfig, radius: int, alternates: bool = False):
    return load_or_build(
        radius,
        cache_dir=run.cache_path,
        workers=run.workers,
        max_candidates=run.max_candidates,
        collect_alternates=alternates,
        progress=_progress(run),
    )


def run_options(fn):
    """Flags shared by the table-building commands."""
    options = [
        click.option("--max-len", type=int, default=None, help="Ball radius (weighted length)."),
        click.option("--workers", type=int, default=None, help="Worker processes for enumeration."),
        click.option("--cache", type=click.Path(file_okay=False), default=None,
                     help="Ball cache directory (default: $FG_CACHE_DIR)."),
        click.option("--seed", type=int, default=None, help="Seed for randomized suites."),
        click.option("--out", default=None, help="Output file, '-' for stdout, 'auto' for a timestamped name."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


# ============================================================================
# ROOT CLI
# ============================================================================

@click.group()
@click.version_option(__version__, prog_name="pyfabgupta")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logging.")
def cli(verbose):
    """Fabrykowski-Gupta group: ball enumeration, lemma checks, growth bounds, torsion."""
    _configure_logging(verbose)


# Register config command group implemented in config.py
cli.add_command(config_group, name="config")


# ============================================================================
# GROWTH
# ============================================================================

@cli.command("growth")
@run_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--overlay", is_flag=True, help="Append upper_F, w_less, w_greater columns.")
@click.option("--d", "d", type=int, default=3)
@click.option("--m", "m", type=int, default=3)
@click.option("--recount", is_flag=True, help="Recount gamma with action signatures and bisimulation.")
@click.option("--signature-depth", type=int, default=None, help="Signature depth for --recount.")
@_handle_errors
def growth_cmd(max_len, workers, cache, seed, out, fmt, overlay, d, m, recount, signature_depth):
    """Emit n,gamma,beta,delta,lower_bound for n <= max-len."""
    run = resolve_run_config(
        "growth", fmt, max_len=max_len, workers=workers, cache=cache, seed=seed, out=out,
        signature_depth=signature_depth,
    )
    exit_code = 0
    try:
        table = _table(run, run.max_len)
    except EnumerationLimitError as exc:
        click.echo(f"Error: {exc}", err=True)
        table = exc.payload
        exit_code = exc.exit_code
        if table is None or table.radius < 0:
            sys.exit(exit_code)

    series = growth(table)
    check = None
    if recount:
        gamma = naive_gamma(table.radius, signature_depth=run.signature_depth)
        check = {"signature_depth": run.signature_depth, "gamma": gamma, "agrees": gamma == series.gamma}
        if check["agrees"]:
            logger.info("Recount at signature depth %d agrees", run.signature_depth)
        else:
            click.echo(f"Error: recount gives gamma {gamma}, table gives {series.gamma}", err=True)
            exit_code = exit_code or 1

    if fmt == "json":
        data = {
            "gamma": series.gamma,
            "beta": series.beta,
            "beta_with_identity": series.beta_with_identity,
            "delta": series.delta,
            "provenance": series.provenance,
        }
        if check is not None:
            data["recount"] = check
        _report(data, run, "growth")
    else:
        header = list(GROWTH_HEADER)
        extra = None
        if overlay:
            extra = bounds_overlay(series, BoundParams(d=d, m=m))
            header += [c for c in OVERLAY_HEADER if c not in header]
        _emit(render_csv(growth_rows(series, extra), header), run.output, "growth", "csv")
    sys.exit(exit_code)


# ============================================================================
# LEMMAS
# ============================================================================

@cli.command("lemma")
@click.argument("name", type=click.Choice(LEMMAS))
@run_options
@click.option("--depth", type=int, default=3, help="Section depth for cara-I.")
@_handle_errors
def lemma_cmd(name, max_len, workers, cache, seed, out, depth):
    """Run one lemma suite; exit 1 when violations are found."""
    run = resolve_run_config(
        "lemma",
        "json",
        max_len=6 if max_len is None else max_len,
        workers=workers,
        cache=cache,
        seed=seed,
        out=out,
        depth=depth,
    )
    report = run_lemma(
        name,
        max_len=run.max_len,
        seed=run.seed,
        depth=run.depth,
        table_provider=lambda radius, alternates: _table(run, radius, alternates),
        progress=_progress(run),
    )
    _report(report.to_dict(), run, f"lemma_{name}")
    sys.exit(0 if report.ok else 1)


# ============================================================================
# BOUNDS
# ============================================================================

@cli.command("bounds")
@click.option("--d", "d", type=int, default=3)
@click.option("--m", "m", type=int, default=3)
@click.option("--limit", type=float, default=1e12)
@click.option("--A", "a_const", type=float, default=0.0)
@click.option("--B", "b_const", type=float, default=1.0)
@click.option("--out", default=None)
@_handle_errors
def bounds_cmd(d, m, limit, a_const, b_const, out):
    """Search N with f(n) <= 1 and check the F concavity claim."""
    run = resolve_run_config("bounds", "json", out=out)
    report = bounds_report(BoundParams(d=d, m=m, A=a_const, B=b_const), limit)
    _report(report, run, "bounds")
    sys.exit(1 if report["violations"] else 0)


# ============================================================================
# ORDER / PORTRAIT
# ============================================================================

@cli.command("order")
@click.option("--word", required=True, help="Word over a, A, t, T.")
@click.option("--kmax", type=int, default=None)
@click.option("--out", default=None)
@_handle_errors
def order_cmd(word, kmax, out):
    """Order of an element, with an infinite-order certificate when one exists."""
    w = _word(word)
    run = resolve_run_config("order", "json", out=out)
    kmax = kmax if kmax is not None else run.kmax
    result = order(w, kmax)
    _report(
        {"word": word, "normal_form": format_word(w), "result": result.to_dict(w)},
        run,
        "order",
    )


@cli.command("portrait")
@click.option("--word", required=True, help="Word over a, A, t, T.")
@click.option("--depth", type=int, default=2)
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot")
@click.option("--out", default=None)
@_handle_errors
def portrait_cmd(word, depth, fmt, out):
    """Portrait of an element down to --depth."""
    w = _word(word)
    p = portrait(w, depth)
    if fmt == "dot":
        _emit(portrait_dot(p, name=word), out, "portrait", "dot")
        return
    labels = {"".join(map(str, v)): label for v, label in p.labels().items()}
    run = resolve_run_config("portrait", fmt, out=out, depth=depth)
    _report({"word": word, "depth": depth, "labels": labels}, run, "portrait")


# ============================================================================
# INJECTION
# ============================================================================

@cli.command("inject")
@click.option("--n", "n", type=int, default=2)
@run_options
@_handle_errors
def inject_cmd(n, max_len, workers, cache, seed, out):
    """Check distinctness of psi(g1) psi(g2)^a psi(g3)^(a^2) over B(n) ∩ G'."""
    run = resolve_run_config(
        "inject", "json", max_len=n, workers=workers, cache=cache, seed=seed, out=out
    )
    report = inject_report(_table(run, n), n, progress=_progress(run))
    _report(report, run, "inject")
    sys.exit(1 if report["violations"] else 0)


# ============================================================================
# BALL / CACHE
# ============================================================================

@cli.command("ball")
@run_options
@_handle_errors
def ball_cmd(max_len, workers, cache, seed, out):
    """Enumerate a ball and persist it (to --out, else the cache directory)."""
    run = resolve_run_config(
        "ball", "json", max_len=max_len, workers=workers, cache=cache, seed=seed, out=out
    )
    if out:
        table = enumerate_ball(
            run.max_len,
            workers=run.workers,
            max_candidates=run.max_candidates,
            progress=_progress(run),
        )
        path = save_table(table, out)
    else:
        if not run.cache_path:
            raise click.UsageError("no cache directory: pass --cache, --out or set FG_CACHE_DIR")
        table = _table(run, run.max_len)
        path = cache_file(run.cache_path, run.max_len)
        if not path.exists():
            save_table(table, path)
    click.echo(f"radius {table.radius}: {len(table)} elements -> {path}")


@cli.group()
def cache():
    """Manage ball caches."""
    pass


def _cache_dir(path: Optional[str]) -> Path:
    cfg = load_config()
    resolved = default_cache_dir(path or cfg.get("cache_dir"))
    if resolved is None:
        raise click.UsageError("no cache directory: pass --cache or set FG_CACHE_DIR")
    return resolved


@cache.command("info")
@click.option("--cache", type=click.Path(file_okay=False), default=None)
@_handle_errors
def cache_info(cache):
    directory = _cache_dir(cache)
    radii = cached_radii(directory)
    if not radii:
        click.echo(f"No ball caches in {directory}")
        return
    for r in radii:
        path = cache_file(directory, r)
        table = load_table(path)
        click.echo(f"{path.name}\tradius={table.radius}\telements={len(table)}\tbytes={path.stat().st_size}")


@cache.command("clear")
@click.option("--cache", type=click.Path(file_okay=False), default=None)
def cache_clear(cache):
    directory = _cache_dir(cache)
    radii = cached_radii(directory)
    if not radii:
        click.echo(f"No ball caches in {directory}")
        return
    if not click.confirm(f"Delete {len(radii)} ball cache(s) from {directory}?"):
        return
    for r in radii:
        cache_file(directory, r).unlink()
    click.echo("Ball caches removed.")
