"""CLI interface using Typer and Rich."""

import sys
from typing import Optional

import numpy as np
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from mq_entanglement.analytic import family_state
from mq_entanglement.config import build_sweep_config, load_app_config, load_sweep_file
from mq_entanglement.entanglement import entanglement_report
from mq_entanglement.errors import (
    ChannelError,
    ClassificationError,
    ScopeError,
    SpinDynamicsError,
    SpinIndexError,
)
from mq_entanglement.sweep import SweepRunner, time_grid, write_csv
from mq_entanglement.utils.logging import configure_logging, get_logger
from mq_entanglement.utils.validators import parse_amplitude
from mq_entanglement.verify import SCOPES, run_checks

app = typer.Typer(help="MQ NMR spin dynamics and entanglement")
console = Console()
err_console = Console(stderr=True)

EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
NORM_SLACK = 1e-9

USAGE_ERRORS = (
    ValidationError,
    ValueError,
    ChannelError,
    ClassificationError,
    ScopeError,
    SpinIndexError,
)


def _fail(message: str, code: int) -> typer.Exit:
    err_console.print(f"[red]{message}[/red]")
    return typer.Exit(code)


@app.command()
def sweep(
    system: Optional[str] = typer.Option(None, "--system", help="Preset: pair, ring3 or chain"),
    n_spins: Optional[int] = typer.Option(None, "--n-spins", help="Chain length (chain preset)"),
    spacing: Optional[float] = typer.Option(None, "--spacing", help="Chain spacing in m"),
    d12: Optional[str] = typer.Option(None, "--d12", help="D_12 in rad/s or 2pi*<Hz>"),
    d13: Optional[str] = typer.Option(None, "--d13", help="D_13 in rad/s or 2pi*<Hz>"),
    d23: Optional[str] = typer.Option(None, "--d23", help="D_23 in rad/s or 2pi*<Hz>"),
    t_start: Optional[float] = typer.Option(None, "--t-start", help="Start time in ms"),
    t_end: Optional[float] = typer.Option(None, "--t-end", help="End time in ms"),
    steps: Optional[int] = typer.Option(None, "--steps", help="Grid points (default 801)"),
    channels: Optional[str] = typer.Option(None, "--channels", help="Comma-separated channels"),
    out: str = typer.Option("-", "--out", help="CSV file, or '-' for stdout"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute tolerance override"),
    config: Optional[str] = typer.Option(None, "--config", help="key=value sweep file"),
    max_spins: Optional[int] = typer.Option(None, "--max-spins", help="Raise the spin cap"),
    log_file: Optional[str] = typer.Option(None, "--log-file"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Evolve a spin system over a time grid and write channels as CSV.

    Example:
        mq-entanglement sweep --system pair --channels J0,J2,E --out fig1.csv
        mq-entanglement sweep --d12 "2pi*2950" --d13 "2pi*1000" --d23 0 --channels J2,tau_ABC
    """
    app_config = load_app_config()
    configure_logging(log_file or app_config.log_file, verbose or app_config.verbose)
    logger = get_logger(__name__)

    try:
        values: dict[str, object] = dict(load_sweep_file(config)) if config else {}
        flags = {
            "system": system,
            "n_spins": n_spins,
            "spacing": spacing,
            "d12": d12,
            "d13": d13,
            "d23": d23,
            "t_start": t_start,
            "t_end": t_end,
            "steps": steps,
            "channels": channels,
            "max_spins": max_spins,
        }
        flags = {key: value for key, value in flags.items() if value is not None}
        if any(key in flags for key in ("d12", "d13", "d23")):
            values.pop("system", None)
        if "system" in flags:
            for key in ("d12", "d13", "d23"):
                values.pop(key, None)
        values.update(flags)
        values.setdefault("max_spins", app_config.spin_cap)

        sweep_config = build_sweep_config(values)
        spin_system = sweep_config.spin_system()
        runner = SweepRunner(spin_system, sweep_config.channels, app_config.numeric_policy(tol))
        times = time_grid(sweep_config.t_start, sweep_config.t_end, sweep_config.steps)

        logger.info(
            "sweep_started",
            n_spins=spin_system.n_spins,
            steps=sweep_config.steps,
            channels=list(sweep_config.channels),
        )
        # evaluate every row before touching --out so a failed sweep leaves no partial file
        rows = list(runner.run(times))
        if out == "-":
            written = write_csv(rows, sweep_config.channels, sys.stdout)
        else:
            with open(out, "w", newline="") as stream:
                written = write_csv(rows, sweep_config.channels, stream)
            err_console.print(f"[green]Wrote {written} rows to {out}[/green]")
        logger.info("sweep_completed", rows=written, out=out)

    except USAGE_ERRORS as e:
        logger.error("usage_error", error=str(e))
        raise _fail(f"Usage error: {str(e)}", EXIT_USAGE)
    except SpinDynamicsError as e:
        logger.error("numeric_error", error=str(e))
        raise _fail(f"Numeric error: {str(e)}", EXIT_VERIFICATION_FAILED)
    except OSError as e:
        logger.error("output_error", error=str(e))
        raise _fail(f"Cannot write output: {str(e)}", EXIT_USAGE)
    except Exception as e:
        logger.exception("unexpected_error")
        raise _fail(f"Unexpected error: {str(e)}", EXIT_VERIFICATION_FAILED)


@app.command()
def verify(
    scope: str = typer.Option("all", "--scope", help=f"One of: {', '.join(SCOPES)}"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute tolerance override"),
    seed: Optional[int] = typer.Option(None, "--seed", help="RNG seed for random draws"),
    log_file: Optional[str] = typer.Option(None, "--log-file"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Run oracle and identity checks; exit 1 if any fails.

    Example:
        mq-entanglement verify --scope three-spin
    """
    app_config = load_app_config()
    configure_logging(log_file or app_config.log_file, verbose or app_config.verbose)
    logger = get_logger(__name__)

    try:
        results = run_checks(
            scope, app_config.numeric_policy(tol), app_config.seed if seed is None else seed
        )
    except USAGE_ERRORS as e:
        logger.error("usage_error", error=str(e))
        raise _fail(f"Usage error: {str(e)}", EXIT_USAGE)
    except Exception as e:
        logger.exception("unexpected_error")
        raise _fail(f"Unexpected error: {str(e)}", EXIT_VERIFICATION_FAILED)

    table = Table(title=f"Verification ({scope})")
    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Max error", justify="right", style="magenta")
    table.add_column("Tolerance", justify="right")
    table.add_column("Detail", style="dim")
    for result in results:
        status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(
            result.name,
            status,
            f"{result.max_error:.3e}",
            f"{result.tolerance:.0e}",
            result.detail,
        )
    console.print(table)

    failed = [result.name for result in results if not result.passed]
    logger.info("verify_completed", checks=len(results), failed=len(failed))
    if failed:
        raise _fail(f"Failed checks: {', '.join(failed)}", EXIT_VERIFICATION_FAILED)
    console.print(f"[bold green]All {len(results)} checks passed.[/bold green]")


@app.command()
def classify(
    a: str = typer.Argument(..., help="Coefficient of |000> (even) or |111> (odd)"),
    b: str = typer.Argument(..., help="Coefficient of |011> (even) or |100> (odd)"),
    c: str = typer.Argument(..., help="Coefficient of |101> (even) or |010> (odd)"),
    d: str = typer.Argument(..., help="Coefficient of |110> (even) or |001> (odd)"),
    family: str = typer.Option("even", "--family", help="even or odd parity family"),
    normalize: bool = typer.Option(False, "--normalize", help="Rescale to unit norm"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute tolerance override"),
    log_file: Optional[str] = typer.Option(None, "--log-file"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Classify a generalized GHZ/W state and print every measure.

    Example:
        mq-entanglement classify 1/2 1/2 1/2 1/2
        mq-entanglement classify 0 "1/sqrt(3)" "1/sqrt(3)" "1/sqrt(3)"
    """
    app_config = load_app_config()
    configure_logging(log_file or app_config.log_file, verbose or app_config.verbose)
    logger = get_logger(__name__)

    try:
        coefficients = [parse_amplitude(x) for x in (a, b, c, d)]
        norm = float(np.linalg.norm(coefficients))
        if norm == 0.0:
            raise ValueError("Coefficients form the zero vector")
        if not normalize and abs(norm - 1.0) > NORM_SLACK:
            raise ValueError(f"Norm is {norm:.12g}; pass --normalize to rescale")
        state = family_state(*coefficients, family=family, normalize=True)
        report = entanglement_report(state, app_config.numeric_policy(tol))
    except USAGE_ERRORS as e:
        logger.error("usage_error", error=str(e))
        raise _fail(f"Usage error: {str(e)}", EXIT_USAGE)
    except SpinDynamicsError as e:
        logger.error("numeric_error", error=str(e))
        raise _fail(f"Numeric error: {str(e)}", EXIT_VERIFICATION_FAILED)
    except Exception as e:
        logger.exception("unexpected_error")
        raise _fail(f"Unexpected error: {str(e)}", EXIT_VERIFICATION_FAILED)

    assert report.classification is not None
    console.print(f"[bold]Classification:[/bold] [cyan]{report.classification.value}[/cyan]")

    table = Table(title=f"Entanglement measures ({family} family)")
    table.add_column("Measure", style="cyan")
    table.add_column("Value", justify="right", style="green")
    for pair, value in report.pair_c2.items():
        table.add_row(f"C2_{pair}", f"{value:.10f}")
    for focus, value in report.one_to_pair_c2.items():
        rest = "".join(x for x in "ABC" if x != focus)
        table.add_row(f"C2_{focus}({rest})", f"{value:.10f}")
    table.add_row("tau_ABC", f"{report.three_tangle:.10f}")
    for cut, value in report.entropies.items():
        table.add_row(f"E_{cut}", f"{value:.10f}")
    for pair, (first, second) in report.lambdas.items():
        table.add_row(f"lambda_{pair}", f"({first:.10f}, {second:.10f})")
    console.print(table)
    logger.info("classify_completed", classification=report.classification.value)
