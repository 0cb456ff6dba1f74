"""
Solver Operations Commands
Focus: the one-dimensional PDE layer (envelope, solve, verify).
"""
from pathlib import Path
from typing import Optional

import click
from rich_click import RichCommand

from dslkit.core.exceptions import DslkitError
from ..handlers.solver_handlers import SolverHandlers
from ..display import exit_with_error

_problem_option = click.option(
    '--config', '--problem', '-p', 'problem', required=True, type=click.Path(path_type=Path),
    help='Problem JSON document',
)
_out_option = click.option(
    '--out', '-o', type=click.Path(path_type=Path), help='Write the JSON report here instead of stdout'
)


@click.command(cls=RichCommand)
@_problem_option
@_out_option
@click.option('--csv', 'csv_path', type=click.Path(path_type=Path), help='Also write the envelope as a grid CSV')
@click.pass_context
def envelope(ctx: click.Context, problem: Path, out: Optional[Path], csv_path: Optional[Path]):
    """Compute a rooftop envelope.

    The largest w with w'' >= tan(a) lying below the obstacle inside the
    interval and below the caps at its ends.

    \b
    Examples:
      $ dslkit envelope --config rooftop.json --csv w.csv
    """
    console = ctx.obj.get('console')
    handlers = SolverHandlers(console, ctx.obj['config'])

    try:
        passed = handlers.handle_envelope(problem, out, csv_path)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)
    ctx.exit(0 if passed else 1)


@click.command(cls=RichCommand)
@_problem_option
@_out_option
@click.option('--csv', 'csv_path', type=click.Path(path_type=Path), help='Also write the solution as a grid CSV')
@click.pass_context
def solve(ctx: click.Context, problem: Path, out: Optional[Path], csv_path: Optional[Path]):
    """Solve a DSL Dirichlet problem in one space dimension and verify the result.

    \b
    Examples:
      $ dslkit solve --config quad.json --csv u.csv
    """
    console = ctx.obj.get('console')
    handlers = SolverHandlers(console, ctx.obj['config'])

    try:
        passed = handlers.handle_solve(problem, out, csv_path)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)
    ctx.exit(0 if passed else 1)


@click.command(cls=RichCommand)
@_problem_option
@click.option('--grid', '-g', required=True, type=click.Path(path_type=Path), help='Candidate solution grid CSV')
@_out_option
@click.pass_context
def verify(ctx: click.Context, problem: Path, grid: Path, out: Optional[Path]):
    """Certify a candidate solution grid against a DSL Dirichlet problem.

    \b
    Examples:
      $ dslkit verify --config quad.json --grid u.csv
    """
    console = ctx.obj.get('console')
    handlers = SolverHandlers(console, ctx.obj['config'])

    try:
        passed = handlers.handle_verify(problem, grid, out)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)
    ctx.exit(0 if passed else 1)


__all__ = ["envelope", "solve", "verify"]
