"""
Matrix Operations Commands
Focus: angle and membership queries on a single matrix document.
"""
from pathlib import Path
from typing import Optional

import click
from rich_click import RichCommand

from dslkit.core.exceptions import DslkitError
from dslkit.services import parse_phase
from ..handlers.matrix_handlers import MatrixHandlers
from ..display import exit_with_error


def _phase(ctx: click.Context, param: click.Parameter, value: str) -> float:
    try:
        return parse_phase(value)
    except DslkitError as e:
        raise click.BadParameter(e.message, ctx=ctx, param=param)


@click.command(cls=RichCommand)
@click.option('--matrix', '-m', 'matrix', required=True, type=click.Path(path_type=Path),
              help='Matrix JSON document')
@click.option('--out', '-o', type=click.Path(path_type=Path), help='Write the JSON report here instead of stdout')
@click.pass_context
def angle(ctx: click.Context, matrix: Path, out: Optional[Path]):
    """Compute the lifted angle of a matrix.

    Symmetric matrices get theta = sum arctan(lambda). Space-time matrices
    get Theta by the Schur route, cross-checked against the spectral route.

    \b
    Examples:
      $ dslkit angle --matrix ex12.json
      $ dslkit --json angle -m a.json -o angle.json
    """
    console = ctx.obj.get('console')
    handlers = MatrixHandlers(console, ctx.obj['config'])

    try:
        passed = handlers.handle_angle(matrix, out)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)
    ctx.exit(0 if passed else 1)


@click.command(cls=RichCommand)
@click.option('--matrix', '-m', 'matrix', required=True, type=click.Path(path_type=Path),
              help='Matrix JSON document')
@click.option('--phase', '-c', 'phase', required=True, callback=_phase,
              help="Branch phase, e.g. 1.2, 'pi/2' or '3pi/2+0.1'")
@click.option('--seed', type=int, default=0, show_default=True, help='Seed of the star-product search')
@click.option('--out', '-o', type=click.Path(path_type=Path), help='Write the JSON report here instead of stdout')
@click.pass_context
def check(ctx: click.Context, matrix: Path, phase: float, seed: int, out: Optional[Path]):
    """Report branch membership of a matrix.

    Space-time matrices are tested against the DSL branch, the star-product
    characterisation (top two branches) and the time-slot sign lemma;
    symmetric matrices against the SL branch and its dual. Exits 1 when
    independent routes to the same membership disagree.

    \b
    Examples:
      $ dslkit check --matrix ex12.json --phase 'pi+0.1'
    """
    console = ctx.obj.get('console')
    handlers = MatrixHandlers(console, ctx.obj['config'])

    try:
        passed = handlers.handle_check(matrix, phase, seed, out)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)
    ctx.exit(0 if passed else 1)


__all__ = ["angle", "check"]
