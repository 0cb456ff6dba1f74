"""
Suite Operations Commands
Focus: seeded verification suites.
"""
from pathlib import Path
from typing import Optional, Tuple

import click
from rich_click import RichCommand

from dslkit.core.exceptions import DslkitError
from ..handlers.suite_handlers import SuiteHandlers
from ..display import exit_with_error


@click.command(cls=RichCommand)
@click.option('--name', '-n', help='Suite name')
@click.option('--dim', '-d', 'dims', type=int, multiple=True, help='Space dimension (repeatable)')
@click.option('--samples', '-k', type=click.IntRange(min=1), help='Draws per dimension')
@click.option('--seed', '-s', type=click.IntRange(min=0, max=2**64 - 1), help='Root seed')
@click.option('--config', 'config_path', type=click.Path(path_type=Path), help='Suite config JSON document')
@click.option('--list', 'list_only', is_flag=True, help='List the available suites and exit')
@click.option('--out', '-o', type=click.Path(path_type=Path), help='Write the JSON report here instead of stdout')
@click.pass_context
def suite(
    ctx: click.Context,
    name: Optional[str],
    dims: Tuple[int, ...],
    samples: Optional[int],
    seed: Optional[int],
    config_path: Optional[Path],
    list_only: bool,
    out: Optional[Path],
):
    """Run a named verification suite.

    Flags override the suite config document, which overrides the harness
    settings. Exits 1 when any check is violated.

    \b
    Examples:
      $ dslkit suite --name shear-invariance --dim 2 --samples 10000 --seed 42
      $ dslkit suite --config nightly.json --out report.json
      $ dslkit suite --list
    """
    console = ctx.obj.get('console')
    handlers = SuiteHandlers(console, ctx.obj['config'])

    try:
        if list_only:
            passed = handlers.handle_list(out)
        else:
            passed = handlers.handle_suite(name, dims, samples, seed, config_path, out)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)
    ctx.exit(0 if passed else 1)


__all__ = ["suite"]
