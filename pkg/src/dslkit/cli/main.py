#!/usr/bin/env python3
"""
Main CLI entry point for dslkit.
Role: Command Router. Loads the layered configuration, sets up logging and
directs each subcommand to its operations module.
"""
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich_click import RichGroup, RichHelpConfiguration, rich_config

from dslkit import __version__
from dslkit.core.config_service import ConfigurationService
from dslkit.core.exceptions import DslkitError
from dslkit.cli.ui_utils import setup_logging
from dslkit.cli.display import exit_with_error
from dslkit.cli.theme import Theme

# Configure rich_click to use application theme
theme_map = Theme.get_color_map()
rich_click_config = RichHelpConfiguration(
    style_option=theme_map['help.command'],
    style_command=theme_map['help.command'],
    style_metavar=theme_map['help.metavar'],
    style_metavar_separator=theme_map['help.metavar'],
)

from dslkit.cli.commands import matrix_ops
from dslkit.cli.commands import solver_ops
from dslkit.cli.commands import suite_ops

# Human-facing output goes to stderr; stdout carries JSON/CSV only.
console = Console(stderr=True)


def show_version(ctx, param, value):
    """Callback to display styled version."""
    if value:
        from rich.panel import Panel
        console.print(Panel(f"[bold cyan]dslkit v{__version__}[/]", border_style="blue"))
        click.echo(__version__)
        ctx.exit()


@click.group(cls=RichGroup)
@rich_config(help_config=rich_click_config)
@click.option('--version', is_flag=True, callback=show_version, expose_value=False, is_eager=True, help='Show version')
@click.option('--verbose', '-v', is_flag=True, help='Verbose JSON logs on stderr')
@click.option('--json', 'json_only', is_flag=True, help='Suppress the human summary; emit JSON only')
@click.option('--tol', type=click.FloatRange(min=0.0, min_open=True), help='Override the angle, cross-check and second-difference tolerances')
@click.option('--settings', type=click.Path(path_type=Path), help='Extra YAML settings layer')
@click.pass_context
def cli(ctx: click.Context, verbose: bool, json_only: bool, tol: Optional[float], settings: Optional[Path]):
    """
    dslkit: angles, branch membership and the 1-D Dirichlet solver for the
    special Lagrangian and degenerate special Lagrangian subequations.

    Exit codes: 0 pass, 1 property violation or numerical failure, 2 usage or IO error.
    """
    ctx.ensure_object(dict)

    # 1. Load Config (Hydration)
    service = ConfigurationService()
    try:
        config = service.load_config(config_file=settings, verbose=verbose, json_only=json_only, tol=tol)
    except DslkitError as e:
        exit_with_error(f"{e.error_code}: {e.message}", console, e.exit_code)

    # 2. Setup Logging
    setup_logging(verbose=verbose, log_level=config.system.log_level.value)

    # 3. Store in Context
    ctx.obj['config'] = config
    ctx.obj['console'] = console


cli.add_command(matrix_ops.angle)
cli.add_command(matrix_ops.check)
cli.add_command(solver_ops.envelope)
cli.add_command(solver_ops.solve)
cli.add_command(solver_ops.verify)
cli.add_command(suite_ops.suite)

if __name__ == "__main__":
    try:
        cli()
    except DslkitError as e:
        exit_with_error(str(e), console, e.exit_code)
    except Exception as e:
        exit_with_error(f"Unexpected system error: {e}", console)


__all__ = ["cli"]
