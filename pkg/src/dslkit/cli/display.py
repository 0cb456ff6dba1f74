#!/usr/bin/env python3
"""Display utility functions for the dslkit CLI.

Everything here renders to the stderr console; stdout is reserved for the
machine-readable documents.
"""
import sys
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from .formatting import format_value, get_terminal_width
from .theme import Theme


__all__ = [
    "display_error",
    "exit_with_error",
    "display_table",
    "display_key_values",
    "display_verdict",
    "display_warning",
    "display_info",
    "styled_value",
]

_STYLES = Theme.get_color_map()


def _wrap(text: str, style: Optional[str]) -> str:
    return f"[{style}]{text}[/{style}]" if style else text


def styled_value(key: str, value: Any) -> str:
    """Format a report value as rich markup, colouring verdicts, angle paths and tiers."""
    text = escape(format_value(value))
    if isinstance(value, bool):
        return _wrap(text, _STYLES["value.yes" if value else "value.no"])
    if value is None:
        return _wrap(text, _STYLES["value.none"])
    if key in ("path", "tier"):
        return _wrap(text, _STYLES.get(f"{key}.{value}"))
    return text


def display_error(message: str, console: Console) -> None:
    """Display an error message in a themed panel.

    Args:
        message: The error message to display.
        console: Rich Console instance for rendering.
    """
    if not message or not isinstance(message, str):
        message = "An unknown error occurred"
    style = _STYLES["error"]
    console.print(Panel(
        _wrap(escape(message), style),
        title=_wrap("Error", style),
        border_style=_STYLES["panel.error.border"],
        padding=(0, 1),
        width=min(get_terminal_width() - 4, 100),
    ))


def exit_with_error(message: str, console: Console, exit_code: int = 1) -> None:
    """Display an error message and exit with the error's exit code."""
    display_error(message, console)
    sys.exit(exit_code)


def display_table(
    data: List[Dict[str, Any]],
    console: Console,
    title: Optional[str] = None,
    columns: Optional[List[str]] = None,
) -> None:
    """Render rows of a report (one dict per row) as a table; columns default to the first row's keys."""
    if not data:
        display_info("Nothing to show", console)
        return
    columns = columns or list(data[0].keys())
    table = Table(
        title=_wrap(title, _STYLES["table.title"]) if title else None,
        border_style=_STYLES["table.border"],
        width=min(get_terminal_width() - 4, 120),
    )
    for col in columns:
        table.add_column(col.replace("_", " ").title(), style=_STYLES["table.key"], overflow="fold")
    for row in data:
        table.add_row(*[styled_value(col, row.get(col)) for col in columns])
    console.print(table)


def display_key_values(rows: Sequence[Sequence[Any]], console: Console, title: Optional[str] = None) -> None:
    """Display (key, value) pairs as a two-column grid in a panel."""
    grid = Table.grid(padding=(0, 2))
    grid.add_column(style=_STYLES["table.key"])
    grid.add_column()
    for key, value in rows:
        grid.add_row(str(key), styled_value(str(key), value))
    console.print(Panel(
        grid,
        title=_wrap(title, _STYLES["table.title"]) if title else None,
        border_style=_STYLES["panel.border"],
        padding=(0, 1),
        width=min(get_terminal_width() - 4, 100),
    ))


def display_verdict(passed: bool, console: Console, failing: Sequence[str] = ()) -> None:
    """One-line pass/fail summary, naming the failing checks."""
    if passed:
        console.print(_wrap(f"{_STYLES['icon.pass']} pass", _STYLES["verdict.pass"]))
        return
    detail = f": {', '.join(failing)}" if failing else ""
    console.print(_wrap(f"{_STYLES['icon.fail']} fail{escape(detail)}", _STYLES["verdict.fail"]))


def display_warning(message: str, console: Console) -> None:
    if message:
        console.print(f"{_wrap(_STYLES['icon.warning'], _STYLES['warning'])} {escape(message)}")


def display_info(message: str, console: Console) -> None:
    if message:
        console.print(f"{_wrap(_STYLES['icon.info'], _STYLES['info'])} {escape(message)}")
