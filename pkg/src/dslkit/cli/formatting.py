#!/usr/bin/env python3
"""Formatting utility functions for the dslkit CLI."""
from typing import Any
import math
import shutil


__all__ = ["get_terminal_width", "format_value"]


def get_terminal_width() -> int:
    """Get the current terminal width, with fallback."""
    try:
        return shutil.get_terminal_size().columns
    except (OSError, AttributeError):
        return 80  # Default fallback width


def format_value(value: Any) -> str:
    """Render a report value for a summary table cell."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.6g}"
    if value is None:
        return "-"
    return str(value)
