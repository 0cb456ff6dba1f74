"""
Theme definitions for the dslkit CLI.

Semantic style tokens for the stderr summaries and the rich-click help.
"""

from typing import Dict


class Theme:
    """Semantic theme constants for consistent UI styling."""

    PRIMARY = "bold cyan"
    ACCENT = "bold yellow"
    DIM = "dim"

    # Certificates
    PASS = "bold green"
    FAIL = "bold red"
    YES = "green"
    NO = "red"
    UNDECIDED = "dim"

    # Panels and tables
    PANEL_BORDER = "cyan"
    ERROR_BORDER = "red"
    TABLE_BORDER = "blue"
    TABLE_TITLE = "bold blue"
    KEY = "bold cyan"

    # Angle routes; SingularClass is a convention, not a computed value
    PATHS = {
        "Spectral": "cyan",
        "Schur": "magenta",
        "SingularClass": "bold yellow",
    }

    TIERS = {
        "Top": "bold green",
        "Second": "green",
        "Inner": "yellow",
    }

    ICONS = {
        "pass": "✓",
        "fail": "✗",
        "warning": "⚠",
        "info": "ℹ",
    }

    @classmethod
    def get_color_map(cls) -> Dict[str, str]:
        """Flat mapping of token names to rich styles."""
        styles = {
            "primary": cls.PRIMARY,
            "accent": cls.ACCENT,
            "dim": cls.DIM,
            "verdict.pass": cls.PASS,
            "verdict.fail": cls.FAIL,
            "value.yes": cls.YES,
            "value.no": cls.NO,
            "value.none": cls.UNDECIDED,
            "panel.border": cls.PANEL_BORDER,
            "panel.error.border": cls.ERROR_BORDER,
            "table.border": cls.TABLE_BORDER,
            "table.title": cls.TABLE_TITLE,
            "table.key": cls.KEY,
            "warning": cls.ACCENT,
            "info": "blue",
            "error": cls.FAIL,
            "help.command": "green",
            "help.metavar": "white",
        }
        styles.update({f"path.{k}": v for k, v in cls.PATHS.items()})
        styles.update({f"tier.{k}": v for k, v in cls.TIERS.items()})
        styles.update({f"icon.{k}": v for k, v in cls.ICONS.items()})
        return styles
