"""Resolve package resource paths and project configuration locations."""

from importlib import resources
from pathlib import Path
from typing import Optional

__all__ = [
    "get_package_root",
    "get_schemas_dir",
    "find_project_root",
    "PROJECT_MARKERS",
]

PROJECT_MARKERS = ("dslkit.yaml", "pyproject.toml")


def get_package_root() -> Path:
    """Resolve the package root Path using importlib.resources or a fallback.

    The function prefers `importlib.resources.files` but falls back to a
    repository-relative package path when resources are unavailable.
    """
    try:
        return Path(str(resources.files("dslkit")))
    except Exception:
        return Path(__file__).resolve().parent.parent


def get_schemas_dir() -> Path:
    """Return the directory holding the shipped JSON schemas."""
    return get_package_root() / "schemas"


def find_project_root(start: Optional[Path] = None) -> Optional[Path]:
    """Walk upward from `start` to the first directory holding a project marker."""
    current = (start or Path.cwd()).resolve()
    for candidate in (current, *current.parents):
        if any((candidate / marker).is_file() for marker in PROJECT_MARKERS):
            return candidate
    return None
