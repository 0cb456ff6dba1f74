"""Command-line interface for dslkit."""

__all__ = []
