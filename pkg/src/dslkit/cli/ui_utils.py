#!/usr/bin/env python3
"""UI utility functions for the dslkit CLI."""
from pathlib import Path
from typing import Any, Dict, Optional
import logging
import sys

import click
import structlog

from dslkit.core.io import dumps_json, write_text


__all__ = [
    "setup_logging",
    "emit_document",
    "emit_text",
]


class _StderrHandler(logging.StreamHandler):
    """Stream handler bound to whatever sys.stderr is at emit time."""

    def __init__(self) -> None:
        super().__init__(sys.stderr)

    @property  # type: ignore[override]
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value) -> None:
        pass


def setup_logging(verbose: bool = False, log_level: str = "WARNING") -> None:
    """Setup structured logging on stderr.

    Library modules log through the standard library; both they and the
    structlog loggers render through the same processor chain.
    """
    level = logging.DEBUG if verbose else getattr(logging, log_level.upper(), logging.WARNING)

    shared = [
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
    ]
    renderer = structlog.processors.JSONRenderer() if verbose else structlog.processors.KeyValueRenderer(
        key_order=["timestamp", "level", "logger", "event"]
    )

    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=[*shared, structlog.stdlib.ExtraAdder()],
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            renderer,
        ],
    )
    handler = _StderrHandler()
    handler.setFormatter(formatter)
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(level)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            *shared,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def emit_text(text: str, out: Optional[Path] = None) -> None:
    """Write to ``out`` when given, else to stdout."""
    if out is not None:
        write_text(out, text)
    else:
        click.echo(text, nl=False)


def emit_document(document: Dict[str, Any], out: Optional[Path] = None) -> None:
    """Serialize a report with the schema tag and emit it."""
    emit_text(dumps_json(document), out)
