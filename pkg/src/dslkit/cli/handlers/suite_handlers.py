"""
Suite command handlers for the dslkit CLI.
"""

from pathlib import Path
from typing import Optional, Sequence
import logging

from rich.console import Console

from dslkit.core.schema import RuntimeConfig
from dslkit.services import SuiteService
from ..display import display_key_values, display_table, display_verdict
from ..ui_utils import emit_document

logger = logging.getLogger(__name__)


class SuiteHandlers:
    """Handlers for the suite command."""

    def __init__(self, console: Console, config: RuntimeConfig):
        """Initialize the SuiteHandlers with console and merged configuration."""
        self.console = console
        self.config = config
        self.service = SuiteService(config)

    def handle_list(self, out: Optional[Path] = None) -> bool:
        suites = self.service.list_suites()
        emit_document({"command": "suite", "suites": suites}, out)
        if not self.config.json_only:
            display_table(suites, self.console, title="Verification suites")
        return True

    def handle_suite(
        self,
        name: Optional[str],
        dims: Sequence[int],
        samples: Optional[int],
        seed: Optional[int],
        config_path: Optional[Path] = None,
        out: Optional[Path] = None,
    ) -> bool:
        spec = self.service.build_spec(name, dims, samples, seed, config_path)
        report = self.service.run(spec)
        emit_document({"command": "suite", **report.to_dict(), "settings": self.config.describe()}, out)

        if not self.config.json_only:
            display_key_values(report.summary_rows(), self.console, title="Suite report")
            failing = [f"{report.violations} violation(s)"] if not report.passed else []
            display_verdict(report.passed, self.console, failing)
        return report.passed
