"""
Matrix command handlers for the dslkit CLI.
Focus: lifted angles and branch membership of a single matrix.
"""

from pathlib import Path
from typing import Optional
import logging

from rich.console import Console

from dslkit.core.schema import RuntimeConfig
from dslkit.services import AnalysisService
from ..display import display_key_values, display_verdict, display_warning
from ..ui_utils import emit_document

logger = logging.getLogger(__name__)


class MatrixHandlers:
    """Handlers for the angle and check commands."""

    def __init__(self, console: Console, config: RuntimeConfig):
        """Initialize the MatrixHandlers with console and merged configuration."""
        self.console = console
        self.config = config
        self.service = AnalysisService(config)

    def handle_angle(self, matrix_path: Path, out: Optional[Path] = None) -> bool:
        """Print the lifted angle of a matrix document; always passes unless an error is raised."""
        a = self.service.load(matrix_path)
        report = self.service.angle_report(a)
        emit_document({"command": "angle", "input": str(matrix_path), **report, "settings": self.config.describe()}, out)

        if not self.config.json_only:
            if report["kind"] == "sym":
                value = report["theta_tilde"]
                rows = [("kind", "symmetric"), ("n", report["n"]), ("theta", value["radians"])]
            else:
                value = report["Theta_tilde"]
                rows = [
                    ("kind", "space-time"),
                    ("n", report["n"]),
                    ("Theta", value["radians"]),
                    ("path", value["path"]),
                    ("spectral", report["routes"]["spectral"]),
                    ("schur", report["routes"]["schur"]),
                    ("near singular", value["near_singular"]),
                ]
                if value["certified_interval"]:
                    rows.append(("certified", "[{:.12g}, {:.12g}]".format(*value["certified_interval"])))
            display_key_values(rows, self.console, title="Lifted angle")
            if report["kind"] != "sym" and not value["certified_interval"] and value["path"] != "SingularClass":
                display_warning("routes agree within the cross-check tolerance but not the certified width", self.console)
            if report["kind"] != "sym" and value["near_singular"]:
                display_warning("input lies in the near-singular band", self.console)
        return True

    def handle_check(self, matrix_path: Path, phase: float, seed: int, out: Optional[Path] = None) -> bool:
        """Print a membership report; fails when independent membership routes disagree."""
        a = self.service.load(matrix_path)
        report = self.service.membership_report(a, phase, seed)
        emit_document(
            {"command": "check", "input": str(matrix_path), "seed": seed, **report, "settings": self.config.describe()},
            out,
        )
        passed = report["consistent"]
        logger.info("membership checked c=%.6g consistent=%s", phase, passed)

        if not self.config.json_only:
            star = report["star_product"]
            rows = [
                ("c", report["c"]),
                ("tier", report.get("tier")),
                ("F_c", report["F_c"]),
                ("Fcal_c", report["Fcal_c"]),
                ("star product", None if star is None else star["member"]),
                ("dual", report["dual"]),
                ("P", report["predicates"]["P"]),
                ("T", report["predicates"]["T"]),
                ("2-convex", report["predicates"]["two_convex"]),
            ]
            display_key_values(rows, self.console, title="Membership")
            display_verdict(passed, self.console, () if passed else ("routes disagree",))
        return bool(passed)
