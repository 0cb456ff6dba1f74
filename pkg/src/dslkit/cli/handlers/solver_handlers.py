"""
Solver command handlers for the dslkit CLI.
Focus: rooftop envelopes, Dirichlet solves and verification of grids.
"""

from pathlib import Path
from typing import Optional
import logging

from rich.console import Console

from dslkit.core.schema import RuntimeConfig
from dslkit.services import SolverService
from dslkit.solver.verification import SolutionReport
from ..display import display_info, display_key_values, display_verdict
from ..ui_utils import emit_document, emit_text

logger = logging.getLogger(__name__)


class SolverHandlers:
    """Handlers for the envelope, solve and verify commands."""

    def __init__(self, console: Console, config: RuntimeConfig):
        """Initialize the SolverHandlers with console and merged configuration."""
        self.console = console
        self.config = config
        self.service = SolverService(config)

    def handle_envelope(self, problem_path: Path, out: Optional[Path] = None, csv_path: Optional[Path] = None) -> bool:
        result = self.service.envelope(problem_path)
        document = {"command": "envelope", "input": str(problem_path), **result.report}
        if csv_path is not None:
            emit_text(result.envelope.to_csv(), csv_path)
            document["grid_csv"] = str(csv_path)
        else:
            document["envelope"] = result.envelope.to_dict()
        emit_document(document, out)

        if not self.config.json_only:
            rows = [
                ("a", result.report["a"]),
                ("nodes", result.report["nodes"]),
                ("max obstacle excess", result.report["max_obstacle_excess"]),
                ("min second difference", result.report["min_second_diff"]),
                ("slope floor", result.report["slope_floor"]),
            ]
            display_key_values(rows, self.console, title="Rooftop envelope")
            failing = [k for k, ok in result.report["checks"].items() if not ok]
            display_verdict(result.passed, self.console, failing)
        return result.passed

    def handle_solve(self, problem_path: Path, out: Optional[Path] = None, csv_path: Optional[Path] = None) -> bool:
        problem = self.service.load_problem(problem_path)
        result = self.service.solve(problem)
        document = {"command": "solve", "input": str(problem_path), **result.to_dict()}
        if csv_path is not None:
            emit_text(result.solution.u.to_csv(), csv_path)
            document["grid_csv"] = str(csv_path)
        document["settings"] = self.config.describe()
        emit_document(document, out)

        if not self.config.json_only:
            info = result.solution.to_dict()
            display_info(
                f"solved on {info['nt']}x{info['nx']} with {info['ntau']} tau nodes in {info['elapsed_ms']:.1f} ms",
                self.console,
            )
            self._summarize(result.report)
        return result.passed

    def handle_verify(self, problem_path: Path, grid_path: Path, out: Optional[Path] = None) -> bool:
        problem = self.service.load_problem(problem_path)
        report = self.service.verify(problem, grid_path)
        emit_document(
            {
                "command": "verify",
                "input": str(problem_path),
                "grid": str(grid_path),
                "verification": report.to_dict(),
                "settings": self.config.describe(),
            },
            out,
        )
        if not self.config.json_only:
            self._summarize(report)
        return report.passed

    def _summarize(self, report: SolutionReport) -> None:
        rows = [
            ("c", report.c),
            ("boundary residual", report.boundary_residual),
            ("subsolution rate", report.subsolution_rate),
            ("min d2 in t", report.convexity.min_second_diff_t),
            ("hessian rate", report.hessian_rate),
            ("min principle d2", report.min_principle.min_second_diff),
            ("min principle gap", report.min_principle.envelope_gap),
        ]
        if report.slices_ok is not None:
            rows.append(("sheared slices", report.slices_ok))
        if report.joint_convexity is not None:
            rows.append(("jointly convex", report.joint_convexity.get("pass")))
        display_key_values(rows, self.console, title="Verification")
        display_verdict(report.passed, self.console, report.violations)
