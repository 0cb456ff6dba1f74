"""
Suite service for dslkit.

This service resolves suite invocations from a config document and CLI
flags, and runs them with the merged system settings.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union
import logging

from pydantic import ValidationError

from ..core.exceptions import InputError, UnknownSuiteError
from ..core.io import read_json
from ..core.schema import RuntimeConfig
from ..harness.reports import VerificationReport
from ..harness.suites import SUITES, SuiteSpec, run_suite

logger = logging.getLogger(__name__)

__all__ = ["SuiteService"]


class SuiteService:
    """Service for listing and running verification suites."""

    def __init__(self, config: Optional[RuntimeConfig] = None):
        self.config = config or RuntimeConfig()

    def list_suites(self) -> List[Dict[str, str]]:
        return [
            {"suite": d.name, "description": d.description, "result": d.result} for d in SUITES.values()
        ]

    def build_spec(
        self,
        name: Optional[str] = None,
        dims: Sequence[int] = (),
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        config_path: Optional[Union[str, Path]] = None,
    ) -> SuiteSpec:
        """Merge the suite document (if any) with flags; flags win.

        Unset values fall back to the harness settings of the merged
        configuration.
        """
        harness = self.config.system.harness
        doc: Dict[str, Any] = {}
        if config_path is not None:
            doc = dict(read_json(config_path, "suite_config", InputError))
            doc.pop("schema", None)
        if name is not None:
            doc["name"] = name
        if dims:
            doc["dims"] = list(dims)
        if samples is not None:
            doc["samples"] = samples
        if seed is not None:
            doc["seed"] = seed
        doc.setdefault("dims", list(harness.dims))
        doc.setdefault("samples", harness.samples)
        doc.setdefault("seed", harness.seed)

        if "name" not in doc:
            raise InputError("a suite name is required (--name or the config document)")
        if doc["name"] not in SUITES:
            raise UnknownSuiteError(
                f"unknown suite '{doc['name']}'; choose from {', '.join(SUITES)}",
                context={"value": str(doc["name"])},
            )
        try:
            spec = SuiteSpec(**doc)
            spec.resolve_tolerances(self.config.system.tolerances)
        except ValidationError as e:
            raise InputError(f"invalid suite invocation: {e.errors()[0]['msg']}", cause=e)
        except ValueError as e:
            raise InputError(str(e), cause=e)
        return spec

    def run(self, spec: SuiteSpec) -> VerificationReport:
        system = self.config.system
        return run_suite(
            spec,
            tolerances=system.tolerances,
            eigen=system.eigen,
            star=system.star_search,
            solver=system.solver,
            harness=system.harness,
        )
