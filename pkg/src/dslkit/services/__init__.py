"""
Services layer for dslkit.

This module contains service classes that encapsulate the numerical
operations behind each CLI command.
"""

from .analysis_service import AnalysisService, parse_phase
from .solver_service import SolverService
from .suite_service import SuiteService

__all__ = [
    'AnalysisService',
    'SolverService',
    'SuiteService',
    'parse_phase',
]
