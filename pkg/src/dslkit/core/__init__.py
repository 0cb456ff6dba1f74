"""Core infrastructure: exceptions, configuration, schema-validated IO."""

from .exceptions import DslkitError
from .schema import RuntimeConfig, SystemConfig, ToleranceConfig
from .config_service import ConfigurationService

__all__ = [
    "DslkitError",
    "RuntimeConfig",
    "SystemConfig",
    "ToleranceConfig",
    "ConfigurationService",
]
