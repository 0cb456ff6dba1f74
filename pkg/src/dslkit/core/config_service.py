"""Assemble the four-layer configuration cascade into a merged RuntimeConfig.

Layers: defaults, user-global, project-local, runtime flags.

1. Defaults (pydantic model defaults)
2. User Global (platformdirs user config dir, ``config.yaml``)
3. Project Local (``dslkit.yaml`` or ``[tool.dslkit]`` in ``pyproject.toml``)
4. Runtime Flags (CLI args such as ``--tol`` and ``--verbose``)

Loading is read-only: no layer is ever written back to disk.
"""

from pathlib import Path
from typing import Any, Dict, Optional, TypedDict
import logging

import platformdirs
import yaml
from pydantic import ValidationError

try:
    import tomllib
except ImportError:  # pragma: no cover - Python < 3.11
    import tomli as tomllib  # type: ignore[no-redef]

from .exceptions import ConfigMergeError, ConfigNotFoundError, ConfigValidationError
from .paths import find_project_root
from .schema import RuntimeConfig, SystemConfig

logger = logging.getLogger(__name__)

__all__ = ["ConfigurationService", "RawConfig"]

# Tolerance fields that a single --tol flag overrides.
_TOL_FIELDS = ("angle", "cross_check", "second_difference")


class RawConfig(TypedDict, total=False):
    """Typed mapping representing raw configuration data loaded from files.

    Permissive (total=False); keys mirror `SystemConfig` fields.
    """


class ConfigurationService:
    """Load and merge the configuration cascade into a `RuntimeConfig`."""

    def __init__(self, user_config_path: Optional[Path] = None) -> None:
        """Initialize the service, optionally pinning the user-global file path."""
        self.global_config_path = user_config_path or self._get_global_config_path()

    def _get_user_config_dir(self) -> Path:
        """Return the user config directory path."""
        return Path(platformdirs.user_config_dir("dslkit", "dslkit"))

    def _get_global_config_path(self) -> Path:
        """Return the global config file path under the user's config directory."""
        return self._get_user_config_dir() / "config.yaml"

    def load_config(
        self,
        context_path: Optional[Path] = None,
        config_file: Optional[Path] = None,
        verbose: bool = False,
        json_only: bool = False,
        tol: Optional[float] = None,
    ) -> RuntimeConfig:
        """Load and return the merged `RuntimeConfig` assembled from all layers.

        `config_file` is an explicit extra layer (``--settings``) applied after
        the project layer; it must exist when given.
        """
        # Layer 1: defaults
        merged: RawConfig = SystemConfig().model_dump(mode="json")  # type: ignore[assignment]
        sources = []

        # Layer 2: user global
        if self.global_config_path.exists():
            merged = self.deep_merge(merged, self._load_yaml(self.global_config_path))
            sources.append(str(self.global_config_path))

        # Layer 3: project local
        project_root = find_project_root(context_path)
        if project_root:
            layer, origin = self._load_project_layer(project_root)
            if layer:
                merged = self.deep_merge(merged, layer)
                sources.append(origin)

        if config_file is not None:
            if not config_file.exists():
                raise ConfigNotFoundError(
                    f"Configuration file not found: {config_file}",
                    context={"path": str(config_file)},
                )
            merged = self.deep_merge(merged, self._load_yaml(config_file))
            sources.append(str(config_file))

        # Layer 4: runtime flags
        if tol is not None:
            merged = self.deep_merge(merged, {"tolerances": {k: tol for k in _TOL_FIELDS}})  # type: ignore[dict-item]
        if verbose:
            merged = self.deep_merge(merged, {"log_level": "DEBUG"})  # type: ignore[dict-item]

        try:
            system = SystemConfig(**merged)
        except ValidationError as e:
            raise ConfigValidationError(
                f"Invalid configuration: {e.error_count()} error(s)",
                context={"operation": "load_config", "value": "; ".join(sources) or "defaults"},
                cause=e,
            )

        logger.debug("configuration loaded from %s", sources or ["defaults"])
        return RuntimeConfig(
            system=system, verbose=verbose, json_only=json_only, sources=sources, tol_override=tol
        )

    def _load_project_layer(self, root: Path) -> "tuple[RawConfig, str]":
        """Return the project layer from ``dslkit.yaml`` or ``[tool.dslkit]``."""
        yaml_path = root / "dslkit.yaml"
        if yaml_path.is_file():
            return self._load_yaml(yaml_path), str(yaml_path)
        pyproject = root / "pyproject.toml"
        if pyproject.is_file():
            try:
                with open(pyproject, "rb") as f:
                    data = tomllib.load(f)
            except (OSError, tomllib.TOMLDecodeError) as e:
                raise ConfigValidationError(
                    f"Failed to parse {pyproject}: {e}", context={"path": str(pyproject)}, cause=e
                )
            section = data.get("tool", {}).get("dslkit", {})
            if section:
                return section, f"{pyproject}[tool.dslkit]"
        return {}, ""

    def _load_yaml(self, path: Path) -> RawConfig:
        """Read a YAML file and return a typed `RawConfig` mapping.

        Uses `yaml.safe_load` and normalizes the result to an empty mapping
        when the file contains no data. Raises `ConfigValidationError` on failure.
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigValidationError(
                f"Failed to load config from {path}: {e}", context={"path": str(path)}, cause=e
            )
        if not isinstance(data, dict):
            raise ConfigValidationError(
                f"Config file {path} must contain a mapping", context={"path": str(path)}
            )
        return data  # type: ignore[return-value]

    def deep_merge(self, base: RawConfig, overlay: RawConfig) -> RawConfig:
        """Deep-merge two raw configuration mappings and return the merged mapping.

        Nested mappings are merged rather than overwritten. Overlay values that
        are `None` or empty strings are ignored so they do not clobber
        existing settings.
        """
        def is_empty(val: Any) -> bool:
            return val is None or (isinstance(val, str) and val == "")

        if not isinstance(overlay, dict):
            raise ConfigMergeError(
                "Configuration layer must be a mapping", context={"value": type(overlay).__name__}
            )

        result: Dict[str, Any] = {key: value for key, value in base.items() if not is_empty(value)}

        for key, value in overlay.items():
            if is_empty(value):
                continue
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self.deep_merge(result[key], value)
            else:
                result[key] = value
        return result  # type: ignore[return-value]
