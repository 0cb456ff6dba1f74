"""Read and write the JSON documents and text files exchanged by the CLI.

JSON inputs are validated against the schemas shipped in ``dslkit/schemas``
with `jsonschema`; every emitted document is stamped with the schema tag.
"""

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Type, Union
import json
import logging
import math

import jsonschema

from .exceptions import DslkitError, FileSystemError, InputError, validate_file_readable
from .paths import get_schemas_dir

logger = logging.getLogger(__name__)

__all__ = [
    "SCHEMA_TAG",
    "load_schema",
    "validate_document",
    "read_json",
    "dumps_json",
    "write_text",
    "ensure_parent_dir",
    "jsonable",
]

SCHEMA_TAG = "dslkit/1"


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """Load ``<name>.schema.json`` from the package schema directory."""
    path = get_schemas_dir() / f"{name}.schema.json"
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def validate_document(
    data: Any, schema_name: str, error_cls: Type[DslkitError] = InputError, source: str = "<memory>"
) -> None:
    """Validate `data` against a named schema, raising `error_cls` on failure."""
    schema = load_schema(schema_name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<root>"
        raise error_cls(
            f"{source}: {first.message} at {where}",
            context={"path": source, "value_name": where, "value": str(len(errors))},
        )


def read_json(
    path: Union[str, Path], schema_name: Optional[str] = None, error_cls: Type[DslkitError] = InputError
) -> Any:
    """Read a JSON document, optionally validating it against a schema."""
    path = Path(path)
    validate_file_readable(path, "read_json")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise error_cls(
            f"{path}: invalid JSON ({e.msg})",
            context={"path": str(path), "value": f"line {e.lineno}"},
            cause=e,
        )
    if schema_name is not None:
        validate_document(data, schema_name, error_cls, source=str(path))
    return data


def jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe values."""
    if hasattr(value, "tolist"):
        value = value.tolist()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def dumps_json(document: Dict[str, Any]) -> str:
    """Serialize a report document with the schema tag first and stable key order."""
    body = {"schema": SCHEMA_TAG}
    body.update({k: v for k, v in document.items() if k != "schema"})
    return json.dumps(jsonable(body), indent=2, sort_keys=False) + "\n"


def ensure_parent_dir(file_path: Union[str, Path]) -> Path:
    """Create the parent directory for `file_path` if it does not exist."""
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    return file_path


def write_text(file_path: Union[str, Path], content: str) -> Path:
    """Write UTF-8 text to `file_path`, creating parents as needed."""
    file_path = ensure_parent_dir(file_path)
    try:
        with open(file_path, "w", encoding="utf-8", newline="") as f:
            f.write(content)
    except OSError as e:
        raise FileSystemError(
            f"Cannot write {file_path}: {e}", context={"path": str(file_path)}, cause=e
        )
    logger.debug("wrote %s", file_path)
    return file_path
