"""Shared fixtures for the dslkit test suite."""

import json
import math
from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np
import pytest

from dslkit.harness.fixtures import GoldenFixture, golden_fixture

HALF_PI = 0.5 * math.pi


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def golden() -> GoldenFixture:
    return golden_fixture()


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Dict[str, Any]], Path]:
    """Write a document under tmp_path and return its path."""

    def _write(name: str, doc: Dict[str, Any]) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Run from an empty directory with an empty user config directory."""
    work = tmp_path / "work"
    work.mkdir()
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    monkeypatch.chdir(work)
    return work


def quadratic_boundary(alpha: float, c: float):
    """g(t, x) = alpha t^2 / 2 + tan(c - pi/2) x^2 / 2, whose Hessian has Theta = c when alpha > 0."""
    m = math.tan(c - HALF_PI)

    def g(t, x):
        return 0.5 * alpha * t * t + 0.5 * m * x * x

    return g, m
