"""Shared fixtures: bundled data paths and the hand-labeled snippet corpus."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def oracle_corpus(data_dir):
    """(name, source, expected metrics) per hand-labeled snippet."""
    root = data_dir / "oracle_snippets"
    expected = json.loads((root / "expected.json").read_text(encoding="utf-8"))
    return [
        (name, (root / name).read_text(encoding="utf-8"), expected[name])
        for name in sorted(expected)
    ]


@pytest.fixture(scope="session")
def mini_corpus(data_dir) -> Path:
    return data_dir / "mini_corpus"


@pytest.fixture(scope="session")
def mini_cache(data_dir) -> Path:
    return data_dir / "mini_cache"
