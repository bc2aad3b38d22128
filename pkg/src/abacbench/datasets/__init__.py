"""Bundled benchmark datasets.

Three small hand-written policies (healthcare, project-mgmt, university)
plus one pre-generated instance of each large case study (workforce,
e-document, both built with the default size controls and seed 42).  The
data directory can be overridden with the ABACLAB_DATA environment
variable or an explicit `data_dir` argument; overriding directories must
hold `<name>.abac` files.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from ..errors import AbacError
from ..model import Policy
from ..parser import parse_policy

DATASET_NAMES = ("healthcare", "project-mgmt", "university", "workforce", "e-document")

DATA_ENV_VAR = "ABACLAB_DATA"


def dataset_dir() -> Path | None:
    """Directory override from the environment, if any."""
    override = os.environ.get(DATA_ENV_VAR)
    return Path(override) if override else None


def dataset_text(name: str, data_dir: Path | None = None) -> str:
    """Raw `.abac` text of a bundled dataset."""
    if name not in DATASET_NAMES:
        raise AbacError(f"unknown bundled dataset {name!r}; expected one of {DATASET_NAMES}")
    directory = data_dir or dataset_dir()
    if directory is not None:
        return (directory / f"{name}.abac").read_text(encoding="utf-8")
    path = resources.files(__name__).joinpath("data").joinpath(f"{name}.abac")
    return path.read_text(encoding="utf-8")


def load_dataset(name: str, data_dir: Path | None = None) -> Policy:
    """Parse one bundled dataset by name."""
    return parse_policy(dataset_text(name, data_dir), name)


def bundled_datasets(data_dir: Path | None = None) -> list:
    """All five bundled datasets as (name, Policy)."""
    return [(name, load_dataset(name, data_dir)) for name in DATASET_NAMES]
