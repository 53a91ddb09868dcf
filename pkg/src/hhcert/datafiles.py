"""Locating and loading the bundled JSON datasets."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .errors import DataError

__all__ = ["data_dir", "load_json", "dataset_digest"]

ENV_DATA_DIR = "HHCERT_DATA_DIR"


def data_dir(override: str | os.PathLike | None = None) -> Path:
    """Directory holding the datasets: explicit override, then env, then the package copy."""
    if override:
        return Path(override)
    env = os.environ.get(ENV_DATA_DIR)
    if env:
        return Path(env)
    return Path(str(resources.files("hhcert") / "data"))


def load_json(name: str, directory: str | os.PathLike | None = None):
    path = data_dir(directory) / (name if name.endswith(".json") else name + ".json")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise DataError("missing dataset %s" % path) from exc
    except json.JSONDecodeError as exc:
        raise DataError("malformed dataset %s: %s" % (path, exc)) from exc


def dataset_digest(name: str, directory: str | os.PathLike | None = None) -> str:
    import hashlib

    path = data_dir(directory) / (name if name.endswith(".json") else name + ".json")
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()[:16]
    except FileNotFoundError as exc:
        raise DataError("missing dataset %s" % path) from exc
