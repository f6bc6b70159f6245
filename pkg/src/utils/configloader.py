# src/utils/configloader.py
# Loads config/app.yaml over built-in defaults; results are cached per path.

import copy
import os
from functools import lru_cache
from typing import Optional

import yaml

from src.algebra.errors import InputError

CONFIG_PATH = os.path.join("config", "app.yaml")

DEFAULTS = {
    "window": {"max_weight": 4, "max_degree": 4},
    "random": {"seed": 20240917},
    "logging": {"level": "WARNING"},
    "report": {"json_indent": 2, "max_residual_terms": 50},
}


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in (override or {}).items():
        if isinstance(out.get(k), dict):
            if not isinstance(v, dict):
                raise InputError(f"Config section {k!r} must be a mapping, got {type(v).__name__}")
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


@lru_cache(maxsize=8)
def _load(path: str) -> dict:
    if not os.path.exists(path):
        return copy.deepcopy(DEFAULTS)
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise InputError(f"{path} is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a YAML mapping, got {type(data).__name__}")
    return _merge(DEFAULTS, data)


_active: Optional[str] = None


def set_config_path(path: Optional[str]) -> None:
    """Point later load_config() calls at another YAML file (None restores the default)."""
    global _active
    if path is not None and not os.path.exists(path):
        raise FileNotFoundError(f"{path} not found.")
    _active = path


def load_config(path: Optional[str] = None) -> dict:
    """Merged configuration; callers get a copy they may modify."""
    return copy.deepcopy(_load(path or _active or CONFIG_PATH))
