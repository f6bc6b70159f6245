# src/utils/io.py
# JSON in and out, and content hashes for report input blocks.

import hashlib
import json
import os
from typing import Any


def read_json(path: str) -> Any:
    if not os.path.exists(path):
        raise FileNotFoundError(f"{path} not found.")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def write_json(path: str, doc: Any, indent: int = 2) -> str:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(doc, indent))
        f.write("\n")
    return path


def dumps(doc: Any, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, fixed separators."""
    return json.dumps(doc, indent=indent, sort_keys=True, ensure_ascii=False)


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
