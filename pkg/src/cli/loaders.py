# src/cli/loaders.py
# Reads Lie algebra files, tensor literals (a path or inline JSON) and the small
# list/matrix arguments the subcommands take.

import json
import logging
import os
from typing import Any, List, Optional, Sequence, Tuple

from src.algebra.errors import InputError
from src.algebra.scalars import RATIONALS, ScalarField
from src.algebra.tensors import (ANTI, DOWN, NONE, SYM, UP, Signature, SlotGroup, SparseTensor,
                                 normalize_signature)
from src.lie.algebra import LieAlgebra
from src.lie.factories import FACTORIES
from src.utils.io import read_json, sha256_file, sha256_text

log = logging.getLogger("cli")


class Source:
    """Where an argument came from, for the report's inputs block."""

    def __init__(self, label: str, path: Optional[str] = None, text: Optional[str] = None):
        self.label = label
        self.path = path
        self.text = text

    def describe(self) -> dict:
        if self.path:
            return {"path": self.path, "sha256": sha256_file(self.path)}
        if self.text is not None:
            return {"inline": True, "sha256": sha256_text(self.text)}
        return {"factory": self.label}


def _field_from(doc: Any) -> ScalarField:
    if doc is None:
        return RATIONALS
    if not isinstance(doc, dict) or doc.get("type") not in ("rational", "ratfun"):
        raise InputError(f"Bad field declaration {doc!r}; expected {{'type': 'rational'}} or {{'type': 'ratfun', 'vars': [...]}}")
    if doc["type"] == "rational":
        return RATIONALS
    vars_ = doc.get("vars")
    if not vars_ or not isinstance(vars_, list):
        raise InputError("A ratfun field needs a non-empty 'vars' list")
    return ScalarField(vars_)


def lie_from_doc(doc: Any) -> LieAlgebra:
    if not isinstance(doc, dict):
        raise InputError("A Lie algebra file must hold a JSON object")
    for key in ("basis", "brackets"):
        if key not in doc:
            raise InputError(f"Lie algebra file is missing {key!r}")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise InputError("'basis' must be a list of labels")
    field = _field_from(doc.get("field"))
    entries = []
    for item in doc["brackets"]:
        try:
            x, y, out = item
            entries.append((x, y, [(z, str(c)) for z, c in out]))
        except (TypeError, ValueError) as e:
            raise InputError(f"Bad bracket entry {item!r}: expected [x, y, [[z, coef], ...]]") from e
    return LieAlgebra.from_brackets(doc.get("name", "g"), basis, field, entries)


def load_lie(arg: str) -> Tuple[LieAlgebra, Source]:
    """A Lie algebra file, or the name of a built-in factory when no such file exists."""
    if not os.path.exists(arg) and arg in FACTORIES:
        return FACTORIES[arg](), Source(arg)
    return lie_from_doc(read_json(arg)), Source(os.path.basename(arg), path=arg)


# --- tensor literals -----------------------------------------------------------------
def parse_signature(text: str) -> Signature:
    """Inverse of describe_signature: comma-separated g, g*, wedgeP, symP (optionally starred)."""
    groups = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok or tok == "scalar":
            continue
        variance = DOWN if tok.endswith("*") else UP
        core = tok.rstrip("*")
        if core == "g":
            groups.append(SlotGroup(NONE, 1, variance))
        elif core.startswith("wedge") and core[5:].isdigit():
            groups.append(SlotGroup(ANTI, int(core[5:]), variance))
        elif core.startswith("sym") and core[3:].isdigit():
            groups.append(SlotGroup(SYM, int(core[3:]), variance))
        else:
            raise InputError(f"Unknown slot group {tok!r} in signature {text!r}")
    return normalize_signature(groups)


def _read_literal(arg: str) -> Tuple[Any, Source]:
    s = arg.strip()
    if s.startswith("[") or s.startswith("{"):
        try:
            return json.loads(s), Source("inline", text=s)
        except json.JSONDecodeError as e:
            raise InputError(f"Inline tensor literal is not valid JSON: {e}") from e
    return read_json(arg), Source(os.path.basename(arg), path=arg)


def tensor_from_doc(doc: Any, g: LieAlgebra, signature: Signature,
                    variables: Sequence[str] = ()) -> SparseTensor:
    if isinstance(doc, dict):
        if "signature" in doc:
            signature = parse_signature(str(doc["signature"]))
        variables = list(variables) + [v for v in doc.get("vars", []) if v not in variables]
        terms = doc.get("terms")
    else:
        terms = doc
    if not isinstance(terms, list):
        raise InputError("A tensor literal is a list of {'idx': [...], 'coef': '...'} records")
    field = ScalarField(variables).join(g.field)
    parsed = []
    for rec in terms:
        if not isinstance(rec, dict) or "idx" not in rec or "coef" not in rec:
            raise InputError(f"Bad tensor record {rec!r}")
        parsed.append((g.indices(rec["idx"]), field.parse(str(rec["coef"]))))
    return SparseTensor.from_terms(g.dim, signature, field, parsed)


def load_tensor(arg: str, g: LieAlgebra, signature: Signature,
                variables: Sequence[str] = ()) -> Tuple[SparseTensor, Source]:
    doc, src = _read_literal(arg)
    return tensor_from_doc(doc, g, signature, variables), src


# --- small arguments -------------------------------------------------------------------
def split_list(text: str) -> List[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise InputError(f"Empty list argument {text!r}")
    return items


def load_matrix(arg: str) -> Tuple[List[List[str]], Source]:
    doc, src = _read_literal(arg)
    if isinstance(doc, dict):
        doc = doc.get("pairing", doc.get("matrix"))
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise InputError("A matrix argument is a JSON list of rows")
    return [[str(v) for v in r] for r in doc], src


def subspace_items(text: str) -> List[Any]:
    """Labels 'e,h' or, for non-coordinate subspaces, a JSON list of {label: coef} maps."""
    s = text.strip()
    if s.startswith("["):
        try:
            doc = json.loads(s)
        except json.JSONDecodeError as e:
            raise InputError(f"Subspace argument is not valid JSON: {e}") from e
        if not isinstance(doc, list):
            raise InputError("Subspace JSON must be a list")
        return doc
    return split_list(s)
