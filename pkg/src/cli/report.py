# src/cli/report.py
# Builds the report document every subcommand emits and renders it as JSON or text.

from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from src.algebra.ledger import LEDGER
from src.algebra.reports import ERROR, FAIL, PASS, CheckReport, ReportGroup
from src.algebra.tensors import SparseTensor, describe_signature
from src.bialgebra.qlb import QuasiLieBialgebra
from src.utils.io import dumps

Checkable = Union[CheckReport, ReportGroup]
Labelled = Tuple[Checkable, Sequence[str]]


def jsonable(value: Any, labels: Sequence[str], limit: int = 50) -> Any:
    if isinstance(value, SparseTensor):
        return tensor_doc(value, labels, limit)
    if isinstance(value, dict):
        return {str(k): jsonable(v, labels, limit) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v, labels, limit) for v in items]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def tensor_doc(t: SparseTensor, labels: Sequence[str], limit: int = 50) -> dict:
    terms = t.to_literal(labels)
    doc = {"signature": describe_signature(t.signature), "nonzero": len(terms), "terms": terms[:limit]}
    if len(terms) > limit:
        doc["truncated"] = True
    return doc


def check_doc(c: CheckReport, labels: Sequence[str], limit: int) -> dict:
    doc = {"name": c.name, "status": c.status, "witness": jsonable(c.witness, labels, limit),
           "details": jsonable(c.details, labels, limit)}
    # residuals only where something failed; zero tensors carry no information
    bad = {k: t for k, t in c.residuals.items() if isinstance(t, SparseTensor) and not t.is_zero()}
    if bad:
        doc["residuals"] = {k: tensor_doc(t, labels, limit) for k, t in bad.items()}
    return doc


def flatten_checks(items: Iterable[Labelled]) -> List[Tuple[CheckReport, Sequence[str]]]:
    out = []
    for it, labels in items:
        if isinstance(it, ReportGroup):
            out.extend((CheckReport(f"{it.name}.{c.name}", c.passed, c.witness, c.residuals, c.details, c.status),
                        labels) for c in it.checks)
        else:
            out.append((it, labels))
    return out


def overall(checks: Sequence[CheckReport]) -> str:
    if any(c.status == ERROR for c in checks):
        return ERROR
    return PASS if all(c.passed for c in checks) else FAIL


def qlb_doc(q: QuasiLieBialgebra, limit: int = 50) -> dict:
    labels = q.g.labels
    return {"algebra": q.g.describe(), "delta": tensor_doc(q.delta, labels, limit),
            "phi": tensor_doc(q.phi, labels, limit), "lie_bialgebra": q.is_lie_bialgebra,
            "provenance": jsonable(q.provenance, labels, limit)}


def build_report(command: str, argv: Sequence[str], inputs: Dict[str, dict], checks: Iterable[Labelled],
                 result: Optional[dict] = None, timing: Optional[dict] = None, limit: int = 50) -> dict:
    """`checks` pairs each report with the basis labels its residuals are written in."""
    flat = flatten_checks(checks)
    return {
        "command": {"name": command, "argv": list(argv)},
        "ledger": LEDGER.snapshot(),
        "inputs": inputs,
        "status": overall([c for c, _ in flat]),
        "checks": [check_doc(c, labels, limit) for c, labels in flat],
        "result": result or {},
        "timing": timing or {},
    }


def exit_code(report: dict) -> int:
    return 0 if report["status"] == PASS else 1


def render_json(report: dict, indent: int = 2) -> str:
    return dumps(report, indent)


def render_text(report: dict) -> str:
    lines = [f"[{report['command']['name']}] status: {report['status']}"]
    if report["checks"]:
        df = pd.DataFrame([{"check": c["name"], "status": c["status"],
                            "witness": "" if c["witness"] is None else dumps(c["witness"], None)}
                           for c in report["checks"]])
        lines.append(df.to_string(index=False))
        for c in report["checks"]:
            for name, t in c.get("residuals", {}).items():
                lines.append(f"residual {c['name']}.{name} ({t['signature']}, {t['nonzero']} terms):")
                rows = pd.DataFrame([{"idx": " ".join(r["idx"]), "coef": r["coef"]} for r in t["terms"]])
                lines.append(rows.to_string(index=False))
    if report["result"]:
        lines.append("result:")
        lines.append(dumps(report["result"], 2))
    return "\n".join(lines)
