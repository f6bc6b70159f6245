# src/algebra/reports.py
# Result records for check operations. Checks never raise on mathematical
# failure; they return one of these with the residuals attached.

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.algebra.tensors import SparseTensor

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class CheckReport:
    name: str
    passed: bool
    witness: Optional[dict] = None
    residuals: Dict[str, SparseTensor] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    status: Optional[str] = None

    def __post_init__(self):
        if self.status is None:
            self.status = PASS if self.passed else FAIL

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class ReportGroup:
    """Several named checks reported together (e.g. the three F-morphism checks)."""

    name: str
    checks: List[CheckReport] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def get(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, check: CheckReport) -> CheckReport:
        self.checks.append(check)
        return check


def error_report(name: str, message: str) -> CheckReport:
    return CheckReport(name, False, details={"error": message}, status=ERROR)
