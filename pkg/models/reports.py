"""
Verification Reports
Named check results shared by certificate, hom and homotopy verification
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    required: bool = True

    def to_record(self) -> Dict:
        return {'check': self.name, 'status': self.status, 'detail': self.detail, 'required': self.required}


@dataclass
class VerificationReport:
    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: Optional[bool], detail: str = "", required: bool = True) -> CheckResult:
        """Record a check; ok=None means the outcome could not be decided"""
        status = UNDECIDED if ok is None else (PASS if ok else FAIL)
        result = CheckResult(name, status, "" if status == PASS else detail, required)
        self.checks.append(result)
        return result

    def extend(self, other: 'VerificationReport', prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(CheckResult(prefix + check.name, check.status, check.detail, check.required))

    @property
    def first_failure(self) -> Optional[CheckResult]:
        for check in self.checks:
            if check.required and check.status == FAIL:
                return check
        return None

    @property
    def status(self) -> str:
        required = [c.status for c in self.checks if c.required]
        if FAIL in required:
            return FAIL
        if UNDECIDED in required:
            return UNDECIDED
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def check(self, name: str) -> Optional[CheckResult]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def summary(self) -> Dict[str, int]:
        return {
            'total': len(self.checks),
            'passed': sum(1 for c in self.checks if c.status == PASS),
            'failed': sum(1 for c in self.checks if c.status == FAIL),
            'undecided': sum(1 for c in self.checks if c.status == UNDECIDED),
        }
