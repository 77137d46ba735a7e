import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from qpsurf.support.py_utils import UNDEFINED, VerboseEnum


class Status(VerboseEnum):
    PASS = 'pass'
    FAIL = 'fail'
    REPORTED = 'reported'


@dataclass
class Check():
    """
    Outcome of one exact identity check.

    Attributes:
        name (str): What was checked, eg. 'd2' or 'chain-map'.
        failures (List[Tuple[str, str]]): Location and nonzero residual of every violated entry.
        notes (dict): Additional observations that do not affect the status.
    """
    name: str
    failures: List[Tuple[str, str]] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, location: str, residual: Any):
        self.failures.append((location, str(residual)))

    def witness(self) -> Optional[str]:
        if not self.failures:
            return None
        location, residual = self.failures[0]
        return f'{location}: {residual}'

    def __bool__(self):
        return self.passed


@dataclass
class CaseResult():
    """
    One case of a verification suite.

    Attributes:
        fixture (str): Fixture the case ran on.
        operation (str): The operation checked, with its parameters.
        status (Status): pass, fail, or reported for observations that are not asserted.
        witness (Optional[str]): First residual of a failed case.
        details (dict): Extra JSON-friendly data.
    """
    fixture: str
    operation: str
    status: Status
    witness: Optional[str] = field(default=None)
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_check(cls, fixture: str, operation: str, check: Check, expect_pass: bool = True) -> 'CaseResult':
        """
        Builds a case from a check; negative controls pass `expect_pass=False` and pass when the check fails.
        """
        ok = check.passed if expect_pass else not check.passed
        witness = check.witness()
        if not expect_pass and witness is not None:
            witness = f'expected failure: {witness}'
        return cls(fixture, operation, Status.PASS if ok else Status.FAIL, witness, dict(check.notes))

    @classmethod
    def from_exception(cls, fixture: str, operation: str, exception: Exception) -> 'CaseResult':
        return cls(fixture, operation, Status.FAIL, f'{exception.__class__.__name__}: {exception}')

    @property
    def failed(self) -> bool:
        return self.status == Status.FAIL

    def to_dict(self) -> dict:
        data = {'fixture': self.fixture, 'operation': self.operation, 'status': str(self.status)}
        if self.witness is not None:
            data['witness'] = self.witness
        if self.details:
            data['details'] = self.details
        return data


@dataclass
class VerificationReport():
    """
    Result of running a verification suite.

    Attributes:
        suite (str): Suite id.
        cases (List[CaseResult]): Cases in deterministic order.
        fingerprint (dict): Package version and configuration the suite ran with.
    """
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    fingerprint: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.suite:
            raise ValueError('VerificationReport requires a nonempty suite id')

    @property
    def passed(self) -> bool:
        return not any(case.failed for case in self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [case for case in self.cases if case.failed]

    def copy(self, cases: List[CaseResult] = UNDEFINED) -> 'VerificationReport':
        return VerificationReport(
            suite=self.suite,
            cases=cases if cases is not UNDEFINED else list(self.cases),
            fingerprint=dict(self.fingerprint),
        )

    def to_dict(self) -> dict:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'fingerprint': self.fingerprint,
            'cases': [case.to_dict() for case in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        failed = len(self.failures)
        return f'{self.suite}: {len(self.cases) - failed}/{len(self.cases)} cases passed'
