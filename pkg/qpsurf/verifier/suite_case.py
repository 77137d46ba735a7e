from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Sequence

from qpsurf.base.report import CaseResult, Check, Status
from qpsurf.support.errors import QpsurfError, UnsupportedError


@dataclass
class SuiteCase():
    """
    One deferred check of a suite.

    Attributes:
        fixture (str): Fixture the case runs on.
        operation (str): The operation checked, with its parameters.
        run (Callable[[], Check]): Computes the check.
        expect_pass (bool): False for negative controls.
        details (dict): Extra data added to the result.
    """
    fixture: str
    operation: str
    run: Callable[[], Check]
    expect_pass: bool = True
    details: Dict[str, Any] = field(default_factory=dict)

    def execute(self) -> CaseResult:
        """
        Runs the check. Checks marked `notes['asserted'] = False` and unsupported inputs are reported rather than failed.
        """
        try:
            check = self.run()
        except UnsupportedError as e:
            return CaseResult(self.fixture, self.operation, Status.REPORTED, f'unsupported: {e.reason or e}', dict(self.details))
        except QpsurfError as e:
            return CaseResult(self.fixture, self.operation, Status.FAIL, f'{e.__class__.__name__}: {e}', dict(self.details))

        if check.notes.get('asserted', True) is False:
            result = CaseResult(self.fixture, self.operation, Status.REPORTED, check.witness(), dict(check.notes))
        else:
            result = CaseResult.from_check(self.fixture, self.operation, check, self.expect_pass)
        result.details.update(self.details)
        return result


def merge_checks(name: str, checks: Sequence[Check]) -> Check:
    """ One check failing wherever any of `checks` fails; failures are prefixed by the failing check's name and subject. """
    merged = Check(name)
    for check in checks:
        prefix = check.name if 'subject' not in check.notes else f'{check.name} {check.notes["subject"]}'
        merged.failures += [(f'{prefix}: {location}', residual) for location, residual in check.failures]
    merged.notes['checks'] = len(checks)
    return merged
