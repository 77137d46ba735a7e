from unittest import TestCase

from qpsurf.base.report import Status
from qpsurf.support.logs import project_logger
from qpsurf.verifier.verifier import Verifier
from test_utils import verify_log


class TestVerifierI(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.verifier = Verifier(max_workers=4)
        cls.reports = {}

    def _report(self, suite):
        if suite not in self.reports:
            self.reports[suite] = self.verifier.run_suite(suite)
        return self.reports[suite]

    def _assert_passed(self, suite):
        report = self._report(suite)
        failures = [f'{case.fixture} | {case.operation}: {case.witness}' for case in report.failures]
        self.assertTrue(report.passed, '\n'.join(failures))
        return report

    def test_d2(self):
        report = self._assert_passed('d2')
        negated = [case for case in report.cases if 'negated' in case.operation]
        self.assertTrue(negated)
        self.assertTrue(all(case.witness.startswith('expected failure: ') for case in negated))

    def test_ky_hom(self):
        report = self._assert_passed('ky-hom')
        self.assertIn(('three-cycle', 'ky-hom k=2 literal potential'), [(case.fixture, case.operation) for case in report.cases])

    def test_resolutions(self):
        report = self._assert_passed('resolutions')
        self.assertEqual('sign-calibration k=2', report.cases[0].operation)

    def test_homotopies(self):
        report = self._assert_passed('homotopies')
        self.assertTrue(report.cases)
        self.assertTrue(all(case.status == Status.PASS for case in report.cases))
        self.assertFalse([case for case in report.cases if case.operation.startswith('solve-homotopy')])

    def test_flip_mutation(self):
        self._assert_passed('flip-mutation')

    def test_ext_compat(self):
        report = self._assert_passed('ext-compat')
        pentagon = [case for case in report.cases if case.fixture == 'pentagon' and case.operation == 'ext-table']
        self.assertEqual([2, 1, 1, 2], pentagon[0].details['dims'])

    def test_transport_paths(self):
        report = self._assert_passed('transport-paths')
        annulus = [case for case in report.cases if case.fixture == 'annulus']
        self.assertTrue(annulus)
        self.assertTrue(all(case.status == Status.REPORTED for case in annulus))

    def test_k0(self):
        self._assert_passed('k0')

    def test_reports_are_deterministic(self):
        first = Verifier(['three-cycle', 'a2'], max_workers=1).run_suite('d2')
        second = Verifier(['three-cycle', 'a2'], max_workers=4).run_suite('d2')
        self.assertEqual(first.to_dict(), second.to_dict())

    def test_summary_is_logged(self):
        with self.assertLogs(project_logger(), level='INFO') as cm:
            report = Verifier(['a2']).run_suite('d2')
        verify_log(self, cm, ["Suite 'd2': 1 cases", report.summary()])
