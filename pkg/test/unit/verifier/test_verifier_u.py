import unittest
from unittest.mock import patch

from qpsurf.base.report import Check, Status
from qpsurf.support.errors import FixtureError, QpsurfError, SuiteError, UnsupportedError
from qpsurf.verifier.suite_case import SuiteCase, merge_checks
from qpsurf.verifier.verifier import SUITES, Verifier


def _failing(name):
    check = Check(name)
    check.fail('entry', 'x.y')
    return check


def _raise(exception):
    raise exception


class TestSuiteCaseU(unittest.TestCase):

    def test_pass_and_fail(self):
        self.assertEqual(Status.PASS, SuiteCase('a2', 'op', lambda: Check('c')).execute().status)
        result = SuiteCase('a2', 'op', lambda: _failing('c')).execute()
        self.assertEqual(Status.FAIL, result.status)
        self.assertEqual('entry: x.y', result.witness)

    def test_negative_control(self):
        result = SuiteCase('a2', 'op', lambda: _failing('c'), expect_pass=False).execute()
        self.assertEqual(Status.PASS, result.status)
        self.assertEqual('expected failure: entry: x.y', result.witness)
        self.assertEqual(Status.FAIL, SuiteCase('a2', 'op', lambda: Check('c'), expect_pass=False).execute().status)

    def test_unsupported_is_reported(self):
        result = SuiteCase('annulus', 'op', lambda: _raise(UnsupportedError('no', reason='self-glued triangle'))).execute()
        self.assertEqual(Status.REPORTED, result.status)
        self.assertEqual('unsupported: self-glued triangle', result.witness)

    def test_error_fails(self):
        result = SuiteCase('nope', 'op', lambda: _raise(FixtureError('unknown fixture'))).execute()
        self.assertEqual(Status.FAIL, result.status)
        self.assertEqual('FixtureError: unknown fixture', result.witness)

    def test_unasserted_check_is_reported(self):
        check = _failing('c')
        check.notes['asserted'] = False
        result = SuiteCase('a2', 'op', lambda: check, details={'extra': 1}).execute()
        self.assertEqual(Status.REPORTED, result.status)
        self.assertEqual(1, result.details['extra'])

    def test_merge_checks(self):
        subject = _failing('mc')
        subject.notes['subject'] = 'image(1)'
        merged = merge_checks('bundle', [Check('a'), _failing('b'), subject])
        self.assertEqual([('b: entry', 'x.y'), ('mc image(1): entry', 'x.y')], merged.failures)
        self.assertEqual(3, merged.notes['checks'])


class TestVerifierU(unittest.TestCase):

    def test_fixtures(self):
        self.assertIsNone(Verifier().fixtures)
        self.assertIsNone(Verifier(['builtin']).fixtures)
        self.assertIsNone(Verifier([]).fixtures)
        self.assertEqual(['a2'], Verifier(['a2']).fixtures)

    def test_surface_fixtures_skip_qps(self):
        verifier = Verifier(['a2', 'pentagon', 'surface.json'])
        self.assertEqual(['pentagon', 'surface.json'], verifier.surface_fixtures(['hexagon']))
        self.assertEqual(['a2', 'pentagon', 'surface.json'], verifier.qp_fixtures(['hexagon']))
        self.assertEqual(['hexagon'], Verifier().surface_fixtures(['hexagon']))

    def test_unknown_suite(self):
        with self.assertRaises(SuiteError):
            Verifier().cases('d3')
        with self.assertRaises(SuiteError):
            Verifier().run_suite('d3')

    def test_every_suite_has_cases(self):
        verifier = Verifier()
        for suite in SUITES:
            with self.subTest(suite=suite):
                self.assertGreater(len(verifier.cases(suite)), 0)

    def test_d2_negative_control(self):
        cases = Verifier(['three-cycle']).cases('d2')
        self.assertEqual(['d2', 'd2 with d(x*) negated'], [case.operation for case in cases])
        self.assertEqual([True, False], [case.expect_pass for case in cases])

    def test_vertex_selection(self):
        verifier = Verifier(['three-cycle'], vertices=['2'])
        self.assertEqual(['ky-hom k=2', 'ky-hom k=2 literal potential'], [case.operation for case in verifier.cases('ky-hom')])
        self.assertEqual(['homotopies k=2'], [case.operation for case in verifier.cases('homotopies')])
        self.assertEqual(['homotopies k=2'], [case.operation for case in verifier.cases('homotopy')])

    def test_homotopy_search_is_opt_in(self):
        default = [case.operation for case in Verifier().cases('homotopies')]
        self.assertFalse([operation for operation in default if operation.startswith('solve-homotopy')])
        solving = Verifier(['three-cycle'], vertices=['2'], solve_homotopies=True)
        self.assertEqual(['homotopies k=2', 'solve-homotopy k=2'], [case.operation for case in solving.cases('homotopies')])

    def test_flip_mutation_depth(self):
        cases = Verifier(['pentagon'], depth=0).cases('flip-mutation')
        self.assertEqual(['flip-mutation T0 k=0-2', 'flip-mutation T0 k=0-3', 'flip-mutation k=0-3 without w2'], [case.operation for case in cases])
        self.assertEqual(11, len(Verifier(['pentagon']).cases('flip-mutation')))
        with self.assertRaises(QpsurfError):
            Verifier(depth=-1)

    def test_flip_mutation_covers_every_hexagon_triangulation(self):
        cases = [case for case in Verifier(['hexagon']).cases('flip-mutation') if case.fixture == 'hexagon']
        self.assertEqual(14 * 3, len(cases))
        for case in cases:
            with self.subTest(case.operation):
                self.assertEqual(Status.PASS, case.execute().status)

    def test_fingerprint(self):
        fingerprint = Verifier(seed=7, convention='unsigned').fingerprint()
        self.assertEqual(7, fingerprint['seed'])
        self.assertEqual('unsigned', fingerprint['sign_convention'])
        self.assertEqual('builtin', fingerprint['fixtures'])

    def test_run_suite_keeps_case_order(self):
        verifier = Verifier(max_workers=3)
        cases = [
            SuiteCase('a', 'first', lambda: Check('c')),
            SuiteCase('b', 'second', lambda: _raise(ValueError('boom'))),
            SuiteCase('c', 'third', lambda: _failing('c')),
        ]
        with patch.object(Verifier, 'cases', return_value=cases):
            report = verifier.run_suite('d2')
        self.assertEqual(['first', 'second', 'third'], [case.operation for case in report.cases])
        self.assertEqual([Status.PASS, Status.FAIL, Status.FAIL], [case.status for case in report.cases])
        self.assertEqual('ValueError: boom', report.cases[1].witness)
        self.assertFalse(report.passed)
