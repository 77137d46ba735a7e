import unittest

from qpsurf.algebra.ginzburg import ginzburg
from qpsurf.algebra.resolutions import (
    LiftKind, calibration_checks, check_projection_to_simple, homotopy_cases, select_sign_convention, sharp_bundle, sharp_bundles,
    simple_resolution,
)
from qpsurf.base.dg_module import DgModulePresentation, Generator, SignConvention, check_maurer_cartan
from qpsurf.base.path_algebra import PathExpr
from qpsurf.support.errors import QuiverError
from qpsurf.surface.fixtures import a2, three_cycle


class TestSimpleResolutionU(unittest.TestCase):

    def setUp(self):
        self.algebra = ginzburg(*three_cycle())

    def test_generators(self):
        module = simple_resolution(self.algebra, '1')
        self.assertEqual(['top', 'ρ:z', 'τ:x', 'base'], [g.label for g in module.generators])
        self.assertEqual([3, 2, 1, 0], [g.shift for g in module.generators])
        self.assertEqual(PathExpr.arrow(self.algebra.quiver, 'e_1*'), module.entry(module.index('base'), module.index('top')))

    def test_maurer_cartan(self):
        for fixture in [three_cycle, a2]:
            algebra = ginzburg(*fixture())
            for i in algebra.base.vertices:
                with self.subTest(fixture=fixture.__name__, i=i):
                    module = simple_resolution(algebra, i)
                    check = check_maurer_cartan(module, SignConvention.KOSZUL)
                    self.assertTrue(check.passed, check.witness())
                    self.assertTrue(check_projection_to_simple(module).passed)

    def test_unknown_vertex(self):
        with self.assertRaises(QuiverError):
            simple_resolution(self.algebra, '4')

    def test_projection_with_constant_entry(self):
        quiver = self.algebra.quiver
        module = DgModulePresentation(
            self.algebra, [Generator('1', 1, 'top'), Generator('1', 0, 'base')], {(1, 0): PathExpr.trivial(quiver, '1')}, 'cone',
        )
        check = check_projection_to_simple(module)
        self.assertFalse(check.passed)
        self.assertEqual('cone[base, top]', check.failures[0][0])


class TestSharpBundlesU(unittest.TestCase):

    def setUp(self):
        self.algebra = ginzburg(*three_cycle())

    def test_bundle_checks(self):
        for i in self.algebra.base.vertices:
            bundle = sharp_bundle(self.algebra, '2', i, convention=SignConvention.KOSZUL)
            for check in bundle.checks(SignConvention.KOSZUL):
                with self.subTest(i=i, subject=check.notes['subject']):
                    self.assertTrue(check.passed, check.witness())

    def test_sharp_simple_at_mutation_vertex_is_shifted(self):
        bundle = sharp_bundle(self.algebra, '2', '2', convention=SignConvention.KOSZUL)
        self.assertEqual('2', bundle.k)
        self.assertEqual([4, 3, 2, 1], [g.shift for g in bundle.sharp.generators])

    def test_homotopy_cases(self):
        bundles = sharp_bundles(self.algebra, '2', SignConvention.KOSZUL)
        cases = homotopy_cases(self.algebra, '2', bundles, SignConvention.KOSZUL)
        self.assertEqual(
            [(LiftKind.REVERSED_IN, 'x'), (LiftKind.REVERSED_IN_STAR, 'x'), (LiftKind.REVERSED_OUT, 'y'), (LiftKind.REVERSED_OUT_STAR, 'y')],
            [(case.kind, case.arrow) for case in cases],
        )
        for case in cases:
            with self.subTest(case=case.name):
                check = case.check(SignConvention.KOSZUL)
                self.assertTrue(check.passed, check.witness())


class TestSignCalibrationU(unittest.TestCase):

    def test_koszul_is_selected(self):
        self.assertEqual(SignConvention.KOSZUL, select_sign_convention(ginzburg(*three_cycle()), '2'))

    def test_unsigned_fails_some_calibration_check(self):
        checks = calibration_checks(ginzburg(*three_cycle()), '2', SignConvention.UNSIGNED)
        self.assertTrue(any(not check.passed for check in checks))

    def test_vertex_is_required(self):
        with self.assertRaises(QuiverError):
            select_sign_convention(ginzburg(*three_cycle()))
