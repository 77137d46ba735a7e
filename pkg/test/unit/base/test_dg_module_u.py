import unittest

from qpsurf.algebra.ginzburg import ginzburg
from qpsurf.base.dg_module import (
    ChainMap, DgModulePresentation, Generator, SignConvention, check_chain_map, check_maurer_cartan, check_null_homotopy,
    compose, identity_map, paths_between, permute, shift, solve_null_homotopy, zero_map,
)
from qpsurf.base.path_algebra import Path, PathExpr
from qpsurf.support.errors import QuiverError
from qpsurf.surface.fixtures import a2


class TestDgModuleU(unittest.TestCase):

    def setUp(self):
        self.algebra = ginzburg(*a2())
        self.quiver = self.algebra.quiver
        # P_2 -> P_1 along x
        self.cone = DgModulePresentation(
            self.algebra,
            [Generator('2', 0, 'top'), Generator('1', -1, 'x')],
            {(1, 0): PathExpr.arrow(self.quiver, 'x')},
            'cone',
        )

    def test_validation(self):
        with self.assertRaises(QuiverError):
            self.cone.with_entries({(0, 1): PathExpr.arrow(self.quiver, 'x')})
        with self.assertRaises(QuiverError):
            self.cone.with_entries({(1, 0): PathExpr.arrow(self.quiver, 'x*')})
        with self.assertRaises(QuiverError):
            DgModulePresentation(self.algebra, [Generator('1', 0, 'a'), Generator('1', 0, 'b')], {(1, 0): PathExpr.trivial(self.quiver, '1')})

    def test_index(self):
        self.assertEqual(1, self.cone.index('x'))
        with self.assertRaises(KeyError):
            self.cone.index('y')

    def test_maurer_cartan(self):
        self.assertTrue(check_maurer_cartan(self.cone, SignConvention.KOSZUL).passed)
        self.assertTrue(check_maurer_cartan(shift(self.cone, 1, SignConvention.KOSZUL), SignConvention.KOSZUL).passed)

    def test_maurer_cartan_failure(self):
        loop = DgModulePresentation(
            self.algebra,
            [Generator('1', 0, 'top'), Generator('1', -3, 'loop')],
            {(1, 0): PathExpr.arrow(self.quiver, 'e_1*')},
            'loop',
        )
        check = check_maurer_cartan(loop, SignConvention.KOSZUL)
        self.assertFalse(check.passed)
        self.assertEqual('loop[loop, top]', check.failures[0][0])

    def test_shift_signs(self):
        shifted = shift(self.cone, 1, SignConvention.KOSZUL)
        self.assertEqual((1, 0), (shifted.generators[0].shift, shifted.generators[1].shift))
        self.assertEqual(-PathExpr.arrow(self.quiver, 'x'), shifted.entry(1, 0))
        self.assertEqual(PathExpr.arrow(self.quiver, 'x'), shift(self.cone, 1, SignConvention.UNSIGNED).entry(1, 0))

    def test_permute(self):
        with self.assertRaises(QuiverError):
            permute(self.cone, [1, 0])
        with self.assertRaises(QuiverError):
            permute(self.cone, [0, 0])

    def test_identity_is_a_chain_map(self):
        identity = identity_map(self.cone)
        self.assertTrue(check_chain_map(identity).passed)
        self.assertEqual(identity.entries, compose(identity, identity).entries)

    def test_compose_mismatch(self):
        other = DgModulePresentation(self.algebra, [Generator('1', 0, 'p')], {}, 'p')
        with self.assertRaises(QuiverError):
            compose(identity_map(other), identity_map(self.cone))

    def test_paths_between(self):
        self.assertEqual([Path('1', ('x',))], paths_between(self.quiver, '1', '2', 0, 3))
        self.assertEqual([Path('2', ())], paths_between(self.quiver, '2', '2', 0, 1))
        self.assertIn(Path('1', ('x', 'x*')), paths_between(self.quiver, '1', '1', -1, 2))


class TestNullHomotopyU(unittest.TestCase):

    def setUp(self):
        self.algebra = ginzburg(*a2())
        self.quiver = self.algebra.quiver

    def test_contractible_module(self):
        # cone of the identity of P_2
        module = DgModulePresentation(
            self.algebra,
            [Generator('2', 0, 'top'), Generator('2', -1, 'copy')],
            {(1, 0): PathExpr.trivial(self.quiver, '2')},
            'cone(id)',
        )
        identity, zero = identity_map(module), zero_map(module, module)
        theta = solve_null_homotopy(identity, zero, max_length=2, convention=SignConvention.KOSZUL)
        self.assertIsNotNone(theta)
        self.assertEqual(-1, theta.degree)
        self.assertTrue(check_null_homotopy(identity, zero, theta, SignConvention.KOSZUL).passed)

    def test_projective_is_not_contractible(self):
        module = DgModulePresentation(self.algebra, [Generator('1', 0, 'top')], {}, 'P_1')
        self.assertIsNone(solve_null_homotopy(identity_map(module), zero_map(module, module), max_length=2))

    def test_homotopy_degree(self):
        module = DgModulePresentation(self.algebra, [Generator('1', 0, 'top')], {}, 'P_1')
        wrong = ChainMap(module, module, {}, 0)
        with self.assertRaises(QuiverError):
            check_null_homotopy(identity_map(module), zero_map(module, module), wrong)
