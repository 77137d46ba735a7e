import unittest

from qpsurf.algebra.ginzburg import ginzburg
from qpsurf.algebra.keller_yang import check_dg_homomorphism, functor_image, ky_table, mu_sharp, rescaled_potential, table_signs
from qpsurf.algebra.mutation import premutate
from qpsurf.base.dg_module import DgModulePresentation, Generator, SignConvention
from qpsurf.base.path_algebra import PathExpr
from qpsurf.support.errors import QuiverError
from qpsurf.surface.fixtures import a2, three_cycle


class TestMuSharpU(unittest.TestCase):

    def test_summand_at_mutation_vertex(self):
        algebra = ginzburg(*three_cycle())
        module = mu_sharp(algebra, '2')
        self.assertEqual(['k', 'q:x'], [g.label for g in module.generators])
        self.assertEqual([1, 0], [g.shift for g in module.generators])
        self.assertEqual(PathExpr.arrow(algebra.quiver, 'x'), module.entry(1, 0))

    def test_table_signs(self):
        premutation = premutate(*three_cycle(), '2')
        self.assertEqual({'[xy]': -1, "y'": -1, '[xy]*': -1, "y'*": -1}, table_signs(premutation))
        self.assertNotEqual(premutation.potential, rescaled_potential(premutation))


class TestKYTableU(unittest.TestCase):

    def setUp(self):
        self.algebra = ginzburg(*three_cycle())

    def test_dg_homomorphism(self):
        for fixture in [three_cycle, a2]:
            algebra = ginzburg(*fixture())
            for k in algebra.base.vertices:
                with self.subTest(fixture=fixture.__name__, k=k):
                    check = check_dg_homomorphism(ky_table(algebra, k), SignConvention.KOSZUL)
                    self.assertTrue(check.passed, check.witness())

    def test_literal_potential_is_not_a_homomorphism(self):
        premutation = premutate(self.algebra.base, self.algebra.potential, '2')
        table = ky_table(self.algebra, '2', ginzburg(premutation.quiver, premutation.potential))
        self.assertFalse(check_dg_homomorphism(table, SignConvention.KOSZUL).passed)

    def test_broken_image(self):
        table = ky_table(self.algebra, '2')
        broken = table.with_image('z', {})
        check = check_dg_homomorphism(broken, SignConvention.KOSZUL)
        self.assertFalse(check.passed)
        self.assertTrue(check_dg_homomorphism(table, SignConvention.KOSZUL).passed)

    def test_unknown_image(self):
        with self.assertRaises(QuiverError):
            ky_table(self.algebra, '2').with_image('w', {})

    def test_to_dict(self):
        data = ky_table(self.algebra, '2').to_dict()
        self.assertEqual('2', data['k'])
        self.assertIn("x'", data['images'])
        self.assertIn('e_2*', data['images'])

    def test_functor_image_expands_generators(self):
        table = ky_table(self.algebra, '2')
        module = DgModulePresentation(table.mutated, [Generator('2', 0, 'a'), Generator('1', 0, 'b')], {}, 'M')
        image, origins = functor_image(table, module, SignConvention.KOSZUL)
        self.assertEqual(['a|k', 'a|q:x', 'b|1'], [g.label for g in image.generators])
        self.assertEqual([(0, 'k'), (0, 'q:x'), (1, '1')], origins)
        self.assertEqual(PathExpr.arrow(self.algebra.quiver, 'x'), image.entry(1, 0))
