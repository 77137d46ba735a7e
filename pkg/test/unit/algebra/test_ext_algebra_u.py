from test_utils import TestCaseWithRaiseLogs

from qpsurf.algebra.ext_algebra import (
    BasisKind, check_associativity, check_dims, check_pairing, check_units, ext_algebra_of, pi_dictionary,
)
from qpsurf.surface.fixtures import annulus, hexagon, pentagon


class TestExtAlgebraU(TestCaseWithRaiseLogs):

    def test_pentagon_basis(self):
        table = ext_algebra_of(pentagon())
        self.assertEqual((2, 1, 1, 2), table.dims())
        self.assertEqual(
            ['id(0-2)', 'id(0-3)', 'ang1@1(0-2->0-3)', 'ang2@1(0-3->0-2)', 'cy(0-2)', 'cy(0-3)'],
            table.ids(),
        )
        self.assertEqual(BasisKind.ANGLE, table.element('ang1@1(0-2->0-3)').kind)

    def test_angles_pair_to_cy_classes(self):
        table = ext_algebra_of(pentagon())
        self.assertEqual('cy(0-2)', table.product('ang1@1(0-2->0-3)', 'ang2@1(0-3->0-2)'))
        self.assertEqual('cy(0-3)', table.product('ang2@1(0-3->0-2)', 'ang1@1(0-2->0-3)'))
        self.assertIsNone(table.product('ang1@1(0-2->0-3)', 'ang1@1(0-2->0-3)'))
        self.assertIsNone(table.product('cy(0-2)', 'ang1@1(0-2->0-3)'))

    def test_angles_compose_within_a_triangle(self):
        table = ext_algebra_of(hexagon())
        self.assertEqual((3, 3, 3, 3), table.dims())
        self.assertEqual('ang2@1(0-4->0-2)', table.product('ang1@1(0-4->2-4)', 'ang1@1(2-4->0-2)'))

    def test_unknown_element(self):
        with self.assertRaises(KeyError):
            ext_algebra_of(pentagon()).element('ang1@0(0-2->0-3)')

    def test_table_identities(self):
        for t in [pentagon(), hexagon(), annulus()]:
            table = ext_algebra_of(t)
            with self.subTest(dims=table.dims()):
                self.assertTrue(check_associativity(table).passed)
                self.assertTrue(check_units(table).passed)
                self.assertTrue(check_pairing(table).passed)

    def test_dims_check(self):
        table = ext_algebra_of(annulus())
        self.assertTrue(check_dims(table, 2).passed)
        self.assertFalse(check_dims(table, 1).passed)

    def test_dictionary(self):
        dictionary = pi_dictionary(pentagon())
        self.assertEqual('id(0-2)', dictionary['e_0-2'])
        self.assertEqual('cy(0-3)', dictionary['e_0-3*'])
        self.assertEqual('ang1@1(0-2->0-3)', dictionary['0-2>0-3:1'])
        self.assertEqual('ang2@1(0-3->0-2)', dictionary['0-2>0-3:1*'])
