import os
import tempfile
import unittest

from qpsurf.base.path_algebra import (
    Arrow, PathExpr, Potential, QpClass, Quiver, classify_qp, cyclic_derivative, format_expr, path_derivative, qp_isomorphism,
    qp_from_dict, read_qp, rescale_arrows, write_qp,
)
from qpsurf.support.errors import FixtureError, PotentialError, QuiverError
from qpsurf.surface.fixtures import kronecker, three_cycle


class TestQuiverU(unittest.TestCase):

    def test_rejects_two_cycles(self):
        with self.assertRaises(QuiverError):
            Quiver(['1', '2'], [('a', '1', '2'), ('b', '2', '1')])

    def test_allows_two_cycles_when_asked(self):
        quiver = Quiver(['1', '2'], [('a', '1', '2'), ('b', '2', '1')], allow_two_cycles=True)
        self.assertEqual(1, quiver.arrow_count('2', '1'))

    def test_rejects_loops(self):
        with self.assertRaises(QuiverError):
            Quiver(['1'], [('a', '1', '1')])

    def test_rejects_unknown_vertex(self):
        with self.assertRaises(QuiverError):
            Quiver(['1'], [('a', '1', '2')])

    def test_rejects_duplicate_arrow(self):
        with self.assertRaises(QuiverError):
            Quiver(['1', '2'], [('a', '1', '2'), ('a', '1', '2')])

    def test_unknown_arrow(self):
        quiver, _ = three_cycle()
        with self.assertRaises(QuiverError):
            quiver.arrow('w')

    def test_incidence(self):
        quiver, _ = three_cycle()
        self.assertEqual([Arrow('x', '1', '2')], quiver.arrows_from('1'))
        self.assertEqual([Arrow('z', '3', '1')], quiver.arrows_to('1'))


class TestPathExprU(unittest.TestCase):

    def setUp(self):
        self.quiver, self.potential = three_cycle()

    def test_product_composes_left_to_right(self):
        z, x = PathExpr.arrow(self.quiver, 'z'), PathExpr.arrow(self.quiver, 'x')
        self.assertEqual(PathExpr.word(self.quiver, ('z', 'x')), z * x)

    def test_product_of_non_composable_paths_vanishes(self):
        product = PathExpr.arrow(self.quiver, 'x') * PathExpr.arrow(self.quiver, 'z')
        self.assertTrue(product.is_zero())

    def test_trivial_path_is_a_unit(self):
        x = PathExpr.arrow(self.quiver, 'x')
        self.assertEqual(x, PathExpr.trivial(self.quiver, '1') * x)
        self.assertEqual(x, x * PathExpr.trivial(self.quiver, '2'))
        self.assertTrue((PathExpr.trivial(self.quiver, '2') * x).is_zero())

    def test_linear_combination_cancels(self):
        x = PathExpr.arrow(self.quiver, 'x')
        self.assertTrue((x + x.scale(-1)).is_zero())
        self.assertEqual(x.scale(2), x + x)

    def test_word_must_compose(self):
        with self.assertRaises(QuiverError):
            PathExpr.word(self.quiver, ('x', 'z'))

    def test_format(self):
        expr = PathExpr.arrow(self.quiver, 'x') + PathExpr.arrow(self.quiver, 'y', -2)
        self.assertEqual('x - 2*y', format_expr(expr))
        self.assertEqual('0', format_expr(PathExpr.zero(self.quiver)))
        self.assertEqual('e_3', format_expr(PathExpr.trivial(self.quiver, '3')))

    def test_substitute(self):
        images = {'x': PathExpr.arrow(self.quiver, 'x', 3), 'y': PathExpr.arrow(self.quiver, 'y', -1)}
        result = PathExpr.word(self.quiver, ('x', 'y')).substitute(images, self.quiver)
        self.assertEqual(PathExpr.word(self.quiver, ('x', 'y'), -3), result)


class TestPotentialU(unittest.TestCase):

    def setUp(self):
        self.quiver, self.potential = three_cycle()

    def test_rotations_are_identified(self):
        self.assertEqual(self.potential, Potential(self.quiver, {('y', 'z', 'x'): 1}))
        self.assertTrue((self.potential - Potential(self.quiver, {('z', 'x', 'y'): 1})).is_zero())

    def test_rejects_non_cycles(self):
        with self.assertRaises(PotentialError):
            Potential(self.quiver, {('x', 'y'): 1})

    def test_cyclic_derivative(self):
        self.assertEqual(PathExpr.word(self.quiver, ('y', 'z')), cyclic_derivative(self.potential, 'x'))
        self.assertEqual(PathExpr.word(self.quiver, ('x', 'y')), cyclic_derivative(self.potential, 'z'))

    def test_path_derivative(self):
        self.assertEqual(PathExpr.arrow(self.quiver, 'z'), path_derivative(self.potential, ('x', 'y')))
        self.assertEqual(PathExpr.trivial(self.quiver, '1'), path_derivative(self.potential, ('x', 'y', 'z')))

    def test_derivative_of_zero_potential(self):
        self.assertTrue(cyclic_derivative(Potential.zero(self.quiver), 'x').is_zero())

    def test_rescale_arrows(self):
        rescaled = rescale_arrows(self.potential, {'x': -1})
        self.assertEqual(Potential(self.quiver, {('x', 'y', 'z'): -1}), rescaled)


class TestClassifyU(unittest.TestCase):

    def test_reduced(self):
        self.assertEqual(QpClass.REDUCED, classify_qp(*three_cycle()))

    def test_trivial(self):
        quiver = Quiver(['1', '2'], [('a', '1', '2'), ('b', '2', '1')], allow_two_cycles=True)
        self.assertEqual(QpClass.TRIVIAL, classify_qp(quiver, Potential(quiver, {('a', 'b'): 1})))

    def test_mixed(self):
        quiver = Quiver(['1', '2', '3'], [('a', '1', '2'), ('b', '2', '1'), ('c', '2', '3'), ('d', '3', '1')], allow_two_cycles=True)
        potential = Potential(quiver, {('a', 'b'): 1, ('a', 'c', 'd'): 1})
        self.assertEqual(QpClass.MIXED, classify_qp(quiver, potential))


class TestQpIsomorphismU(unittest.TestCase):

    def test_parallel_arrows_are_matched(self):
        quiver, potential = kronecker()
        swapped = Quiver(['1', '2'], [('p', '1', '2'), ('q', '1', '2')])
        mapping = qp_isomorphism(quiver, potential, swapped, Potential.zero(swapped))
        self.assertEqual({'a', 'b'}, set(mapping))
        self.assertEqual({'p', 'q'}, set(mapping.values()))

    def test_potentials_must_agree(self):
        quiver, potential = three_cycle()
        self.assertIsNone(qp_isomorphism(quiver, potential, quiver, Potential.zero(quiver)))

    def test_arrow_counts_must_agree(self):
        quiver, potential = kronecker()
        single = Quiver(['1', '2'], [('p', '1', '2')])
        self.assertIsNone(qp_isomorphism(quiver, potential, single, Potential.zero(single)))


class TestQpDocumentU(unittest.TestCase):

    def test_write_then_read(self):
        quiver, potential = three_cycle()
        with tempfile.TemporaryDirectory() as directory:
            filepath = os.path.join(directory, 'qp.json')
            write_qp(filepath, quiver, potential)
            read_quiver, read_potential = read_qp(filepath)
        self.assertEqual(quiver.vertices, read_quiver.vertices)
        self.assertEqual(potential.cycles, read_potential.cycles)

    def test_missing_file(self):
        with self.assertRaises(FixtureError):
            read_qp(os.path.join(tempfile.gettempdir(), 'qpsurf-no-such-file.json'))

    def test_document_must_be_an_object(self):
        with self.assertRaises(FixtureError):
            qp_from_dict([1, 2])
        with self.assertRaises(FixtureError):
            qp_from_dict({'vertices': ['1', '2'], 'arrows': ['a']})
