import unittest

from qpsurf.algebra.mutation import check_flip_mutation, mutate, mutate_without_w2, premutate, reduce
from qpsurf.base.path_algebra import Potential, QpClass, Quiver, classify_qp, qp_isomorphism
from qpsurf.support.errors import QuiverError, UnsupportedError
from qpsurf.surface.fixtures import a2, fan, hexagon, pentagon, three_cycle


class TestPremutateU(unittest.TestCase):

    def test_three_cycle_at_middle_vertex(self):
        result = premutate(*three_cycle(), '2')
        self.assertEqual({'x': "x'", 'y': "y'"}, result.reversed)
        self.assertEqual({('x', 'y'): '[xy]'}, result.composites)
        self.assertEqual(Potential(result.quiver, {('[xy]', 'z'): 1}), result.w1)
        self.assertEqual(Potential(result.quiver, {('[xy]', "y'", "x'"): 1}), result.w2)
        self.assertEqual(QpClass.MIXED, classify_qp(result.quiver, result.potential))

    def test_unknown_vertex(self):
        with self.assertRaises(QuiverError):
            premutate(*a2(), '3')


class TestReduceU(unittest.TestCase):

    def test_substitution_rule(self):
        quiver = Quiver(
            ['1', '2', '3'],
            [('u', '1', '2'), ('v', '2', '1'), ('p', '2', '3'), ('q', '3', '1'), ('r', '1', '3'), ('s', '3', '2')],
            allow_two_cycles=True,
        )
        # W = u.v + u.p.q + v.r.s: v.r.s reads r.s.v, so A = p.q, B = r.s and W becomes -r.s.p.q
        potential = Potential(quiver, {('u', 'v'): 1, ('u', 'p', 'q'): 1, ('v', 'r', 's'): 1})
        reduced_quiver, reduced_potential = reduce(quiver, potential)
        self.assertEqual(('p', 'q', 'r', 's'), tuple(a.id for a in reduced_quiver.arrows))
        self.assertEqual({('p', 'q', 'r', 's'): -1}, reduced_potential.cycles)

    def test_overlapping_two_cycles(self):
        quiver = Quiver(['1', '2'], [('u', '1', '2'), ('v', '2', '1'), ('w', '2', '1')], allow_two_cycles=True)
        potential = Potential(quiver, {('u', 'v'): 1, ('u', 'w'): 1})
        with self.assertRaises(UnsupportedError):
            reduce(quiver, potential)


class TestMutateU(unittest.TestCase):

    def test_three_cycle_becomes_linear(self):
        quiver, potential = mutate(*three_cycle(), '2')
        self.assertEqual(("x'", "y'"), tuple(a.id for a in quiver.arrows))
        self.assertEqual(('2', '1'), (quiver.arrow("x'").source, quiver.arrow("x'").target))
        self.assertTrue(potential.is_zero())

    def test_source_mutation_reverses_arrow(self):
        quiver, potential = mutate(*a2(), '1')
        self.assertEqual(1, quiver.arrow_count('2', '1'))
        self.assertTrue(potential.is_zero())

    def test_mutation_is_an_involution_up_to_isomorphism(self):
        for quiver, potential, k in [(*a2(), '1'), (*three_cycle(), '2')]:
            twice = mutate(*mutate(quiver, potential, k), k)
            self.assertIsNotNone(qp_isomorphism(*twice, quiver, potential))


class TestFlipMutationU(unittest.TestCase):

    def test_flip_matches_mutation(self):
        for t in [pentagon(), hexagon()]:
            for arc in t.flippable_arcs():
                with self.subTest(triangulation=t, arc=arc):
                    check = check_flip_mutation(t, arc)
                    self.assertTrue(check.passed, check.witness())

    def test_mutation_without_added_cycles_disagrees(self):
        check = check_flip_mutation(fan(6), '0-3', mutate_without_w2)
        self.assertFalse(check.passed)
