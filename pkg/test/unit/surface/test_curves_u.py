import unittest

from qpsurf.support.errors import TriangulationError
from qpsurf.surface.curves import Word, canonical, crossed_arcs, dual_arc, is_clockwise, partial_angle, reduce_word, reverse, walk
from qpsurf.surface.fixtures import pentagon


class TestWordU(unittest.TestCase):

    def setUp(self):
        self.t = pentagon()

    def test_str(self):
        self.assertEqual('1:2:1,-1', str(Word(1, 2, (1, -1))))

    def test_dual_arc_and_reverse(self):
        word = dual_arc(self.t, '0-2')
        self.assertEqual(Word(0, 0, ()), word)
        self.assertEqual(Word(1, 2, ()), reverse(self.t, word))
        self.assertEqual(word, canonical(self.t, reverse(self.t, word)))

    def test_walk_and_crossings(self):
        word = Word(0, 0, (1,))
        self.assertEqual([(1, 2), (2, 2)], walk(self.t, word))
        self.assertEqual(['0-2', '0-3'], crossed_arcs(self.t, word))
        self.assertEqual(Word(2, 2, (-1,)), reverse(self.t, word))

    def test_walk_through_boundary(self):
        with self.assertRaises(TriangulationError):
            walk(self.t, Word(0, 1, ()))

    def test_dual_arc_at_missing_triangle(self):
        with self.assertRaises(TriangulationError):
            dual_arc(self.t, '0-2', start=2)


class TestReduceWordU(unittest.TestCase):

    def test_reduced_word_is_kept(self):
        self.assertEqual(Word(0, 1, (1, -2)), reduce_word(Word(0, 1, (1, -2))))

    def test_inner_zero_merges_turns(self):
        self.assertEqual(Word(0, 1, (3,)), reduce_word(Word(0, 1, (1, 0, 2))))

    def test_leading_zero_moves_start_side(self):
        self.assertEqual(Word(0, 0, ()), reduce_word(Word(0, 1, (0, 2))))

    def test_trailing_zero_drops_crossing(self):
        self.assertEqual(Word(0, 1, ()), reduce_word(Word(0, 1, (2, 0))))

    def test_contracting_word(self):
        self.assertIsNone(reduce_word(Word(0, 1, (0,))))


class TestRaysU(unittest.TestCase):

    def test_partial_angle(self):
        self.assertEqual(2, partial_angle(Word(0, 0, ()), Word(0, 2, ())))
        self.assertEqual(1, partial_angle(Word(0, 2, ()), Word(0, 0, ())))

    def test_partial_angle_needs_common_start(self):
        with self.assertRaises(TriangulationError):
            partial_angle(Word(0, 0, ()), Word(1, 0, ()))

    def test_clockwise_order(self):
        u, v, w = Word(0, 0, ()), Word(0, 1, ()), Word(0, 2, ())
        self.assertTrue(is_clockwise(u, v, w))
        self.assertTrue(is_clockwise(v, w, u))
        self.assertFalse(is_clockwise(u, w, v))
        self.assertFalse(is_clockwise(u, u, w))
