import unittest

from qpsurf.algebra.transport import (
    check_cancel_pair, check_commuting_square, check_double_flip, check_transport_homomorphism, compare_transports, flip_transport,
    format_label, parse_flip_path, path_transport,
)
from qpsurf.support.errors import FixtureError, UnsupportedError
from qpsurf.surface.curves import Word
from qpsurf.surface.fixtures import annulus, heptagon, hexagon, pentagon
from qpsurf.surface.triangulation import FlipDirection


class TestPathTransportU(unittest.TestCase):

    def test_identity_transport(self):
        transport = path_transport(pentagon(), [])
        self.assertEqual(('ang', 1, Word(1, 2, ()), Word(1, 0, ()), 1), transport.labels['ang1@1(0-2->0-3)'])
        self.assertEqual(('id', Word(0, 0, ())), transport.labels['id(0-2)'])
        self.assertTrue(check_transport_homomorphism(transport).passed)

    def test_flip_transport_is_a_homomorphism(self):
        transport = flip_transport(pentagon(), '0-2')
        self.assertEqual(('ang', 1, Word(1, 0, ()), Word(1, 2, ()), 1), transport.labels['ang1@1(0-3->0-2)'])
        check = check_transport_homomorphism(transport)
        self.assertTrue(check.passed, check.witness())

    def test_fingerprint(self):
        first, second = path_transport(hexagon(), []), path_transport(hexagon(), [])
        self.assertEqual(first.fingerprint(), second.fingerprint())
        self.assertEqual(10, len(first.fingerprint()))
        self.assertNotEqual(first.fingerprint(), path_transport(pentagon(), []).fingerprint())

    def test_repeated_quadrilateral_side(self):
        t = annulus()
        self.assertEqual([], t.self_glued_triangles())
        self.assertEqual(['a', 'b'], t.flippable_arcs())
        self.assertEqual(t, t.flip('a').flip('a', 'backward'))
        for arc in t.arcs:
            for direction in FlipDirection:
                with self.subTest(arc=arc, direction=direction):
                    with self.assertRaises(UnsupportedError) as cm:
                        flip_transport(t, arc, direction)
                    self.assertEqual('repeated quadrilateral side', cm.exception.reason)

    def test_format_label(self):
        self.assertEqual('id[0:0:]', format_label(('id', Word(0, 0, ()))))
        self.assertEqual('ang1@1[1:2:|1:0:-1]', format_label(('ang', 1, Word(1, 2, ()), Word(1, 0, (-1,)), 1)))


class TestPathChecksU(unittest.TestCase):

    def test_cancel_pairs(self):
        for arc in pentagon().arcs:
            for direction in FlipDirection:
                with self.subTest(arc=arc, direction=direction):
                    self.assertTrue(check_cancel_pair(pentagon(), arc, direction).passed)

    def test_double_flip_moves_labels(self):
        check = check_double_flip(pentagon(), '0-2')
        self.assertTrue(check.passed, check.witness())
        self.assertGreater(check.notes['moved'], 0)
        self.assertEqual({'0-2': 1, '0-3': 0}, check.notes['crossings']['0-2'])
        self.assertEqual({'0-2': 1, '0-3': 1}, check.notes['crossings']['0-3'])

    def test_commuting_square(self):
        check = check_commuting_square(heptagon(), ('0-2', FlipDirection.BACKWARD), ('3-6', FlipDirection.BACKWARD))
        self.assertTrue(check.passed, check.witness())

    def test_different_ends_do_not_compare(self):
        check = compare_transports(flip_transport(pentagon(), '0-2'), path_transport(pentagon(), []))
        self.assertFalse(check.passed)
        self.assertEqual('end', check.failures[0][0])


class TestParseFlipPathU(unittest.TestCase):

    def test_parse(self):
        self.assertEqual([('0-2', FlipDirection.FORWARD), ('3-6', FlipDirection.BACKWARD)], parse_flip_path('0-2+, 3-6-'))
        self.assertEqual([], parse_flip_path(''))

    def test_malformed(self):
        with self.assertRaises(FixtureError):
            parse_flip_path('0-2')
