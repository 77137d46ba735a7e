from test_utils import TestCaseWithRaiseLogs

from qpsurf.algebra.ginzburg import check_d_squared, ginzburg, star, vertex_star
from qpsurf.base.path_algebra import PathExpr
from qpsurf.support.errors import QuiverError
from qpsurf.surface.fixtures import QPS, kronecker, three_cycle


class TestGinzburgU(TestCaseWithRaiseLogs):

    def setUp(self):
        self.algebra = ginzburg(*three_cycle())

    def test_doubled_quiver(self):
        quiver = self.algebra.quiver
        self.assertEqual(3 + 3 + 3, len(quiver.arrows))
        self.assertEqual(('2', '1', -1), (quiver.arrow('x*').source, quiver.arrow('x*').target, quiver.arrow('x*').degree))
        self.assertEqual(('1', '1', -2), (quiver.arrow('e_1*').source, quiver.arrow('e_1*').target, quiver.arrow('e_1*').degree))

    def test_differential_on_generators(self):
        quiver = self.algebra.quiver
        self.assertTrue(self.algebra.rules['x'].is_zero())
        self.assertEqual(PathExpr.word(quiver, ('y', 'z')), self.algebra.rules[star('x')])
        expected = PathExpr.word(quiver, ('x', 'x*')) - PathExpr.word(quiver, ('z*', 'z'))
        self.assertEqual(expected, self.algebra.rules[vertex_star('1')])

    def test_leibniz_rule_sign(self):
        quiver = self.algebra.quiver
        # d(x*.x) = d(x*).x - x*.d(x) = y.z.x
        self.assertEqual(PathExpr.word(quiver, ('y', 'z', 'x')), self.algebra.d(PathExpr.word(quiver, ('x*', 'x'))))
        # d(x.x*) = x.d(x*) = x.y.z
        self.assertEqual(PathExpr.word(quiver, ('x', 'y', 'z')), self.algebra.d(PathExpr.word(quiver, ('x', 'x*'))))

    def test_d_squared_vanishes_on_fixtures(self):
        for name, fixture in QPS.items():
            with self.subTest(name):
                check = check_d_squared(ginzburg(*fixture()))
                self.assertTrue(check.passed, check.witness())

    def test_broken_differential_is_detected(self):
        quiver = self.algebra.quiver
        broken = self.algebra.with_rule('x*', PathExpr.word(quiver, ('y', 'z')).scale(-1))
        check = check_d_squared(broken)
        self.assertFalse(check.passed)
        self.assertTrue(check.witness().startswith('d2(e_'))

    def test_rule_for_unknown_arrow(self):
        with self.assertRaises(QuiverError):
            self.algebra.with_rule('w*', PathExpr.zero(self.algebra.quiver))

    def test_kronecker_has_no_potential_terms(self):
        algebra = ginzburg(*kronecker())
        self.assertTrue(algebra.rules['a*'].is_zero())
        self.assertTrue(check_d_squared(algebra).passed)
