import time
import unittest
from unittest.mock import MagicMock

from qpsurf.support.py_utils import VerboseEnum, execute_in_parallel, execute_with_key, first_error, group_by


def _square_vertex(vertex, delay=0):
    if vertex < 0:
        raise ValueError(f'negative vertex {vertex}')
    time.sleep(delay)
    return vertex * vertex


class TestExecuteInParallelU(unittest.TestCase):

    def setUp(self):
        self.func = MagicMock(side_effect=_square_vertex)
        self.func.__name__ = 'square_vertex'

    def test_keyed_requests(self):
        results = execute_in_parallel(self.func, {'a': {'args': [2]}, 'b': {'kwargs': {'vertex': 3}}})
        self.assertEqual({'a': 4, 'b': 9}, results)
        self.assertEqual(2, self.func.call_count)

    def test_list_results_follow_request_order(self):
        requests = [{'args': [1], 'kwargs': {'delay': 0.1}}, {'args': [5]}]
        self.assertEqual([1, 25], execute_in_parallel(self.func, requests, max_workers=2))

    def test_exceptions_are_results(self):
        results = execute_in_parallel(self.func, [{'args': [-1]}, {'args': [2]}])
        self.assertIsInstance(results[0], ValueError)
        self.assertEqual(4, results[1])
        self.assertIs(results[0], first_error(results))

    def test_execute_with_key(self):
        self.assertEqual(('v', 9), execute_with_key('v', self.func, 3))
        self.func.assert_called_with(3)
        key, error = execute_with_key('w', self.func, -2)
        self.assertEqual('w', key)
        self.assertIsInstance(error, ValueError)


class _Colour(VerboseEnum):
    RED = 'red'
    BLUE = 'blue'


class TestVerboseEnumU(unittest.TestCase):

    def test_lookup_by_value_case_insensitive(self):
        self.assertIs(_Colour['RED'], _Colour.RED)
        self.assertIs(_Colour[' blue '], _Colour.BLUE)
        self.assertIs(_Colour[_Colour.BLUE], _Colour.BLUE)

    def test_unknown_value(self):
        with self.assertRaises(AttributeError):
            _Colour['green']

    def test_str_and_values(self):
        self.assertEqual('red', str(_Colour.RED))
        self.assertEqual(['red', 'blue'], _Colour.values())


class TestCollectionsU(unittest.TestCase):

    def test_first_error_none(self):
        self.assertIsNone(first_error([1, 'a', None]))

    def test_group_by(self):
        self.assertEqual({0: [2, 4], 1: [1, 3]}, group_by([1, 2, 3, 4], lambda x: x % 2))
