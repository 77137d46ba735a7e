import functools
import logging
import types
import unittest
from unittest import TestCase


def verify_log(test_case: TestCase, cm, expected_messages, comparison: callable = lambda x, y: x == y):
    """ Fails `test_case` unless every expected message was captured by the assertLogs context `cm`. """
    messages = [record.msg for record in cm.records]
    missing = [expected for expected in expected_messages if not any(comparison(expected, msg) for msg in messages)]
    if missing:
        test_case.fail('Expected log(s) not found:\n\t{}'.format('\n\t'.join(missing)))


class _RecordingHandler(logging.Handler):
    def __init__(self, level):
        super().__init__(level)
        self.records = []

    def emit(self, record):
        self.records.append(record)


class RaiseLogsContext:
    """
    Turns records logged at `level` or above by `logger_name` and its children into a RuntimeError on exit.

    Records whose message matches one of `expected_errors` are let through.
    """

    def __init__(self, logger_name: str = 'qpsurf', level: str = 'ERROR', expected_errors: list = None, comparison: callable = lambda x, y: x == y):
        self._logger = logging.getLogger(logger_name)
        self._handler = _RecordingHandler(getattr(logging, level))
        self._expected_errors = expected_errors or []
        self._comparison = comparison

    def __enter__(self):
        self._old_level = self._logger.level
        if self._logger.level == logging.NOTSET or self._logger.level > self._handler.level:
            self._logger.setLevel(self._handler.level)
        self._logger.addHandler(self._handler)
        return self._handler

    def __exit__(self, exc_type, exc_val, exc_tb):
        self._logger.removeHandler(self._handler)
        self._logger.setLevel(self._old_level)
        if exc_type is not None:
            return False

        for record in self._handler.records:
            if any(self._comparison(expected, record.getMessage()) for expected in self._expected_errors):
                continue
            raise RuntimeError(f'{record.pathname}:{record.lineno} in {record.funcName} logged {record.levelname}: {record.getMessage()}')
        return False


def raise_logs(level='ERROR', logger_name='qpsurf'):
    def _wrapper(fn):
        @functools.wraps(fn)
        def wrapper(self, *args, **kwargs):
            with RaiseLogsContext(logger_name=logger_name, level=level):
                return fn(self, *args, **kwargs)

        return wrapper

    return _wrapper


class _RaiseLogsMeta(type):
    """ Wraps every `test*` method of the class in `raise_logs`. """

    def __new__(mcs, name, bases, attrs):
        for attr_name, attr_value in list(attrs.items()):
            if attr_name.startswith('test') and isinstance(attr_value, types.FunctionType):
                attrs[attr_name] = raise_logs()(attr_value)
        return super().__new__(mcs, name, bases, attrs)


class TestCaseWithRaiseLogs(unittest.TestCase, metaclass=_RaiseLogsMeta):
    """ Fails every test that logs an error through the qpsurf loggers. """
