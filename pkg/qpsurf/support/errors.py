class QpsurfError(Exception):
    """ Base class of all errors raised by qpsurf """


class QuiverError(QpsurfError):
    """ Malformed quiver, path or composability violation """


class PotentialError(QpsurfError):
    """ Malformed potential """


class TriangulationError(QpsurfError):
    """ Malformed triangulation data """


class FixtureError(QpsurfError):
    """ Unknown or malformed fixture """


class SuiteError(QpsurfError):
    """ Unknown verification suite """


class UnsupportedError(QpsurfError):
    """ Input lies outside the class handled by this package """

    def __init__(self, *args, reason: str = None, **kwargs):
        self.reason = reason
        super().__init__(*args)


class TwistError(QpsurfError):
    """ Malformed twist word or twist argument """
