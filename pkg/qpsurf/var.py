import os
import tempfile

# from: https://github.com/drgarcia1986/simple-settings/pull/281/files
_MAP = {
    'y': True,
    'yes': True,
    't': True,
    'true': True,
    'on': True,
    '1': True,
    'n': False,
    'no': False,
    'f': False,
    'false': False,
    'off': False,
    '0': False
}


def strtobool(value):
    try:
        return _MAP[str(value).lower()]
    except KeyError:
        raise ValueError('"{}" is not a valid bool value'.format(value))


def to_bool(value):
    return bool(strtobool(str(value)))


##### LOGS #####

LOG_TO_CONSOLE = to_bool(os.environ.get('QPSURF_LOG_TO_CONSOLE', True))
""" Whether logs should be streamed to the standard output. """

LOG_TO_FILE = to_bool(os.environ.get('QPSURF_LOG_TO_FILE', False))
""" Whether verification logs should be saved to a file. """

LOG_LEVEL = os.getenv('QPSURF_LOG_LEVEL', 'INFO')
""" The global log level for the StreamHandler. """

LOG_FORMAT = os.getenv('QPSURF_LOG_FORMAT', '%(asctime)s|%(levelname)-.1s| %(message)s')
""" Log format used by qpsurf. """

LOGS_DIR = os.getenv('QPSURF_LOGS_DIR', tempfile.gettempdir())
""" Directory of file logs produced. """

##### FIXTURES #####

FIXTURES_DIR = os.getenv('QPSURF_FIXTURES_DIR', None)
""" Directory searched for fixture files before the builtin fixtures. """

SEED = int(os.getenv('QPSURF_SEED', 20240601))
""" Default seed of randomized property checks. """

##### ALGEBRA #####

SIGN_CONVENTION = os.getenv('QPSURF_SIGN_CONVENTION', 'koszul')
""" Sign convention for differentials of matrices between shifted summands. """

MAX_PATH_LENGTH = int(os.getenv('QPSURF_MAX_PATH_LENGTH', 6))
""" Path-length bound used by the null-homotopy solver. """

##### VERIFIER #####

MAX_WORKERS = int(os.getenv('QPSURF_MAX_WORKERS', 4))
""" Thread pool size for batch verification. """
