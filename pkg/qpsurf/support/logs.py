import datetime
import logging
import sys
from pathlib import Path

from qpsurf import var

ROOT_LOGGER_NAME = 'qpsurf'
FILE_LOGGER_NAME = 'qpsurf_fh'
FILE_FORMAT = '%(asctime)s|%(levelname)-.1s| %(message)s'

_state = {'initialized': False, 'log_to_file': False}


def project_logger(filepath=None) -> logging.Logger:
    """
    Logger of a qpsurf module, named `qpsurf.<module stem>`, or the `qpsurf` root logger when `filepath` is None.
    """
    if filepath is None:
        return logging.getLogger(ROOT_LOGGER_NAME)
    return logging.getLogger(f'{ROOT_LOGGER_NAME}.{Path(filepath).stem}')


_LOGGER = project_logger()


def _console_handler(stream, level: int, formatter: logging.Formatter, max_level: int = None) -> logging.Handler:
    handler = logging.StreamHandler(stream=stream)
    handler.setLevel(level)
    handler.setFormatter(formatter)
    if max_level is not None:
        handler.addFilter(lambda record: record.levelno <= max_level)
    return handler


def qpsurf_logs_initialize(
        log_to_console: bool = var.LOG_TO_CONSOLE,
        log_to_file: bool = var.LOG_TO_FILE,
        log_level: str = var.LOG_LEVEL,
        log_format: str = var.LOG_FORMAT,
):
    """
    Configures the `qpsurf` loggers.

    Console records up to INFO go to stdout and warnings or worse go to stderr. File loggers created through
    `new_daily_rotating_file_handler` only write when `log_to_file` is set.

    Parameters:
        log_to_console (bool): Attach the stdout/stderr handlers. Reads `QPSURF_LOG_TO_CONSOLE`.
        log_to_file (bool): Let verification runs write daily log files into `QPSURF_LOGS_DIR`. Reads `QPSURF_LOG_TO_FILE`.
        log_level (str): Level name of the stdout handler. Reads `QPSURF_LOG_LEVEL`.
        log_format (str): Console format. Reads `QPSURF_LOG_FORMAT`.

    Note:
        Only the first call has an effect.
    """
    if _state['initialized']:
        return
    _state['initialized'] = True
    _state['log_to_file'] = log_to_file

    root = logging.getLogger(ROOT_LOGGER_NAME)
    root.setLevel(logging.DEBUG)

    if log_to_console:
        formatter = logging.Formatter(log_format)
        root.addHandler(_console_handler(sys.stdout, logging.getLevelName(log_level.upper()), formatter, max_level=logging.INFO))
        root.addHandler(_console_handler(sys.stderr, logging.WARNING, formatter))

    if not log_to_file:
        logging.getLogger(FILE_LOGGER_NAME).addFilter(lambda record: False)


def new_daily_rotating_file_handler(logger_name: str, filepath) -> logging.Logger:
    """
    Logger `qpsurf_fh.<logger_name>` writing to `<filepath>__<date>.txt`, one file per UTC day.

    When file logging is off the logger only carries a NullHandler.
    """
    logger = logging.getLogger(f'{FILE_LOGGER_NAME}.{logger_name}')

    if not _state['log_to_file']:
        logger.addHandler(logging.NullHandler())
        return logger

    _LOGGER.info(f'Verification log "{logger_name}" written to {filepath}')
    if not logger.handlers:
        handler = DailyRotatingFileHandler(filepath, encoding='utf-8')
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
        for log_filter in logging.getLogger(FILE_LOGGER_NAME).filters:
            logger.addFilter(log_filter)
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    return logger


class DailyRotatingFileHandler(logging.FileHandler):
    """ File handler that reopens its file under a new name whenever the UTC date changes. """

    def __init__(self, *args, date_format: str = '%Y-%m-%d', **kwargs):
        self.date_format = date_format
        self.day = None
        super().__init__(*args, delay=True, **kwargs)

    def current_day(self) -> str:
        return datetime.datetime.now(datetime.timezone.utc).strftime(self.date_format)

    def day_filename(self, day: str) -> str:
        return f'{self.baseFilename}__{day}.txt'

    def _open(self):
        self.day = self.current_day()
        path = Path(self.day_filename(self.day))
        path.parent.mkdir(parents=True, exist_ok=True)
        return open(path, self.mode, encoding='utf-8')

    def emit(self, record):
        if self.stream is not None and self.current_day() != self.day:
            self.close()
            self.stream = None
        super().emit(record)
