import logging
import os
import sys

from dotenv import load_dotenv

load_dotenv()


def addLoggingLevel(levelName, levelNum, methodName=None):
    """
    Adds a new logging level to the `logging` module and the currently
    configured logging class.

    `levelName` becomes an attribute of the `logging` module with the value
    `levelNum`. `methodName` becomes a convenience method for both `logging`
    itself and the class returned by `logging.getLoggerClass()`. If
    `methodName` is not specified, `levelName.lower()` is used.

    Raises `AttributeError` if the level name or the method name is already
    taken.

    Example
    -------
    >>> addLoggingLevel('RESULT', 35)
    >>> logging.getLogger('lexcut').result('3 cuts')
    >>> logging.RESULT
    35

    """
    if not methodName:
        methodName = levelName.lower()

    if hasattr(logging, levelName):
        raise AttributeError('{} already defined in logging module'.format(levelName))
    if hasattr(logging, methodName):
        raise AttributeError('{} already defined in logging module'.format(methodName))
    if hasattr(logging.getLoggerClass(), methodName):
        raise AttributeError('{} already defined in logger class'.format(methodName))

    def logForLevel(self, message, *args, **kwargs):
        if self.isEnabledFor(levelNum):
            self._log(levelNum, message, args, **kwargs)

    def logToRoot(message, *args, **kwargs):
        logging.log(levelNum, message, *args, **kwargs)

    logging.addLevelName(levelNum, levelName)
    setattr(logging, levelName, levelNum)
    setattr(logging.getLoggerClass(), methodName, logForLevel)
    setattr(logging, methodName, logToRoot)


def setup_logging():
    try:
        addLoggingLevel('RESULT', 35)
    except AttributeError:
        pass  # Level already exists

    log_type = os.getenv('LEXCUT_LOGGING_LEVEL', 'info').lower()

    lexcut_logger = logging.getLogger('lexcut')
    if lexcut_logger.handlers:
        return

    class LexcutFormatter(logging.Formatter):
        def format(self, record):
            # lexcut.solver.service -> solver
            if isinstance(record.name, str) and record.name.startswith('lexcut.'):
                parts = record.name.split('.')
                record.name = parts[-2] if len(parts) > 2 else parts[-1]
            return super().format(record)

    console = logging.StreamHandler(sys.stderr)
    if log_type == 'result':
        console.setLevel('RESULT')
        console.setFormatter(LexcutFormatter('%(message)s'))
    else:
        console.setFormatter(LexcutFormatter('%(levelname)-8s [%(name)s] %(message)s'))

    if log_type == 'result':
        level = logging.getLevelName('RESULT')
    elif log_type == 'debug':
        level = logging.DEBUG
    elif log_type == 'warning':
        level = logging.WARNING
    else:
        level = logging.INFO

    lexcut_logger.propagate = False
    lexcut_logger.addHandler(console)
    lexcut_logger.setLevel(level)

    lexcut_logger.debug('lexcut logging setup complete with level %s', log_type)

    # Silence third-party loggers
    for name in ['numpy', 'dotenv']:
        third_party = logging.getLogger(name)
        third_party.setLevel(logging.ERROR)
        third_party.propagate = False
