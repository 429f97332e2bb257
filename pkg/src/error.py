"""
Workbench wide: Logging, the domain error
hierarchy and fatal error handling.
"""
import sys
import logging
import os
import json
from datetime import datetime
import zoneinfo

from constants import LOGS_DIR, OPTIONS_DIR, PROJECT_ROOT
rootLogger = None


class WorkbenchError(Exception):
    """
    Base class of every error raised by the workbench modules.
    The CLI reports these by class name.
    """


class DisconnectedInput(WorkbenchError):
    pass


class UnknownEdge(WorkbenchError):
    pass


class UnknownVertex(WorkbenchError):
    pass


class InvalidGraph(WorkbenchError):
    pass


class SelfRequest(WorkbenchError):
    pass


class NotEssential(WorkbenchError):
    pass


class NonPositiveAlpha(WorkbenchError):
    pass


class EmptyGraph(WorkbenchError):
    pass


class InvalidTable(WorkbenchError):
    pass


class DistributionMismatch(WorkbenchError):
    pass


class InconsistentCost(WorkbenchError):
    """The per-player and the edge form of the social cost disagree."""


class SearchTooLarge(WorkbenchError):
    pass


class TooSmall(WorkbenchError):
    pass


class BadShape(WorkbenchError):
    pass


class ConceptMismatch(WorkbenchError):
    """A profile handed to the audit does not pass its concept verifier."""


class IncompatibleConcept(WorkbenchError):
    """NE/MaxNE need the unilateral rule, PNE/PS the bilateral one."""


class UsageError(WorkbenchError):
    pass


class InfoWarningFilter(logging.Filter):
    """
    Defines a custom filter to log events
    with level below ERROR.
    """
    def filter(self, record):
        return record.levelno < logging.ERROR


def read_logging_options() -> tuple[str, bool]:
    """
    Reads the log directory and the file logging switch from the
    options file. This does not use the logging framework, since it
    runs before the logger has been initialised.
    """
    logs_dir = LOGS_DIR
    log_to_file = True

    if not os.path.exists(OPTIONS_DIR):
        return logs_dir, log_to_file

    try:
        with open(OPTIONS_DIR, 'r') as config_file:
            config_data = json.load(config_file)
    except (json.JSONDecodeError, OSError):
        print(f"Failed to read {OPTIONS_DIR}, using default logging.")
        return logs_dir, log_to_file

    root_data_dir = config_data.get('root_data_dir')
    if isinstance(root_data_dir, str):
        if not os.path.isabs(root_data_dir):
            root_data_dir = os.path.join(PROJECT_ROOT, root_data_dir)
        logs_dir = os.path.join(root_data_dir, 'logs')
    if isinstance(config_data.get('log_to_file'), bool):
        log_to_file = config_data['log_to_file']
    return logs_dir, log_to_file


def make_logs_folder_on_our_own(logs_dir: str) -> bool:
    """
    Creates the logs directory if it is missing.
    Returns False when it cannot be created.
    """
    try:
        os.makedirs(logs_dir, exist_ok=True)
        return True
    except OSError as e:
        print(f"Unable to create the logs directory {logs_dir}: {e}")
        return False


def format_log_filename() -> str:
    """
    Formats the filename of the log file.
    """
    amsterdam_tz = zoneinfo.ZoneInfo('Europe/Amsterdam')
    time_with_timezone = datetime.now(amsterdam_tz)
    return time_with_timezone.strftime('%Y-%m-%d_%H-%M-%S')


def setup_logger():
    """
    Setup of the root logger with handlers:
        - write >= DEBUG to a log file (unless disabled in the options)
        - print INFO and WARNING to stderr
    """
    global rootLogger

    if rootLogger is None:
        rootLogger = logging.getLogger()
        rootLogger.setLevel(logging.DEBUG)

    if not rootLogger.hasHandlers():
        consoleHandler = logging.StreamHandler(sys.stderr)
        consoleHandler.setFormatter(logging.Formatter("%(message)s"))
        consoleHandler.setLevel(logging.INFO)
        consoleHandler.addFilter(InfoWarningFilter())
        rootLogger.addHandler(consoleHandler)

        logs_dir, log_to_file = read_logging_options()
        if log_to_file and make_logs_folder_on_our_own(logs_dir):
            log_file_path = os.path.join(
                logs_dir, f"{format_log_filename()}.log")
            fileHandler = logging.FileHandler(log_file_path, delay=True)
            fileHandler.setFormatter(
                logging.Formatter(
                    "%(asctime)s [%(levelname)-8.8s] %(message)s")
            )
            fileHandler.setLevel(logging.DEBUG)
            rootLogger.addHandler(fileHandler)

    return rootLogger


def get_logger():
    """
    Returns the logger object which you can use for logging.
    Initialises the logger if it does not already exist.
    Example usage:
    | from error import get_logger
    | log = get_logger()
    | log.info("This is a message at the info level.")
    """
    if rootLogger is None:
        setup_logger()
    return rootLogger


def log_file_hint() -> str:
    for handler in get_logger().handlers:
        if isinstance(handler, logging.FileHandler):
            return handler.baseFilename
    return "(file logging disabled)"


def fatal_error(msg: str, err: Exception, exit_code: int = 1):
    """
    Handle fatal errors. This function should be raised, i.e.
    | except WorkbenchError as e:
    |     raise fatal_error("error", e, exit_code = 1)
    """
    log = get_logger()

    log.error(msg)
    log.debug("Traceback of the fatal error:", exc_info=err)

    red = "\33[31m"
    esc = "\33[0m"
    print(
        f"{red}Fatal error occurred{esc}:\n"
        f"{msg}\n"
        f"For more information, see the log file here:\n"
        f"{log_file_hint()}",
        file=sys.stderr,
    )
    sys.exit(exit_code)


__all__ = [
    "get_logger", "fatal_error", "WorkbenchError",
    "DisconnectedInput", "UnknownEdge", "UnknownVertex", "InvalidGraph",
    "SelfRequest", "NotEssential", "NonPositiveAlpha", "EmptyGraph",
    "InvalidTable", "DistributionMismatch", "InconsistentCost",
    "SearchTooLarge", "TooSmall", "BadShape", "ConceptMismatch",
    "IncompatibleConcept", "UsageError",
]
