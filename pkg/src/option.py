"""
Workbench wide: Reading
out options from the options file.
"""

import json

from constants import OPTIONS_DIR, DEFAULT_LIMITS
from error import get_logger, fatal_error
log = get_logger()


def load_options_json(file_path: str) -> dict:
    """
    Loads the options file.
    """
    try:
        with open(file_path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError:
        log.warning(f"Invalid JSON in \n{file_path}\nPlease fix this file.")
        return {}
    except FileNotFoundError:
        log.warning(f"File not found here\n{file_path}\nMake sure it exists.")
        return {}
    except Exception as e:
        raise fatal_error(f"Error while decoding {file_path}", e, 1)


def get_option_from_json(file_path: str, key: str) -> bool | str | int | None:
    """
    Reads out an option value from the options file.
    Nested keys are separated by dots, e.g. "limits.search_budget".
    """
    options = load_options_json(file_path)

    if not options:
        log.warning(f"Continuing with default options, {key} = None.")
        return None

    try:
        value = options
        for k in key.split('.'):
            value = value[k]
        if isinstance(value, (bool, str, int)):
            return value
        log.warning(
            f"Value for {key} is not a boolean, integer or string. "
            f"Use true|false without double quotes, a number, or a string."
        )
        return None
    except (KeyError, TypeError):
        log.debug(f"Option {key} not found or incorrect type.")
        return None


def get_limit(name: str, file_path: str = OPTIONS_DIR) -> int:
    """
    Returns the configured limit `limits.<name>`, or the built-in
    default when it is absent or not a non-negative integer.
    """
    default = DEFAULT_LIMITS[name]
    value = get_option_from_json(file_path, f"limits.{name}")
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        return default
    return value


__all__ = ["get_option_from_json", "get_limit"]
