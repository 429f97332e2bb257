"""
Startup check: all configuration files
are of a valid JSON format.
"""

import os
import json

from error import fatal_error, get_logger
log = get_logger()


def check_json_configs(config_dir, given_json_file=None):
    """
    Validates every JSON file in the configuration directory,
    or only `given_json_file` when one is passed.
    """
    if not os.path.exists(config_dir) or not os.path.isdir(config_dir):
        log.warning(f"Unable to find configuration directory in {config_dir}")
        return

    if given_json_file is not None:
        json_files = [given_json_file]
    else:
        json_files = sorted(
            f for f in os.listdir(config_dir) if f.endswith('.json'))

    for json_file in json_files:
        file_path = os.path.join(config_dir, json_file)

        try:
            with open(file_path, 'r') as f:
                options = json.load(f)
        except json.JSONDecodeError as e:
            raise fatal_error(f"Invalid JSON format in {json_file}", e, 1)
        except FileNotFoundError as e:
            raise fatal_error(
                f"There exists no JSON file at {file_path}", e, 1)
        except Exception as e:
            raise fatal_error("Failed to read JSON file", e, 1)

        limits = options.get("limits", {}) if isinstance(options, dict) else {}
        for name, value in limits.items():
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                log.warning(
                    f"Limit {name} in {json_file} is not a non-negative "
                    f"integer, the built-in default is used instead.")

    log.debug("Configuration correctly initialised.")


__all__ = ["check_json_configs"]
