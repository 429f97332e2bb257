"""
Workbench wide: Hard-coded constants.
"""

import os

# Define the project root as the parent of the parent directory of this file
path_of_constants_py = os.path.dirname(os.path.abspath(__file__))
PROJECT_ROOT = os.path.abspath(os.path.join(path_of_constants_py, os.pardir))

# Directory paths
CONFIG_DIR = os.path.join(PROJECT_ROOT, "config")
OPTIONS_DIR = os.path.join(CONFIG_DIR, "general_options.json")
DATA_DIR = os.path.join(PROJECT_ROOT, "workbench_data")
LOGS_DIR = os.path.join(DATA_DIR, "logs")

# Built-in limits, overridable under "limits" in the options file.
DEFAULT_SEARCH_BUDGET = 2 ** 24
DEFAULT_BRUTE_FORCE_LIMIT = 7
DEFAULT_ULF_ENUMERATION_LIMIT = 5
DEFAULT_BLF_ENUMERATION_LIMIT = 6
DEFAULT_MAX_ROUNDS = 100
DEFAULT_CONVEXITY_MAX_K = 4
DEFAULT_GADGET_CYCLE = 12
DEFAULT_JOBS = 1

DEFAULT_LIMITS = {
    "search_budget": DEFAULT_SEARCH_BUDGET,
    "brute_force_limit": DEFAULT_BRUTE_FORCE_LIMIT,
    "ulf_enumeration_limit": DEFAULT_ULF_ENUMERATION_LIMIT,
    "blf_enumeration_limit": DEFAULT_BLF_ENUMERATION_LIMIT,
    "max_rounds": DEFAULT_MAX_ROUNDS,
    "convexity_max_k": DEFAULT_CONVEXITY_MAX_K,
    "gadget_cycle": DEFAULT_GADGET_CYCLE,
    "jobs": DEFAULT_JOBS,
}

# Serialized form of an infinite cost.
INFINITY_TOKEN = "inf"
