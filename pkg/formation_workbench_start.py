#!/usr/bin/env python3
"""\
This is the entry point for the
formation workbench. Use the help flag
for more information.

Usage: formation_workbench_start.py [-h | --help]
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "src"))

from cli import main

sys.exit(main())
