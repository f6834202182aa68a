#!/usr/bin/env python3
"""
qgase - Run script.

Usage:
    python run.py ase --family line --word a
    python run.py sweep --family line --letter b --n-min 1 --n-max 8
"""

import sys
import os
from multiprocessing import freeze_support

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from cli import main

if __name__ == "__main__":
    freeze_support()  # Required for frozen executables using multiprocessing
    sys.exit(main())
