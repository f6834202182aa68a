#!/usr/bin/env python3
"""
qgase - Main entry point.

Computes scattering matrices of open quantum graphs and their
average scattering entropy.
"""

import sys

from cli import main


if __name__ == "__main__":
    sys.exit(main())
