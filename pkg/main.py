#!/usr/bin/env python3
"""
Main entry point for the deformed combinatorics toolkit.

Examples:
    python main.py number --deformation q --q 1/2 --n 3
    python main.py triangle --kind stirling2 --n 6 --format csv
    python main.py audit --deformation pq --p 3/4 --q 1/2 --no-timestamp
"""

import sys
import os

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

from cli import main


if __name__ == "__main__":
    sys.exit(main())
