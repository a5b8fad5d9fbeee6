"""
Main entry point for the stress MDS command line

Usage:
    python main.py embed --input delta.csv --output config.csv --dim 2
    python main.py ale-embed --input delta.csv --output config.csv --k 1.2
    python main.py isomap --input points.csv --output delta.csv --knn 8 --embed-dim 2
    python main.py experiment --input grid.cfg --output results.csv
    python main.py validate --input delta.csv
"""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
