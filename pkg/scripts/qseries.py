#!/usr/bin/env python3
"""Command-line entry point for the q-series engine.

Usage:
    python scripts/qseries.py expand "(q,q^4;q^5)^2*(q^2,q^13;q^15)" --order 20
    python scripts/qseries.py extract "hirschhorn-a" --k 5 --l 2 --order 100
    python scripts/qseries.py identity all
    python scripts/qseries.py verify --entry vcres1.19 --ell 1 --t 1 --order 800
    python scripts/qseries.py suite --order 500 --workers 4 --out data/suite.jsonl
    python scripts/qseries.py catalog --check

Set QSERIES_ORDER env variable or add it to .env to change the default order.
"""

import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cli import main

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(message)s",
)


if __name__ == "__main__":
    sys.exit(main())
