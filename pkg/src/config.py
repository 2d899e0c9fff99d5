"""Defaults and environment configuration."""

import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)

ROOT_DIR = Path(__file__).parent.parent
DATA_DIR = ROOT_DIR / "data"
CATALOG_PATH = DATA_DIR / "theorems.csv"
REPORTS_PATH = DATA_DIR / "suite_reports.parquet"

DEFAULT_ORDER = 500
LEGACY_ORDER = 1000
DEFAULT_ELL_VALUES = (1, 2)
ORDER_ENV_VAR = "QSERIES_ORDER"


def _read_env_file(key: str) -> str:
    """Look up KEY=value in the repository .env file."""
    env_path = ROOT_DIR / ".env"
    if not env_path.exists():
        return ""
    with open(env_path) as f:
        for line in f:
            line = line.strip()
            if line.startswith(f"{key}="):
                return line.split("=", 1)[1].strip().strip('"').strip("'")
    return ""


def load_default_order() -> int:
    """Truncation order from QSERIES_ORDER (environment, then .env), else DEFAULT_ORDER."""
    raw = os.environ.get(ORDER_ENV_VAR, "") or _read_env_file(ORDER_ENV_VAR)
    if not raw:
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {ORDER_ENV_VAR}={raw!r}: not an integer")
        return DEFAULT_ORDER
    if order < 1:
        logger.warning(f"Ignoring {ORDER_ENV_VAR}={order}: order must be >= 1")
        return DEFAULT_ORDER
    return order
