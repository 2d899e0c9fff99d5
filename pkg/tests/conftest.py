import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.catalog import COLUMNS, get_entry, load_catalog_file


@pytest.fixture(scope="session")
def catalog():
    return load_catalog_file()


@pytest.fixture
def entry(catalog):
    """Look up a catalog entry by id."""
    return lambda entry_id: get_entry(catalog, entry_id)


CATALOG_HEADER = ",".join(COLUMNS) + "\n"


@pytest.fixture
def catalog_file(tmp_path):
    """Write catalog rows (without header) to a temporary CSV and return its path."""
    def write(*rows):
        path = tmp_path / "catalog.csv"
        path.write_text(CATALOG_HEADER + "".join(row + "\n" for row in rows))
        return path
    return write
