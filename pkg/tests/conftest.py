from pathlib import Path

import pytest

from basketmine.ingest import parse_database

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def store9_db():
    """The 9-transaction store dataset used throughout the suite."""
    return parse_database((DATA / "store9.txt").read_text())


@pytest.fixture
def store10_db():
    """store9 plus the extra transaction T910 = {I1, I4}."""
    return parse_database((DATA / "store10.txt").read_text())
