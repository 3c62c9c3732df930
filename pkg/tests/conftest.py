import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def read_data():
    def _read(name):
        return (DATA / name).read_text(encoding="utf-8")

    return _read
