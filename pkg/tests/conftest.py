import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parents[1] / "src" / "argval" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA
