import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from invhol import catalog


@pytest.fixture(scope="session")
def zoo():
    return catalog.standard_examples()
