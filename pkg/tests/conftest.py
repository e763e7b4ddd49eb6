import json
from pathlib import Path

import pytest

_GOLDENS = Path(__file__).with_name("_goldens.json")


@pytest.fixture(scope="session")
def goldens():
    """Frozen reference values produced by tools/compute_goldens.py."""
    with open(_GOLDENS, encoding="utf-8") as fh:
        return json.load(fh)
