import json
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def golden():
    """Frozen oracle values (dense-diagonalization and full-simulation runs,
    cross-checked at two Fock cutoffs before the protocol build)."""
    path = Path(__file__).parent / "data" / "golden.json"
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)
