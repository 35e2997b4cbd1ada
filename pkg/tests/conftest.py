from pathlib import Path

import pytest

from mcpnet.core import TruthTable

DATA = Path(__file__).resolve().parent.parent / "data" / "tables"


@pytest.fixture
def or_table():
    return TruthTable.from_outputs([0, 1, 1, 1])


@pytest.fixture
def xor_table():
    return TruthTable.from_outputs([0, 1, 1, 0])


@pytest.fixture
def delta_table():
    # rows 00, 01, 10, 11
    return TruthTable.from_outputs([1, 1, 0, 0])


@pytest.fixture
def three_input_table():
    return TruthTable.from_outputs([1, 1, 0, 0, 0, 1, 0, 0])


@pytest.fixture
def three_input_nonlinear():
    return TruthTable.from_outputs([1, 0, 0, 0, 0, 0, 1, 0])


@pytest.fixture
def data_dir():
    return DATA
