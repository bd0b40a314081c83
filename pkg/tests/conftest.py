import os

import pytest

from bms2d.bipoly import EvaluationPoint
from bms2d.gf import field_for, root_of_unity

DATA = os.path.join(os.path.dirname(__file__), "data")
EXAMPLE_PATH = os.path.join(DATA, "example_5x5.tbl")


@pytest.fixture(scope="session")
def gf16():
    return field_for(2, 4)


@pytest.fixture(scope="session")
def point5(gf16):
    r = root_of_unity(gf16, 5)
    return EvaluationPoint(r, r, 5, 5)


@pytest.fixture(scope="session")
def gf8():
    return field_for(2, 3)


@pytest.fixture(scope="session")
def point7(gf8):
    r = root_of_unity(gf8, 7)
    return EvaluationPoint(r, r, 7, 7)


@pytest.fixture(scope="session")
def gf64():
    return field_for(2, 6)


@pytest.fixture(scope="session")
def point9(gf64):
    r = root_of_unity(gf64, 9)
    return EvaluationPoint(r, r, 9, 9)


@pytest.fixture(scope="session")
def example_text():
    with open(EXAMPLE_PATH, "r", encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def example_path():
    return EXAMPLE_PATH
