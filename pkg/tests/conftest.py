import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from staticlab import (
    SdSParams,
    anti_de_sitter,
    de_sitter,
    nariai,
    schwarzschild_de_sitter,
)


@pytest.fixture(scope="session")
def ds3():
    return de_sitter(3)


@pytest.fixture(scope="session")
def ds4():
    return de_sitter(4)


@pytest.fixture(scope="session")
def ads3():
    return anti_de_sitter(3)


@pytest.fixture(scope="session")
def ads4():
    return anti_de_sitter(4)


@pytest.fixture(scope="session")
def sds01():
    return schwarzschild_de_sitter(SdSParams(n=3, m=0.1))


@pytest.fixture(scope="session")
def nariai3():
    return nariai(3)


@pytest.fixture(scope="session")
def all_positive(ds3, sds01, nariai3):
    return [ds3, sds01, nariai3]


@pytest.fixture(scope="session")
def all_models(ds3, ads3, sds01, nariai3):
    return [ds3, ads3, sds01, nariai3]
