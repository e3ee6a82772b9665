from pathlib import Path

import pytest

from znfree.tower import parse_tower

FIXTURES = Path(__file__).parent / "fixtures"


def load(name):
    return parse_tower((FIXTURES / name).read_bytes())


@pytest.fixture(scope="session")
def f2():
    return load("f2.json")


@pytest.fixture(scope="session")
def t1():
    return load("t1.json")


@pytest.fixture(scope="session")
def t2():
    return load("t2.json")


@pytest.fixture(scope="session")
def t3():
    return load("t3.json")


@pytest.fixture(scope="session")
def t2_corrupt():
    return load("t2_corrupt_image.json")
