import os

import pytest

from equicheck.parser import parse

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name + ".peq")


def load_fixture(name):
    with open(fixture_path(name), encoding="utf-8") as handle:
        return parse(handle.read())


@pytest.fixture
def fixtures():
    return load_fixture
