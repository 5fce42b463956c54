import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toricalg.formats import CUT_PRISM, PRISM, builtin, cube, polygon  # noqa: E402

FIXTURE_NAMES = [
    "square",
    "prism",
    "cutprism",
    "cube",
    "simplex:2",
    "simplex:3",
    "polygon:5",
    "polygon:6",
    "cube:4",
    "cyclic:4:6",
    "cyclic:4:7",
]


@pytest.fixture
def square():
    return polygon(4)


@pytest.fixture
def prism():
    return PRISM


@pytest.fixture
def cutprism():
    return CUT_PRISM


@pytest.fixture
def cube3():
    return cube(3)


@pytest.fixture(params=FIXTURE_NAMES)
def any_polytope(request):
    return builtin(request.param)


@pytest.fixture
def rng():
    return random.Random(20261016)

