import os

import pytest

# no JSONL log file during tests; must be set before the project loggers are configured
os.environ.setdefault("LOG_FILE", "")

from apps.orientation.families import gen_standard, gen_wheel
from graph_strategies import complete, cycle, path, star


def pytest_collection_modifyitems(config, items):
    if os.getenv("RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="exhaustive sweep; set RUN_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def k13():
    return star(3)


@pytest.fixture
def wheel4():
    return gen_wheel(4)


@pytest.fixture
def wheel5():
    return gen_wheel(5)


@pytest.fixture
def hajos():
    return gen_standard("hajos")


@pytest.fixture
def grotzsch():
    return gen_standard("grotzsch")


@pytest.fixture
def petersen():
    return gen_standard("petersen")
