import json

import pytest
from hypothesis import HealthCheck, settings

from centaut.corpus import DEFAULT_CORPUS, corpus_group

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Latin square with identity 0 that is not associative (a loop, not a group).
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]

ODD_NONABELIAN = ("heisenberg:3", "modular:3", "wreath:3", "product(cyclic:3,heisenberg:3)")


@pytest.fixture(params=DEFAULT_CORPUS)
def corpus_spec(request):
    return request.param


@pytest.fixture
def G(corpus_spec):
    return corpus_group(corpus_spec)


@pytest.fixture
def loop_file(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"order": 5, "identity": 0, "table": LOOP5}))
    return path


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
