import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20240611)


def tuples_with_sum(total):
    """All (j, p, q, k) of non-negative integers summing to ``total``."""
    for j in range(total + 1):
        for p in range(total - j + 1):
            for q in range(total - j - p + 1):
                yield (j, p, q, total - j - p - q)


def tuples_upto(max_sum):
    for total in range(max_sum + 1):
        yield from tuples_with_sum(total)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
