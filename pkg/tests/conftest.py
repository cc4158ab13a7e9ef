import itertools
import random

import pytest
from hypothesis import settings

settings.register_profile("hwl", max_examples=200, deadline=None)
settings.load_profile("hwl")


def naive_boundary(n, vertices):
    """Edge count by walking every edge of Q_n; shares no code with hwl."""
    s = set(vertices)
    count = 0
    for v in range(1 << n):
        for b in range(n):
            w = v ^ (1 << b)
            if v < w and ((v in s) != (w in s)):
                count += 1
    return count


def naive_type(n, vertices):
    s = set(vertices)
    best = len(s)
    for b in range(n):
        ones = sum(1 for v in s if v >> b & 1)
        best = min(best, ones, len(s) - ones)
    return best


def naive_min_boundary(n, k):
    return min(naive_boundary(n, c) for c in itertools.combinations(range(1 << n), k))


def naive_cycle_wl(n, labels):
    N = 1 << n
    total = 0
    for v in range(N):
        for b in range(n):
            w = v ^ (1 << b)
            if v < w:
                d = abs(labels[v] - labels[w])
                total += min(d, N - d)
    return total


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
