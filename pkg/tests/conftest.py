import itertools

import pytest

from qjacobi.core import classify

ALPHAS = (-0.9, -0.5, 0.0, 0.93, 2.35, 8.3)
BETAS = (-1.9, -1.55, -1.5, -1.05)
NS = tuple(range(2, 21))


def degenerate(alpha, beta):
    # alpha + beta = -2 makes P_1 constant and the recurrence 0/0 at n = 2
    return abs(alpha + beta + 2) < 1e-9


PAIRS = tuple((a, b) for a, b in itertools.product(ALPHAS, BETAS) if not degenerate(a, b))
SKIPPED_PAIRS = tuple((a, b) for a, b in itertools.product(ALPHAS, BETAS) if degenerate(a, b))


def grid(n_min=2, n_max=20):
    for a, b in PAIRS:
        for n in range(n_min, n_max + 1):
            yield n, classify(a, b)


# acceptance lines are echoed in the terminal summary so they survive output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def quasi():
    return classify(0.93, -1.9)
