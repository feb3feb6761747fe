import itertools

import pytest

from qaudio.audio import AudioSignal


def all_signals(q, l):
    lo, hi = -(1 << (q - 1)), (1 << (q - 1)) - 1
    for samples in itertools.product(range(lo, hi + 1), repeat=1 << l):
        yield AudioSignal(samples, q)


def random_signal(rng, q, l):
    lo, hi = -(1 << (q - 1)), (1 << (q - 1)) - 1
    return AudioSignal(tuple(int(v) for v in rng.integers(lo, hi + 1, size=1 << l)), q)


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(20240917)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
