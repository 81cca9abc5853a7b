from functools import lru_cache

import pytest

from gup_entropy.entropy import bbm_report
from gup_entropy.oscillator import GupParams

# reference (S_x, S_p) at m = hbar = omega = 1, keyed by (n, beta)
TABLE1 = {
    (0, 0.1): (1.12153, 1.02361),
    (0, 0.5): (1.30251, 0.85220),
    (0, 1.0): (1.49095, 0.68153),
    (1, 0.1): (1.40656, 1.24992),
    (1, 0.5): (1.62672, 0.97566),
    (1, 1.0): (1.84423, 0.74892),
}


@lru_cache(maxsize=None)
def cached_report(beta: float, n: int):
    """Reports are expensive; several test modules look at the same ones."""
    return bbm_report(GupParams(beta), n)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
