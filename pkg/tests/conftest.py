from contextlib import contextmanager

import numpy as np
import pytest

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager that logs one PASS/FAIL line per acceptance criterion."""
    log = request.config.stash[ACCEPTANCE]

    @contextmanager
    def record(label):
        info = {"detail": ""}
        try:
            yield info
        except BaseException as exc:
            log.append(f"FAIL  {label}  {info['detail']}  [{type(exc).__name__}]")
            raise
        log.append(f"PASS  {label}  {info['detail']}")

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
