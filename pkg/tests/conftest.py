import numpy as np
import pytest

from nomasec.channel import ScenarioConfig, sample_realizations


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit(rng, K):
    v = random_complex(rng, K)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def reference_cfg():
    return ScenarioConfig()


@pytest.fixture
def realization(reference_cfg):
    return sample_realizations(reference_cfg.replace(seed=11), 1)[0]


@pytest.fixture
def realizations(reference_cfg):
    return sample_realizations(reference_cfg.replace(seed=5), 20)


ACCEPTANCE_LINES = {}


@pytest.fixture
def verdict(request):
    """Record one pass/fail line for an acceptance criterion, printed in the terminal summary."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
