# =====================================================================
# diskernel Pytest Configuration and Fixtures
# =====================================================================
# This file contains shared fixtures and configuration for all tests
# =====================================================================

import os
import random
import sys

import pytest

# Make the repository root importable (diskernel, cli, scripts)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from diskernel import metrics  # noqa: E402
from diskernel.baire_core import ramp_stream, word_stream  # noqa: E402
from diskernel.phi_machine import (  # noqa: E402
    Compose,
    ConstWord,
    DigitMap,
    EvenPart,
    Identity,
    Pairing,
    Prepend,
    Stutter,
    encode_machine,
)
from diskernel.problems import clopen_set, parse_set_expr  # noqa: E402

SEED = 1729


# --- Metrics ---

@pytest.fixture
def metric_delta():
    """
    Read counters relative to the start of the test.

    The diskernel registry is process-wide; counters are never reset, so
    tests compare against the value seen when the fixture was created.
    """
    baseline = {}

    def read(name, labels=None):
        key = (name, tuple(sorted((labels or {}).items())))
        return metrics.sample_value(name, labels) - baseline.get(key, 0.0)

    def snapshot(name, labels=None):
        key = (name, tuple(sorted((labels or {}).items())))
        baseline[key] = metrics.sample_value(name, labels)

    read.snapshot = snapshot
    return read


# --- Randomness ---

@pytest.fixture
def rng():
    """Seeded RNG shared by sampling tests"""
    return random.Random(SEED)


@pytest.fixture
def sample_machines(rng):
    """
    Draw seeded library machines.

    Every machine is trusted and emits at least one digit on each nonempty
    input.
    """
    makers = [
        lambda: Identity(),
        lambda: Prepend((rng.randrange(4),)),
        lambda: ConstWord((rng.randrange(1, 5), rng.randrange(4))),
        lambda: Stutter(2),
        lambda: DigitMap.of({0: rng.randrange(1, 4)}),
        lambda: Compose(Prepend((rng.randrange(4),)), EvenPart()),
        lambda: Pairing(Identity(), ConstWord((rng.randrange(4),))),
    ]

    def draw(count):
        return [rng.choice(makers)() for _ in range(count)]

    return draw


# --- Stock machines and streams ---

@pytest.fixture
def identity_name():
    """Encoded name of the identity machine"""
    return encode_machine(Identity())


@pytest.fixture
def const_name():
    """Encoded name of the machine printing 5,6 on every input"""
    return encode_machine(ConstWord((5, 6)))


@pytest.fixture
def prepend_name():
    """Encoded name of u ↦ 1u"""
    return encode_machine(Prepend((1,)))


@pytest.fixture
def ramp():
    """0, 1, 2, ..."""
    return ramp_stream()


@pytest.fixture
def zeros():
    """0, 0, 0, ..."""
    return word_stream()


# --- Sets ---

@pytest.fixture
def even_set():
    return parse_set_expr("even")


@pytest.fixture
def clopen_pair_set():
    """Points starting with 0,1 or 2,3"""
    return clopen_set(2, [(0, 1), (2, 3)], name="pairs")


# --- Pytest Configuration ---

def pytest_configure(config):
    """Pytest configuration hook"""
    config.addinivalue_line(
        "markers", "unit: Unit tests (pure library code)"
    )
    config.addinivalue_line(
        "markers", "slow: Slow tests (>1 second)"
    )
    config.addinivalue_line(
        "markers", "smoke: Subprocess runs of the command-line entry point"
    )
