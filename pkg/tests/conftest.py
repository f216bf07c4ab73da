from __future__ import annotations

import random
from fractions import Fraction

import pytest

from garnierx import events
from garnierx.formal.catalog import airy, degenerate_confluent
from garnierx.settings import DEFAULTS

SEED = 20240611


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive searches and full Garnier verifications")


@pytest.fixture(autouse=True)
def _quiet_events():
    events.configure(False)
    yield
    events.configure(False)


@pytest.fixture
def x_symbols() -> tuple[str, ...]:
    return ("x",)


@pytest.fixture
def xy_symbols() -> tuple[str, ...]:
    return ("x", "y")


@pytest.fixture
def kim_base():
    return degenerate_confluent(Fraction(2, 3))


@pytest.fixture
def airy_base():
    return airy()


@pytest.fixture
def settings():
    return DEFAULTS


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)
