"""Shared test fixtures for nilbal.

Provides configuration, small presented groups, towers and finite groups
used across the test modules.
"""

import os
from pathlib import Path

import pytest

from nilbal.classify.catalog import tower_family
from nilbal.config import NilbalConfig
from nilbal.fingroup.group import FiniteGroup, coset_enumerate
from nilbal.presentation.parser import parse
from nilbal.utils.log_context import reset_context

DATA_DIR = Path(__file__).parent.parent / "nilbal" / "data"


# ---------------------------------------------------------------------------
# Environment & Config
# ---------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep NILBAL_* variables from the developer's shell out of the tests."""
    for key in list(os.environ):
        if key.startswith("NILBAL_"):
            monkeypatch.delenv(key)


@pytest.fixture
def config():
    """NilbalConfig with small limits suited to unit tests."""
    return NilbalConfig(
        _env_file=None,
        max_cosets=20000,
        bar_size_limit=32,
        integral_bar_limit=16,
        h1_bound=12,
        cycboth_bound=12,
    )


@pytest.fixture(autouse=True)
def _reset_log_context():
    yield
    reset_context()


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


@pytest.fixture
def q8() -> FiniteGroup:
    return coset_enumerate(parse("group Q8 = < x, y | x^2 = y^2, y*x*y^-1 = x^-1 >"))


@pytest.fixture
def s3() -> FiniteGroup:
    return coset_enumerate(parse("group S3 = < a, b | a^3, b^2, b*a*b^-1 = a^-1 >"))


@pytest.fixture
def c6() -> FiniteGroup:
    return FiniteGroup.cyclic(6)


@pytest.fixture
def heisenberg3() -> FiniteGroup:
    return coset_enumerate(
        parse("group H = < x, y | x^3, y^3, [x, y]^3, [x, [x, y]], [y, [x, y]] >")
    )


@pytest.fixture
def gamma2():
    return tower_family("gamma", {"q": 2})


@pytest.fixture
def omega_tower():
    return tower_family("omega")
