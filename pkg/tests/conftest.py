"""Shared fixtures for quiver-tilt tests."""

import pytest

from quiver_tilt.algebra import build_r, build_s, path_algebra
from quiver_tilt.quiver import linear_quiver
from quiver_tilt.scalars import ExactField


@pytest.fixture(scope="session")
def qq() -> ExactField:
    return ExactField.rationals()


@pytest.fixture(scope="session")
def f101() -> ExactField:
    return ExactField.prime_field(101)


@pytest.fixture(scope="session")
def r_alg(f101):
    """R = kA10 modulo the path of length 8, over F101."""
    return build_r(f101)


@pytest.fixture(scope="session")
def s_alg(f101):
    """S = kE over F101."""
    return build_s(f101)


@pytest.fixture(scope="session")
def a3(qq):
    """Path algebra of 1 -> 2 -> 3 over Q."""
    return path_algebra(linear_quiver(3), qq, "A3")
