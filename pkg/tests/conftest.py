"""Shared fixtures: canonical example specs and the small value grids."""

from fractions import Fraction

import pytest

from toepnorm import GaussianRational, from_diagonals

# Gaussian-integer grid with components in {-1, 0, 1}, and the small real grid.
GAUSS1 = tuple(GaussianRational(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1))
INT2 = tuple(Fraction(v) for v in range(-2, 3))


@pytest.fixture
def fraction_spec():
    """a_1 = 1, a_-1 = 2: the standard 2x2 example that is not normal."""
    return from_diagonals([2, 0, 1])


@pytest.fixture
def fraction_spec_approx():
    return from_diagonals([2.0, 0.0, 1.0])


@pytest.fixture
def type1_spec():
    """a_-k = i * conj(a_k) with a_1 = 1, a_2 = 2: normal, type I only."""
    return from_diagonals(
        [GaussianRational(0, 2), GaussianRational(0, 1), 0, 1, 2]
    )


@pytest.fixture
def type1_spec_approx(type1_spec):
    return type1_spec.as_approx()


@pytest.fixture
def circulant_spec():
    """Real circulant that is not symmetric: a_-1 = a_2, a_-2 = a_1."""
    return from_diagonals([1, 2, 0, 1, 2])


@pytest.fixture
def symmetric_spec():
    """Real symmetric that is not circulant."""
    return from_diagonals([2, 1, 0, 1, 2])


@pytest.fixture
def palindromic_spec():
    """Symmetric and circulant at once: a_1 = a_2 = a_-1 = a_-2."""
    return from_diagonals([1, 1, 0, 1, 1])


@pytest.fixture(scope="session")
def shared_cache():
    """Session-wide scratch used to pass enumeration results between tests."""
    return {}
