import pytest
from fractions import Fraction as F

from src.fuzzing import FuzzConfig
from src.model import Profile, RandomMatching


@pytest.fixture
def example1_profile():
    """Fixture for the three-agent profile with ED = {a, c}"""
    return Profile.from_rows([
        (F(3, 5), F(1, 5), F(1, 5)),
        (F(1, 2), F(2, 5), F(1, 10)),
        (F(1, 5), F(0), F(4, 5)),
    ])


@pytest.fixture
def example1_urc_matching():
    """Fixture for the URC outcome on example1_profile (identity sequences)"""
    return RandomMatching.from_rows([
        (F(2, 5), F(2, 5), F(1, 5)),
        (F(2, 5), F(1, 2), F(1, 10)),
        (F(1, 5), F(1, 10), F(7, 10)),
    ])


@pytest.fixture
def uniform_matching():
    """Fixture for the constant 1/3 matching"""
    return RandomMatching.constant(3)


@pytest.fixture
def identical_profile():
    """Fixture for three agents reporting the same lottery"""
    row = (F(2, 5), F(2, 5), F(1, 5))
    return Profile.from_rows([row, row, row])


@pytest.fixture
def pure_profile():
    """Fixture for three agents each wanting a different object for sure"""
    return Profile.from_rows([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def small_fuzz_config():
    """Fixture for a fuzz budget small enough for unit tests"""
    return FuzzConfig(n=3, denominator=4, samples=6, seed=11, misreport_budget=8, jobs=1)
