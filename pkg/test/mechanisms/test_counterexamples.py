import pytest
from fractions import Fraction as F

from src.errors import UnsupportedInstanceError
from src.mechanisms import ExceptMechanism, except_mech, me_mech, meu_mech, urc
from src.mechanisms.counterexamples import MEU_AT_E, PROFILE_E
from src.model import IdealLottery, Profile, RandomMatching, distances, validate_matching


@pytest.fixture
def profile_e():
    """Fixture for the profile on which MEU departs from URC"""
    return Profile.from_rows(PROFILE_E)


@pytest.fixture
def bossy_profile():
    """Fixture for ED = {a}, ES = {b}, UN = {c}"""
    return Profile.from_rows([
        (F(1, 2), F(1, 2), F(0)),
        (F(1, 2), F(0), F(1, 2)),
        (F(1, 2), F(0), F(1, 2)),
    ])


def test_except_service_order(identical_profile):
    """Test that agent 1's report decides who of agents 2 and 3 goes first"""
    assert ExceptMechanism.service_order(identical_profile) == (2, 1)
    uniform_first = identical_profile.replace(0, IdealLottery.uniform(3))
    assert ExceptMechanism.service_order(uniform_first) == (1, 2)


def test_except_outcomes(identical_profile):
    """Test Except before and after agent 1 releases excess demand"""
    matching = except_mech(identical_profile)
    assert matching.rows == (
        (F(2, 5), F(2, 5), F(1, 5)),
        (F(1, 5), F(1, 5), F(3, 5)),
        (F(2, 5), F(2, 5), F(1, 5)),
    )

    deviated = identical_profile.replace(0, IdealLottery.uniform(3))
    after = except_mech(deviated)
    assert after.rows == (
        (F(1, 3), F(1, 3), F(1, 3)),
        (F(2, 5), F(2, 5), F(1, 5)),
        (F(4, 15), F(4, 15), F(7, 15)),
    )
    # agent 3 is worse off under the original peaks
    assert distances(identical_profile, after)[2] == F(8, 15)
    assert distances(identical_profile, matching)[2] == F(0)


def test_me_branches(bossy_profile):
    """Test the two fixed permutation matrices"""
    assert me_mech(bossy_profile) == RandomMatching.identity(3)

    dissolved = bossy_profile.replace(2, IdealLottery.of(F(0), F(1, 2), F(1, 2)))
    assert me_mech(dissolved).rows == ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def test_meu_special_profile(profile_e):
    """Test that MEU differs from URC only at e, with equal welfare"""
    matching = meu_mech(profile_e)
    assert matching.rows == MEU_AT_E
    assert validate_matching(matching)
    assert distances(profile_e, matching) == distances(profile_e, urc(profile_e)) == (F(2, 3), F(2, 3), F(0))


def test_meu_elsewhere_is_urc(example1_profile, identical_profile):
    for c in (example1_profile, identical_profile):
        assert meu_mech(c) == urc(c)


@pytest.mark.parametrize('mechanism', [except_mech, me_mech, meu_mech])
def test_three_agent_mechanisms_reject_other_sizes(mechanism):
    c = Profile.from_rows([(1, 0), (0, 1)])
    with pytest.raises(UnsupportedInstanceError):
        mechanism(c)
