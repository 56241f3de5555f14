import pytest
from fractions import Fraction as F

from src.errors import InstanceError, PreconditionError
from src.mechanisms import (
    Ordering,
    PartialFill,
    URCMechanism,
    equal_division,
    pdc,
    pdc_phase1,
    phase2_fill,
    sdc,
    sdc_phase1,
    urc,
    urc_phase1,
)
from src.model import RandomMatching, distances, is_same_sided, validate_matching


def test_urc_phase1(example1_profile):
    """Test that phase 1 rations the excess-demand columns only"""
    state = urc_phase1(example1_profile)
    assert state.w == (
        (F(2, 5), F(1, 5), F(1, 5)),
        (F(2, 5), F(2, 5), F(1, 10)),
        (F(1, 5), F(0), F(7, 10)),
    )
    assert state.tank_remaining == (F(0), F(2, 5), F(0))
    assert state.bucket_free == (F(1, 5), F(1, 10), F(1, 10))


def test_urc_example1(example1_profile, example1_urc_matching):
    """Test the URC outcome of the three-agent example"""
    matching = urc(example1_profile, alpha=(0, 1, 2), beta=(0, 1, 2))

    # Check the matrix and the distances
    assert matching == example1_urc_matching
    assert distances(example1_profile, matching) == (F(2, 5), F(1, 5), F(1, 5))
    assert is_same_sided(example1_profile, matching)


def test_urc_single_open_tank_ignores_order(example1_profile, example1_urc_matching):
    """Test that only object b is left after phase 1, so sequences do not matter"""
    assert urc(example1_profile, alpha='2,1,0', beta='1,2,0') == example1_urc_matching


def test_urc_identical_agents_split_evenly(identical_profile):
    matching = urc(identical_profile)
    assert matching.rows == ((F(1, 3),) * 3,) * 3


def test_sdc_example(example1_profile):
    """Test SDC with alpha = 123: agent 1 is served its whole peak"""
    assert sdc_phase1(example1_profile, Ordering.identity(3)).w == (
        (F(3, 5), F(1, 5), F(1, 5)),
        (F(2, 5), F(2, 5), F(1, 10)),
        (F(0), F(0), F(7, 10)),
    )
    matching = sdc(example1_profile)
    assert matching.rows == (
        (F(3, 5), F(1, 5), F(1, 5)),
        (F(2, 5), F(1, 2), F(1, 10)),
        (F(0), F(3, 10), F(7, 10)),
    )
    assert distances(example1_profile, matching) == (F(0), F(1, 5), F(3, 5))


def test_sdc_reversed_order(example1_profile):
    matching = sdc(example1_profile, alpha=(2, 1, 0))
    assert matching.rows == (
        (F(3, 10), F(3, 5), F(1, 10)),
        (F(1, 2), F(2, 5), F(1, 10)),
        (F(1, 5), F(0), F(4, 5)),
    )
    assert distances(example1_profile, matching) == (F(4, 5), F(0), F(0))
    assert is_same_sided(example1_profile, matching)


def test_pdc_example(example1_profile):
    """Test proportional division of the excess-demand columns"""
    assert pdc_phase1(example1_profile).w == (
        (F(6, 13), F(1, 5), F(2, 11)),
        (F(5, 13), F(2, 5), F(1, 11)),
        (F(2, 13), F(0), F(8, 11)),
    )
    matching = pdc(example1_profile)
    assert validate_matching(matching)
    assert matching.column(1) == (F(51, 143), F(75, 143), F(17, 143))
    assert is_same_sided(example1_profile, matching)


def test_equal_division(example1_profile):
    matching = equal_division(example1_profile)
    assert matching == RandomMatching.constant(3)
    assert distances(example1_profile, matching) == (F(8, 15), F(7, 15), F(14, 15))


@pytest.mark.parametrize('mechanism', [urc, sdc, pdc])
def test_outcomes_are_bistochastic(mechanism, example1_profile, pure_profile, identical_profile):
    for c in (example1_profile, pure_profile, identical_profile):
        assert validate_matching(mechanism(c))


def test_phase2_rejects_overfull_bucket():
    state = PartialFill.from_rows([(1, 1), (0, 0)])
    with pytest.raises(PreconditionError):
        phase2_fill(state, (0, 1), (0, 1))


def test_phase2_rejects_wrong_sequence_length():
    state = PartialFill.from_rows([(0, 0), (0, 0)])
    with pytest.raises(InstanceError):
        phase2_fill(state, (0, 1, 2), (0, 1))


def test_phase2_fills_in_sequence_order():
    """Test the two-pointer fill on an empty state"""
    state = PartialFill.from_rows([(0, 0), (0, 0)])
    assert phase2_fill(state, (1, 0), (0, 1)).rows == ((0, 1), (1, 0))


def test_ordering_parse():
    assert Ordering.parse('2,0,1').order == (2, 0, 1)
    assert Ordering.parse('0,1,2').reversed().order == (2, 1, 0)
    with pytest.raises(InstanceError):
        Ordering.parse('0,0,1')
    with pytest.raises(InstanceError):
        Ordering.parse('a,b')


def test_sequence_length_must_match_profile(example1_profile):
    with pytest.raises(InstanceError):
        URCMechanism(alpha=(0, 1)).allocate(example1_profile)
