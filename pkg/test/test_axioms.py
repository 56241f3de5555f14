import pytest
from fractions import Fraction as F

from src.axioms import (
    Property,
    check_anonymity,
    check_efficiency,
    check_envy_freeness,
    check_in_betweenness,
    check_non_bossiness,
    check_replacement_monotonicity,
    check_strategy_proofness,
    check_welfare_equivalence,
    check_welfare_non_bossiness,
    satisfies_rm_preconditions,
)
from src.errors import InstanceError
from src.mechanisms import create_mechanism
from src.model import IdealLottery, Permutation, Profile, RandomMatching, is_same_sided
from test.mechanisms.stub_mechanism import StubMechanism


def test_property_parse():
    assert Property.parse('SP') is Property.STRATEGY_PROOF
    assert Property.parse('eff') is Property.EFFICIENT
    assert Property.parse('anonymity') is Property.ANONYMOUS
    assert Property.ENVY_FREE.label == 'EF'
    with pytest.raises(InstanceError):
        Property.parse('fairness')


def test_pdc_manipulation():
    """Test that exaggerating demand pays off under PDC but not URC"""
    c = Profile.from_rows([(F(9, 10), F(1, 10)), (F(9, 10), F(1, 10))])
    misreport = IdealLottery.of(1, 0)

    verdict = check_strategy_proofness(create_mechanism('pdc'), c, 0, misreport)

    # Check the witness
    assert verdict.failed
    assert verdict.witness.deviator == 0
    assert verdict.witness.distances_before[0] == F(4, 5)
    assert verdict.witness.distances_after[0] == F(71, 95)
    assert check_strategy_proofness(create_mechanism('urc'), c, 0, misreport).passed


def test_efficiency_check(example1_profile, example1_urc_matching, uniform_matching):
    assert check_efficiency(example1_profile, example1_urc_matching).passed

    verdict = check_efficiency(example1_profile, uniform_matching)
    assert verdict.failed
    # the witness carries a same-sided matching that dominates
    assert is_same_sided(example1_profile, verdict.witness.after)


def test_rm_preconditions(identical_profile):
    assert satisfies_rm_preconditions(identical_profile, 0, IdealLottery.uniform(3))
    # raising an excess-demand share is not a replacement
    assert not satisfies_rm_preconditions(
        identical_profile, 0, IdealLottery.of(F(1, 2), F(2, 5), F(1, 10))
    )


def test_except_replacement_monotonicity(identical_profile):
    """Test that agent 3 is harmed when agent 1 releases excess demand"""
    verdict = check_replacement_monotonicity(
        create_mechanism('except'), identical_profile, 0, IdealLottery.uniform(3)
    )
    assert verdict.failed
    assert verdict.witness.agents == (0, 2)
    assert check_replacement_monotonicity(
        create_mechanism('urc'), identical_profile, 0, IdealLottery.uniform(3)
    ).passed


def test_replacement_changing_ed_set_is_inconclusive(identical_profile):
    verdict = check_replacement_monotonicity(
        create_mechanism('urc'), identical_profile, 0, IdealLottery.of(0, 0, 1)
    )
    assert verdict.inconclusive


def test_me_bossiness():
    c = Profile.from_rows([
        (F(1, 2), F(1, 2), F(0)),
        (F(1, 2), F(0), F(1, 2)),
        (F(1, 2), F(0), F(1, 2)),
    ])
    misreport = IdealLottery.of(F(0), F(1, 2), F(1, 2))

    verdict = check_non_bossiness(create_mechanism('me'), c, 2, misreport)

    assert verdict.failed
    assert verdict.witness.agents == (2, 0)
    assert check_non_bossiness(create_mechanism('urc'), c, 2, misreport).passed


def test_in_betweenness(example1_profile):
    """Test that URC keeps the allocation when the peak moves toward it"""
    urc = create_mechanism('urc')
    between = IdealLottery.of(F(1, 2), F(3, 10), F(1, 5))
    assert check_in_betweenness(urc, example1_profile, 0, between).passed

    outside = IdealLottery.of(F(1, 5), F(3, 5), F(1, 5))
    assert check_in_betweenness(urc, example1_profile, 0, outside).inconclusive


def test_in_betweenness_failure_from_stub(pure_profile):
    """Test that a share moving against the report is flagged"""
    before = RandomMatching.from_rows([(F(1, 2), F(1, 2), 0), (F(1, 2), F(1, 2), 0), (0, 0, 1)])
    after = RandomMatching.identity(3)
    misreport = IdealLottery.of(F(3, 4), F(1, 4), 0)
    deviated = pure_profile.replace(0, misreport)
    stub = StubMechanism({pure_profile.rows: before, deviated.rows: after})

    verdict = check_in_betweenness(stub, pure_profile, 0, misreport)

    assert verdict.failed
    assert verdict.witness.deviator == 0


def test_sdc_anonymity_and_envy():
    """Test that SDC favours whoever is first in alpha"""
    c = Profile.from_rows([(1, 0, 0), (1, 0, 0), (0, 0, 1)])
    sdc = create_mechanism('sdc')
    swap = Permutation((1, 0, 2))

    verdict = check_anonymity(sdc, c, swap)
    assert verdict.failed
    assert verdict.witness.agents == (0,)
    assert check_anonymity(create_mechanism('urc'), c, swap).passed

    envy = check_envy_freeness(c, sdc(c))
    assert envy.failed
    assert envy.witness.agents == (1, 0)


def test_pdc_envy():
    c = Profile.from_rows([
        (1, 0, 0, 0),
        (1, 0, 0, 0),
        (1, 0, 0, 0),
        (F(1, 3), F(1, 2), F(1, 6), 0),
    ])
    verdict = check_envy_freeness(c, create_mechanism('pdc')(c))
    assert verdict.failed
    assert verdict.witness.agents == (3, 0)
    assert check_envy_freeness(c, create_mechanism('urc')(c)).passed


def test_welfare_equivalence(example1_profile):
    urc = create_mechanism('urc')
    assert check_welfare_equivalence(create_mechanism('urc', alpha=(2, 1, 0)), urc, example1_profile).passed

    verdict = check_welfare_equivalence(create_mechanism('sdc'), urc, example1_profile)
    assert verdict.failed
    assert verdict.witness.agents == (0,)
    assert verdict.witness.other_mechanism.tag == 'urc'


def test_welfare_non_bossiness():
    """Test agent 2 moving agent 1's welfare under URC without changing its own"""
    c = Profile.from_rows([
        (F(3, 10), F(1, 2), F(1, 5)),
        (F(7, 10), F(1, 5), F(1, 10)),
        (F(1, 10), F(2, 5), F(1, 2)),
    ])
    misreport = IdealLottery.of(F(7, 10), F(3, 10), F(0))
    urc = create_mechanism('urc')

    verdict = check_welfare_non_bossiness(urc, c, 1, misreport)
    assert verdict.failed
    assert verdict.witness.agents == (1, 0)
    # the excess-demand form holds
    assert check_non_bossiness(urc, c, 1, misreport).passed


def test_verdict_sample_seed(example1_profile, uniform_matching):
    verdict = check_efficiency(example1_profile, uniform_matching).with_sample_seed(42)
    assert verdict.witness.sample_seed == 42
