import pytest
from fractions import Fraction as F

from src.axioms import Property
from src.errors import InstanceError
from src.fixtures import (
    FIXTURE_IDS,
    ReproReport,
    load_fixture,
    reproduce_fixture,
    run_seed_case,
    seed_cases,
)
from src.mechanisms import create_mechanism


@pytest.mark.parametrize('fixture_id', FIXTURE_IDS)
def test_every_fixture_reproduces(fixture_id):
    """Test that every stored value is recomputed exactly"""
    report = reproduce_fixture(fixture_id)
    assert report.ok, report.mismatches


def test_load_fixture():
    fixture = load_fixture('example1')
    assert fixture.profile.n == 3
    assert fixture.profile[0].shares == (F(3, 5), F(1, 5), F(1, 5))
    assert 'verdicts' in fixture.data


def test_unknown_fixture():
    with pytest.raises(InstanceError):
        load_fixture('example9')


def test_gur_report_names_agent_three():
    report = reproduce_fixture('gur-infeasible')
    assert any('agent 3' in line and '11/10' in line for line in report.lines)


def test_profile_e_distances():
    report = reproduce_fixture('profile-e')
    assert 'runs[0]: distances [2/3, 2/3, 0/1]' in report.lines


def test_report_collects_mismatches():
    report = ReproReport('x')
    report.expect('runs[0].distances', (F(1, 2),), (F(1, 3),))
    assert not report.ok
    assert report.mismatches == ['runs[0].distances: expected [1/2], got [1/3]']


def test_seed_cases_by_property():
    """Test that fixture deviations are collected per property"""
    sp_cases = seed_cases(Property.STRATEGY_PROOF)
    assert {case.fixture_id for case in sp_cases} == {'profile-e', 'pdc-manipulation'}
    ano_cases = seed_cases(Property.ANONYMOUS)
    assert all(case.permutation is not None for case in ano_cases)


def test_seed_case_against_other_mechanisms():
    """Test that the PDC manipulation does not carry over to URC"""
    case = next(c for c in seed_cases(Property.STRATEGY_PROOF) if c.fixture_id == 'pdc-manipulation')
    assert run_seed_case(case, create_mechanism('pdc')).failed
    assert run_seed_case(case, create_mechanism('urc')).passed
    assert run_seed_case(case, create_mechanism('equal')).passed


def test_welfare_equivalence_case_needs_other():
    case = seed_cases(Property.WELFARE_EQUIVALENT)[0]
    with pytest.raises(InstanceError):
        run_seed_case(case, create_mechanism('urc'))
