import json

import pytest
from fractions import Fraction as F

from src.axioms import Outcome, Property, check_strategy_proofness
from src.errors import ParseError
from src.mechanisms import create_mechanism
from src.model import IdealLottery, Profile
from src.serialization import (
    dumps,
    parse_matching,
    parse_profile,
    parse_rational,
    read_profile,
    serialize_matching,
    serialize_profile,
    verdict_from_dict,
    verdict_to_dict,
)


@pytest.fixture
def profile_json():
    """Fixture for a named two-agent profile"""
    return json.dumps({
        'agents': ['ann', 'bob'],
        'objects': ['x', 'y'],
        'rows': [['3/5', '2/5'], ['1/2', '1/2']],
    })


def test_parse_profile(profile_json):
    c = parse_profile(profile_json)
    assert c.agents == ('ann', 'bob')
    assert c.objects == ('x', 'y')
    assert c[0].shares == (F(3, 5), F(2, 5))


def test_parse_profile_default_names():
    c = parse_profile({'rows': [['1', '0'], ['0.5', '1/2']]})
    assert c.agents == ('1', '2')
    assert c.objects == ('a', 'b')
    assert c[1].shares == (F(1, 2), F(1, 2))


def test_parse_rational_rejects_json_numbers():
    """Test that floats never slip in through JSON numbers"""
    with pytest.raises(ParseError) as excinfo:
        parse_rational(0.5, 'rows[0][1]')
    assert 'rows[0][1]' in str(excinfo.value)
    with pytest.raises(ParseError):
        parse_rational('1/0', 'x')


@pytest.mark.parametrize('data, field', [
    ({'rows': [['1/2', '1/3'], ['1/2', '1/2']]}, 'rows[0]'),
    ({'rows': [['1', '0', '0'], ['0', '1', '0']]}, 'rows[0]'),
    ({'rows': [['3/2', '-1/2'], ['1/2', '1/2']]}, 'rows[0][1]'),
    ({'rows': [['1', '0'], ['0', '1']], 'agents': ['a']}, 'agents'),
    ({'rows': []}, 'rows'),
])
def test_parse_profile_errors_name_the_field(data, field):
    with pytest.raises(ParseError) as excinfo:
        parse_profile(data)
    assert field in str(excinfo.value)


def test_invalid_json_reports_line():
    with pytest.raises(ParseError) as excinfo:
        parse_profile('{"rows": [\n["1", "0"],\n}')
    assert 'line' in str(excinfo.value)


def test_parse_matching_checks_columns():
    with pytest.raises(ParseError) as excinfo:
        parse_matching({'rows': [['1', '0'], ['1', '0']]})
    assert 'column' in str(excinfo.value)


def test_serialize_profile_round_trip(profile_json):
    c = parse_profile(profile_json)
    assert parse_profile(serialize_profile(c)) == c


def test_serialized_matching_uses_reduced_strings(example1_profile, example1_urc_matching):
    data = serialize_matching(example1_urc_matching, example1_profile.agents, example1_profile.objects)
    assert data['rows'][1] == ['2/5', '1/2', '1/10']
    assert '0.' not in dumps(data)


def test_verdict_json_round_trip():
    """Test that a Fail witness survives serialization"""
    c = Profile.from_rows([(F(9, 10), F(1, 10)), (F(9, 10), F(1, 10))])
    verdict = check_strategy_proofness(create_mechanism('pdc'), c, 0, IdealLottery.of(1, 0))

    restored = verdict_from_dict(dumps(verdict_to_dict(verdict)))

    assert restored.property is Property.STRATEGY_PROOF
    assert restored.result is Outcome.FAIL
    assert restored.mechanism == verdict.mechanism
    assert restored.witness == verdict.witness


def test_verdict_from_dict_rejects_garbage():
    with pytest.raises(ParseError):
        verdict_from_dict({'property': 'xx', 'result': 'fail'})


def test_read_profile_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_profile(tmp_path / 'missing.json')


def test_read_profile(tmp_path, profile_json):
    path = tmp_path / 'profile.json'
    path.write_text(profile_json)
    assert read_profile(path).agents == ('ann', 'bob')
