"""
JSON encoding of profiles, matchings and verdicts.

Profiles and matchings share one layout::

    {"agents": ["1", "2"], "objects": ["a", "b"], "rows": [["3/5", "2/5"], ["1/2", "1/2"]]}

Rationals are strings in reduced "num/den" form. JSON numbers are rejected
so that no value ever passes through a float.
"""

import json
import logging
from fractions import Fraction

from src.axioms import AxiomVerdict, Outcome, Property, Witness
from src.errors import InstanceError, ParseError
from src.mechanisms.base import MechanismId
from src.model import (
    IdealLottery,
    Permutation,
    Profile,
    RandomMatching,
    default_agent_names,
    default_object_names,
    format_rational,
)

logger = logging.getLogger(__name__)


def _decode(source):
    if isinstance(source, (dict, list)):
        return source
    try:
        return json.loads(source)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno)


def parse_rational(value, field):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"expected a rational string like \"3/5\", got {value!r}", field=field)
    try:
        return Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational {value!r}", field=field)


def _names(data, key, n, default):
    names = data.get(key)
    if names is None:
        return default(n)
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise ParseError("expected a list of strings", field=key)
    if len(names) != n:
        raise ParseError(f"expected {n} names, got {len(names)}", field=key)
    if len(set(names)) != n:
        raise ParseError("names must be distinct", field=key)
    return tuple(names)


def _parse_rows(data):
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object with a \"rows\" field")
    rows = data.get('rows')
    if not isinstance(rows, list) or not rows:
        raise ParseError("expected a non-empty list of rows", field='rows')
    n = len(rows)
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError("expected a list", field=f"rows[{i}]")
        if len(row) != n:
            raise ParseError(f"expected {n} entries (square instance), got {len(row)}", field=f"rows[{i}]")
        values = tuple(parse_rational(x, f"rows[{i}][{a}]") for a, x in enumerate(row))
        for a, x in enumerate(values):
            if x < 0:
                raise ParseError(f"negative entry {format_rational(x)}", field=f"rows[{i}][{a}]")
        total = sum(values, Fraction(0))
        if total != 1:
            raise ParseError(
                f"agent feasibility violated: row sums to {format_rational(total)}", field=f"rows[{i}]"
            )
        parsed.append(values)
    return parsed


def parse_profile(source):
    """Parse a profile from JSON text or an already decoded dict"""
    data = _decode(source)
    rows = _parse_rows(data)
    n = len(rows)
    agents = _names(data, 'agents', n, default_agent_names)
    objects = _names(data, 'objects', n, default_object_names)
    try:
        return Profile(tuple(IdealLottery(row) for row in rows), agents, objects)
    except InstanceError as e:
        raise ParseError(str(e))


def parse_matching(source):
    """Parse a bistochastic matching; returns (matching, agents, objects)"""
    data = _decode(source)
    rows = _parse_rows(data)
    n = len(rows)
    for a in range(n):
        total = sum((row[a] for row in rows), Fraction(0))
        if total != 1:
            raise ParseError(
                f"object feasibility violated: column sums to {format_rational(total)}", field=f"column {a}"
            )
    agents = _names(data, 'agents', n, default_agent_names)
    objects = _names(data, 'objects', n, default_object_names)
    return RandomMatching(tuple(rows)), agents, objects


def _rows_to_strings(rows):
    return [[format_rational(x) for x in row] for row in rows]


def serialize_profile(profile):
    return {
        'agents': list(profile.agents),
        'objects': list(profile.objects),
        'rows': _rows_to_strings(profile.rows),
    }


def serialize_matching(matching, agents=None, objects=None):
    return {
        'agents': list(agents or default_agent_names(matching.n)),
        'objects': list(objects or default_object_names(matching.n)),
        'rows': _rows_to_strings(matching.rows),
    }


def dumps(data):
    return json.dumps(data, indent=2)


def read_profile(path):
    """Read and parse a profile file"""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise ParseError(f"cannot read profile: {e.strerror}", field=str(path))
    return parse_profile(text)


def _lottery_strings(lottery):
    return [format_rational(x) for x in lottery]


def witness_to_dict(witness):
    profile = witness.profile
    names = dict(agents=profile.agents, objects=profile.objects)
    return {
        'profile': serialize_profile(profile),
        'deviator': witness.deviator,
        'misreport': _lottery_strings(witness.misreport) if witness.misreport is not None else None,
        'permutation': list(witness.permutation.mapping) if witness.permutation is not None else None,
        'other_mechanism': witness.other_mechanism.to_dict() if witness.other_mechanism is not None else None,
        'agents': list(witness.agents),
        'before': serialize_matching(witness.before, **names) if witness.before is not None else None,
        'after': serialize_matching(witness.after, **names) if witness.after is not None else None,
        'distances_before': [format_rational(x) for x in witness.distances_before],
        'distances_after': [format_rational(x) for x in witness.distances_after],
        'sample_seed': witness.sample_seed,
        'detail': witness.detail,
    }


def verdict_to_dict(verdict):
    return {
        'property': verdict.property.value,
        'result': verdict.result.value,
        'mechanism': verdict.mechanism.to_dict() if verdict.mechanism is not None else None,
        'checked': verdict.checked,
        'note': verdict.note,
        'witness': witness_to_dict(verdict.witness) if verdict.witness is not None else None,
    }


def _optional_matching(data, field):
    if data is None:
        return None
    try:
        return parse_matching(data)[0]
    except ParseError as e:
        raise ParseError(str(e), field=field)


def witness_from_dict(data):
    profile = parse_profile(data['profile'])
    misreport = data.get('misreport')
    permutation = data.get('permutation')
    other = data.get('other_mechanism')
    try:
        return Witness(
            profile=profile,
            before=_optional_matching(data.get('before'), 'witness.before'),
            after=_optional_matching(data.get('after'), 'witness.after'),
            deviator=data.get('deviator'),
            misreport=IdealLottery(tuple(
                parse_rational(x, f"witness.misreport[{a}]") for a, x in enumerate(misreport)
            )) if misreport is not None else None,
            permutation=Permutation(tuple(permutation)) if permutation is not None else None,
            other_mechanism=MechanismId.from_dict(other) if other is not None else None,
            agents=tuple(data.get('agents') or ()),
            distances_before=tuple(
                parse_rational(x, 'witness.distances_before') for x in data.get('distances_before') or ()
            ),
            distances_after=tuple(
                parse_rational(x, 'witness.distances_after') for x in data.get('distances_after') or ()
            ),
            sample_seed=data.get('sample_seed'),
            detail=data.get('detail', ''),
        )
    except InstanceError as e:
        raise ParseError(str(e), field='witness')


def verdict_from_dict(source):
    data = _decode(source)
    try:
        prop = Property(data['property'])
        result = Outcome(data['result'])
    except (KeyError, ValueError, TypeError) as e:
        raise ParseError(f"not a verdict record: {e}")
    mechanism = data.get('mechanism')
    witness = data.get('witness')
    return AxiomVerdict(
        property=prop,
        result=result,
        witness=witness_from_dict(witness) if witness is not None else None,
        mechanism=MechanismId.from_dict(mechanism) if mechanism is not None else None,
        checked=data.get('checked', 0),
        note=data.get('note', ''),
    )
