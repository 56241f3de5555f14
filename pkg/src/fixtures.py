"""
Worked instances stored as data, and their exact reproduction.

Each fixture is a JSON file in ``fixture_data/`` holding a profile and any
expected values: classification, phase-1 states, mechanism outcomes with
per-agent distances, deviations, axiom verdicts and infeasibility figures.
``reproduce_fixture`` recomputes all of it and reports field-level
differences.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

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
)
from src.errors import InstanceError
from src.impossibility import (
    agent_feasibility_violations,
    es_only_rule_column,
    es_transfer_shortfall,
    partial_row_sum,
)
from src.mechanisms import create_mechanism, pdc_phase1, sdc_phase1, urc_phase1
from src.mechanisms.base import Ordering
from src.model import IdealLottery, Permutation, classify_objects, distances, format_rational
from src.serialization import parse_profile, parse_rational
from src.uniform_rule import generalized_uniform_rule

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).parent / 'fixture_data'

FIXTURE_IDS = (
    'example1',
    'example-sdc',
    'example-nonbossy',
    'gur-infeasible',
    'profile-e',
    'except-fixture',
    'pdc-envy',
    'es-impossible',
    'pdc-manipulation',
    'sdc-order',
    'me-bossy',
    'es-transfer',
    'pdc-in-between',
)

_PHASE1 = {
    'urc': lambda c: urc_phase1(c),
    'sdc': lambda c: sdc_phase1(c, Ordering.identity(c.n)),
    'pdc': lambda c: pdc_phase1(c),
}


@dataclass(frozen=True)
class Fixture:
    fixture_id: str
    description: str
    profile: object
    data: dict


@dataclass(frozen=True)
class SeedCase:
    """A deviation taken from a fixture, replayable against any mechanism"""
    fixture_id: str
    property: Property
    profile: object
    agent: int = None
    lottery: object = None
    permutation: object = None


def load_fixture(fixture_id):
    """Load a fixture by id (e.g. 'example1')"""
    if fixture_id not in FIXTURE_IDS:
        raise InstanceError(f"unknown fixture {fixture_id!r}; expected one of {', '.join(FIXTURE_IDS)}")
    with open(FIXTURE_DIR / f"{fixture_id}.json", 'r', encoding='utf-8') as handle:
        data = json.load(handle)
    profile = parse_profile(data['profile']) if 'profile' in data else None
    return Fixture(fixture_id, data.get('description', ''), profile, data)


def _lottery(values, field_name):
    return IdealLottery(tuple(parse_rational(x, field_name) for x in values))


def _entry_profile(fixture, entry):
    return parse_profile(entry['profile']) if 'profile' in entry else fixture.profile


def seed_cases(prop):
    """Every fixture deviation recorded for a property, across all fixtures"""
    cases = []
    for fixture_id in FIXTURE_IDS:
        fixture = load_fixture(fixture_id)
        for entry in fixture.data.get('verdicts', []):
            if Property(entry['property']) is not prop:
                continue
            lottery = entry.get('lottery')
            permutation = entry.get('permutation')
            cases.append(SeedCase(
                fixture_id=fixture_id,
                property=prop,
                profile=_entry_profile(fixture, entry),
                agent=entry.get('agent'),
                lottery=_lottery(lottery, 'lottery') if lottery is not None else None,
                permutation=Permutation(tuple(permutation)) if permutation is not None else None,
            ))
    return cases


def run_seed_case(case, mechanism, other=None):
    """Apply the single-instance check for case.property to a mechanism"""
    prop = case.property
    c = case.profile
    if prop is Property.STRATEGY_PROOF:
        return check_strategy_proofness(mechanism, c, case.agent, case.lottery)
    if prop is Property.EFFICIENT:
        return check_efficiency(c, mechanism(c), mechanism)
    if prop is Property.REPLACEMENT_MONOTONIC:
        return check_replacement_monotonicity(mechanism, c, case.agent, case.lottery)
    if prop is Property.NON_BOSSY:
        return check_non_bossiness(mechanism, c, case.agent, case.lottery)
    if prop is Property.IN_BETWEEN:
        return check_in_betweenness(mechanism, c, case.agent, case.lottery)
    if prop is Property.ANONYMOUS:
        return check_anonymity(mechanism, c, case.permutation)
    if prop is Property.ENVY_FREE:
        return check_envy_freeness(c, mechanism(c), mechanism)
    if prop is Property.WELFARE_NON_BOSSY:
        return check_welfare_non_bossiness(mechanism, c, case.agent, case.lottery)
    if prop is Property.WELFARE_EQUIVALENT:
        if other is None:
            raise InstanceError("welfare equivalence needs a second mechanism")
        return check_welfare_equivalence(mechanism, other, c)
    raise InstanceError(f"no check for property {prop.value}")


@dataclass
class ReproReport:
    fixture_id: str
    lines: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches

    def expect(self, path, expected, actual):
        if expected != actual:
            self.mismatches.append(f"{path}: expected {_show(expected)}, got {_show(actual)}")


def _show(value):
    if isinstance(value, (list, tuple)):
        return '[' + ', '.join(_show(x) for x in value) + ']'
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _rows(values, path):
    return tuple(
        tuple(parse_rational(x, f"{path}[{i}][{a}]") for a, x in enumerate(row))
        for i, row in enumerate(values)
    )


def _values(values, path):
    return tuple(parse_rational(x, f"{path}[{k}]") for k, x in enumerate(values))


def _object_indices(profile, names):
    return sorted(profile.objects.index(name) for name in names)


def _check_classification(report, c, expected):
    classification = classify_objects(c)
    for key in ('ed', 'es', 'un'):
        actual = sorted(getattr(classification, key))
        report.expect(f"classification.{key}", _object_indices(c, expected.get(key, [])), actual)
    report.lines.append("classification: ED = {%s}" % ', '.join(c.objects[a] for a in sorted(classification.ed)))


def _check_outcome(report, path, c, matching, distances_c, entry):
    if 'matching' in entry:
        report.expect(f"{path}.matching", _rows(entry['matching'], f"{path}.matching"), matching.rows)
    if 'distances' in entry:
        actual = distances(distances_c, matching)
        report.expect(f"{path}.distances", _values(entry['distances'], f"{path}.distances"), actual)
        report.lines.append(f"{path}: distances {_show(actual)}")


def _check_verdict(report, path, fixture, entry):
    case = SeedCase(
        fixture_id=fixture.fixture_id,
        property=Property(entry['property']),
        profile=_entry_profile(fixture, entry),
        agent=entry.get('agent'),
        lottery=_lottery(entry['lottery'], f"{path}.lottery") if 'lottery' in entry else None,
        permutation=Permutation(tuple(entry['permutation'])) if 'permutation' in entry else None,
    )
    mechanism = create_mechanism(entry['mechanism'])
    other = create_mechanism(entry['other']) if 'other' in entry else None
    verdict = run_seed_case(case, mechanism, other)
    report.expect(f"{path}.result", entry['result'], verdict.result.value)
    if 'agents' in entry and verdict.witness is not None:
        report.expect(f"{path}.agents", list(entry['agents']), list(verdict.witness.agents))
    report.lines.append(
        f"{path}: {case.property.label} for {entry['mechanism']} -> {verdict.result.value}"
        + (f" ({verdict.note})" if verdict.note else '')
    )


def _check_gur(report, c, expected):
    rows = generalized_uniform_rule(c)
    report.expect('gur.rows', _rows(expected['rows'], 'gur.rows'), rows.rows)
    sums = tuple(sum(row) for row in rows.rows)
    report.expect('gur.row_sums', _values(expected['row_sums'], 'gur.row_sums'), sums)
    for agent, total in agent_feasibility_violations(rows):
        report.lines.append(f"agent {c.agents[agent]}: row sums to {format_rational(total)} (agent feasibility violated)")
    partial = expected.get('partial')
    if partial:
        objects = _object_indices(c, partial['objects'])
        actual = partial_row_sum(rows, partial['agent'], objects)
        report.expect('gur.partial.sum', parse_rational(partial['sum'], 'gur.partial.sum'), actual)
        report.lines.append(
            f"agent {c.agents[partial['agent']]}: shares of {', '.join(partial['objects'])} "
            f"already sum to {format_rational(actual)} > 1"
        )


def _check_es_transfer(report, c, expected):
    shortfalls = es_transfer_shortfall(c)
    actual = [(s.agent, s.amount) for s in shortfalls]
    wanted = [
        (entry['agent'], parse_rational(entry['amount'], 'es_transfer.amount'))
        for entry in expected['shortfalls']
    ]
    report.expect('es_transfer.shortfalls', wanted, actual)
    for agent, amount in actual:
        report.lines.append(f"agent {c.agents[agent]} would need {format_rational(amount)} below zero")


def _check_es_family(report, expected):
    result = es_only_rule_column(expected['n'])
    report.expect('es_family.implied_shares', _values(expected['implied_shares'], 'es_family.implied_shares'),
                  result.implied_shares)
    report.expect('es_family.column_sum', parse_rational(expected['column_sum'], 'es_family.column_sum'),
                  result.column_sum)
    report.lines.append(
        f"n = {expected['n']}: unwanted object's column sums to {format_rational(result.column_sum)}, not 1"
    )


def reproduce_fixture(fixture_id):
    """Recompute every expected value stored with a fixture"""
    fixture = load_fixture(fixture_id)
    data = fixture.data
    c = fixture.profile
    report = ReproReport(fixture_id)
    report.lines.append(fixture.description)

    if 'classification' in data:
        _check_classification(report, c, data['classification'])

    for k, entry in enumerate(data.get('phase1', [])):
        state = _PHASE1[entry['mechanism']](c)
        report.expect(f"phase1[{k}].rows", _rows(entry['rows'], f"phase1[{k}].rows"), state.w)

    for k, entry in enumerate(data.get('runs', [])):
        mechanism = create_mechanism(entry['mechanism'], entry.get('alpha'), entry.get('beta'))
        _check_outcome(report, f"runs[{k}]", c, mechanism(c), c, entry)

    for k, entry in enumerate(data.get('deviations', [])):
        mechanism = create_mechanism(entry['mechanism'], entry.get('alpha'), entry.get('beta'))
        deviated = c.replace(entry['agent'], _lottery(entry['lottery'], f"deviations[{k}].lottery"))
        _check_outcome(report, f"deviations[{k}]", deviated, mechanism(deviated), c, entry)

    for k, entry in enumerate(data.get('verdicts', [])):
        _check_verdict(report, f"verdicts[{k}]", fixture, entry)

    if 'gur' in data:
        _check_gur(report, c, data['gur'])
    if 'es_transfer' in data:
        _check_es_transfer(report, c, data['es_transfer'])
    if 'es_family' in data:
        _check_es_family(report, data['es_family'])

    logger.info("fixture %s: %d mismatches", fixture_id, len(report.mismatches))
    return report
