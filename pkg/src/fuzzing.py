"""
Seeded falsification of the axioms.

Strategy proofness, replacement monotonicity, non-bossiness, in-betweenness
and anonymity quantify over every profile and every deviation. They are
tested by sampling grid profiles and trying structured deviations around
each one; a Pass therefore only means no counterexample was found within
the budget. Efficiency and envy-freeness are decided exactly on every
sampled outcome.

Before sampling, every deviation stored with the fixtures for the property
is replayed against the mechanism. Samples are independent and can be
spread over a process pool; the reported witness is always the one with the
lowest sample index, so results do not depend on the number of workers.
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
import pandas as pd

from src.axioms import (
    TABLE1_PROPERTIES,
    AxiomVerdict,
    Outcome,
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
from src.config import DEFAULT_SEED
from src.errors import InstanceError, UnsupportedInstanceError, WitnessNotReproducedError
from src.fixtures import run_seed_case, seed_cases
from src.mechanisms import create_mechanism
from src.mechanisms.base import MechanismBase, MechanismId
from src.model import IdealLottery, Permutation, classify_objects
from src.profiles import (
    between_sample,
    count_grid_lotteries,
    grid_lotteries,
    random_lottery,
    random_ordering,
    random_profile,
    rm_perturbation,
)

logger = logging.getLogger(__name__)

BETWEEN_SAMPLES = 8
RM_PERTURBATIONS = 4

_CONFIG_KEYS = {
    'n': 'n',
    'd': 'denominator',
    'denominator': 'denominator',
    'samples': 'samples',
    'seed': 'seed',
    'budget': 'misreport_budget',
    'misreport_budget': 'misreport_budget',
    'jobs': 'jobs',
}


@dataclass(frozen=True)
class FuzzConfig:
    """Sampling budget: n agents, grid 1/D, number of profiles and seed"""
    n: int = 3
    denominator: int = 6
    samples: int = 500
    seed: int = DEFAULT_SEED
    misreport_budget: int = 32
    jobs: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise InstanceError(f"n must be at least 1, got {self.n}")
        if self.denominator < 1:
            raise InstanceError(f"D must be at least 1, got {self.denominator}")
        if self.samples < 0:
            raise InstanceError(f"samples must be nonnegative, got {self.samples}")
        if self.seed < 0:
            raise InstanceError(f"seed must be nonnegative, got {self.seed}")
        if self.misreport_budget < 1:
            raise InstanceError(f"misreport budget must be at least 1, got {self.misreport_budget}")
        if self.jobs < 1:
            raise InstanceError(f"jobs must be at least 1, got {self.jobs}")

    @classmethod
    def parse(cls, text, **defaults):
        """Parse "n=3,D=6,samples=500,seed=7" (keys may be omitted)"""
        values = dict(defaults)
        for part in text.split(','):
            part = part.strip()
            if not part:
                continue
            if '=' not in part:
                raise InstanceError(f"expected key=value in fuzz config, got {part!r}")
            key, raw = (x.strip() for x in part.split('=', 1))
            name = _CONFIG_KEYS.get(key.lower())
            if name is None:
                raise InstanceError(f"unknown fuzz config key {key!r}")
            try:
                values[name] = int(raw)
            except ValueError:
                raise InstanceError(f"fuzz config value for {key} must be an integer, got {raw!r}")
        return cls(**values)

    def sample_seeds(self):
        """One independent 64-bit seed per sample, derived from the config seed"""
        children = np.random.SeedSequence(self.seed).spawn(self.samples)
        return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


_DEVIATION_CHECKS = {
    Property.STRATEGY_PROOF: check_strategy_proofness,
    Property.REPLACEMENT_MONOTONIC: check_replacement_monotonicity,
    Property.NON_BOSSY: check_non_bossiness,
    Property.IN_BETWEEN: check_in_betweenness,
    Property.WELFARE_NON_BOSSY: check_welfare_non_bossiness,
}


def as_mechanism(mechanism):
    """Accept a mechanism instance, a MechanismId or a tag string"""
    if isinstance(mechanism, MechanismBase):
        return mechanism
    if isinstance(mechanism, MechanismId):
        return mechanism.build()
    return create_mechanism(mechanism)


def candidate_misreports(c, i, allocation, rng, denominator, budget):
    """Deviations for agent i, without duplicates and excluding the truthful report.

    The grid of denominator D is enumerated when it fits the budget and
    sampled otherwise. Structured moves follow: shifting mass between
    excess-demand and excess-supply coordinates, the allocation itself, a
    lottery between peak and allocation, and every other agent's peak.
    """
    peak = c[i].shares
    seen = {peak}
    candidates = []

    def add(shares):
        shares = tuple(shares)
        if shares in seen or any(x < 0 for x in shares) or sum(shares) != 1:
            return
        seen.add(shares)
        candidates.append(IdealLottery(shares))

    if count_grid_lotteries(c.n, denominator) <= budget:
        for lottery in grid_lotteries(c.n, denominator):
            add(lottery.shares)
    else:
        for _ in range(budget):
            add(random_lottery(c.n, denominator, rng).shares)

    classification = classify_objects(c)
    step = Fraction(1, denominator)
    for a in sorted(classification.ed):
        for b in sorted(classification.es):
            for source, target in ((a, b), (b, a)):
                for amount in (step, peak[source]):
                    if 0 < amount <= peak[source]:
                        shares = list(peak)
                        shares[source] -= amount
                        shares[target] += amount
                        add(shares)
    add(allocation)
    add(between_sample(peak, allocation, rng).shares)
    for j in range(c.n):
        if j != i:
            add(c[j].shares)
    return candidates


def _deviations(prop, c, i, before, rng, cfg):
    if prop is Property.IN_BETWEEN:
        found = {}
        for lottery in [IdealLottery(before[i])] + [
            between_sample(c[i], before[i], rng) for _ in range(BETWEEN_SAMPLES)
        ]:
            found.setdefault(lottery.shares, lottery)
        return list(found.values())

    misreports = candidate_misreports(c, i, before[i], rng, cfg.denominator, cfg.misreport_budget)
    if prop is Property.REPLACEMENT_MONOTONIC:
        targeted = []
        if classify_objects(c).ed:
            for _ in range(RM_PERTURBATIONS):
                perturbed = rm_perturbation(c, i, rng)
                if perturbed is not None:
                    targeted.append(perturbed)
        return targeted + [m for m in misreports if satisfies_rm_preconditions(c, i, m)]
    return misreports


def _permutations(n, rng, budget):
    if math.factorial(n) - 1 <= budget:
        return [Permutation(p) for p in itertools.permutations(range(n)) if list(p) != list(range(n))]
    return [Permutation(random_ordering(n, rng)) for _ in range(budget)]


def evaluate_profile(prop, mechanism, c, rng, cfg, other=None):
    """Run the checks for one property around profile c.

    Returns (number of applicable checks, first failing verdict or None).
    """
    before = mechanism(c)
    if prop is Property.EFFICIENT:
        verdict = check_efficiency(c, before, mechanism)
        return 1, verdict if verdict.failed else None
    if prop is Property.ENVY_FREE:
        verdict = check_envy_freeness(c, before, mechanism)
        return 1, verdict if verdict.failed else None
    if prop is Property.WELFARE_EQUIVALENT:
        if other is None:
            raise InstanceError("welfare equivalence needs a second mechanism")
        verdict = check_welfare_equivalence(mechanism, other, c)
        return 1, verdict if verdict.failed else None

    checked = 0
    if prop is Property.ANONYMOUS:
        for permutation in _permutations(c.n, rng, cfg.misreport_budget):
            verdict = check_anonymity(mechanism, c, permutation)
            checked += 1
            if verdict.failed:
                return checked, verdict
        return checked, None

    checker = _DEVIATION_CHECKS[prop]
    for i in range(c.n):
        for lottery in _deviations(prop, c, i, before, rng, cfg):
            verdict = checker(mechanism, c, i, lottery, before=before)
            if verdict.inconclusive:
                continue
            checked += 1
            if verdict.failed:
                return checked, verdict
    return checked, None


@dataclass(frozen=True)
class SampleResult:
    index: int
    checked: int
    failure: AxiomVerdict = None


def _evaluate_sample(task):
    prop, mechanism_id, other_id, cfg, index, seed = task
    mechanism = mechanism_id.build()
    other = other_id.build() if other_id is not None else None
    rng = np.random.default_rng(seed)
    c = random_profile(cfg.n, cfg.denominator, rng)
    checked, failure = evaluate_profile(prop, mechanism, c, rng, cfg, other)
    if failure is not None:
        failure = failure.with_sample_seed(seed)
    logger.debug("sample %d (%s): %d checks, %s", index, prop.value, checked,
                 'fail' if failure is not None else 'ok')
    return SampleResult(index, checked, failure)


def _run_samples(prop, mechanism_id, cfg, other_id=None):
    """Returns (earliest failure or None, checks counted up to it)"""
    tasks = [(prop, mechanism_id, other_id, cfg, k, seed) for k, seed in enumerate(cfg.sample_seeds())]
    if cfg.jobs > 1 and len(tasks) > 1:
        chunksize = max(1, len(tasks) // (4 * cfg.jobs))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_evaluate_sample, tasks, chunksize=chunksize))
    else:
        results = []
        for task in tasks:
            result = _evaluate_sample(task)
            results.append(result)
            if result.failure is not None:
                break

    failures = [r for r in results if r.failure is not None]
    if not failures:
        return None, sum(r.checked for r in results)
    first = min(failures, key=lambda r: r.index)
    checked = sum(r.checked for r in results if r.index <= first.index)
    return first.failure, checked


def replay_verdict(verdict):
    """Recompute a verdict from its witness alone"""
    witness = verdict.witness
    if witness is None:
        raise InstanceError("verdict has no witness to replay")
    mechanism = verdict.mechanism.build() if verdict.mechanism is not None else None
    prop = verdict.property
    c = witness.profile

    if prop in (Property.EFFICIENT, Property.ENVY_FREE):
        matching = mechanism(c) if mechanism is not None else witness.before
        check = check_efficiency if prop is Property.EFFICIENT else check_envy_freeness
        result = check(c, matching, mechanism)
    elif mechanism is None:
        raise InstanceError(f"replaying {prop.value} needs the mechanism")
    elif prop is Property.ANONYMOUS:
        result = check_anonymity(mechanism, c, witness.permutation)
    elif prop is Property.WELFARE_EQUIVALENT:
        result = check_welfare_equivalence(mechanism, witness.other_mechanism.build(), c)
    else:
        result = _DEVIATION_CHECKS[prop](mechanism, c, witness.deviator, witness.misreport)
    return result.with_sample_seed(witness.sample_seed)


def _confirmed(verdict):
    if not replay_verdict(verdict).failed:
        raise WitnessNotReproducedError(f"{verdict.property.value} witness did not re-verify: {verdict.note}")
    return verdict


def falsify(prop, mechanism, cfg, other=None, use_fixtures=True):
    """Search for a counterexample to prop; see the module docstring"""
    mechanism = as_mechanism(mechanism)
    other = as_mechanism(other) if other is not None else None
    if mechanism.supported_n is not None and cfg.n != mechanism.supported_n:
        raise UnsupportedInstanceError(
            f"{mechanism.name} is only defined for n = {mechanism.supported_n}, got n = {cfg.n}"
        )

    if use_fixtures:
        for case in seed_cases(prop):
            try:
                verdict = run_seed_case(case, mechanism, other)
            except UnsupportedInstanceError:
                continue
            if verdict.failed:
                logger.info("%s fails %s on fixture %s", mechanism.name, prop.label, case.fixture_id)
                return _confirmed(replace(verdict, note=f"fixture {case.fixture_id}: {verdict.note}"))

    other_id = other.identifier if other is not None else None
    failure, checked = _run_samples(prop, mechanism.identifier, cfg, other_id)
    if failure is not None:
        logger.info("%s fails %s after %d checks", mechanism.name, prop.label, checked)
        return _confirmed(replace(failure, checked=checked))
    if checked == 0:
        return AxiomVerdict(prop, Outcome.INCONCLUSIVE, mechanism=mechanism.identifier,
                            note=f"no applicable check in {cfg.samples} samples")
    return AxiomVerdict(prop, Outcome.PASS, mechanism=mechanism.identifier, checked=checked,
                        note=f"no counterexample in {cfg.samples} samples ({checked} checks)")


def falsify_around(prop, mechanism, c, cfg, other=None):
    """Like falsify, but only around one given profile"""
    mechanism = as_mechanism(mechanism)
    other = as_mechanism(other) if other is not None else None
    rng = np.random.default_rng(cfg.seed)
    checked, failure = evaluate_profile(prop, mechanism, c, rng, cfg, other)
    if failure is not None:
        return _confirmed(replace(failure, checked=checked))
    if checked == 0:
        return AxiomVerdict(prop, Outcome.INCONCLUSIVE, mechanism=mechanism.identifier,
                            note="no applicable deviation for this profile")
    return AxiomVerdict(prop, Outcome.PASS, mechanism=mechanism.identifier, checked=checked,
                        note=f"no counterexample in {checked} checks")


def falsify_strategy_proofness(mechanism, cfg):
    return falsify(Property.STRATEGY_PROOF, mechanism, cfg)


def falsify_efficiency(mechanism, cfg):
    return falsify(Property.EFFICIENT, mechanism, cfg)


def falsify_replacement_monotonicity(mechanism, cfg):
    return falsify(Property.REPLACEMENT_MONOTONIC, mechanism, cfg)


def falsify_non_bossiness(mechanism, cfg):
    return falsify(Property.NON_BOSSY, mechanism, cfg)


def falsify_in_betweenness(mechanism, cfg):
    return falsify(Property.IN_BETWEEN, mechanism, cfg)


def falsify_anonymity(mechanism, cfg):
    return falsify(Property.ANONYMOUS, mechanism, cfg)


def falsify_envy_freeness(mechanism, cfg):
    return falsify(Property.ENVY_FREE, mechanism, cfg)


def falsify_welfare_equivalence(mechanism, other, cfg):
    return falsify(Property.WELFARE_EQUIVALENT, mechanism, cfg, other=other)


TABLE1_MECHANISMS = ('urc', 'sdc', 'pdc', 'equal')

EXPECTED_FAILURES = {
    'urc': (),
    'sdc': (Property.ANONYMOUS, Property.ENVY_FREE),
    'pdc': (Property.STRATEGY_PROOF, Property.ENVY_FREE),
    'equal': (Property.EFFICIENT,),
}

# Cells where a stored counterexample contradicts the expected pattern, by fixture id.
# They are reported apart and do not count as deviations.
DISPUTED_CELLS = {
    ('pdc', Property.IN_BETWEEN): 'pdc-in-between',
}


def expected_outcome(tag, prop):
    return Outcome.FAIL if prop in EXPECTED_FAILURES[tag] else Outcome.PASS


@dataclass(frozen=True)
class Table1Result:
    config: FuzzConfig
    cells: tuple

    def verdict(self, tag, prop):
        for cell_tag, cell_prop, verdict in self.cells:
            if cell_tag == tag and cell_prop is prop:
                return verdict
        raise KeyError((tag, prop))

    def deviations(self):
        """(tag, property, expected, actual) for every cell that differs from the expected pattern, disputed failures aside"""
        disputed = self.disputed()
        return [cell for cell in self._differences() if cell not in disputed]

    def disputed(self):
        """Failures in DISPUTED_CELLS, as (tag, property, expected, actual)"""
        return [
            cell for cell in self._differences()
            if (cell[0], cell[1]) in DISPUTED_CELLS and cell[3] is Outcome.FAIL
        ]

    def _differences(self):
        return [
            (tag, prop, expected_outcome(tag, prop), verdict.result)
            for tag, prop, verdict in self.cells
            if verdict.result is not expected_outcome(tag, prop)
        ]

    def matches_expected(self):
        return not self.deviations()

    def to_frame(self):
        """Mechanisms as rows, property labels as columns, cells ✓ / ✗ / ?"""
        symbols = {Outcome.PASS: '✓', Outcome.FAIL: '✗', Outcome.INCONCLUSIVE: '?'}
        records = []
        for tag in TABLE1_MECHANISMS:
            record = {'Mechanism': create_mechanism(tag).name}
            for prop in TABLE1_PROPERTIES:
                record[prop.label] = symbols[self.verdict(tag, prop).result]
            records.append(record)
        return pd.DataFrame(records).set_index('Mechanism')


def run_table1(cfg):
    """Every comparison-table mechanism against every property column"""
    cells = []
    for tag in TABLE1_MECHANISMS:
        mechanism = create_mechanism(tag)
        for prop in TABLE1_PROPERTIES:
            verdict = falsify(prop, mechanism, cfg)
            logger.info("%s / %s: %s", mechanism.name, prop.label, verdict.result.value)
            cells.append((tag, prop, verdict))
    return Table1Result(cfg, tuple(cells))
