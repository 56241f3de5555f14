"""
Single-instance axiom checks.

Every check returns an ``AxiomVerdict``. A Fail always carries a ``Witness``
with everything needed to recompute it; Inconclusive means the instance did
not meet the property's hypothesis (for example a replacement that changes
the excess-demand set).
"""

import enum
import logging
from dataclasses import dataclass, replace

from src.efficiency import improve_to_same_sided
from src.errors import InstanceError
from src.model import (
    classify_objects,
    distances,
    format_rational,
    is_between,
    is_same_sided,
    l1_distance,
)

logger = logging.getLogger(__name__)


class Property(enum.Enum):
    STRATEGY_PROOF = 'sp'
    EFFICIENT = 'pf'
    REPLACEMENT_MONOTONIC = 'rm'
    NON_BOSSY = 'nb'
    IN_BETWEEN = 'ib'
    ANONYMOUS = 'ano'
    ENVY_FREE = 'ef'
    WELFARE_EQUIVALENT = 'we'
    WELFARE_NON_BOSSY = 'wnb'

    @property
    def label(self):
        return self.value.upper()

    @classmethod
    def parse(cls, text):
        key = text.strip().lower()
        aliases = {'eff': 'pf', 'efficiency': 'pf', 'anonymity': 'ano'}
        key = aliases.get(key, key)
        for prop in cls:
            if prop.value == key:
                return prop
        choices = ', '.join(p.value for p in cls)
        raise InstanceError(f"unknown property {text!r}; expected one of {choices}")


# Columns of the mechanism/property comparison table, in display order
TABLE1_PROPERTIES = (
    Property.STRATEGY_PROOF,
    Property.EFFICIENT,
    Property.REPLACEMENT_MONOTONIC,
    Property.NON_BOSSY,
    Property.IN_BETWEEN,
    Property.ANONYMOUS,
    Property.ENVY_FREE,
)


class Outcome(enum.Enum):
    PASS = 'pass'
    FAIL = 'fail'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class Witness:
    """Everything needed to recompute a verdict.

    ``distances_after`` is indexed by original agent; for anonymity it holds
    each agent's distance in its permuted position.
    """
    profile: object
    before: object = None
    after: object = None
    deviator: int = None
    misreport: object = None
    permutation: object = None
    other_mechanism: object = None
    agents: tuple = ()
    distances_before: tuple = ()
    distances_after: tuple = ()
    sample_seed: int = None
    detail: str = ''


@dataclass(frozen=True)
class AxiomVerdict:
    property: Property
    result: Outcome
    witness: Witness = None
    mechanism: object = None
    checked: int = 0
    note: str = ''

    @property
    def passed(self):
        return self.result is Outcome.PASS

    @property
    def failed(self):
        return self.result is Outcome.FAIL

    @property
    def inconclusive(self):
        return self.result is Outcome.INCONCLUSIVE

    def with_sample_seed(self, seed):
        if self.witness is None:
            return self
        return replace(self, witness=replace(self.witness, sample_seed=seed))


def _identifier(mechanism):
    return getattr(mechanism, 'identifier', None)


def _pass(prop, mechanism=None, note=''):
    return AxiomVerdict(prop, Outcome.PASS, mechanism=_identifier(mechanism), checked=1, note=note)


def _inconclusive(prop, mechanism=None, note=''):
    return AxiomVerdict(prop, Outcome.INCONCLUSIVE, mechanism=_identifier(mechanism), checked=0, note=note)


def _fail(prop, witness, mechanism=None):
    return AxiomVerdict(
        prop, Outcome.FAIL, witness=witness, mechanism=_identifier(mechanism),
        checked=1, note=witness.detail,
    )


def _fmt(value):
    return format_rational(value)


def check_strategy_proofness(mechanism, c, i, c_prime, before=None):
    """Fail iff reporting c_prime instead of c_i brings agent i strictly closer to c_i"""
    before = before or mechanism(c)
    after = mechanism(c.replace(i, c_prime))
    truthful = l1_distance(c[i], before[i])
    misreported = l1_distance(c[i], after[i])
    if misreported < truthful:
        return _fail(Property.STRATEGY_PROOF, Witness(
            profile=c, before=before, after=after, deviator=i, misreport=c.replace(i, c_prime)[i],
            agents=(i,), distances_before=distances(c, before), distances_after=distances(c, after),
            detail=f"agent {c.agents[i]} improves from {_fmt(truthful)} to {_fmt(misreported)} by misreporting",
        ), mechanism)
    return _pass(Property.STRATEGY_PROOF, mechanism)


def check_efficiency(c, matching, mechanism=None):
    """Pass iff the matching is same-sided; a Fail carries a dominating same-sided matching"""
    if is_same_sided(c, matching):
        return _pass(Property.EFFICIENT, mechanism)
    improved = improve_to_same_sided(c, matching)
    return _fail(Property.EFFICIENT, Witness(
        profile=c, before=matching, after=improved,
        distances_before=distances(c, matching), distances_after=distances(c, improved),
        detail="matching is not same-sided; the attached matching dominates it",
    ), mechanism)


def satisfies_rm_preconditions(c, i, c_prime):
    """ED set unchanged and agent i reports no more of any ED object than before"""
    classification = classify_objects(c)
    replaced = c.replace(i, c_prime)
    if classify_objects(replaced).ed != classification.ed:
        return False
    return all(replaced[i][a] <= c[i][a] for a in classification.ed)


def check_replacement_monotonicity(mechanism, c, i, c_prime, before=None):
    if not satisfies_rm_preconditions(c, i, c_prime):
        return _inconclusive(
            Property.REPLACEMENT_MONOTONIC, mechanism,
            note="replacement changes the excess-demand set or raises an excess-demand share",
        )
    before = before or mechanism(c)
    after = mechanism(c.replace(i, c_prime))
    d_before = distances(c, before)
    d_after = distances(c, after)
    if d_before[i] <= d_after[i]:
        harmed = [j for j in range(c.n) if j != i and d_after[j] > d_before[j]]
        if harmed:
            j = harmed[0]
            return _fail(Property.REPLACEMENT_MONOTONIC, Witness(
                profile=c, before=before, after=after, deviator=i, misreport=c.replace(i, c_prime)[i],
                agents=(i, j), distances_before=d_before, distances_after=d_after,
                detail=(f"agent {c.agents[i]} releases excess demand and agent {c.agents[j]} "
                        f"gets worse: {_fmt(d_before[j])} -> {_fmt(d_after[j])}"),
            ), mechanism)
    return _pass(Property.REPLACEMENT_MONOTONIC, mechanism)


def check_non_bossiness(mechanism, c, i, c_prime, before=None):
    """ED-form non-bossiness: if i's ED shares are unchanged, nobody's ED shares change"""
    ed = sorted(classify_objects(c).ed)
    before = before or mechanism(c)
    after = mechanism(c.replace(i, c_prime))
    if any(after[i][a] != before[i][a] for a in ed):
        return _pass(Property.NON_BOSSY, mechanism, note="deviator's excess-demand shares changed")
    for j in range(c.n):
        if j == i:
            continue
        for a in ed:
            if after[j][a] != before[j][a]:
                return _fail(Property.NON_BOSSY, Witness(
                    profile=c, before=before, after=after, deviator=i,
                    misreport=c.replace(i, c_prime)[i], agents=(i, j),
                    distances_before=distances(c, before), distances_after=distances(c, after),
                    detail=(f"agent {c.agents[i]} keeps its shares but agent {c.agents[j]}'s share of "
                            f"{c.objects[a]} moves {_fmt(before[j][a])} -> {_fmt(after[j][a])}"),
                ), mechanism)
    return _pass(Property.NON_BOSSY, mechanism)


def check_in_betweenness(mechanism, c, i, c_prime, before=None):
    before = before or mechanism(c)
    replaced = c.replace(i, c_prime)
    if not is_between(replaced[i], c[i], before[i]):
        return _inconclusive(Property.IN_BETWEEN, mechanism, note="report is not between peak and allocation")
    after = mechanism(replaced)
    for a in range(c.n):
        lowered = replaced[i][a] <= c[i][a] and after[i][a] > before[i][a]
        raised = replaced[i][a] >= c[i][a] and after[i][a] < before[i][a]
        if lowered or raised:
            return _fail(Property.IN_BETWEEN, Witness(
                profile=c, before=before, after=after, deviator=i, misreport=replaced[i], agents=(i,),
                distances_before=distances(c, before), distances_after=distances(c, after),
                detail=(f"agent {c.agents[i]}'s share of {c.objects[a]} moves against its report: "
                        f"{_fmt(before[i][a])} -> {_fmt(after[i][a])}"),
            ), mechanism)
    return _pass(Property.IN_BETWEEN, mechanism)


def check_anonymity(mechanism, c, permutation):
    """Welfare form: relabelling agents does not change anyone's distance"""
    before = mechanism(c)
    permuted = c.permute(permutation)
    after = mechanism(permuted)
    d_before = distances(c, before)
    d_after = tuple(
        l1_distance(permuted[permutation(i)], after[permutation(i)]) for i in range(c.n)
    )
    for i in range(c.n):
        if d_before[i] != d_after[i]:
            return _fail(Property.ANONYMOUS, Witness(
                profile=c, before=before, after=after, permutation=permutation, agents=(i,),
                distances_before=d_before, distances_after=d_after,
                detail=(f"agent {c.agents[i]} has distance {_fmt(d_before[i])} but "
                        f"{_fmt(d_after[i])} after relabelling"),
            ), mechanism)
    return _pass(Property.ANONYMOUS, mechanism)


def check_envy_freeness(c, matching, mechanism=None):
    """Weak form: nobody is strictly closer to another agent's lottery than to their own"""
    own = distances(c, matching)
    for i in range(c.n):
        for j in range(c.n):
            if l1_distance(c[i], matching[j]) < own[i]:
                return _fail(Property.ENVY_FREE, Witness(
                    profile=c, before=matching, agents=(i, j), distances_before=own,
                    detail=(f"agent {c.agents[i]} envies agent {c.agents[j]}: "
                            f"{_fmt(own[i])} own vs {_fmt(l1_distance(c[i], matching[j]))}"),
                ), mechanism)
    return _pass(Property.ENVY_FREE, mechanism)


def check_welfare_equivalence(mechanism, other, c):
    first = mechanism(c)
    second = other(c)
    d_first = distances(c, first)
    d_second = distances(c, second)
    for i in range(c.n):
        if d_first[i] != d_second[i]:
            return _fail(Property.WELFARE_EQUIVALENT, Witness(
                profile=c, before=first, after=second, other_mechanism=_identifier(other), agents=(i,),
                distances_before=d_first, distances_after=d_second,
                detail=f"agent {c.agents[i]}: {_fmt(d_first[i])} vs {_fmt(d_second[i])}",
            ), mechanism)
    return _pass(Property.WELFARE_EQUIVALENT, mechanism)


def check_welfare_non_bossiness(mechanism, c, i, c_prime, before=None):
    """If agent i's welfare is unchanged by its report, so is everybody else's"""
    before = before or mechanism(c)
    after = mechanism(c.replace(i, c_prime))
    d_before = distances(c, before)
    d_after = distances(c, after)
    if d_before[i] != d_after[i]:
        return _pass(Property.WELFARE_NON_BOSSY, mechanism, note="deviator's welfare changed")
    changed = [j for j in range(c.n) if d_before[j] != d_after[j]]
    if changed:
        j = changed[0]
        return _fail(Property.WELFARE_NON_BOSSY, Witness(
            profile=c, before=before, after=after, deviator=i, misreport=c.replace(i, c_prime)[i],
            agents=(i, j), distances_before=d_before, distances_after=d_after,
            detail=(f"agent {c.agents[i]} stays at {_fmt(d_before[i])} while agent {c.agents[j]} "
                    f"moves {_fmt(d_before[j])} -> {_fmt(d_after[j])}"),
        ), mechanism)
    return _pass(Property.WELFARE_NON_BOSSY, mechanism)
