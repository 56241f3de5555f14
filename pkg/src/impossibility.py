"""
Demonstrations that two natural alternatives to URC cannot work.

- Running the uniform rule on every object separately produces columns that
  are fine but rows that do not sum to 1.
- Any rule that looks only at the ideals for excess-supply objects is forced
  to give nobody any share of such an object, breaking object feasibility.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from src.errors import InstanceError
from src.mechanisms.urc import urc
from src.model import ONE, ZERO, Profile, classify_objects, is_same_sided
from src.uniform_rule import PeakVector, uniform_rule

logger = logging.getLogger(__name__)


def partial_row_sum(matching, i, objects):
    return sum((matching[i][a] for a in objects), ZERO)


def agent_feasibility_violations(matching):
    """(agent, row sum) for every row that does not sum to 1"""
    violations = []
    for i, row in enumerate(matching.rows):
        total = sum(row, ZERO)
        if total != ONE:
            violations.append((i, total))
    return violations


@dataclass(frozen=True)
class Shortfall:
    agent: int
    amount: Fraction


def es_transfer_shortfall(c):
    """Agents who cannot pay for their uniform-rule top-up on excess-supply objects.

    If ES objects are divided by the uniform rule, each agent's extra share
    must be released from its excess-demand holdings. Agents whose extra
    exceeds those holdings would need a negative share somewhere.
    """
    classification = classify_objects(c)
    extra = [ZERO] * c.n
    for a in sorted(classification.es):
        for i, share in enumerate(uniform_rule(PeakVector(c.column(a)))):
            extra[i] += share - c[i][a]
    shortfalls = []
    for i in range(c.n):
        available = sum((c[i][a] for a in classification.ed), ZERO)
        if extra[i] > available:
            shortfalls.append(Shortfall(i, extra[i] - available))
    return shortfalls


def es_impossibility_family(n):
    """Profiles z^0..z^{n-1} on which object 0 is the only excess-supply object.

    Nobody wants object 0; in z^j agent j wants object 1 for sure (so object 1
    is unanimous) and everyone else spreads evenly over objects 2..n-1, which
    are then all in excess demand.
    """
    if n < 3:
        raise InstanceError(f"the family needs at least 3 agents, got {n}")
    spread = Fraction(1, n - 2)
    family = []
    for j in range(n):
        rows = []
        for i in range(n):
            if i == j:
                rows.append(tuple(ONE if a == 1 else ZERO for a in range(n)))
            else:
                rows.append(tuple(spread if a >= 2 else ZERO for a in range(n)))
        family.append(Profile.from_rows(rows))
    return family


@dataclass(frozen=True)
class EsOnlyReport:
    family: tuple
    implied_shares: tuple
    column_sum: Fraction

    @property
    def violates_object_feasibility(self):
        return self.column_sum != ONE


def es_only_rule_column(n, mechanism=None):
    """Shares of object 0 forced on a rule that depends only on excess-supply ideals.

    In z^j an efficient mechanism must give agent j exactly object 1, hence
    nothing of object 0. The profiles agree on everything such a rule may look
    at, so the rule gives agent j nothing of object 0 at every z^j at once.
    """
    mechanism = mechanism or urc
    family = es_impossibility_family(n)
    implied = []
    for j, z in enumerate(family):
        classification = classify_objects(z)
        if classification.es != frozenset({0}) or 1 not in classification.un:
            raise InstanceError(f"profile z^{j} does not have the expected classification")
        outcome = mechanism(z)
        if not is_same_sided(z, outcome):
            raise InstanceError(f"mechanism is not efficient at z^{j}")
        implied.append(outcome[j][0])
    column_sum = sum(implied, ZERO)
    logger.info("shares of the unwanted object forced to %s, summing to %s", implied, column_sum)
    return EsOnlyReport(tuple(family), tuple(implied), column_sum)
