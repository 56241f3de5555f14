"""
Uniform rule for one divisible commodity.

When peaks add up to at least the supply, every agent gets min(x_i, lam) for
the unique lam that exhausts the supply; otherwise max(x_i, nu). Both bounds
are found exactly by scanning the sorted peaks.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from src.errors import InstanceError
from src.model import ONE, ZERO, RandomMatching, format_rational, to_fraction

logger = logging.getLogger(__name__)

EXCESS_DEMAND = 'excess_demand'
EXCESS_SUPPLY = 'excess_supply'


@dataclass(frozen=True)
class PeakVector:
    """Peaks x_i of every agent for one commodity and the available supply"""
    peaks: tuple
    supply: Fraction = ONE

    def __post_init__(self):
        peaks = tuple(to_fraction(x) for x in self.peaks)
        supply = to_fraction(self.supply)
        if any(x < 0 for x in peaks):
            raise InstanceError("peaks must be nonnegative")
        if supply <= 0:
            raise InstanceError(f"supply must be positive, got {format_rational(supply)}")
        object.__setattr__(self, 'peaks', peaks)
        object.__setattr__(self, 'supply', supply)


def _peak_vector(v):
    if isinstance(v, PeakVector):
        return v
    return PeakVector(tuple(v))


def uniform_bound(v):
    """Return (branch, bound): the cap lam under excess demand, the floor nu otherwise.

    Exactly balanced peaks are treated as excess demand.
    """
    v = _peak_vector(v)
    n = len(v.peaks)
    if n == 0:
        raise InstanceError("uniform rule needs at least one agent")

    if sum(v.peaks, ZERO) >= v.supply:
        branch = EXCESS_DEMAND
        ordered = sorted(v.peaks)
        fits = lambda bound, peak: bound <= peak
    else:
        branch = EXCESS_SUPPLY
        ordered = sorted(v.peaks, reverse=True)
        fits = lambda bound, peak: bound >= peak

    allocated = ZERO
    for k, peak in enumerate(ordered[:-1]):
        bound = (v.supply - allocated) / (n - k)
        if fits(bound, peak):
            return branch, bound
        allocated += peak
    # the last agent absorbs whatever is left
    return branch, v.supply - allocated


def uniform_rule(v):
    """Uniform-rule shares, in the order of the peaks"""
    v = _peak_vector(v)
    branch, bound = uniform_bound(v)
    if branch == EXCESS_DEMAND:
        return tuple(min(x, bound) for x in v.peaks)
    return tuple(max(x, bound) for x in v.peaks)


def equal_split_uniform_rule(v):
    """Iterative equal-split computation of the uniform rule.

    Repeatedly offers every unsettled agent an equal share of what is left;
    agents whose peak is on the satisfied side of the offer take their peak
    and leave. Used as an independent cross-check of ``uniform_rule``.
    """
    v = _peak_vector(v)
    n = len(v.peaks)
    if n == 0:
        raise InstanceError("uniform rule needs at least one agent")

    demand = sum(v.peaks, ZERO) >= v.supply
    shares = [None] * n
    remaining = v.supply
    active = list(range(n))
    while active:
        offer = remaining / len(active)
        if demand:
            settled = [i for i in active if v.peaks[i] <= offer]
        else:
            settled = [i for i in active if v.peaks[i] >= offer]
        if not settled:
            for i in active:
                shares[i] = offer
            break
        for i in settled:
            shares[i] = v.peaks[i]
            remaining -= v.peaks[i]
        active = [i for i in active if i not in settled]
    return tuple(shares)


def generalized_uniform_rule(c):
    """Uniform rule applied to every object column independently.

    The result has feasible columns but its rows need not sum to 1, so it is
    returned as a shape-only RandomMatching.
    """
    columns = [uniform_rule(PeakVector(c.column(a))) for a in range(c.n)]
    rows = tuple(tuple(columns[a][i] for a in range(c.n)) for i in range(c.n))
    logger.debug("per-object uniform rule rows: %s", rows)
    return RandomMatching(rows)
