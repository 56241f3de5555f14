"""
Seeded generators for ideal lotteries, profiles and structured deviations.

Everything lives on a grid of denominator D so that misreports can be
enumerated and witnesses stay readable. Seeds may be ints or numpy
``Generator`` objects; the same seed always produces the same value.
"""

import itertools
import logging
import math
from fractions import Fraction

import numpy as np

from src.axioms import satisfies_rm_preconditions
from src.errors import InstanceError, PreconditionError
from src.model import ONE, ZERO, IdealLottery, Profile, classify_objects, is_between

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 12


def as_generator(seed=None):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _parts_from_bars(bars, n, denominator):
    """Stars and bars: n-1 bar positions among D+n-1 slots -> n part sizes"""
    edges = [-1] + list(bars) + [denominator + n - 1]
    return tuple(edges[k + 1] - edges[k] - 1 for k in range(n))


def count_grid_lotteries(n, denominator):
    return math.comb(denominator + n - 1, n - 1)


def grid_lotteries(n, denominator):
    """All ideal lotteries whose shares are multiples of 1/D, in lexicographic bar order"""
    if n < 1 or denominator < 1:
        raise InstanceError("grid lotteries need n >= 1 and D >= 1")
    for bars in itertools.combinations(range(denominator + n - 1), n - 1):
        parts = _parts_from_bars(bars, n, denominator)
        yield IdealLottery(tuple(Fraction(x, denominator) for x in parts))


def random_lottery(n, denominator, seed=None):
    """A lottery drawn uniformly from the compositions of D into n parts"""
    if n < 1 or denominator < 1:
        raise InstanceError("random lotteries need n >= 1 and D >= 1")
    rng = as_generator(seed)
    bars = sorted(int(x) for x in rng.choice(denominator + n - 1, size=n - 1, replace=False))
    parts = _parts_from_bars(bars, n, denominator)
    return IdealLottery(tuple(Fraction(x, denominator) for x in parts))


def random_profile(n, denominator, seed=None):
    rng = as_generator(seed)
    return Profile(tuple(random_lottery(n, denominator, rng) for _ in range(n)))


def random_ordering(n, seed=None):
    rng = as_generator(seed)
    return tuple(int(x) for x in rng.permutation(n))


def between_sample(c_i, p_i, seed=None, resolution=DEFAULT_RESOLUTION):
    """A lottery in the box spanned by c_i and p_i.

    Coordinates where p_i is below the peak are lowered and coordinates where
    it is above are raised, by random grid fractions of the gap; the larger
    side is scaled down so the result still sums to 1. Falls back to c_i.
    """
    rng = as_generator(seed)
    peak = tuple(c_i)
    row = tuple(p_i)
    fallback = IdealLottery(peak)

    lower = {a: peak[a] - row[a] for a in range(len(peak)) if row[a] < peak[a]}
    rise = {a: row[a] - peak[a] for a in range(len(peak)) if row[a] > peak[a]}
    if not lower or not rise:
        return fallback

    def fractions_of(gaps):
        return {a: Fraction(int(rng.integers(0, resolution + 1)), resolution) * gap for a, gap in gaps.items()}

    decrease = fractions_of(lower)
    increase = fractions_of(rise)
    total_decrease = sum(decrease.values(), ZERO)
    total_increase = sum(increase.values(), ZERO)
    if total_decrease == 0 or total_increase == 0:
        return fallback
    if total_decrease > total_increase:
        scale = total_increase / total_decrease
        decrease = {a: x * scale for a, x in decrease.items()}
    else:
        scale = total_decrease / total_increase
        increase = {a: x * scale for a, x in increase.items()}

    shares = list(peak)
    for a, x in decrease.items():
        shares[a] -= x
    for a, x in increase.items():
        shares[a] += x
    if any(x < 0 for x in shares) or not is_between(shares, peak, row):
        return fallback
    return IdealLottery(tuple(shares))


def _profile_denominator(c):
    return math.lcm(*(x.denominator for row in c.rows for x in row))


def rm_perturbation(c, i, seed=None, attempts=16, resolution=None):
    """A report for agent i that releases excess demand without changing the ED set.

    Lowers some of i's excess-demand shares by grid steps and moves the mass
    to excess-supply objects with headroom. Returns None when no attempt
    passes re-verification.
    """
    classification = classify_objects(c)
    if not classification.ed:
        raise PreconditionError("replacement perturbations need at least one excess-demand object")
    rng = as_generator(seed)
    step = Fraction(1, resolution or 2 * _profile_denominator(c))
    peak = c[i]

    lowerable = []
    for a in sorted(classification.ed):
        # keep the column strictly above 1
        room = min(peak[a], c.column_sum(a) - ONE)
        max_steps = math.ceil(room / step) - 1
        if max_steps > 0:
            lowerable.append((a, max_steps))
    es = sorted(classification.es)
    if not lowerable or not es:
        return None
    headroom = {b: ONE - c.column_sum(b) for b in es}

    for _ in range(attempts):
        shares = list(peak)
        released = ZERO
        for a, max_steps in lowerable:
            k = int(rng.integers(0, max_steps + 1))
            shares[a] -= k * step
            released += k * step
        if released == 0:
            continue
        left = released
        for b in (es[k] for k in rng.permutation(len(es))):
            give = min(left, headroom[b])
            shares[b] += give
            left -= give
        if left > 0:
            continue
        candidate = IdealLottery(tuple(shares))
        if satisfies_rm_preconditions(c, i, candidate):
            return candidate
    logger.debug("no replacement perturbation for agent %d after %d attempts", i, attempts)
    return None
