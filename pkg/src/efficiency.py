"""
Efficiency oracles.

A random matching is efficient exactly when it is same-sided, so efficiency
itself is decided in ``src.model``. This module provides the constructive
repair of a non-same-sided matching and an exhaustive dominance search over
grid matchings, used to cross-check that equivalence on small instances.
"""

import logging
from fractions import Fraction

from src.errors import InstanceError, SearchBudgetExceeded
from src.model import RandomMatching, distances, is_same_sided

logger = logging.getLogger(__name__)

DEFAULT_CANDIDATE_BUDGET = 200_000


def lottery_dominates(c, q, p, strict=True):
    """Whether q is weakly better than p for every agent (and strictly for one if strict)"""
    q_dist = distances(c, q)
    p_dist = distances(c, p)
    if any(x > y for x, y in zip(q_dist, p_dist)):
        return False
    return not strict or any(x < y for x, y in zip(q_dist, p_dist))


def _find_transfer(c, rows):
    """Locate (b0, b1, i, j) for one improving transfer, or None if same-sided"""
    n = c.n
    for b0 in range(n):
        below = [i for i in range(n) if rows[i][b0] < c[i][b0]]
        above = [j for j in range(n) if rows[j][b0] > c[j][b0]]
        if not below or not above:
            continue
        i, j = below[0], above[0]
        over = [b for b in range(n) if rows[i][b] > c[i][b]]
        preferred = [b for b in over if rows[j][b] < c[j][b]]
        return b0, (preferred or over)[0], i, j
    return None


def improve_to_same_sided(c, matching):
    """Repair a matching into a same-sided one that lottery-dominates it.

    Each step picks an object b0 that agent i gets too little of and agent j
    too much of, and an object b1 that i gets too much of, then swaps eps of
    b0 and b1 between i and j. Agent i's distance drops by 2*eps and nobody
    else's grows. Every eps is a difference of lattice points, so the loop
    ends after finitely many steps.
    """
    if c.n != matching.n:
        raise InstanceError(f"profile has {c.n} agents but matching has {matching.n} rows")
    rows = [list(row) for row in matching.rows]
    steps = 0
    while True:
        transfer = _find_transfer(c, rows)
        if transfer is None:
            break
        b0, b1, i, j = transfer
        bound = c[j][b1] if rows[j][b1] < c[j][b1] else Fraction(1)
        eps = min(
            c[i][b0] - rows[i][b0],
            rows[j][b0] - c[j][b0],
            rows[i][b1] - c[i][b1],
            bound - rows[j][b1],
        )
        rows[i][b0] += eps
        rows[i][b1] -= eps
        rows[j][b0] -= eps
        rows[j][b1] += eps
        steps += 1
    logger.debug("same-sided after %d transfers", steps)
    return RandomMatching(tuple(tuple(row) for row in rows))


def _bounded_compositions(total, caps):
    """Integer vectors x with 0 <= x_a <= caps[a] and sum(x) = total"""
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    rest_cap = sum(caps[1:])
    for first in range(max(0, total - rest_cap), min(caps[0], total) + 1):
        for tail in _bounded_compositions(total - first, caps[1:]):
            yield (first,) + tail


def grid_matchings(n, denominator):
    """Every bistochastic n x n matrix with entries in {0, 1/D, ..., 1}"""
    if n < 1 or denominator < 1:
        raise InstanceError("grid matchings need n >= 1 and D >= 1")

    def rows_from(k, capacity):
        if k == n - 1:
            yield (capacity,)
            return
        for row in _bounded_compositions(denominator, capacity):
            rest = tuple(cap - x for cap, x in zip(capacity, row))
            for tail in rows_from(k + 1, rest):
                yield (row,) + tail

    for counts in rows_from(0, tuple([denominator] * n)):
        yield RandomMatching(tuple(
            tuple(Fraction(x, denominator) for x in row) for row in counts
        ))


def brute_force_dominance(c, matching, denominator, max_candidates=DEFAULT_CANDIDATE_BUDGET):
    """Search grid matchings for one that strictly lottery-dominates ``matching``.

    Returns the first dominator found or None. Raises SearchBudgetExceeded for
    n > 3 or when more than max_candidates matrices would be examined.
    """
    if c.n > 3:
        raise SearchBudgetExceeded(f"exhaustive dominance search is limited to n <= 3, got {c.n}")
    examined = 0
    for candidate in grid_matchings(c.n, denominator):
        examined += 1
        if examined > max_candidates:
            raise SearchBudgetExceeded(f"more than {max_candidates} grid matchings for D = {denominator}")
        if lottery_dominates(c, candidate, matching):
            logger.debug("dominator found after %d candidates", examined)
            return candidate
    return None


def dominated_iff_not_same_sided(c, matching, denominator):
    """Cross-check: a grid dominator exists exactly when the matching is not same-sided"""
    return (brute_force_dominance(c, matching, denominator) is not None) != is_same_sided(c, matching)
