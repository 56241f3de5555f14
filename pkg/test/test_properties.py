"""
Property-based tests over random grid profiles.

Each test states an invariant that must hold for every profile; hypothesis
generates the profiles and shrinks any failure to a small one.
"""

import pytest
from fractions import Fraction as F
from hypothesis import assume, given, settings, strategies as st

from src.efficiency import (
    brute_force_dominance,
    dominated_iff_not_same_sided,
    grid_matchings,
    improve_to_same_sided,
    lottery_dominates,
)
from src.mechanisms import create_mechanism
from src.model import (
    Profile,
    classify_objects,
    distances,
    ed_shortfall,
    es_surplus,
    is_same_sided,
    l1_distance,
    validate_matching,
)
from src.profiles import between_sample
from src.uniform_rule import PeakVector, equal_split_uniform_rule, uniform_rule


@st.composite
def grid_lotteries(draw, n, denominator):
    """An ideal lottery with shares in multiples of 1/denominator"""
    units = draw(st.lists(st.integers(0, n - 1), min_size=denominator, max_size=denominator))
    return tuple(F(units.count(a), denominator) for a in range(n))


@st.composite
def grid_profiles(draw, min_n=2, max_n=4, max_denominator=8):
    n = draw(st.integers(min_n, max_n))
    denominator = draw(st.integers(1, max_denominator))
    return Profile.from_rows([draw(grid_lotteries(n, denominator)) for _ in range(n)])


@st.composite
def profiles_with_sequences(draw):
    c = draw(grid_profiles(max_n=5, max_denominator=12))
    alpha = draw(st.permutations(range(c.n)))
    beta = draw(st.permutations(range(c.n)))
    return c, tuple(alpha), tuple(beta)


peak_vectors = st.lists(
    st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=1, max_size=6
)


@pytest.mark.parametrize('tag', ['urc', 'sdc', 'pdc'])
@settings(max_examples=60, deadline=None)
@given(c=grid_profiles())
def test_two_phase_outcomes_are_efficient(tag, c):
    """Property: two-phase mechanisms return same-sided bistochastic matchings"""
    matching = create_mechanism(tag)(c)
    assert validate_matching(matching)
    assert is_same_sided(c, matching)


@pytest.mark.parametrize('tag', ['urc', 'sdc', 'pdc'])
@settings(max_examples=60, deadline=None)
@given(c=grid_profiles())
def test_welfare_from_either_side(tag, c):
    """Property: on same-sided matchings distance is twice the ED shortfall and twice the ES surplus"""
    matching = create_mechanism(tag)(c)
    classification = classify_objects(c)
    for i, d in enumerate(distances(c, matching)):
        assert d == 2 * ed_shortfall(c, matching, i, classification)
        assert d == 2 * es_surplus(c, matching, i, classification)


@settings(max_examples=1000, deadline=None)
@given(case=profiles_with_sequences())
def test_urc_welfare_ignores_sequences(case):
    """Property: every agent's URC distance is the same for all (alpha, beta)"""
    c, alpha, beta = case
    reference = distances(c, create_mechanism('urc')(c))
    assert distances(c, create_mechanism('urc', alpha=alpha, beta=beta)(c)) == reference


@settings(max_examples=100, deadline=None)
@given(case=profiles_with_sequences())
def test_urc_ed_columns_follow_uniform_rule(case):
    """Property: URC allocates every excess-demand object by the uniform rule"""
    c, alpha, beta = case
    matching = create_mechanism('urc', alpha=alpha, beta=beta)(c)
    for a in classify_objects(c).ed:
        assert matching.column(a) == uniform_rule(c.column(a))


@settings(max_examples=200, deadline=None)
@given(peaks=peak_vectors)
def test_uniform_rule_matches_equal_split(peaks):
    v = PeakVector(tuple(peaks))
    shares = uniform_rule(v)
    assert shares == equal_split_uniform_rule(v)
    assert sum(shares) == 1


@settings(max_examples=1000, deadline=None)
@given(c=grid_profiles(min_n=3, max_n=4), data=st.data())
def test_urc_stable_under_in_between_reports(c, data):
    """Property: moving the peak toward the URC allocation keeps that agent's allocation"""
    urc = create_mechanism('urc')
    before = urc(c)
    i = data.draw(st.integers(0, c.n - 1))
    seed = data.draw(st.integers(0, 2 ** 32 - 1))

    after = urc(c.replace(i, between_sample(c[i], before[i], seed)))

    assert after[i] == before[i]
    for j in range(c.n):
        for a in classify_objects(c).ed:
            assert after[j][a] == before[j][a]


@settings(max_examples=40, deadline=None)
@given(c=grid_profiles(max_n=3, max_denominator=6))
def test_repair_dominates_equal_division(c):
    """Property: a non-same-sided matching is repaired into a dominating one"""
    equal = create_mechanism('equal')(c)
    assume(not is_same_sided(c, equal))

    improved = improve_to_same_sided(c, equal)

    assert validate_matching(improved)
    assert is_same_sided(c, improved)
    assert lottery_dominates(c, improved, equal)


FIFTH_GRID_MATCHINGS = list(grid_matchings(3, 5))


@settings(max_examples=200, deadline=None)
@given(
    rows=st.lists(grid_lotteries(3, 5), min_size=3, max_size=3),
    matching=st.sampled_from(FIFTH_GRID_MATCHINGS),
)
def test_same_sidedness_matches_dominance_search(rows, matching):
    """Property: a fifth-grid dominator exists exactly when the matching is not same-sided"""
    c = Profile.from_rows(rows)
    assert dominated_iff_not_same_sided(c, matching, 5)
    assert brute_force_dominance(c, create_mechanism('urc')(c), 5) is None
    if not is_same_sided(c, matching):
        improved = improve_to_same_sided(c, matching)
        assert is_same_sided(c, improved)
        assert lottery_dominates(c, improved, matching)


@settings(max_examples=300, deadline=None)
@given(data=st.data(), n=st.integers(1, 5), denominator=st.integers(1, 12))
def test_l1_distance_is_a_metric(data, n, denominator):
    p, q, r = (data.draw(grid_lotteries(n, denominator)) for _ in range(3))
    assert l1_distance(p, p) == 0
    assert l1_distance(p, q) == l1_distance(q, p)
    assert (l1_distance(p, q) == 0) == (p == q)
    assert l1_distance(p, r) <= l1_distance(p, q) + l1_distance(q, r)
    assert l1_distance(p, q) <= 2


@settings(max_examples=300, deadline=None)
@given(c=grid_profiles(min_n=1, max_n=6, max_denominator=12))
def test_classification_partitions_objects(c):
    """Property: every object is in exactly one of ED, ES and UN, by its column sum"""
    classification = classify_objects(c)
    assert classification.ed | classification.es | classification.un == set(range(c.n))
    assert not classification.ed & classification.es
    assert not classification.ed & classification.un
    assert not classification.es & classification.un
    for a in range(c.n):
        total = c.column_sum(a)
        assert (a in classification.ed) == (total > 1)
        assert (a in classification.es) == (total < 1)
