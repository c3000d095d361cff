import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uavmarl.baselines import (InfeasibleMatching, PreferenceProfile, UnsupportedConfiguration,
                               blocking_pairs, build_preferences, gale_shapley, random_policy,
                               run_baseline)
from uavmarl.channel import GainMatrix
from uavmarl.radio import PowerLevels, RewardParams
from uavmarl.scenario import user_selection_scenario

ONE_LEVEL = PowerLevels((199.5,))
PARAMS = RewardParams()


def prefs_from_gains(g):
    return build_preferences(GainMatrix(np.asarray(g, dtype=float)[:, :, None]), ONE_LEVEL, PARAMS)


def test_preferences_follow_gain():
    p = prefs_from_gains([[3e-10, 1e-10], [2e-10, 4e-10]])
    assert p.uav_prefs == ((0, 1), (1, 0))
    assert p.user_prefs == ((0, 1), (1, 0))


def test_equal_gains_rank_by_index():
    p = prefs_from_gains(np.full((3, 4), 1e-10))
    assert p.uav_prefs == ((0, 1, 2, 3),) * 3
    assert p.user_prefs == ((0, 1, 2),) * 4


def test_preferences_need_single_channel_and_level():
    g = GainMatrix(np.full((2, 2, 2), 1e-10))
    with pytest.raises(UnsupportedConfiguration):
        build_preferences(g, ONE_LEVEL, PARAMS)
    g = GainMatrix(np.full((2, 2, 1), 1e-10))
    with pytest.raises(UnsupportedConfiguration):
        build_preferences(g, PowerLevels((1.0, 2.0)), PARAMS)


def test_profile_validation():
    with pytest.raises(ValueError):
        PreferenceProfile(((0, 0),), ((0,), (0,)))


def test_gale_shapley_examples():
    assert gale_shapley(PreferenceProfile(((2, 0, 1),), ((0,), (0,), (0,)))) == (2,)
    # both UAVs want user 0, who prefers UAV 1
    prefs = PreferenceProfile(((0, 1), (0, 1)), ((1, 0), (0, 1)))
    assert gale_shapley(prefs) == (1, 0)
    with pytest.raises(InfeasibleMatching):
        gale_shapley(PreferenceProfile(((0,), (0,)), ((0, 1),)))


def random_profile(rng, M, L):
    return PreferenceProfile(tuple(tuple(int(x) for x in rng.permutation(L)) for _ in range(M)),
                             tuple(tuple(int(x) for x in rng.permutation(M)) for _ in range(L)))


def stable_matchings(prefs):
    M, L = len(prefs.uav_prefs), len(prefs.user_prefs)
    for match in itertools.permutations(range(L), M):
        if not blocking_pairs(prefs, match):
            yield match


@given(st.integers(0, 100_000), st.integers(1, 5), st.integers(0, 4))
@settings(max_examples=200)
def test_output_is_stable_and_uav_optimal(seed, M, extra):
    L = min(M + extra, 5)
    prefs = random_profile(np.random.default_rng(seed), M, L)
    match = gale_shapley(prefs)
    assert len(set(match)) == M
    assert blocking_pairs(prefs, match) == []
    # every UAV does at least as well as in any other stable matching
    for other in stable_matchings(prefs):
        for m in range(M):
            assert prefs.uav_prefs[m].index(match[m]) <= prefs.uav_prefs[m].index(other[m])


def test_blocking_pair_detected():
    prefs = PreferenceProfile(((0, 1), (0, 1)), ((1, 0), (0, 1)))
    assert blocking_pairs(prefs, (0, 1)) == [(1, 0)]


def test_random_policy_single_choice():
    sc = user_selection_scenario(L=1, M=1, start_angles_deg=[0.0])
    assert [tuple(a) for a in random_policy(sc, np.random.default_rng(0))] == [(0, 0, 0)]


def test_random_policy_is_uniform_and_seeded():
    sc = user_selection_scenario(L=5, M=2, K=2, J=1)
    rng = np.random.default_rng(3)
    draws = [a.user * 2 + a.subchannel for _ in range(5000) for a in random_policy(sc, rng)]
    counts = np.bincount(draws, minlength=10)
    chi2 = ((counts - 1000) ** 2 / 1000).sum()
    assert chi2 < 21.666  # 99th percentile, 9 degrees of freedom
    a = [random_policy(sc, r) for r in [np.random.default_rng(4)] for _ in range(5)]
    b = [random_policy(sc, r) for r in [np.random.default_rng(4)] for _ in range(5)]
    assert a == b


def test_run_baseline_match_is_stable_each_slot():
    sc = user_selection_scenario(L=8, num_slots=20)
    log = run_baseline(sc, "match", seed=1)
    assert log.metadata["algorithm"] == "match"
    assert all(len(set(row)) == 2 for row in log.actions)


def test_run_baseline_rejects_unsupported():
    with pytest.raises(UnsupportedConfiguration):
        run_baseline(user_selection_scenario(J=3), "match")
    with pytest.raises(InfeasibleMatching):
        run_baseline(user_selection_scenario(L=1), "match")
    with pytest.raises(ValueError):
        run_baseline(user_selection_scenario(), "greedy")
