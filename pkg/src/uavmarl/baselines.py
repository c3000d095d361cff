"""Comparison schemes: per-slot Gale-Shapley user matching and uniform random choice.

The matching baseline has complete information: every slot it ranks users by
the fresh gain matrix and runs UAV-proposing deferred acceptance. UAVs rank
users by their interference-free link utility (rate minus power cost, which
is monotone in gain); users rank UAVs by received gain. Ties go to the lower
index on both sides. It supports only one subchannel and one power level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .channel import GainMatrix
from .env import Environment
from .metrics import EpisodeLog
from .radio import Action, PowerLevels, RewardParams, rate
from .streams import stream

if TYPE_CHECKING:
    from .scenario import Scenario


class UnsupportedConfiguration(ValueError):
    pass


class InfeasibleMatching(ValueError):
    pass


@dataclass(frozen=True)
class PreferenceProfile:
    uav_prefs: tuple[tuple[int, ...], ...]
    user_prefs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M, L = len(self.uav_prefs), len(self.user_prefs)
        for p in self.uav_prefs:
            if sorted(p) != list(range(L)):
                raise ValueError(f"UAV preference list {p} is not a permutation of users")
        for p in self.user_prefs:
            if sorted(p) != list(range(M)):
                raise ValueError(f"user preference list {p} is not a permutation of UAVs")


def _rank_desc(values) -> tuple[int, ...]:
    # stable sort on the negated key keeps lower indices first among ties
    return tuple(int(i) for i in np.argsort(-np.asarray(values), kind="stable"))


def build_preferences(gains: GainMatrix, levels: PowerLevels, params: RewardParams) -> PreferenceProfile:
    M, L, K = gains.shape
    if K != 1 or len(levels) != 1:
        raise UnsupportedConfiguration(
            f"matching baseline needs K=1 and J=1, got K={K}, J={len(levels)}")
    g = gains.gains[:, :, 0]
    p = levels[0]
    utility = rate(g * p / params.noise_mw, params.bandwidth_per_subchannel_hz) - params.power_cost * p
    return PreferenceProfile(
        uav_prefs=tuple(_rank_desc(utility[m]) for m in range(M)),
        user_prefs=tuple(_rank_desc(g[:, l]) for l in range(L)),
    )


def gale_shapley(prefs: PreferenceProfile) -> tuple[int, ...]:
    """UAV-proposing deferred acceptance; returns the user matched to each UAV."""
    M, L = len(prefs.uav_prefs), len(prefs.user_prefs)
    if M > L:
        raise InfeasibleMatching(f"cannot match {M} UAVs to only {L} users one-to-one")
    # rank[l][m]: position of UAV m in user l's list (lower is better)
    rank = np.empty((L, M), dtype=np.int64)
    for l, order in enumerate(prefs.user_prefs):
        rank[l, list(order)] = np.arange(M)

    next_choice = [0] * M
    held = [-1] * L
    free = list(range(M - 1, -1, -1))
    while free:
        m = free.pop()
        l = prefs.uav_prefs[m][next_choice[m]]
        next_choice[m] += 1
        cur = held[l]
        if cur < 0:
            held[l] = m
        elif rank[l, m] < rank[l, cur]:
            held[l] = m
            free.append(cur)
        else:
            free.append(m)

    match = [-1] * M
    for l, m in enumerate(held):
        if m >= 0:
            match[m] = l
    return tuple(match)


def blocking_pairs(prefs: PreferenceProfile, match: Sequence[int]) -> list[tuple[int, int]]:
    """Every (UAV, user) pair that would both rather be with each other."""
    M, L = len(prefs.uav_prefs), len(prefs.user_prefs)
    partner_of_user = {l: m for m, l in enumerate(match)}
    out = []
    for m in range(M):
        mine = prefs.uav_prefs[m]
        for l in range(L):
            if mine.index(l) >= mine.index(match[m]):
                continue
            cur = partner_of_user.get(l)
            if cur is None or prefs.user_prefs[l].index(m) < prefs.user_prefs[l].index(cur):
                out.append((m, l))
    return out


def random_policy(scenario: "Scenario", rng: np.random.Generator) -> list[Action]:
    """Each UAV independently draws a uniform (user, subchannel, power level)."""
    shape = (scenario.num_users, scenario.num_subchannels, scenario.num_power_levels)
    n = shape[0] * shape[1] * shape[2]
    idx = rng.integers(n, size=scenario.num_uavs)
    return [Action(*(int(i) for i in np.unravel_index(k, shape))) for k in idx]


def run_baseline(scenario: "Scenario", algorithm: str, seed: int = 0,
                 num_slots: int | None = None) -> EpisodeLog:
    """Run ``"match"`` or ``"random"`` in the same environment loop as the learners."""
    if algorithm not in ("match", "random"):
        raise ValueError(f"unknown baseline {algorithm!r}")
    env = Environment(scenario, seed)
    if algorithm == "match" and (scenario.num_subchannels != 1 or scenario.num_power_levels != 1):
        raise UnsupportedConfiguration(
            f"matching baseline needs K=1 and J=1, got K={scenario.num_subchannels}, "
            f"J={scenario.num_power_levels}")
    if algorithm == "match" and scenario.num_uavs > scenario.num_users:
        raise InfeasibleMatching(f"M={scenario.num_uavs} exceeds L={scenario.num_users}")

    rng = stream(seed, "baseline")
    T = scenario.world.num_slots if num_slots is None else num_slots
    log = EpisodeLog.empty(T, env.num_uavs, metadata=dict(scenario_hash=scenario.digest(),
                                                          seed=int(seed), algorithm=algorithm))
    state = env.reset()
    for t in range(T):
        if algorithm == "match":
            prefs = build_preferences(state.gains, env.levels, env.reward_params)
            joint = [Action(l, 0, 0) for l in gale_shapley(prefs)]
        else:
            joint = random_policy(scenario, rng)
        gamma, _, _ = env.evaluate(state.gains, joint)
        state, obs = env.step(state, joint)
        log.record(t, [env.action_space.encode(a) for a in joint],
                   [o.state for o in obs], [o.reward for o in obs], gamma)
    return log
