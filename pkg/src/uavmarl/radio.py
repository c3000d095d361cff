"""Actions, SINR, rate and the QoS-gated reward for one slot."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .channel import GainMatrix


@dataclass(frozen=True)
class PowerLevels:
    levels_mw: tuple[float, ...]

    def __post_init__(self):
        lv = np.asarray(self.levels_mw, dtype=float)
        if lv.ndim != 1 or len(lv) < 1:
            raise ValueError("at least one power level is required")
        if np.any(lv <= 0):
            raise ValueError("power levels must be positive")
        if np.any(np.diff(lv) <= 0):
            raise ValueError("power levels must be strictly increasing")

    def __len__(self):
        return len(self.levels_mw)

    def __getitem__(self, j):
        return self.levels_mw[j]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.levels_mw, dtype=float)


class Action(NamedTuple):
    user: int
    subchannel: int
    power_level: int


@dataclass(frozen=True)
class RewardParams:
    bandwidth_per_subchannel_hz: float = 75e3
    power_cost: float = 100.0
    sinr_threshold_linear: float = 10 ** 0.3
    noise_mw: float = 1e-8

    def __post_init__(self):
        for name in ("bandwidth_per_subchannel_hz", "sinr_threshold_linear", "noise_mw"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.power_cost < 0:
            raise ValueError(f"power_cost must be >= 0, got {self.power_cost}")


def dbm_to_mw(dbm):
    return 10.0 ** (np.asarray(dbm, dtype=float) / 10.0)


def power_levels_from_max(max_dbm: float, J: int) -> PowerLevels:
    """Split the maximum power into ``J`` equally spaced levels ``P_max * j / J``."""
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    p_max = float(dbm_to_mw(max_dbm))
    return PowerLevels(tuple(p_max * j / J for j in range(1, J + 1)))


class ActionSpace:
    """Flat indexing of the (user, subchannel, power level) product set.

    Index layout is ``(user * K + subchannel) * J + power_level``.
    """

    def __init__(self, num_users: int, num_subchannels: int, num_power_levels: int):
        self.shape = (num_users, num_subchannels, num_power_levels)
        self.size = num_users * num_subchannels * num_power_levels

    def __len__(self):
        return self.size

    def decode(self, index: int) -> Action:
        if not 0 <= index < self.size:
            raise IndexError(f"action index {index} out of range [0, {self.size})")
        return Action(*(int(i) for i in np.unravel_index(index, self.shape)))

    def encode(self, action: Action) -> int:
        _check_action(action, *self.shape)
        return int(np.ravel_multi_index(tuple(action), self.shape))


def _check_action(a: Action, L: int, K: int, J: int):
    if not (0 <= a.user < L and 0 <= a.subchannel < K and 0 <= a.power_level < J):
        raise ValueError(f"action {tuple(a)} out of range for L={L}, K={K}, J={J}")


def _check_joint(joint: Sequence[Action], gains: GainMatrix, levels: PowerLevels):
    M, L, K = gains.shape
    if len(joint) != M:
        raise ValueError(f"joint action has {len(joint)} entries, expected one per UAV ({M})")
    for a in joint:
        _check_action(a, L, K, len(levels))


def sinr(agent: int, joint_actions: Sequence[Action], gains: GainMatrix,
         levels: PowerLevels, noise_mw: float) -> float:
    """SINR at the user served by ``agent``.

    Only UAVs transmitting on the same subchannel as ``agent`` interfere.
    Powers and noise must share a unit; the ratio does not depend on which.
    """
    _check_joint(joint_actions, gains, levels)
    g = gains.gains
    me = joint_actions[agent]
    signal = g[agent, me.user, me.subchannel] * levels[me.power_level]
    interference = 0.0
    for j, other in enumerate(joint_actions):
        if j != agent and other.subchannel == me.subchannel:
            interference += g[j, me.user, other.subchannel] * levels[other.power_level]
    return float(signal / (interference + noise_mw))


def sinr_all(joint_actions: Sequence[Action], gains: GainMatrix,
             levels: PowerLevels, noise_mw: float) -> np.ndarray:
    """Vectorised ``sinr`` for every UAV at once."""
    _check_joint(joint_actions, gains, levels)
    users = np.array([a.user for a in joint_actions])
    chans = np.array([a.subchannel for a in joint_actions])
    power = levels.as_array()[[a.power_level for a in joint_actions]]
    # rx[j, m]: power from UAV j at the user served by m, on j's own subchannel
    rx = gains.gains[:, users, :][np.arange(len(users)), :, chans] * power[:, None]
    same = chans[:, None] == chans[None, :]
    signal = np.diag(rx)
    interference = np.where(same, rx, 0.0).sum(axis=0) - signal
    return signal / (interference + noise_mw)


def rate(gamma, bandwidth_hz: float):
    """Shannon rate in bit/s."""
    if np.any(np.asarray(gamma) < 0):
        raise ValueError("SINR must be non-negative")
    return bandwidth_hz * np.log2(1.0 + gamma)


def qos_state(gamma, threshold_linear: float):
    return (np.asarray(gamma) >= threshold_linear).astype(int)


def reward_from_sinr(gamma, power_mw, params: RewardParams):
    """Gated reward ``s * (rate - cost * P)`` and the QoS state ``s``.

    The cost term uses the power in milliwatts. Rewards may be negative when
    QoS holds but the power cost exceeds the rate.
    """
    s = qos_state(gamma, params.sinr_threshold_linear)
    net = (rate(gamma, params.bandwidth_per_subchannel_hz)
           - params.power_cost * np.asarray(power_mw, dtype=float))
    # where() rather than s * net: avoids -0.0 for gated-off negative nets
    r = np.where(s == 1, net, 0.0)
    return r, s


def reward(agent: int, joint_actions: Sequence[Action], gains: GainMatrix,
           params: RewardParams, levels: PowerLevels) -> tuple[float, int]:
    gamma = sinr(agent, joint_actions, gains, levels, params.noise_mw)
    p = levels[joint_actions[agent].power_level]
    r, s = reward_from_sinr(gamma, p, params)
    return float(r), int(s)
