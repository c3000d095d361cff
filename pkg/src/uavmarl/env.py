"""The multi-UAV stochastic game as seen by independent learners.

The environment owns the static parts of an episode (users, trajectories,
channel model) and exposes a pure ``step``: the next game state and every
agent's observation depend only on the current state and the joint action.
Transition probabilities are never materialised; they emerge from geometry
and the channel model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import radio
from .channel import GainMatrix, build_gain_matrix
from .radio import Action, ActionSpace
from .streams import stream
from .world import Position, Trajectory, UserField, sample_users, uav_position

if TYPE_CHECKING:
    from .scenario import Scenario


@dataclass(frozen=True)
class AgentObservation:
    """What one UAV learns after a slot: its own QoS bit and reward, nothing else."""

    state: int
    reward: float
    slot: int


@dataclass(frozen=True)
class GameState:
    slot: int
    uav_positions: tuple[Position, ...]
    gains: GainMatrix
    agent_states: tuple[int, ...]


JointAction = Sequence[Action]


def action_space_size(scenario: "Scenario") -> int:
    return scenario.num_users * scenario.num_subchannels * scenario.num_power_levels


class Environment:
    """One episode's world: users, UAV flight lines and channel for a seed."""

    def __init__(self, scenario: "Scenario", seed: int):
        self.scenario = scenario
        self.seed = int(seed)
        sc = scenario
        self.world = sc.world
        self.levels = sc.power_levels
        self.reward_params = sc.reward_params
        self.channel_model = sc.channel_model
        self.action_space = ActionSpace(sc.num_users, sc.num_subchannels, sc.num_power_levels)

        self.users: UserField = sample_users(sc.num_users, sc.world.radius_m,
                                             stream(seed, "users"))
        angles = sc.start_angles_rad(stream(seed, "angles"))
        self.trajectories = tuple(
            Trajectory.through_center(a, sc.world.radius_m, v)
            for a, v in zip(angles, sc.speeds)
        )

    @property
    def num_uavs(self) -> int:
        return len(self.trajectories)

    def positions_at(self, t: int) -> tuple[Position, ...]:
        return tuple(uav_position(tr, t, self.world.slot_duration_s) for tr in self.trajectories)

    def gains_at(self, t: int, positions: Sequence[Position] | None = None) -> GainMatrix:
        if positions is None:
            positions = self.positions_at(t)
        # keyed by slot so a step never depends on how many draws came before
        rng = stream(self.seed, "channel", t)
        return build_gain_matrix(self.channel_model, positions, self.users.positions,
                                 self.world.uav_altitude_m, self.scenario.num_subchannels,
                                 rng=rng, slot=t)

    def reset(self) -> GameState:
        pos = self.positions_at(0)
        return GameState(0, pos, self.gains_at(0, pos), (0,) * self.num_uavs)

    def evaluate(self, gains: GainMatrix, joint: JointAction):
        """SINR, reward and QoS bit of every UAV under ``joint`` and ``gains``."""
        joint = [Action(*a) for a in joint]
        gamma = radio.sinr_all(joint, gains, self.levels, self.reward_params.noise_mw)
        power = self.levels.as_array()[[a.power_level for a in joint]]
        r, s = radio.reward_from_sinr(gamma, power, self.reward_params)
        return gamma, r, s

    def step(self, state: GameState, joint: JointAction):
        """Apply ``joint`` in ``state``; return the next state and per-agent observations."""
        if len(joint) != self.num_uavs:
            raise ValueError(f"joint action has {len(joint)} entries, expected {self.num_uavs}")
        _, r, s = self.evaluate(state.gains, joint)
        obs = [AgentObservation(int(s[m]), float(r[m]), state.slot) for m in range(self.num_uavs)]

        t_next = state.slot + 1
        pos = self.positions_at(t_next)
        nxt = GameState(t_next, pos, self.gains_at(t_next, pos), tuple(int(x) for x in s))
        return nxt, obs


def reset(scenario: "Scenario", seed: int) -> tuple[Environment, GameState]:
    env = Environment(scenario, seed)
    return env, env.reset()
