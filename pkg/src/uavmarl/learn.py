"""Independent tabular Q-learning for the UAV agents.

Every UAV keeps a ``2 x |actions|`` table indexed by its binary QoS state,
explores epsilon-greedily and updates with a polynomially decaying learning
rate. Agents never see each other's actions or rewards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .env import Environment
from .metrics import EpisodeLog
from .streams import stream

if TYPE_CHECKING:
    from .scenario import Scenario

NUM_STATES = 2
TIE_BREAKS = ("first", "random")


@dataclass(frozen=True)
class LearningConfig:
    discount: float = 1.0
    epsilon: float = 0.5
    c_alpha: float = 0.5
    phi_alpha: float = 0.8
    clamp_alpha: bool = True
    # "first": lowest-index argmax; "random": uniform over the argmax set
    tie_break: str = "first"

    def __post_init__(self):
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"tie_break must be one of {TIE_BREAKS}, got {self.tie_break!r}")
        if not 0.0 <= self.discount <= 1.0:
            raise ValueError(f"discount must lie in [0, 1], got {self.discount}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        _check_schedule(self.c_alpha, self.phi_alpha)


def _check_schedule(c_alpha, phi_alpha):
    if not c_alpha > 0:
        raise ValueError(f"c_alpha must be positive, got {c_alpha}")
    if not 0.5 < phi_alpha <= 1.0:
        raise ValueError(f"phi_alpha must lie in (1/2, 1], got {phi_alpha}")


def learning_rate(t, c_alpha: float, phi_alpha: float, clamp: bool = True):
    """``1 / (t + c_alpha) ** phi_alpha``, optionally capped at 1.

    With small ``c_alpha`` the first few rates exceed 1, which turns the
    update into an extrapolation; clamping keeps it a convex combination.
    """
    _check_schedule(c_alpha, phi_alpha)
    if np.any(np.asarray(t) < 0):
        raise ValueError("slot index must be >= 0")
    alpha = 1.0 / (np.asarray(t, dtype=float) + c_alpha) ** phi_alpha
    if clamp:
        alpha = np.minimum(alpha, 1.0)
    return float(alpha) if alpha.ndim == 0 else alpha


def zero_q_table(num_actions: int, num_states: int = NUM_STATES) -> np.ndarray:
    return np.zeros((num_states, num_actions))


def select_action(q: np.ndarray, state: int, epsilon: float,
                  rng: np.random.Generator,
                  tie_rng: np.random.Generator | None = None,
                  tie_break: str = "random") -> int:
    """Epsilon-greedy draw from row ``state`` of ``q``.

    One uniform is drawn from ``rng`` for the explore coin. Exploration then
    draws the action from ``rng``; exploitation with ``tie_break="random"``
    draws the argmax tie-break from ``tie_rng`` (``rng`` if not given).
    """
    row = q[state]
    if rng.random() < epsilon:
        return int(rng.integers(len(row)))
    if tie_break == "first":
        return int(np.argmax(row))
    tie_rng = rng if tie_rng is None else tie_rng
    best = np.flatnonzero(row == row.max())
    return int(best[tie_rng.integers(len(best))])


def epsilon_greedy_policy(q: np.ndarray, epsilon: float, tie_break: str = "random") -> np.ndarray:
    """Action probabilities matching ``select_action``.

    Each action gets ``epsilon / n``; the remaining ``1 - epsilon`` goes to
    the first argmax, or is split evenly over the argmax set.
    """
    q = np.asarray(q, dtype=float)
    n = q.shape[-1]
    if tie_break == "first":
        best = np.zeros(q.shape, dtype=bool)
        np.put_along_axis(best, q.argmax(axis=-1)[..., None], True, axis=-1)
    else:
        best = q == q.max(axis=-1, keepdims=True)
    return epsilon / n + (1.0 - epsilon) * best / best.sum(axis=-1, keepdims=True)


def q_update(q: np.ndarray, state, action, reward, next_state, alpha, discount: float) -> np.ndarray:
    """One temporal-difference step, in place; returns ``q``.

    ``q`` is either a single ``(S, A)`` table with scalar indices, or a batch
    ``(B, S, A)`` with index/reward arrays of length ``B`` (one entry updated
    per table).
    """
    if q.ndim == 2:
        target = reward + discount * q[next_state].max()
        q[state, action] += alpha * (target - q[state, action])
        return q
    b = np.arange(q.shape[0])
    target = reward + discount * q[b, next_state].max(axis=-1)
    q[b, state, action] += alpha * (target - q[b, state, action])
    return q


class IndependentLearner:
    """Q-learning agent for one UAV."""

    def __init__(self, num_actions: int, config: LearningConfig,
                 rng: np.random.Generator, tie_rng: np.random.Generator):
        self.config = config
        self.q = zero_q_table(num_actions)
        self.state = 0
        self.rng = rng
        self.tie_rng = tie_rng

    @property
    def policy(self) -> np.ndarray:
        return epsilon_greedy_policy(self.q, self.config.epsilon, self.config.tie_break)

    def act(self) -> int:
        return select_action(self.q, self.state, self.config.epsilon, self.rng,
                             self.tie_rng, self.config.tie_break)

    def observe(self, action: int, reward: float, next_state: int, t: int):
        c = self.config
        alpha = learning_rate(t, c.c_alpha, c.phi_alpha, c.clamp_alpha)
        q_update(self.q, self.state, action, reward, next_state, alpha, c.discount)
        self.state = next_state


def run_episode(scenario: "Scenario", configs: Sequence[LearningConfig] | LearningConfig | None = None,
                seed: int = 0, num_slots: int | None = None) -> EpisodeLog:
    """Run the independent Q-learning loop for ``num_slots`` (default: scenario's).

    All agents choose from their own state first; observations are computed
    from the joint action before any agent updates, so the update order is
    irrelevant.
    """
    env = Environment(scenario, seed)
    M = env.num_uavs
    if configs is None:
        configs = scenario.learning
    if isinstance(configs, LearningConfig):
        configs = [configs] * M
    if len(configs) != M:
        raise ValueError(f"need one learning config per UAV ({M}), got {len(configs)}")

    agents = [IndependentLearner(len(env.action_space), cfg,
                                 stream(seed, "explore", m), stream(seed, "tiebreak", m))
              for m, cfg in enumerate(configs)]
    T = scenario.world.num_slots if num_slots is None else num_slots
    log = EpisodeLog.empty(T, M, metadata=dict(scenario_hash=scenario.digest(),
                                               seed=int(seed), algorithm="marl"))
    state = env.reset()
    for t in range(T):
        idx = [a.act() for a in agents]
        joint = [env.action_space.decode(i) for i in idx]
        gamma, _, _ = env.evaluate(state.gains, joint)
        state, obs = env.step(state, joint)
        for agent, i, o in zip(agents, idx, obs):
            agent.observe(i, o.reward, o.state, t)
        log.record(t, idx, [o.state for o in obs], [o.reward for o in obs], gamma)
    log.q_tables = [a.q.copy() for a in agents]
    return log
