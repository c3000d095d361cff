"""Ground truth for the learning code on small explicit MDPs.

Provides the Bellman optimality operator, value iteration, policy
evaluation and a sampling simulator, each written directly from the
transition/reward arrays so they can check ``learn`` without sharing any of
its code paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ExplicitMdp:
    """Finite MDP with ``transition[s, a, s']`` and ``reward[s, a, s']``."""

    transition: np.ndarray
    reward: np.ndarray
    discount: float

    def __post_init__(self):
        F, R = self.transition, self.reward
        if F.ndim != 3 or F.shape[0] != F.shape[2]:
            raise ValueError(f"transition must be [S][A][S], got shape {F.shape}")
        if R.shape != F.shape:
            raise ValueError(f"reward shape {R.shape} does not match transition {F.shape}")
        if np.any(F < 0) or not np.allclose(F.sum(axis=2), 1.0, atol=1e-9, rtol=0):
            raise ValueError("transition rows must be probability distributions")
        if not 0.0 <= self.discount < 1.0:
            raise ValueError(f"discount must lie in [0, 1), got {self.discount}")

    @property
    def num_states(self) -> int:
        return self.transition.shape[0]

    @property
    def num_actions(self) -> int:
        return self.transition.shape[1]

    @property
    def expected_reward(self) -> np.ndarray:
        return (self.transition * self.reward).sum(axis=2)


def random_mdp(rng: np.random.Generator, num_states: int, num_actions: int,
               discount: float) -> ExplicitMdp:
    """Flat-Dirichlet transitions and rewards uniform on [-1, 1]."""
    F = rng.dirichlet(np.ones(num_states), size=(num_states, num_actions))
    R = rng.uniform(-1.0, 1.0, size=(num_states, num_actions, num_states))
    return ExplicitMdp(F, R, discount)


def _check_q(mdp: ExplicitMdp, q):
    q = np.asarray(q, dtype=float)
    if q.shape != (mdp.num_states, mdp.num_actions):
        raise ValueError(f"Q shape {q.shape} does not match MDP ({mdp.num_states}, {mdp.num_actions})")
    return q


def bellman_operator(mdp: ExplicitMdp, q) -> np.ndarray:
    """``(Hq)(s, a) = sum_s' F(s, a, s') [R(s, a, s') + discount * max_a' q(s', a')]``."""
    q = _check_q(mdp, q)
    v_next = q.max(axis=1)
    return (mdp.transition * (mdp.reward + mdp.discount * v_next[None, None, :])).sum(axis=2)


def value_iteration(mdp: ExplicitMdp, tol: float = 1e-10, max_iter: int = 1_000_000) -> np.ndarray:
    """Iterate ``H`` from zero until successive iterates differ by less than ``tol``.

    The returned table is within ``tol * discount / (1 - discount)`` of the
    fixed point in sup-norm.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    q = np.zeros((mdp.num_states, mdp.num_actions))
    for _ in range(max_iter):
        q_next = bellman_operator(mdp, q)
        if np.max(np.abs(q_next - q)) < tol:
            return q_next
        q = q_next
    raise RuntimeError("value iteration did not converge")


def state_value_from_q(q, policy) -> np.ndarray:
    """``V(s) = sum_a pi(s, a) Q(s, a)``."""
    q = np.asarray(q, dtype=float)
    policy = np.asarray(policy, dtype=float)
    if policy.shape != q.shape:
        raise ValueError(f"policy shape {policy.shape} does not match Q {q.shape}")
    if np.any(policy < 0) or not np.allclose(policy.sum(axis=1), 1.0, atol=1e-9, rtol=0):
        raise ValueError("policy rows must be probability distributions")
    return (policy * q).sum(axis=1)


def greedy_policy(q) -> np.ndarray:
    """Deterministic policy on the first argmax of each row."""
    q = np.asarray(q, dtype=float)
    pi = np.zeros_like(q)
    pi[np.arange(q.shape[0]), q.argmax(axis=1)] = 1.0
    return pi


def policy_evaluation(mdp: ExplicitMdp, policy, tol: float = 1e-10,
                      max_iter: int = 1_000_000) -> np.ndarray:
    """State values of ``policy`` by iterating the expectation backup."""
    policy = np.asarray(policy, dtype=float)
    v = np.zeros(mdp.num_states)
    for _ in range(max_iter):
        v_next = policy_backup(mdp, policy, v)
        if np.max(np.abs(v_next - v)) < tol:
            return v_next
        v = v_next
    raise RuntimeError("policy evaluation did not converge")


def policy_backup(mdp: ExplicitMdp, policy, v) -> np.ndarray:
    """``sum_a pi(s, a) sum_s' F(s, a, s') [R(s, a, s') + discount * v(s')]``."""
    inner = (mdp.transition * (mdp.reward + mdp.discount * np.asarray(v)[None, None, :])).sum(axis=2)
    return (np.asarray(policy) * inner).sum(axis=1)


def sup_norm(x) -> float:
    return float(np.max(np.abs(x)))


class MdpSampler:
    """Draws ``(reward, next_state)`` transitions for a batch of independent chains.

    Each chain in the batch has its own generator so that results for a given
    seed do not depend on the batch it is run in.
    """

    def __init__(self, mdp: ExplicitMdp, rngs):
        self.mdp = mdp
        self.rngs = list(rngs)
        self._cdf = np.cumsum(mdp.transition, axis=2)
        self._cdf[..., -1] = 1.0

    def __len__(self):
        return len(self.rngs)

    def uniforms(self, n: int) -> np.ndarray:
        """``(n, B, 2)`` block of uniforms: one for the action, one for the transition."""
        return np.stack([r.random((n, 2)) for r in self.rngs], axis=1)

    def transition(self, state, action, u) -> tuple[np.ndarray, np.ndarray]:
        cdf = self._cdf[state, action]
        nxt = (u[:, None] >= cdf).sum(axis=1)
        nxt = np.minimum(nxt, self.mdp.num_states - 1)
        return self.mdp.reward[state, action, nxt], nxt


def q_learning_on_mdp(mdp: ExplicitMdp, steps: int, seeds, c_alpha: float = 0.5,
                      phi_alpha: float = 0.8, clamp: bool = True, chunk: int = 10_000,
                      q_star=None, record_every: int = 0):
    """Uniform-exploration Q-learning on ``mdp``, one chain per seed, vectorised.

    Uses ``learn.q_update`` and ``learn.learning_rate`` so the learner under
    test is exactly the one driving the UAV agents. Returns the final tables
    ``(B, S, A)``; with ``q_star`` and ``record_every`` also returns the
    sup-norm error trace ``(n_records, B)``.
    """
    from .learn import learning_rate, q_update

    sampler = MdpSampler(mdp, [np.random.default_rng(s) for s in seeds])
    B, S, A = len(sampler), mdp.num_states, mdp.num_actions
    q = np.zeros((B, S, A))
    state = np.zeros(B, dtype=np.int64)
    trace = []
    t = 0
    while t < steps:
        n = min(chunk, steps - t)
        u = sampler.uniforms(n)
        alphas = learning_rate(np.arange(t, t + n), c_alpha, phi_alpha, clamp)
        for i in range(n):
            action = np.minimum((u[i, :, 0] * A).astype(np.int64), A - 1)
            r, nxt = sampler.transition(state, action, u[i, :, 1])
            q_update(q, state, action, r, nxt, alphas[i], mdp.discount)
            state = nxt
            if record_every and q_star is not None and (t + i + 1) % record_every == 0:
                trace.append(np.abs(q - q_star).max(axis=(1, 2)))
        t += n
    if record_every and q_star is not None:
        return q, np.array(trace)
    return q
