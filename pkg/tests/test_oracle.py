import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uavmarl.oracle import (ExplicitMdp, MdpSampler, bellman_operator, greedy_policy,
                            policy_evaluation, q_learning_on_mdp, random_mdp, state_value_from_q,
                            sup_norm, value_iteration)


def one_state(reward=1.0, discount=0.5):
    return ExplicitMdp(np.ones((1, 1, 1)), np.full((1, 1, 1), reward), discount)


def test_bellman_examples():
    assert bellman_operator(one_state(), np.zeros((1, 1)))[0, 0] == 1.0
    mdp = random_mdp(np.random.default_rng(0), 3, 2, 0.0)
    assert np.allclose(bellman_operator(mdp, np.ones((3, 2)) * 50), mdp.expected_reward)
    mdp = random_mdp(np.random.default_rng(1), 4, 3, 0.9)
    q_star = value_iteration(mdp, tol=1e-12)
    assert sup_norm(bellman_operator(mdp, q_star) - q_star) < 1e-9


def test_value_iteration_examples():
    assert value_iteration(one_state())[0, 0] == pytest.approx(2.0, abs=1e-9)
    mdp = random_mdp(np.random.default_rng(2), 3, 2, 0.0)
    assert np.allclose(value_iteration(mdp), mdp.expected_reward)
    mdp = random_mdp(np.random.default_rng(3), 4, 3, 0.9)
    q = value_iteration(mdp, tol=1e-10)
    assert sup_norm(bellman_operator(mdp, q) - q) < 1e-10


def test_state_value_examples():
    q = np.array([[1.0, 3.0]])
    assert state_value_from_q(q, [[0.5, 0.5]])[0] == 2.0
    assert state_value_from_q(q, [[0.0, 1.0]])[0] == 3.0
    with pytest.raises(ValueError):
        state_value_from_q(q, [[0.5, 0.6]])


def test_policy_evaluation_examples():
    assert policy_evaluation(one_state(discount=0.9), [[1.0]])[0] == pytest.approx(10.0, abs=1e-8)
    mdp = random_mdp(np.random.default_rng(4), 3, 2, 0.0)
    pi = np.full((3, 2), 0.5)
    assert np.allclose(policy_evaluation(mdp, pi), (pi * mdp.expected_reward).sum(axis=1))


def test_policy_evaluation_matches_linear_solve():
    mdp = random_mdp(np.random.default_rng(5), 5, 3, 0.9)
    pi = np.random.default_rng(6).dirichlet(np.ones(3), size=5)
    P = np.einsum("sa,sat->st", pi, mdp.transition)
    r = (pi * mdp.expected_reward).sum(axis=1)
    exact = np.linalg.solve(np.eye(5) - 0.9 * P, r)
    assert np.allclose(policy_evaluation(mdp, pi, tol=1e-13), exact, atol=1e-9)


def test_greedy_value_is_max_q():
    mdp = random_mdp(np.random.default_rng(7), 4, 3, 0.8)
    q_star = value_iteration(mdp, tol=1e-13)
    v = policy_evaluation(mdp, greedy_policy(q_star), tol=1e-13)
    assert np.allclose(v, q_star.max(axis=1), atol=1e-9)


def test_mdp_validation():
    with pytest.raises(ValueError):
        ExplicitMdp(np.full((2, 1, 2), 0.6), np.zeros((2, 1, 2)), 0.5)
    with pytest.raises(ValueError):
        ExplicitMdp(np.ones((1, 1, 1)), np.zeros((1, 1, 1)), 1.0)
    with pytest.raises(ValueError):
        ExplicitMdp(np.ones((1, 1, 1)), np.zeros((1, 2, 1)), 0.5)
    with pytest.raises(ValueError):
        bellman_operator(one_state(), np.zeros((2, 1)))


mdps = st.tuples(st.integers(0, 100_000), st.integers(1, 6), st.integers(1, 4),
                 st.sampled_from([0.0, 0.5, 0.9, 0.99]))


@given(mdps)
@settings(max_examples=100)
def test_bellman_is_a_contraction(spec):
    seed, S, A, delta = spec
    rng = np.random.default_rng(seed)
    mdp = random_mdp(rng, S, A, delta)
    q1, q2 = rng.normal(scale=10, size=(2, S, A))
    lhs = sup_norm(bellman_operator(mdp, q1) - bellman_operator(mdp, q2))
    assert lhs <= delta * sup_norm(q1 - q2) + 1e-12


@given(mdps)
@settings(max_examples=100)
def test_bellman_is_monotone(spec):
    seed, S, A, delta = spec
    rng = np.random.default_rng(seed)
    mdp = random_mdp(rng, S, A, delta)
    q1 = rng.normal(size=(S, A))
    q2 = q1 + rng.uniform(0, 1, size=(S, A))
    assert np.all(bellman_operator(mdp, q1) <= bellman_operator(mdp, q2) + 1e-12)


def test_sampler_follows_transition_law():
    mdp = random_mdp(np.random.default_rng(8), 3, 2, 0.5)
    sampler = MdpSampler(mdp, [np.random.default_rng(s) for s in range(4000)])
    u = sampler.uniforms(1)[0, :, 1]
    _, nxt = sampler.transition(np.zeros(4000, dtype=int), np.ones(4000, dtype=int), u)
    freq = np.bincount(nxt, minlength=3) / 4000
    assert np.allclose(freq, mdp.transition[0, 1], atol=0.03)


def test_batched_q_learning_is_seed_local():
    mdp = random_mdp(np.random.default_rng(9), 3, 2, 0.5)
    q_all = q_learning_on_mdp(mdp, 2000, [0, 1, 2])
    q_one = q_learning_on_mdp(mdp, 2000, [1], chunk=300)
    assert np.array_equal(q_all[1], q_one[0])


def test_q_learning_approaches_fixed_point():
    mdp = random_mdp(np.random.default_rng(10), 2, 2, 0.3)
    q_star = value_iteration(mdp, tol=1e-10)
    q = q_learning_on_mdp(mdp, 20_000, range(5))
    assert np.max(np.abs(q - q_star)) < 0.1
