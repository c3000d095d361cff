import dataclasses

import numpy as np
import pytest

from uavmarl import radio
from uavmarl.channel import GainMatrix
from uavmarl.env import AgentObservation, Environment, action_space_size, reset
from uavmarl.learn import run_episode
from uavmarl.radio import Action
from uavmarl.scenario import Scenario, crossing_scenario
from uavmarl.world import UserField


def test_reset_starts_unserved(tiny_scenario):
    env, state = reset(tiny_scenario, seed=3)
    assert state.slot == 0
    assert state.agent_states == (0, 0)
    assert len(state.uav_positions) == 2
    assert state.gains.shape == (2, 6, 2)


def test_reset_is_reproducible(tiny_scenario):
    _, a = reset(tiny_scenario, seed=3)
    _, b = reset(tiny_scenario, seed=3)
    assert a.uav_positions == b.uav_positions
    assert np.array_equal(a.gains.gains, b.gains.gains)


def test_action_space_sizes():
    assert action_space_size(crossing_scenario(J=1)) == 100
    assert action_space_size(crossing_scenario()) == 300
    assert action_space_size(crossing_scenario(K=2, J=3)) == 600


def test_close_link_meets_qos(close_range_scenario):
    env, state = reset(close_range_scenario, seed=0)
    nxt, obs = env.step(state, [Action(0, 0, 0)])
    assert obs[0].state == 1 and obs[0].reward > 0
    assert nxt.slot == 1
    assert nxt.agent_states == (1,)


def test_mirrored_fleet_gets_identical_rewards():
    sc = Scenario.from_mapping(dict(M=2, L=2, K=1, J=2, num_slots=10, speed_mps=40.0,
                                    start_angles_deg=[0.0, 180.0]))
    env = Environment(sc, seed=0)
    env.users = UserField(np.array([[100.0, 0.0], [-100.0, 0.0]]))
    state = env.reset()
    for _ in range(5):
        state, obs = env.step(state, [Action(0, 0, 1), Action(1, 0, 1)])
        assert obs[0].reward == pytest.approx(obs[1].reward, rel=1e-12)
        assert obs[0].state == obs[1].state


def test_evaluate_symmetric_gains(tiny_scenario):
    env = Environment(tiny_scenario, seed=0)
    g = np.full((2, 6, 2), 1e-10)
    g[0, 0], g[1, 1] = 5e-9, 5e-9
    gamma, r, s = env.evaluate(GainMatrix(g), [Action(0, 0, 1), Action(1, 0, 1)])
    assert gamma[0] == gamma[1] and r[0] == r[1] and s[0] == s[1]


def test_step_is_pure(tiny_scenario):
    env, state = reset(tiny_scenario, seed=11)
    joint = [Action(1, 0, 1), Action(4, 1, 0)]
    a = env.step(state, joint)
    b = env.step(state, joint)
    c = Environment(tiny_scenario, seed=11).step(state, joint)
    for other in (b, c):
        assert a[1] == other[1]
        assert np.array_equal(a[0].gains.gains, other[0].gains.gains)
        assert a[0].agent_states == other[0].agent_states


def test_step_is_pure_with_los_sampling(tiny_scenario):
    sc = tiny_scenario.with_overrides(los_sampling=True)
    env, state = reset(sc, seed=2)
    state, _ = env.step(state, [Action(0, 0, 0), Action(1, 0, 0)])
    joint = [Action(2, 1, 1), Action(3, 1, 0)]
    assert env.step(state, joint)[1] == Environment(sc, seed=2).step(state, joint)[1]


def test_step_rejects_wrong_joint_length(tiny_scenario):
    env, state = reset(tiny_scenario, seed=0)
    with pytest.raises(ValueError):
        env.step(state, [Action(0, 0, 0)])


def test_observation_carries_only_own_feedback():
    names = {f.name for f in dataclasses.fields(AgentObservation)}
    assert names == {"state", "reward", "slot"}


def test_logged_rewards_match_radio_model(tiny_scenario):
    log = run_episode(tiny_scenario, seed=4)
    env = Environment(tiny_scenario, seed=4)
    for t in range(log.num_slots):
        gains = env.gains_at(t)
        joint = [env.action_space.decode(int(i)) for i in log.actions[t]]
        for m in range(log.num_uavs):
            r, s = radio.reward(m, joint, gains, env.reward_params, env.levels)
            assert log.rewards[t, m] == pytest.approx(r, rel=1e-12, abs=1e-9)
            assert log.states[t, m] == s
