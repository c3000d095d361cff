"""Faster UAVs spend fewer slots over the users and collect less reward.

A single UAV serves a 200-user disk from a random rim position.
"""

import numpy as np

from uavmarl.learn import run_episode
from uavmarl.metrics import episode_series
from uavmarl.scenario import single_uav_scenario

for speed in (20.0, 40.0, 60.0, 80.0):
    scenario = single_uav_scenario(speed_mps=speed)
    finals = [episode_series(run_episode(scenario, seed=s)).v_avg[-1] for s in range(10)]
    slots_inside = int(2 * scenario.radius_m // (speed * scenario.slot_duration_s)) + 1
    print(f"{speed:4.0f} m/s  {slots_inside:4d} slots over the disk  "
          f"mean final v_avg {np.mean(finals):.4g}")
