"""One learning episode on the two-UAV, 100-user scenario.

The UAVs start on the rim 45 degrees apart and fly over the center. They leave
the disk after slot 250, so the average cumulative reward stops growing once
no ground user is in range any more.
"""

from uavmarl.learn import run_episode
from uavmarl.metrics import episode_series
from uavmarl.scenario import crossing_scenario

scenario = crossing_scenario()
log = run_episode(scenario, seed=0)
series = episode_series(log, scenario.discount)

print("slot  v_avg        QoS met (UAV 0, UAV 1)")
for t in range(0, log.num_slots, 50):
    print(f"{t:4d}  {series.v_avg[t]:11.4g}  {tuple(int(s) for s in log.states[t])}")

served = log.states.mean(axis=0)
print(f"\nfraction of slots with QoS met: {served.round(3).tolist()}")
print(f"final average cumulative reward: {series.v_avg[-1]:.4g}")
