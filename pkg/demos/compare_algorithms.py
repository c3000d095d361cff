"""Learning against a full-information matching and a random choice.

With one subchannel and one power level every UAV only picks a user. The
matching baseline sees all gains every slot, so it is an upper reference;
random choice is the lower one. The learners sit in between.
"""

import numpy as np

from uavmarl.baselines import run_baseline
from uavmarl.learn import run_episode
from uavmarl.metrics import episode_series
from uavmarl.scenario import user_selection_scenario

scenario = user_selection_scenario()
runs = {
    "match": lambda s: run_baseline(scenario, "match", s),
    "marl": lambda s: run_episode(scenario, seed=s),
    "random": lambda s: run_baseline(scenario, "random", s),
}
for name, run in runs.items():
    finals = [episode_series(run(s)).v_avg[-1] for s in range(20)]
    print(f"{name:>6}: mean final v_avg {np.mean(finals):.4g}")
