"""Exploration rate versus final reward, averaged over 20 seeds.

Pure exploitation locks onto whichever user first paid off; too much
exploration wastes slots on random users. Middle values do best here.
"""

import numpy as np

from uavmarl.learn import run_episode
from uavmarl.metrics import episode_series
from uavmarl.scenario import crossing_scenario

for eps in (0.0, 0.2, 0.5, 0.9):
    scenario = crossing_scenario(epsilon=eps)
    finals = [episode_series(run_episode(scenario, seed=s)).v_avg[-1] for s in range(20)]
    print(f"epsilon={eps:<4g} mean final v_avg {np.mean(finals):.4g} (std {np.std(finals, ddof=1):.3g})")
