"""The learning rule checked against exact dynamic programming.

On a small random MDP the Bellman optimality operator shrinks distances by
the discount factor, and the same Q-learning update that drives the UAVs
approaches the value-iteration fixed point as the step count grows.
"""

import numpy as np

from uavmarl.oracle import bellman_operator, q_learning_on_mdp, random_mdp, sup_norm, value_iteration

rng = np.random.default_rng(0)
mdp = random_mdp(rng, 3, 2, discount=0.5)
q1, q2 = rng.normal(size=(2, 3, 2))
ratio = sup_norm(bellman_operator(mdp, q1) - bellman_operator(mdp, q2)) / sup_norm(q1 - q2)
print(f"contraction ratio {ratio:.3f} <= discount {mdp.discount}")

q_star = value_iteration(mdp, tol=1e-10)
_, trace = q_learning_on_mdp(mdp, 100_000, range(20), q_star=q_star, record_every=10_000)
for k, row in enumerate(trace, start=1):
    print(f"{k * 10_000:7d} steps  median |Q - Q*| = {np.median(row):.4f}")
