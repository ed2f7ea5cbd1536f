"""
Inside LOFAV: levels, weights and radii
=======================================

LOFAV runs L weighted ridge regressions in parallel. Level l caps the
weighted feature norm at rho_l = 2^-l, so high levels down-weight pulls
that are still poorly explored.
"""

import numpy as np

from adaptive_bandits import LOFAV, NoiseModel, NoiseSpec, PolicyConfig, make_sphere_instance

inst = make_sphere_instance(8, 1.0, 40, seed=3, noise=NoiseModel("two_point", 0.05))
policy = LOFAV(PolicyConfig("LOFAV", NoiseSpec(R=1.0), inst.dim, horizon=4000))
print("levels:", policy.num_levels)
print("rho   :", np.round(policy.levels.rho, 4))
print("lambda:", np.round(policy.levels.lam, 6))

rng = np.random.Generator(np.random.Philox(key=[3, 1]))
eta = inst.noise.sample(rng, size=4000)
regret = 0.0
for t in range(4000):
    i, _ = policy.select_arm(inst.arms)
    policy.update(inst.arms[i], inst.means[i] + eta[t])
    regret += inst.gaps[i]
    if t + 1 in (10, 100, 1000, 4000):
        print(f"t={t + 1:5d} regret={regret:7.3f} beta={np.array2string(policy.width.beta, precision=2)}")

###############################################################################
# Weight each level would give the best arm right now. Small rho levels keep
# weights below 1 until the arm's direction is well covered.

print("weights on best arm:", np.round(policy.levels.compute_weight(inst.arms[inst.best_index]), 3))

# The anytime variant spawns levels as t grows instead of fixing L up front.
anytime = LOFAV(PolicyConfig("LOFAV", NoiseSpec(), inst.dim, lofav_mode="anytime"))
for t in range(4000):
    i, _ = anytime.select_arm(inst.arms)
    anytime.update(inst.arms[i], inst.means[i] + eta[t])
print("anytime levels after 4000 steps:", anytime.num_levels, "observations per level:", anytime.levels.t)
