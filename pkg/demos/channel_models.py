"""How the two channel models treat a UAV at 100 m altitude.

The probabilistic model blends line-of-sight and shadowed losses by an
elevation-dependent LoS probability; the pure LoS model is a power law.
Gains fall with ground distance under both, much faster once the elevation
angle gets shallow.
"""

import numpy as np

from uavmarl.channel import (LosChannelParams, ProbChannelParams, linear_to_db, los_gain,
                             los_probability, mean_pathloss_db)

ALTITUDE = 100.0
prob, los = ProbChannelParams(), LosChannelParams()

print(f"{'ground m':>9} {'slant m':>9} {'P(LoS)':>8} {'prob dB':>9} {'LoS dB':>9}")
for ground in (0, 50, 100, 200, 500, 1000, 2000):
    d = float(np.hypot(ground, ALTITUDE))
    p = los_probability(prob, d, ALTITUDE)
    g_prob = -mean_pathloss_db(prob, d, ALTITUDE)
    g_los = linear_to_db(los_gain(los, d))
    print(f"{ground:9d} {d:9.1f} {p:8.4f} {g_prob:9.2f} {g_los:9.2f}")

# The link budget that matters for QoS: max power over the noise floor.
snr_db = 23.0 - (-80.0) - mean_pathloss_db(prob, ALTITUDE, ALTITUDE)
print(f"\nSNR of a full-power link straight down: {snr_db:.1f} dB (threshold 3 dB)")
