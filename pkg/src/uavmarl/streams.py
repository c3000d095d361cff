"""Named, independent random substreams derived from one integer seed.

Each concern (user placement, start angles, channel draws, exploration,
tie-breaking, baseline draws) gets its own stream so that swapping the
learning algorithm never changes the world realisation for a given seed.
"""

import numpy as np

_CONCERNS = {
    "users": 0,
    "angles": 1,
    "channel": 2,
    "explore": 3,
    "tiebreak": 4,
    "baseline": 5,
}


def stream(seed: int, concern: str, *key: int) -> np.random.Generator:
    if concern not in _CONCERNS:
        raise KeyError(f"unknown random stream {concern!r}")
    seq = np.random.SeedSequence(entropy=int(seed),
                                 spawn_key=(_CONCERNS[concern], *map(int, key)))
    return np.random.default_rng(seq)
