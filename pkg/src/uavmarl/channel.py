"""Air-to-ground channel gains.

Two models are provided: the probabilistic LoS/NLoS model, which mixes the
free-space loss with environment-dependent excess losses weighted by an
elevation-angle dependent LoS probability, and the pure LoS model
``beta0 * d**-alpha``. Both are frequency flat, so every subchannel sees the
same gain unless LoS sampling is switched on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .world import Position, distance_3d

SPEED_OF_LIGHT = 3.0e8


@dataclass(frozen=True)
class ProbChannelParams:
    a_env: float = 9.61
    b_env: float = 0.16
    carrier_hz: float = 2.0e9
    eta_los_db: float = 1.0
    eta_nlos_db: float = 20.0
    # Draw the LoS state per (uav, user, slot) instead of using the mean loss.
    sample_los: bool = False

    def __post_init__(self):
        for name in ("a_env", "b_env", "carrier_hz"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class LosChannelParams:
    beta0_db: float = -60.0
    alpha: float = 2.0

    def __post_init__(self):
        if self.alpha < 2:
            raise ValueError(f"path-loss exponent alpha must be >= 2, got {self.alpha}")


ChannelModel = Union[ProbChannelParams, LosChannelParams]


@dataclass(frozen=True)
class GainMatrix:
    """Linear power gains indexed ``[uav, user, subchannel]`` for one slot."""

    gains: np.ndarray
    slot: int = 0

    def __post_init__(self):
        g = self.gains
        if g.ndim != 3:
            raise ValueError(f"gain matrix must be 3-D [M][L][K], got shape {g.shape}")
        if not (np.all(np.isfinite(g)) and np.all(g > 0)):
            raise ValueError("gain matrix entries must be finite and strictly positive")

    @property
    def shape(self):
        return self.gains.shape


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def _check_slant(distance_m, altitude_m):
    d = np.asarray(distance_m, dtype=float)
    if not altitude_m > 0:
        raise ValueError(f"altitude must be positive, got {altitude_m}")
    # small slack: distance_3d rounds sqrt(H**2) back to H exactly, but
    # callers computing d independently may land an ulp below.
    if np.any(d < altitude_m * (1.0 - 1e-12)):
        raise ValueError("distance must be >= altitude (slant range below the UAV height)")
    return d


def elevation_deg(distance_m, altitude_m):
    d = _check_slant(distance_m, altitude_m)
    return np.degrees(np.arcsin(np.minimum(altitude_m / d, 1.0)))


def los_probability(params: ProbChannelParams, distance_m, altitude_m: float):
    """LoS probability from the elevation angle (in degrees) of the link.

    Uses the logistic form ``1 / (1 + a exp(-b (theta - a)))`` that the
    (a, b) = (9.61, 0.16) environment constants are fitted for.
    """
    theta = elevation_deg(distance_m, altitude_m)
    p = 1.0 / (1.0 + params.a_env * np.exp(-params.b_env * (theta - params.a_env)))
    return float(p) if np.ndim(p) == 0 else p


def free_space_pathloss_db(distance_m, carrier_hz: float):
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0) or not carrier_hz > 0:
        raise ValueError("distance and carrier frequency must be positive")
    loss = (20.0 * np.log10(d) + 20.0 * np.log10(carrier_hz)
            + 20.0 * np.log10(4.0 * np.pi / SPEED_OF_LIGHT))
    return float(loss) if loss.ndim == 0 else loss


def mean_pathloss_db(params: ProbChannelParams, distance_m, altitude_m: float):
    p_los = los_probability(params, distance_m, altitude_m)
    fs = free_space_pathloss_db(distance_m, params.carrier_hz)
    return p_los * (fs + params.eta_los_db) + (1.0 - p_los) * (fs + params.eta_nlos_db)


def los_gain(params: LosChannelParams, distance_m):
    d = np.asarray(distance_m, dtype=float)
    if np.any(d < 1.0):
        raise ValueError("distance below the 1 m reference distance")
    g = db_to_linear(params.beta0_db) * d ** (-params.alpha)
    return float(g) if g.ndim == 0 else g


def build_gain_matrix(
    model: ChannelModel,
    uav_positions: Sequence[Position],
    users: np.ndarray,
    altitude_m: float,
    num_subchannels: int,
    rng: np.random.Generator | None = None,
    slot: int = 0,
) -> GainMatrix:
    """Gains between every UAV and user, broadcast over ``num_subchannels``.

    ``rng`` is only consulted when the probabilistic model samples LoS states.
    """
    if num_subchannels < 1:
        raise ValueError(f"num_subchannels must be >= 1, got {num_subchannels}")
    users = np.asarray(users, dtype=float)
    dist = np.stack([distance_3d(p, users, altitude_m) for p in uav_positions])
    dist = dist.reshape(len(uav_positions), len(users))

    if isinstance(model, LosChannelParams):
        g = los_gain(model, dist)
    elif isinstance(model, ProbChannelParams):
        if model.sample_los:
            if rng is None:
                raise ValueError("LoS sampling requires a random generator")
            p_los = los_probability(model, dist, altitude_m)
            is_los = rng.random(dist.shape) < p_los
            eta = np.where(is_los, model.eta_los_db, model.eta_nlos_db)
            loss = free_space_pathloss_db(dist, model.carrier_hz) + eta
        else:
            loss = mean_pathloss_db(model, dist, altitude_m)
        g = db_to_linear(-loss)
    else:
        raise TypeError(f"unknown channel model {type(model).__name__}")

    g = np.asarray(g, dtype=float).reshape(dist.shape)
    return GainMatrix(np.repeat(g[:, :, None], num_subchannels, axis=2), slot)
