"""Experiment scenarios and their flat TOML configuration documents.

A scenario document is a flat list of ``key = value`` pairs (TOML syntax, no
tables). Keys and defaults are listed in ``SCHEMA``; keys without a default
are required. Unknown keys are rejected. Example::

    M = 2
    L = 100
    K = 1
    J = 3
    num_slots = 400
    speed_mps = 40.0
    start_angles_deg = [0.0, 45.0]
    epsilon = 0.5
"""

from __future__ import annotations

import hashlib
import math
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from .channel import LosChannelParams, ProbChannelParams
from .learn import TIE_BREAKS, LearningConfig
from .radio import RewardParams, dbm_to_mw, power_levels_from_max
from .world import DiskWorld

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCHEMA_VERSION = 1
_REQUIRED = object()


class ConfigError(ValueError):
    """Invalid scenario document; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


# key -> (default, kind). kind is one of int, float, bool, str, "floats", "angles", "seeds"
SCHEMA: dict[str, tuple[Any, Any]] = {
    "schema_version": (SCHEMA_VERSION, int),
    # world
    "radius_m": (500.0, float),
    "altitude_m": (100.0, float),
    "slot_duration_s": (0.1, float),
    "num_slots": (_REQUIRED, int),
    "L": (_REQUIRED, int),
    # fleet
    "M": (_REQUIRED, int),
    "speed_mps": (_REQUIRED, "floats"),
    "start_angles_deg": ("random", "angles"),
    # channel
    "channel_model": ("probabilistic", str),
    "env_a": (9.61, float),
    "env_b": (0.16, float),
    "carrier_hz": (2.0e9, float),
    "eta_los_db": (1.0, float),
    "eta_nlos_db": (20.0, float),
    "los_sampling": (False, bool),
    "beta0_db": (-60.0, float),
    "path_loss_exponent": (2.0, float),
    # radio
    "K": (1, int),
    "J": (3, int),
    "bandwidth_per_subchannel_hz": (75e3, float),
    "max_power_dbm": (23.0, float),
    "power_cost": (100.0, float),
    "sinr_threshold_db": (3.0, float),
    "noise_dbm": (-80.0, float),
    # learning
    "discount": (1.0, float),
    "epsilon": (0.5, float),
    "c_alpha": (0.5, float),
    "phi_alpha": (0.8, float),
    "clamp_alpha": (True, bool),
    "tie_break": ("first", str),
    # seeds
    "seeds": (list(range(20)), "seeds"),
}

CHANNEL_MODELS = ("probabilistic", "los")


@dataclass(frozen=True)
class Scenario:
    """Validated experiment description.

    Build with ``parse_scenario`` or ``Scenario.from_mapping``; the derived
    module-level objects (world, channel model, power levels, reward and
    learning parameters) are exposed as properties.
    """

    radius_m: float
    altitude_m: float
    slot_duration_s: float
    num_slots: int
    num_users: int
    num_uavs: int
    speed_mps: tuple[float, ...]
    start_angles_deg: tuple[float, ...] | None
    channel_model_name: str
    env_a: float
    env_b: float
    carrier_hz: float
    eta_los_db: float
    eta_nlos_db: float
    los_sampling: bool
    beta0_db: float
    path_loss_exponent: float
    num_subchannels: int
    num_power_levels: int
    bandwidth_per_subchannel_hz: float
    max_power_dbm: float
    power_cost: float
    sinr_threshold_db: float
    noise_dbm: float
    discount: float
    epsilon: float
    c_alpha: float
    phi_alpha: float
    clamp_alpha: bool
    tie_break: str
    seeds: tuple[int, ...]
    schema_version: int = SCHEMA_VERSION

    # ------------------------------------------------------------------ build
    @classmethod
    def from_mapping(cls, doc: dict) -> "Scenario":
        unknown = sorted(set(doc) - set(SCHEMA))
        if unknown:
            raise ConfigError(unknown[0], "unknown key")
        values = {}
        for key, (default, kind) in SCHEMA.items():
            if key in doc:
                values[key] = _coerce(key, doc[key], kind)
            elif default is _REQUIRED:
                raise ConfigError(key, "missing required key")
            else:
                values[key] = _coerce(key, default, kind)
        kwargs = {_FIELD_OF.get(k, k): v for k, v in values.items()}
        sc = cls(**kwargs)
        sc.validate()
        return sc

    def validate(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError("schema_version", f"unsupported version {self.schema_version}")
        for key, attr in (("M", "num_uavs"), ("L", "num_users"), ("K", "num_subchannels"),
                          ("J", "num_power_levels"), ("num_slots", "num_slots")):
            if getattr(self, attr) < 1:
                raise ConfigError(key, f"must be >= 1, got {getattr(self, attr)}")
        if len(self.speed_mps) not in (1, self.num_uavs):
            raise ConfigError("speed_mps", f"give one speed or one per UAV (M={self.num_uavs})")
        if any(v < 0 for v in self.speed_mps):
            raise ConfigError("speed_mps", "speeds must be >= 0")
        if self.start_angles_deg is not None and len(self.start_angles_deg) != self.num_uavs:
            raise ConfigError("start_angles_deg", f"need one angle per UAV (M={self.num_uavs})")
        if self.channel_model_name not in CHANNEL_MODELS:
            raise ConfigError("channel_model", f"must be one of {CHANNEL_MODELS}")
        if not self.seeds:
            raise ConfigError("seeds", "at least one seed is required")
        for key in ("radius_m", "altitude_m", "slot_duration_s", "env_a", "env_b", "carrier_hz",
                    "bandwidth_per_subchannel_hz", "c_alpha"):
            if not getattr(self, key) > 0:
                raise ConfigError(key, f"must be positive, got {getattr(self, key)}")
        if self.power_cost < 0:
            raise ConfigError("power_cost", f"must be >= 0, got {self.power_cost}")
        if self.path_loss_exponent < 2:
            raise ConfigError("path_loss_exponent", f"must be >= 2, got {self.path_loss_exponent}")
        for key in ("discount", "epsilon"):
            if not 0.0 <= getattr(self, key) <= 1.0:
                raise ConfigError(key, f"must lie in [0, 1], got {getattr(self, key)}")
        if not 0.5 < self.phi_alpha <= 1.0:
            raise ConfigError("phi_alpha", f"must lie in (1/2, 1], got {self.phi_alpha}")
        if self.tie_break not in TIE_BREAKS:
            raise ConfigError("tie_break", f"must be one of {TIE_BREAKS}")

    # ------------------------------------------------------------- derived
    @property
    def world(self) -> DiskWorld:
        return DiskWorld(self.radius_m, self.altitude_m, self.slot_duration_s, self.num_slots)

    @property
    def channel_model(self):
        if self.channel_model_name == "los":
            return LosChannelParams(self.beta0_db, self.path_loss_exponent)
        return ProbChannelParams(self.env_a, self.env_b, self.carrier_hz,
                                 self.eta_los_db, self.eta_nlos_db, self.los_sampling)

    @property
    def power_levels(self):
        return power_levels_from_max(self.max_power_dbm, self.num_power_levels)

    @property
    def reward_params(self) -> RewardParams:
        return RewardParams(
            bandwidth_per_subchannel_hz=self.bandwidth_per_subchannel_hz,
            power_cost=self.power_cost,
            sinr_threshold_linear=10.0 ** (self.sinr_threshold_db / 10.0),
            noise_mw=float(dbm_to_mw(self.noise_dbm)),
        )

    @property
    def learning(self) -> LearningConfig:
        return LearningConfig(self.discount, self.epsilon, self.c_alpha,
                              self.phi_alpha, self.clamp_alpha, self.tie_break)

    @property
    def speeds(self) -> tuple[float, ...]:
        if len(self.speed_mps) == 1:
            return self.speed_mps * self.num_uavs
        return self.speed_mps

    def start_angles_rad(self, rng: np.random.Generator) -> tuple[float, ...]:
        """Fixed angles if configured, otherwise uniform draws on the rim."""
        if self.start_angles_deg is None:
            return tuple(float(a) for a in rng.uniform(0.0, 2.0 * math.pi, self.num_uavs))
        return tuple(math.radians(a) for a in self.start_angles_deg)

    def with_overrides(self, **changes) -> "Scenario":
        """Copy with config-key overrides (e.g. ``epsilon=0.2`` or ``J=1``)."""
        doc = to_mapping(self)
        doc.update(changes)
        return Scenario.from_mapping(doc)

    def digest(self) -> str:
        return hashlib.sha256(dump_scenario(self).encode("utf-8")).hexdigest()[:16]


_FIELD_OF = {
    "L": "num_users",
    "M": "num_uavs",
    "K": "num_subchannels",
    "J": "num_power_levels",
    "channel_model": "channel_model_name",
}


def _coerce(key: str, value, kind):
    def bad(expected):
        return ConfigError(key, f"expected {expected}, got {value!r}")

    if kind is bool:
        if not isinstance(value, bool):
            raise bad("a boolean")
        return value
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise bad("an integer")
        return value
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise bad("a number")
        if not math.isfinite(value):
            raise bad("a finite number")
        return float(value)
    if kind is str:
        if not isinstance(value, str):
            raise bad("a string")
        return value
    if kind == "floats":
        items = value if isinstance(value, list) else [value]
        return tuple(_coerce(key, v, float) for v in items)
    if kind == "angles":
        if value == "random":
            return None
        if not isinstance(value, list):
            raise bad('"random" or a list of angles in degrees')
        return tuple(_coerce(key, v, float) for v in value)
    if kind == "seeds":
        if not isinstance(value, list):
            raise bad("a list of integer seeds")
        return tuple(_coerce(key, v, int) for v in value)
    raise AssertionError(kind)


def parse_scenario(text: str) -> Scenario:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError("<document>", f"not valid TOML: {exc}") from exc
    for key, value in doc.items():
        if isinstance(value, dict):
            raise ConfigError(key, "nested tables are not allowed; the document is flat")
    return Scenario.from_mapping(doc)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def to_mapping(sc: Scenario) -> dict:
    out = {}
    for key in SCHEMA:
        value = getattr(sc, _FIELD_OF.get(key, key))
        if key == "start_angles_deg":
            value = "random" if value is None else list(value)
        elif key == "speed_mps":
            value = value[0] if len(value) == 1 else list(value)
        elif isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    raise TypeError(type(v))


def dump_scenario(sc: Scenario) -> str:
    """Normalised document: every schema key, in schema order."""
    return "".join(f"{k} = {_toml_value(v)}\n" for k, v in to_mapping(sc).items())


def crossing_scenario(**overrides) -> Scenario:
    """Two UAVs crossing a 100-user disk, probabilistic channel, three power levels."""
    doc = dict(M=2, L=100, K=1, J=3, num_slots=500, speed_mps=40.0,
               start_angles_deg=[0.0, 45.0], epsilon=0.5)
    doc.update(overrides)
    return Scenario.from_mapping(doc)


def user_selection_scenario(**overrides) -> Scenario:
    """Same as ``crossing_scenario`` with one power level (user selection only)."""
    return crossing_scenario(**{"J": 1, **overrides})


def single_uav_scenario(**overrides) -> Scenario:
    """Single UAV, one subchannel, 200 users, random rim start."""
    doc = dict(M=1, L=200, K=1, J=3, num_slots=500, speed_mps=40.0,
               start_angles_deg="random", epsilon=0.5)
    doc.update(overrides)
    return Scenario.from_mapping(doc)


__all__ = [
    "ConfigError", "Scenario", "SCHEMA", "parse_scenario", "load_scenario",
    "dump_scenario", "to_mapping", "crossing_scenario", "user_selection_scenario", "single_uav_scenario",
]
