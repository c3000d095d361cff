"""Disk geometry, static ground users and straight-line UAV flights."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Relative slack on the disk boundary so that a UAV landing exactly on the
# rim after floating-point accumulation still counts as inside.
_RIM_RTOL = 1e-12


@dataclass(frozen=True)
class DiskWorld:
    radius_m: float
    uav_altitude_m: float
    slot_duration_s: float
    num_slots: int

    def __post_init__(self):
        if not self.radius_m > 0:
            raise ValueError(f"radius_m must be positive, got {self.radius_m}")
        if not self.uav_altitude_m > 0:
            raise ValueError(f"uav_altitude_m must be positive, got {self.uav_altitude_m}")
        if not self.slot_duration_s > 0:
            raise ValueError(f"slot_duration_s must be positive, got {self.slot_duration_s}")
        if self.num_slots < 1:
            raise ValueError(f"num_slots must be >= 1, got {self.num_slots}")


@dataclass(frozen=True)
class Position:
    x_m: float
    y_m: float

    def __post_init__(self):
        if not (math.isfinite(self.x_m) and math.isfinite(self.y_m)):
            raise ValueError(f"non-finite position ({self.x_m}, {self.y_m})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x_m, self.y_m])


@dataclass(frozen=True)
class UserField:
    """Ground users as an (L, 2) array of horizontal coordinates in meters."""

    positions: np.ndarray

    def __len__(self):
        return len(self.positions)


@dataclass(frozen=True)
class Trajectory:
    start_angle_rad: float
    heading: tuple[float, float]
    speed_mps: float
    radius_m: float

    def __post_init__(self):
        if self.speed_mps < 0:
            raise ValueError(f"speed_mps must be >= 0, got {self.speed_mps}")
        norm = math.hypot(*self.heading)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"heading must be a unit vector, |heading| = {norm}")

    @classmethod
    def through_center(cls, start_angle_rad: float, radius_m: float, speed_mps: float) -> "Trajectory":
        """Start on the rim at the given angle and fly straight over the disk center."""
        heading = (-math.cos(start_angle_rad), -math.sin(start_angle_rad))
        return cls(start_angle_rad, heading, speed_mps, radius_m)

    @property
    def start(self) -> Position:
        return Position(self.radius_m * math.cos(self.start_angle_rad),
                        self.radius_m * math.sin(self.start_angle_rad))


def sample_users(count: int, radius_m: float, rng: np.random.Generator) -> UserField:
    """Draw ``count`` users uniformly over the disk area.

    Radius is ``radius_m * sqrt(u)`` so that density is uniform in area rather
    than in radius.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not radius_m > 0:
        raise ValueError(f"radius_m must be positive, got {radius_m}")
    u = rng.random((count, 2))
    r = radius_m * np.sqrt(u[:, 0])
    phi = 2.0 * np.pi * u[:, 1]
    return UserField(np.column_stack([r * np.cos(phi), r * np.sin(phi)]))


def uav_position(traj: Trajectory, t: int, slot_duration_s: float) -> Position:
    if t < 0:
        raise ValueError(f"slot index must be >= 0, got {t}")
    travelled = traj.speed_mps * t * slot_duration_s
    start = traj.start
    return Position(start.x_m + traj.heading[0] * travelled,
                    start.y_m + traj.heading[1] * travelled)


def distance_3d(p: Position, v, altitude_m: float):
    """Slant range between a UAV at ``p`` and ground point(s) ``v``.

    ``v`` may be a single (x, y) pair or an (L, 2) array; the result has the
    matching shape.
    """
    if not altitude_m > 0:
        raise ValueError(f"altitude_m must be positive, got {altitude_m}")
    v = np.asarray(v, dtype=float)
    dx = v[..., 0] - p.x_m
    dy = v[..., 1] - p.y_m
    d = np.sqrt(dx * dx + dy * dy + altitude_m * altitude_m)
    return float(d) if d.ndim == 0 else d


def in_disk(p: Position, radius_m: float) -> bool:
    if not radius_m > 0:
        raise ValueError(f"radius_m must be positive, got {radius_m}")
    return p.x_m * p.x_m + p.y_m * p.y_m <= radius_m * radius_m * (1.0 + _RIM_RTOL)
