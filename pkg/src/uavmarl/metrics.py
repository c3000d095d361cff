"""Episode logs, reward aggregation and CSV export."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field

import numpy as np


@dataclass
class EpisodeLog:
    """Per-slot record of one episode: rows are slots, columns are UAVs."""

    actions: np.ndarray
    states: np.ndarray
    rewards: np.ndarray
    sinr: np.ndarray
    metadata: dict = field(default_factory=dict)
    q_tables: list | None = None

    @classmethod
    def empty(cls, num_slots: int, num_uavs: int, metadata: dict | None = None) -> "EpisodeLog":
        return cls(
            actions=np.zeros((num_slots, num_uavs), dtype=np.int64),
            states=np.zeros((num_slots, num_uavs), dtype=np.int8),
            rewards=np.zeros((num_slots, num_uavs)),
            sinr=np.zeros((num_slots, num_uavs)),
            metadata=dict(metadata or {}),
        )

    def record(self, t, actions, states, rewards, sinr):
        self.actions[t] = actions
        self.states[t] = states
        self.rewards[t] = rewards
        self.sinr[t] = sinr

    @property
    def num_slots(self) -> int:
        return self.rewards.shape[0]

    @property
    def num_uavs(self) -> int:
        return self.rewards.shape[1]

    def __len__(self):
        return self.num_slots


@dataclass(frozen=True)
class RewardSeries:
    v_avg: np.ndarray
    r_sum: np.ndarray

    def __post_init__(self):
        if len(self.v_avg) != len(self.r_sum):
            raise ValueError("v_avg and r_sum must have equal length")


def cumulative_reward(rewards, discount: float = 1.0) -> np.ndarray:
    """Causal discounted running sum ``v[t] = sum_{tau<=t} discount**tau * r[tau]``.

    Accepts an ``EpisodeLog`` or a ``(T,)``/``(T, M)`` reward array.
    """
    if isinstance(rewards, EpisodeLog):
        rewards = rewards.rewards
    if not 0.0 <= discount <= 1.0:
        raise ValueError(f"discount must lie in [0, 1], got {discount}")
    r = np.asarray(rewards, dtype=float)
    w = discount ** np.arange(r.shape[0], dtype=float)
    if r.ndim == 2:
        w = w[:, None]
    return np.cumsum(w * r, axis=0)


def fleet_series(cumulative, instantaneous) -> RewardSeries:
    """Fleet mean of cumulative rewards and fleet sum of per-slot rewards.

    Both inputs are ``(T, M)``. The per-slot figure is a sum over UAVs, not a
    mean, while the cumulative one is averaged.
    """
    v = np.asarray(cumulative, dtype=float)
    r = np.asarray(instantaneous, dtype=float)
    if v.ndim != 2 or r.ndim != 2 or v.shape != r.shape:
        raise ValueError(f"series must be equal-shaped (T, M) arrays, got {v.shape} and {r.shape}")
    return RewardSeries(v.mean(axis=1), r.sum(axis=1))


def episode_series(log: EpisodeLog, discount: float = 1.0) -> RewardSeries:
    return fleet_series(cumulative_reward(log, discount), log.rewards)


def _fmt(x: float) -> str:
    s = f"{x:.9g}"
    return "0" if s == "-0" else s


def csv_text(series: RewardSeries, log: EpisodeLog) -> str:
    M = log.num_uavs
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "v_avg", "r_sum", *(f"r_uav_{m}" for m in range(M))])
    for t in range(log.num_slots):
        w.writerow([t, _fmt(series.v_avg[t]), _fmt(series.r_sum[t]),
                    *(_fmt(x) for x in log.rewards[t])])
    return buf.getvalue()


def write_csv(series: RewardSeries, log: EpisodeLog, path) -> str:
    """Write the per-slot series; returns the path written."""
    path = os.fspath(path)
    text = csv_text(series, log)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"could not write reward CSV to {path}: {exc}") from exc
    return path


def read_csv(path):
    """Inverse of ``write_csv``: returns ``(t, v_avg, r_sum, per_uav_rewards)``."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    M = len(header) - 3
    data = np.array(body, dtype=float).reshape(len(body), 3 + M)
    return data[:, 0].astype(int), data[:, 1], data[:, 2], data[:, 3:]
