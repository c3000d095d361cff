"""Command-line experiment runner.

Examples::

    uavmarl --scenario crossing.toml --algo marl --seeds 0-19 --out runs/crossing
    uavmarl --scenario user_selection.toml --algo marl,match,random --seeds 0-19 --out runs/selection
    uavmarl --scenario crossing.toml --algo marl --sweep epsilon=0,0.2,0.5,0.9 --out runs/eps

Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import re
import sys
from typing import Sequence

import numpy as np

from .baselines import run_baseline
from .learn import run_episode
from .metrics import EpisodeLog, episode_series, write_csv
from .scenario import ConfigError, Scenario, load_scenario

log = logging.getLogger("uavmarl")

ALGORITHMS = ("marl", "match", "random")
SWEEP_KEYS = {"epsilon": "epsilon", "speed": "speed_mps"}

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
_SEED_PART = re.compile(r"(\d+)(?:-(\d+))?")


class UsageError(Exception):
    pass


def parse_seeds(text: str) -> list[int]:
    """``"0,3,7"``, ``"0-19"`` or a mix like ``"0-4,10"``."""
    seeds: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = _SEED_PART.fullmatch(part)
        if m is None:
            raise UsageError(f"bad seed specification {part!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        if hi < lo:
            raise UsageError(f"empty seed range {part!r}")
        seeds.extend(range(lo, hi + 1))
    if not seeds:
        raise UsageError("seed list is empty")
    return seeds


def parse_sweep(text: str) -> tuple[str, list[float]]:
    if "=" not in text:
        raise UsageError("--sweep expects <param>=<v1,v2,...>")
    name, values = text.split("=", 1)
    name = name.strip()
    if name not in SWEEP_KEYS:
        raise UsageError(f"cannot sweep {name!r}; choose from {sorted(SWEEP_KEYS)}")
    try:
        vals = [float(v) for v in values.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"non-numeric sweep values in {values!r}") from None
    if not vals:
        raise UsageError("sweep value list is empty")
    return name, vals


def check_pairing(scenario: Scenario, algorithm: str):
    if algorithm not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    if algorithm == "match":
        if scenario.num_subchannels != 1 or scenario.num_power_levels != 1:
            raise UsageError(
                "the matching baseline only selects users: it needs K = 1 and J = 1 "
                f"(scenario has K = {scenario.num_subchannels}, J = {scenario.num_power_levels})")
        if scenario.num_uavs > scenario.num_users:
            raise UsageError("the matching baseline needs M <= L")


def run_one(scenario: Scenario, algorithm: str, seed: int) -> EpisodeLog:
    if algorithm == "marl":
        return run_episode(scenario, seed=seed)
    return run_baseline(scenario, algorithm, seed)


def _write_run(scenario, algorithm, seed, out_dir, stem) -> tuple[float, str]:
    episode = run_one(scenario, algorithm, seed)
    series = episode_series(episode, scenario.discount)
    path = write_csv(series, episode, os.path.join(out_dir, f"{stem}.csv"))
    final = float(series.v_avg[-1])
    log.info("%s seed=%d final v_avg=%.6g -> %s", algorithm, seed, final, path)
    return final, path


def _mean_std(values):
    v = np.asarray(values, dtype=float)
    return float(v.mean()), float(v.std(ddof=1)) if len(v) > 1 else 0.0


def run(scenario: Scenario, algorithms: Sequence[str], seeds: Sequence[int], out_dir) -> dict:
    """One CSV per (algorithm, seed) plus ``summary.csv``; returns the summary rows."""
    if not seeds:
        raise UsageError("seed list is empty")
    for algo in algorithms:
        check_pairing(scenario, algo)
    os.makedirs(out_dir, exist_ok=True)
    summary = {}
    for algo in algorithms:
        finals = [_write_run(scenario, algo, s, out_dir, f"{algo}_seed{s}")[0] for s in seeds]
        summary[algo] = (len(finals), *_mean_std(finals))
    with open(os.path.join(out_dir, "summary.csv"), "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["algorithm", "num_seeds", "final_v_avg_mean", "final_v_avg_std"])
        for algo, (n, mean, std) in summary.items():
            w.writerow([algo, n, f"{mean:.9g}", f"{std:.9g}"])
    return summary


def sweep(scenario: Scenario, parameter: str, values: Sequence[float], seeds: Sequence[int],
          out_dir, algorithm: str = "marl") -> list[dict]:
    """Cross product of parameter values and seeds, summarised in long format."""
    if parameter not in SWEEP_KEYS:
        raise UsageError(f"cannot sweep {parameter!r}; choose from {sorted(SWEEP_KEYS)}")
    if not seeds:
        raise UsageError("seed list is empty")
    check_pairing(scenario, algorithm)
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    for value in values:
        sc = scenario.with_overrides(**{SWEEP_KEYS[parameter]: float(value)})
        for s in seeds:
            stem = f"{algorithm}_{parameter}{value:g}_seed{s}"
            final, path = _write_run(sc, algorithm, s, out_dir, stem)
            rows.append(dict(parameter=parameter, value=value, algorithm=algorithm, seed=s,
                             final_v_avg=final, series_file=os.path.basename(path)))
    with open(os.path.join(out_dir, f"sweep_{parameter}.csv"), "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["parameter", "value", "algorithm", "seed", "final_v_avg", "series_file"])
        for r in rows:
            w.writerow([r["parameter"], f"{r['value']:g}", r["algorithm"], r["seed"],
                        f"{r['final_v_avg']:.9g}", r["series_file"]])
    return rows


PLOT_SCRIPT = '''\
"""Plot every reward CSV in this directory (needs matplotlib)."""
import csv
import glob
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
fig, (ax_v, ax_r) = plt.subplots(1, 2, figsize=(11, 4))
for path in sorted(glob.glob(os.path.join(here, "*_seed*.csv"))):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    t = [int(r["t"]) for r in rows]
    label = os.path.basename(path)[:-4]
    ax_v.plot(t, [float(r["v_avg"]) for r in rows], lw=0.8, label=label)
    ax_r.plot(t, [float(r["r_sum"]) for r in rows], lw=0.8, label=label)
ax_v.set_xlabel("time slot")
ax_v.set_ylabel("average cumulative reward")
ax_r.set_xlabel("time slot")
ax_r.set_ylabel("reward per time slot")
if len(ax_v.lines) <= 12:
    ax_v.legend(fontsize=7)
fig.tight_layout()
fig.savefig(os.path.join(here, "rewards.png"), dpi=150)
'''


def emit_plot_script(out_dir) -> str:
    path = os.path.join(out_dir, "plot_rewards.py")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(PLOT_SCRIPT)
    return path


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uavmarl", description="Multi-UAV resource allocation experiments.")
    p.add_argument("--scenario", required=True, help="flat TOML scenario document")
    p.add_argument("--algo", default="marl",
                   help="marl, match, random, a comma-separated list, or 'all'")
    p.add_argument("--seeds", default=None,
                   help="seed list or range, e.g. 0-19 or 1,2,5 (default: scenario seeds)")
    p.add_argument("--out", default="runs", help="output directory")
    p.add_argument("--sweep", default=None, metavar="PARAM=V1,V2,...",
                   help="sweep epsilon or speed over the given values")
    p.add_argument("--emit-plot-script", action="store_true",
                   help="write a matplotlib script next to the CSVs")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        scenario = load_scenario(args.scenario)
        seeds = parse_seeds(args.seeds) if args.seeds is not None else list(scenario.seeds)
        algos = list(ALGORITHMS) if args.algo == "all" else [a.strip() for a in args.algo.split(",")]
        for a in algos:
            check_pairing(scenario, a)
        if args.sweep:
            name, values = parse_sweep(args.sweep)
            for a in algos:
                rows = sweep(scenario, name, values, seeds, args.out, algorithm=a)
                for value in values:
                    finals = [r["final_v_avg"] for r in rows if r["value"] == value]
                    mean, std = _mean_std(finals)
                    print(f"{a} {name}={value:g}: final v_avg {mean:.6g} +- {std:.3g}")
        else:
            summary = run(scenario, algos, seeds, args.out)
            for a, (n, mean, std) in summary.items():
                print(f"{a}: final v_avg {mean:.6g} +- {std:.3g} over {n} seeds")
        if args.emit_plot_script:
            emit_plot_script(args.out)
    except (UsageError, ConfigError) as exc:
        print(f"uavmarl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"uavmarl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - surfaced as exit code 2
        print(f"uavmarl: runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
