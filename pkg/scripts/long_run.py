#!/usr/bin/env python3
"""
Long-run protocol: both mask families, with and without the curriculum.

Trains four agents on the full config (1000 episodes each by default), then
for every run:
  - keeps metrics.csv / evaluations.csv / histograms/ in its run directory
  - renders every 4th frame of the decisions leading up to each agent point
    from the final checkpoint into <run>/frames/

It also writes the shipped reference mask counts next to the runs and a
summary.csv comparing the final evaluation of each run.

Stretch check (never fails the script): when the occluded vertical-family
run reaches a final mean evaluation score of +15 or better, VRight should be
its most chosen mask.

Takes hours to days on a desktop CPU.

Usage:
    python scripts/long_run.py
    python scripts/long_run.py --episodes 200 --out runs/short --family vertical
"""

import argparse
import csv
import dataclasses
import sys
from functools import reduce
from pathlib import Path
from typing import List, Optional

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT / "src"))

from tqdm import tqdm  # noqa: E402

from errors import GazePongError  # noqa: E402
from observe.masks import MaskFamily, MaskId  # noqa: E402
from toolkit.config import RunConfig, load_config, save_config  # noqa: E402
from toolkit.frames import render_sequence  # noqa: E402
from toolkit.metrics import MaskHistogram, write_reference_histograms  # noqa: E402
from toolkit.rundir import RunDirectory  # noqa: E402
from trainer.curriculum import Phase  # noqa: E402
from trainer.loop import TrainingResult, evaluation_seed, run_training  # noqa: E402

STRETCH_SCORE = 15.0
RENDER_STRIDE = 4
RENDER_WINDOW = 100

SUMMARY_COLUMNS = ("run", "family", "curriculum", "final_phase", "final_mean_score",
                   "modal_mask", "first", "middle", "last")


@dataclasses.dataclass
class RunSummary:
    name: str
    family: MaskFamily
    curriculum: bool
    phase: Phase
    mean_score: Optional[float]
    histogram: Optional[MaskHistogram]


def run_config(base: RunConfig, family: MaskFamily, curriculum: bool, episodes: Optional[int]) -> RunConfig:
    """Base config with the family, curriculum switch and episode count swapped in."""
    train = dataclasses.replace(base.train, mask_family=family)
    if episodes is not None:
        train = dataclasses.replace(train, total_episodes=episodes)
    return dataclasses.replace(
        base,
        train=train,
        curriculum=dataclasses.replace(base.curriculum, enabled=curriculum),
    ).validate()


def occluded_histogram(result: TrainingResult, family: MaskFamily) -> Optional[MaskHistogram]:
    """Mask counts summed over every occluded-phase evaluation."""
    histograms = [row.histogram for row in result.evaluations if row.phase == Phase.OCCLUDED.value]
    if not histograms:
        return None
    return reduce(MaskHistogram.merge, histograms, MaskHistogram(family))


def train_one(name: str, config: RunConfig, out_dir: Path, render: bool) -> RunSummary:
    """Train one configuration and optionally render its final checkpoint."""
    run = RunDirectory(out_dir / name, verbose=False)
    result = run_training(config.env, config.agent, config.curriculum, config.train, out_dir=run.root)
    family = config.train.mask_family

    if render:
        frames = render_sequence(
            run.checkpoint_path(),
            env_seed=evaluation_seed(config.train.seed),
            out_dir=run.frames_dir,
            stride=RENDER_STRIDE,
            window=RENDER_WINDOW,
            env_config=config.env,
        )
        tqdm.write(f"[{name}] rendered {len(frames)} frames")

    mean_score = result.evaluations[-1].mean_score if result.evaluations else None
    return RunSummary(name, family, config.curriculum.enabled, result.phase, mean_score,
                      occluded_histogram(result, family))


def write_summary(path: Path, summaries: List[RunSummary]):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for s in summaries:
            counts = s.histogram.counts if s.histogram else ["", "", ""]
            writer.writerow([
                s.name,
                s.family.value,
                "on" if s.curriculum else "off",
                s.phase.value,
                "" if s.mean_score is None else f"{s.mean_score:.3f}",
                s.histogram.modal_mask().value if s.histogram and s.histogram.total else "",
                *counts,
            ])


def stretch_check(summaries: List[RunSummary]) -> None:
    """Report whether strong vertical-family runs prefer the right-hand view."""
    for s in summaries:
        if s.family is not MaskFamily.VERTICAL or s.phase is not Phase.OCCLUDED:
            continue
        if s.mean_score is None or s.mean_score < STRETCH_SCORE or not s.histogram or not s.histogram.total:
            print(f"[--] {s.name}: final mean score below {STRETCH_SCORE:+.0f}, stretch check skipped")
            continue
        modal = s.histogram.modal_mask()
        if modal is MaskId.V_RIGHT:
            print(f"[OK] {s.name}: VRight is the most chosen mask {s.histogram.counts}")
        else:
            print(f"[X] {s.name}: most chosen mask is {modal.value}, not VRight {s.histogram.counts}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--config", default=str(PROJECT_ROOT / "configs" / "default.cfg"),
                        help="base run config")
    parser.add_argument("--out", default="runs/long_run", help="output directory")
    parser.add_argument("--episodes", type=int, default=None, help="override train.total_episodes")
    parser.add_argument("--seed", type=int, default=None, help="override train.seed")
    parser.add_argument("--family", choices=[f.value for f in MaskFamily], action="append",
                        help="only this family (repeatable; default: both)")
    parser.add_argument("--no-render", action="store_true", help="skip PGM rendering")
    args = parser.parse_args(argv)

    try:
        base = load_config(args.config)
        if args.seed is not None:
            base = base.with_seed(args.seed)
        families = [MaskFamily(v) for v in args.family] if args.family else list(MaskFamily)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)

        plan = [
            (f"{family.value}_curriculum_{'on' if curriculum else 'off'}",
             run_config(base, family, curriculum, args.episodes))
            for family in families
            for curriculum in (True, False)
        ]
        print(f"Long run: {len(plan)} configurations into {out_dir}")

        summaries = []
        for name, config in plan:
            tqdm.write(f"[{name}] {config.train.total_episodes} episodes, seed {config.train.seed}")
            save_config(out_dir / f"{name}.cfg", config)
            summaries.append(train_one(name, config, out_dir, render=not args.no_render))

        write_reference_histograms(out_dir / "reference")
        write_summary(out_dir / "summary.csv", summaries)
    except (GazePongError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    print(f"\nSummary: {out_dir / 'summary.csv'}")
    for s in summaries:
        score = "n/a" if s.mean_score is None else f"{s.mean_score:+.2f}"
        print(f"  {s.name:32} final phase {s.phase.value:16} mean score {score}")
    print()
    stretch_check(summaries)
    return 0


if __name__ == "__main__":
    sys.exit(main())
