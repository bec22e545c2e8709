"""
Frame sequences as binary PGM files.

A greedy evaluation episode is replayed from a checkpoint and every
stride-th observation frame (as the agent saw it, masks included) is
written as an 84x84 P5 image with intensity round(255 * pixel).
"""

import csv
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from PIL import Image

from agent.actions import CombineMode
from agent.qnetwork import architecture_for
from pong.env import EnvConfig
from toolkit.checkpoint import load_checkpoint
from trainer.evaluate import EpisodeTrace, run_eval_episode

PathLike = Union[str, Path]

FRAMES_COLUMNS = ("file", "decision", "mask", "reward", "agent_score", "opponent_score")


def write_pgm(path: PathLike, frame: np.ndarray) -> Path:
    """Write a [0, 1] grayscale frame as P5 with maxval 255."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pixels = np.rint(np.clip(frame, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(pixels).save(path, format="PPM")
    return path


def read_pgm(path: PathLike) -> np.ndarray:
    """Read a P5 frame back as float32 in [0, 1]."""
    with Image.open(path) as img:
        if img.format != "PPM" or img.mode != "L":
            raise ValueError(f"{path} is not an 8-bit PGM image")
        return np.asarray(img, dtype=np.uint8).astype(np.float32) / 255.0


def select_decisions(trace: EpisodeTrace, stride: int = 4, window: Optional[int] = None) -> List[int]:
    """
    Decision positions to render.

    Without a window: 0, stride, 2*stride, ... over the whole episode.
    With a window: for every point the agent scores, the scoring decision
    and every stride-th decision before it, going back at most window
    decisions. Overlapping windows are merged.
    """
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if window is None:
        return list(range(0, len(trace.decisions), stride))
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")

    selected = set()
    for scored in trace.scoring_decisions():
        first = max(0, scored - window + 1)
        selected.update(range(scored, first - 1, -stride))
    return sorted(selected)


def write_sequence(trace: EpisodeTrace, positions: List[int], out_dir: PathLike) -> List[Path]:
    """Write frame_NNNNN.pgm files plus frames.csv describing them."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    with open(out_dir / "frames.csv", "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(FRAMES_COLUMNS)
        for number, position in enumerate(positions):
            decision = trace.decisions[position]
            path = write_pgm(out_dir / f"frame_{number:05d}.pgm", decision.frame)
            writer.writerow([
                path.name, decision.index, decision.mask.value, decision.reward,
                decision.agent_score, decision.opponent_score,
            ])
            paths.append(path)
    return paths


def render_sequence(checkpoint_path: PathLike, env_seed: int, out_dir: PathLike, stride: int = 4,
                    window: Optional[int] = None, env_config: Optional[EnvConfig] = None) -> List[Path]:
    """
    Replay one greedy episode from a checkpoint and write its frames.

    Args:
        checkpoint_path: Checkpoint to load (its mask family and phase are used)
        env_seed: Environment seed of the replayed episode
        out_dir: Output directory for PGMs and frames.csv
        stride: Keep every stride-th decision
        window: Only frames within this many decisions before each agent point
        env_config: Environment settings (defaults if None)

    Returns:
        Paths of the written PGM files, in order
    """
    blob = load_checkpoint(checkpoint_path)
    outcome = run_eval_episode(
        blob.online, architecture_for(blob.online), env_config or EnvConfig(), blob.family, blob.phase,
        epsilon=0.0, mode=CombineMode.FLATTEN_SUM, seed=env_seed, episode=0, record_trace=True,
    )
    positions = select_decisions(outcome.trace, stride, window)
    return write_sequence(outcome.trace, positions, out_dir)
