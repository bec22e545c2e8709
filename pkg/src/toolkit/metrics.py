"""
CSV emission for training curves, evaluation history and mask histograms.

All writers use a fixed column order, "\\n" line endings and fixed-precision
floats so identically seeded runs produce byte-identical files.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from observe.masks import MaskFamily, MaskId, family_masks

PathLike = Union[str, Path]

METRICS_COLUMNS = ("episode", "phase", "episode_reward", "steps", "mean_loss", "epsilon", "wall_seconds")
HISTOGRAM_COLUMNS = ("mask", "count")

# Mask-choice counts from an Atari Pong run with the same two families.
# Written next to results for comparison; nothing here produces or checks them.
REFERENCE_MASK_COUNTS: Dict[MaskFamily, Tuple[int, int, int]] = {
    MaskFamily.HORIZONTAL: (467, 599, 743),
    MaskFamily.VERTICAL: (525, 370, 1035),
}


@dataclass(frozen=True)
class MetricsRow:
    episode: int
    phase: str
    episode_reward: int
    steps: int
    mean_loss: float
    epsilon: float
    wall_seconds: float

    def as_csv(self) -> List[str]:
        return [
            str(self.episode),
            self.phase,
            str(self.episode_reward),
            str(self.steps),
            f"{self.mean_loss:.6f}",
            f"{self.epsilon:.6f}",
            f"{self.wall_seconds:.3f}",
        ]

    @classmethod
    def from_csv(cls, values: Sequence[str]) -> "MetricsRow":
        return cls(
            episode=int(values[0]),
            phase=values[1],
            episode_reward=int(values[2]),
            steps=int(values[3]),
            mean_loss=float(values[4]),
            epsilon=float(values[5]),
            wall_seconds=float(values[6]),
        )


@dataclass
class MaskHistogram:
    """Per-mask decision counts in family_masks order."""

    family: MaskFamily
    counts: List[int] = field(default_factory=lambda: [0, 0, 0])

    def __post_init__(self):
        if len(self.counts) != 3 or any(c < 0 for c in self.counts):
            raise ValueError(f"histogram needs three non-negative counts, got {self.counts}")

    def record(self, mask_index: int):
        self.counts[mask_index] += 1

    def merge(self, other: "MaskHistogram") -> "MaskHistogram":
        if other.family is not self.family:
            raise ValueError(f"cannot merge {other.family.value} counts into a {self.family.value} histogram")
        return MaskHistogram(self.family, [a + b for a, b in zip(self.counts, other.counts)])

    @property
    def total(self) -> int:
        return sum(self.counts)

    def rows(self) -> List[Tuple[MaskId, int]]:
        return list(zip(family_masks(self.family), self.counts))

    def modal_mask(self) -> MaskId:
        """Most chosen mask; ties go to the earlier one."""
        return family_masks(self.family)[self.counts.index(max(self.counts))]


@dataclass(frozen=True)
class EvaluationRow:
    episode: int
    phase: str
    mean_score: float
    histogram: MaskHistogram


def _open(path: PathLike):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="", encoding="utf-8")


def write_metrics(path: PathLike, rows: Iterable[MetricsRow]):
    """One row per episode under the fixed header."""
    with _open(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(METRICS_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())


def read_metrics(path: PathLike) -> List[MetricsRow]:
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != METRICS_COLUMNS:
            raise ValueError(f"{path} is not a metrics file")
        return [MetricsRow.from_csv(values) for values in reader if values]


def write_histogram(path: PathLike, histogram: MaskHistogram):
    """Columns (mask, count), one row per family mask."""
    with _open(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(HISTOGRAM_COLUMNS)
        for mask, count in histogram.rows():
            writer.writerow([mask.value, count])


def _evaluation_columns(family: MaskFamily) -> List[str]:
    return ["episode", "phase", "mean_score"] + [m.value for m in family_masks(family)]


def write_evaluations(path: PathLike, rows: Iterable[EvaluationRow], family: MaskFamily):
    """Evaluation history: episode, phase, mean_score, then one count column per family mask."""
    with _open(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(_evaluation_columns(family))
        for row in rows:
            writer.writerow(
                [row.episode, row.phase, f"{row.mean_score:.3f}"] + [str(c) for c in row.histogram.counts]
            )


def read_evaluations(path: PathLike, family: MaskFamily) -> List[EvaluationRow]:
    """
    Raises:
        ValueError: If the header does not match the family's evaluation columns
    """
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != _evaluation_columns(family):
            raise ValueError(f"{path} is not a {family.value} evaluation history")
        return [
            EvaluationRow(int(values[0]), values[1], float(values[2]),
                          MaskHistogram(family, [int(c) for c in values[3:]]))
            for values in reader if values
        ]


def write_reference_histograms(out_dir: PathLike) -> List[Path]:
    """Write REFERENCE_MASK_COUNTS as reference_<family>.csv files."""
    paths = []
    for family, counts in REFERENCE_MASK_COUNTS.items():
        path = Path(out_dir) / f"reference_{family.value}.csv"
        write_histogram(path, MaskHistogram(family, list(counts)))
        paths.append(path)
    return paths
