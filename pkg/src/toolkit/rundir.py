"""
RunDirectory - Output layout for one training or evaluation run.

    <root>/config.cfg          canonical config echo
    <root>/metrics.csv         one row per training episode
    <root>/evaluations.csv     one row per evaluation
    <root>/histograms/         mask histogram per evaluation
    <root>/checkpoints/        episode_NNNNN.ckpt and final.ckpt
    <root>/frames/             rendered PGM sequences
"""

import threading
from pathlib import Path
from typing import Callable, Optional, Union


class RunDirectory:
    """
    Owns a run's output directory; every file is written atomically.

    Usage:
        run = RunDirectory("runs/smoke")
        run.write_text(run.config_path, text)
        run.write_with(run.metrics_path, lambda tmp: write_metrics(tmp, rows))
    """

    CONFIG_FILE = "config.cfg"
    METRICS_FILE = "metrics.csv"
    EVALUATIONS_FILE = "evaluations.csv"

    def __init__(self, root: Union[str, Path], verbose: bool = True):
        """
        Args:
            root: Output directory (created if missing)
            verbose: Print where the run writes
        """
        self.root = Path(root)
        self._lock = threading.Lock()
        self.root.mkdir(parents=True, exist_ok=True)
        if verbose:
            if (self.root / self.METRICS_FILE).exists():
                print(f"Run directory (existing): {self.root}")
            else:
                print(f"Run directory: {self.root}")

    @property
    def config_path(self) -> Path:
        return self.root / self.CONFIG_FILE

    @property
    def metrics_path(self) -> Path:
        return self.root / self.METRICS_FILE

    @property
    def evaluations_path(self) -> Path:
        return self.root / self.EVALUATIONS_FILE

    @property
    def frames_dir(self) -> Path:
        return self.root / "frames"

    def histogram_path(self, episode: int) -> Path:
        return self.root / "histograms" / f"eval_{episode:05d}.csv"

    def checkpoint_path(self, episode: Optional[int] = None) -> Path:
        """episode_NNNNN.ckpt, or final.ckpt when episode is None."""
        name = "final.ckpt" if episode is None else f"episode_{episode:05d}.ckpt"
        return self.root / "checkpoints" / name

    def write_with(self, path: Path, write: Callable[[Path], None]) -> Path:
        """
        Let write() produce a temp file, then move it over path.

        Args:
            path: Final location
            write: Callable that writes a complete file to the path it is given
        """
        with self._lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            temp_file = path.with_suffix(path.suffix + ".tmp")
            write(temp_file)
            temp_file.replace(path)
        return path

    def write_text(self, path: Path, text: str) -> Path:
        return self.write_with(path, lambda temp: temp.write_text(text, encoding="utf-8"))
