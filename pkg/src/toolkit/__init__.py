"""
Toolkit package.

Everything around the experiment:
- config: run configuration files
- checkpoint: binary checkpoint format
- metrics: metrics, evaluation and histogram CSVs
- rundir: per-run output directory
- frames: PGM frame sequences (import from toolkit.frames; it depends on the trainer)
"""

from toolkit.checkpoint import CheckpointBlob, load_checkpoint, save_checkpoint
from toolkit.config import RunConfig, dump_config, load_config, parse_config
from toolkit.metrics import MaskHistogram, MetricsRow, write_histogram, write_metrics
from toolkit.rundir import RunDirectory

__all__ = [
    'CheckpointBlob', 'MaskHistogram', 'MetricsRow', 'RunConfig', 'RunDirectory',
    'dump_config', 'load_checkpoint', 'load_config', 'parse_config', 'save_checkpoint',
    'write_histogram', 'write_metrics',
]
