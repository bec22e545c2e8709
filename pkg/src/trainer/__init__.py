"""
Trainer package.

Runs the experiment:
- curriculum: phases, triggers, mask override
- config: TrainConfig
- evaluate: evaluation episodes, traces and mask histograms
- worker: background thread for parallel evaluation
- loop: run_training

Only the dependency-free modules are re-exported here; import evaluate and
loop from their modules.
"""

from trainer.config import TrainConfig
from trainer.curriculum import (
    CurriculumConfig,
    CurriculumTrigger,
    Phase,
    curriculum_update,
    initial_phase,
    phase_mask_override,
)

__all__ = [
    'CurriculumConfig', 'CurriculumTrigger', 'Phase', 'TrainConfig',
    'curriculum_update', 'initial_phase', 'phase_mask_override',
]
