"""
Training-run settings.
"""

from dataclasses import dataclass

from agent.actions import CombineMode
from errors import ConfigError
from observe.masks import MaskFamily


@dataclass(frozen=True)
class TrainConfig:
    """
    Attributes:
        total_episodes: Episodes to train
        mask_family: Which three masks the agent chooses between
        combine_mode: flatten_sum or independent_branch (mirrors agent.combine_mode)
        eval_every: Episodes between evaluations
        eval_episodes: Episodes per evaluation
        eval_epsilon: Exploration rate during evaluation
        seed: Run seed (network init, agent randomness, env seeds)
        checkpoint_every: Episodes between checkpoints; one is always written at the end
        eval_workers: Threads per evaluation
        wall_clock: Write real elapsed seconds into metrics (breaks byte-identical reruns)
        verbose: Progress bar and status lines
    """

    total_episodes: int = 1000
    mask_family: MaskFamily = MaskFamily.VERTICAL
    combine_mode: CombineMode = CombineMode.FLATTEN_SUM
    eval_every: int = 25
    eval_episodes: int = 10
    eval_epsilon: float = 0.05
    seed: int = 0
    checkpoint_every: int = 100
    eval_workers: int = 1
    wall_clock: bool = False
    verbose: bool = True

    def validate(self) -> "TrainConfig":
        for name in ("total_episodes", "eval_every", "eval_episodes", "checkpoint_every", "eval_workers"):
            value = getattr(self, name)
            if value < 1:
                raise ConfigError(f"{name} must be >= 1, got {value}", field=f"train.{name}")
        if not 0.0 <= self.eval_epsilon <= 1.0:
            raise ConfigError(
                f"eval_epsilon must be in [0, 1], got {self.eval_epsilon}", field="train.eval_epsilon"
            )
        if not isinstance(self.mask_family, MaskFamily):
            raise ConfigError(f"unknown mask family {self.mask_family!r}", field="train.mask_family")
        if not isinstance(self.combine_mode, CombineMode):
            raise ConfigError(f"unknown combine mode {self.combine_mode!r}", field="train.combine_mode")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}", field="train.seed")
        return self
