"""
Two-phase curriculum: fully observable first, occluded afterwards.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from errors import ConfigError
from observe.masks import MaskId


class Phase(Enum):
    """Training phase. Values double as CSV labels."""

    FULLY_OBSERVABLE = "fully_observable"
    OCCLUDED = "occluded"


class CurriculumTrigger(Enum):
    EPISODE_COUNT = "episode_count"
    SCORE_THRESHOLD = "score_threshold"


@dataclass(frozen=True)
class CurriculumConfig:
    """
    When occlusion starts.

    Attributes:
        enabled: False runs occluded from episode 1
        trigger: episode_count or score_threshold
        episodes: EpisodeCount n; episodes 1..n are fully observable
        threshold: ScoreThreshold θ on the mean evaluation score
        window: Evaluation episodes played per evaluation while the score trigger is pending
    """

    enabled: bool = True
    trigger: CurriculumTrigger = CurriculumTrigger.EPISODE_COUNT
    episodes: int = 500
    threshold: float = 20.0
    window: int = 10

    def validate(self) -> "CurriculumConfig":
        if not isinstance(self.trigger, CurriculumTrigger):
            raise ConfigError(f"unknown curriculum trigger {self.trigger!r}", field="curriculum.trigger")
        if self.episodes < 0:
            raise ConfigError(f"episodes must be >= 0, got {self.episodes}", field="curriculum.episodes")
        if not 1.0 <= self.threshold <= 21.0:
            raise ConfigError(
                f"threshold must be in [1, 21], got {self.threshold}", field="curriculum.threshold"
            )
        if self.window < 1:
            raise ConfigError(f"window must be >= 1, got {self.window}", field="curriculum.window")
        return self


def initial_phase(config: CurriculumConfig) -> Phase:
    return Phase.FULLY_OBSERVABLE if config.enabled else Phase.OCCLUDED


def curriculum_update(phase: Phase, episode: int, latest_eval_mean: Optional[float],
                      config: CurriculumConfig) -> Phase:
    """
    Phase for the given 1-based episode.

    Args:
        phase: Current phase
        episode: Episode about to run
        latest_eval_mean: Mean score of the most recent evaluation, None before the first
        config: Curriculum settings

    Returns:
        The new phase; never goes back from OCCLUDED
    """
    if phase is Phase.OCCLUDED or not config.enabled:
        return Phase.OCCLUDED
    if config.trigger is CurriculumTrigger.EPISODE_COUNT:
        return Phase.OCCLUDED if episode > config.episodes else phase
    if latest_eval_mean is not None and latest_eval_mean >= config.threshold:
        return Phase.OCCLUDED
    return phase


def phase_mask_override(phase: Phase, chosen: MaskId) -> MaskId:
    """The mask actually applied: IDENTITY while fully observable."""
    return MaskId.IDENTITY if phase is Phase.FULLY_OBSERVABLE else chosen
