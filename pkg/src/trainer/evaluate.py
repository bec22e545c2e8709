"""
Evaluation episodes: no learning, near-greedy actions, every gaze decision
counted.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from agent.actions import CombinedAction, CombineMode, select_action
from agent.qnetwork import Architecture, architecture_for, q_forward
from neuralnet.network import NetParams
from observe.frames import preprocess
from observe.masks import MaskFamily, MaskId, apply_mask, family_masks
from observe.stack import ObsStack, initial_stack, push_frame
from pong.env import EnvConfig, PongEnv
from toolkit.metrics import MaskHistogram
from trainer.config import TrainConfig
from trainer.curriculum import Phase, phase_mask_override
from trainer.worker import EvaluationWorker


@dataclass(frozen=True, eq=False)
class Decision:
    """
    One evaluation decision and what it led to.

    frame is the newest observation frame after the step, masked with the
    effective mask, i.e. exactly what the agent saw next.
    """

    index: int
    action: CombinedAction
    mask: MaskId
    reward: int
    agent_score: int
    opponent_score: int
    frame: np.ndarray


@dataclass
class EpisodeTrace:
    env_seed: int
    decisions: List[Decision] = field(default_factory=list)

    def scoring_decisions(self) -> List[int]:
        """Positions in decisions where the agent won a point."""
        return [i for i, d in enumerate(self.decisions) if d.reward > 0]


@dataclass
class EpisodeOutcome:
    episode: int
    score: int
    histogram: MaskHistogram
    trace: Optional[EpisodeTrace] = None


@dataclass
class EvaluationResult:
    scores: List[int]
    histogram: MaskHistogram
    traces: List[EpisodeTrace] = field(default_factory=list)

    @property
    def mean_score(self) -> float:
        return float(np.mean(self.scores)) if self.scores else 0.0


def opening_gaze(family: MaskFamily, phase: Phase) -> MaskId:
    """Mask for the reset frame: the family's middle band, subject to the phase."""
    return phase_mask_override(phase, family_masks(family)[1])


def observe_reset(raw_frame: np.ndarray, family: MaskFamily, phase: Phase) -> ObsStack:
    gaze = opening_gaze(family, phase)
    return initial_stack(apply_mask(preprocess(raw_frame), gaze), gaze)


def run_eval_episode(params: NetParams, architecture: Architecture, env_config: EnvConfig,
                     family: MaskFamily, phase: Phase, epsilon: float, mode: CombineMode,
                     seed: int, episode: int, record_trace: bool = False) -> EpisodeOutcome:
    """
    Play one evaluation episode.

    The environment is seeded with seed + episode and the action stream with
    (seed, episode), so the outcome does not depend on which thread runs it.
    """
    env_seed = seed + episode
    env = PongEnv(env_config)
    obs = observe_reset(env.reset(env_seed), family, phase)
    rng = np.random.default_rng([seed, episode])
    masks = family_masks(family)
    histogram = MaskHistogram(family)
    trace = EpisodeTrace(env_seed) if record_trace else None

    result = None
    while not env.done:
        action = select_action(q_forward(params, obs, architecture), epsilon, rng, mode)
        histogram.record(action.mask_index)
        result = env.step(action.game)
        mask = phase_mask_override(phase, masks[action.mask_index])
        frame = apply_mask(preprocess(result.frame), mask)
        obs = push_frame(obs, frame, mask)
        if trace is not None:
            trace.decisions.append(Decision(
                index=len(trace.decisions),
                action=action,
                mask=mask,
                reward=result.reward,
                agent_score=result.agent_score,
                opponent_score=result.opponent_score,
                frame=frame,
            ))

    score = result.agent_score - result.opponent_score
    return EpisodeOutcome(episode, score, histogram, trace)


def merge_outcomes(family: MaskFamily, outcomes: Sequence[EpisodeOutcome]) -> EvaluationResult:
    """Combine per-episode outcomes in episode order."""
    ordered = sorted(outcomes, key=lambda o: o.episode)
    histogram = MaskHistogram(family)
    for outcome in ordered:
        histogram = histogram.merge(outcome.histogram)
    return EvaluationResult(
        scores=[o.score for o in ordered],
        histogram=histogram,
        traces=[o.trace for o in ordered if o.trace is not None],
    )


def evaluate(params: NetParams, env_config: EnvConfig, train_config: TrainConfig, seed: int,
             phase: Phase = Phase.OCCLUDED, episodes: Optional[int] = None,
             workers: Optional[int] = None, record_traces: bool = False,
             architecture: Optional[Architecture] = None) -> EvaluationResult:
    """
    Run evaluation episodes with a read-only parameter snapshot.

    Args:
        params: Online parameters (not modified)
        env_config: Environment settings
        train_config: Supplies mask family, combine mode, eval_epsilon and defaults
        seed: Evaluation seed; episode i uses env seed seed + i
        phase: FULLY_OBSERVABLE evaluates with Identity masks
        episodes: Overrides train_config.eval_episodes
        workers: Overrides train_config.eval_workers
        record_traces: Keep every decision for rendering
        architecture: Network layout; inferred from params if None

    Returns:
        EvaluationResult with per-episode scores in episode order
    """
    episodes = train_config.eval_episodes if episodes is None else episodes
    workers = max(1, min(train_config.eval_workers if workers is None else workers, episodes))
    architecture = architecture or architecture_for(params)
    family = train_config.mask_family

    def play(episode: int) -> EpisodeOutcome:
        return run_eval_episode(
            params, architecture, env_config, family, phase, train_config.eval_epsilon,
            train_config.combine_mode, seed, episode, record_traces,
        )

    if workers == 1:
        return merge_outcomes(family, [play(i) for i in range(episodes)])

    outcomes: List[EpisodeOutcome] = []
    errors: List[Exception] = []
    pool = []
    for w in range(workers):
        worker = EvaluationWorker(list(range(w, episodes, workers)), play)
        worker.start(on_result=outcomes.extend, on_error=errors.append)
        pool.append(worker)
    for worker in pool:
        worker.join()
    if errors:
        raise errors[0]
    return merge_outcomes(family, outcomes)
