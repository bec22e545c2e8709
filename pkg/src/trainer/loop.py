"""
Training loop: environment, observation pipeline and agent, with the
curriculum, periodic evaluation, metrics and checkpoints.
"""

import dataclasses
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from agent.dqn import AgentConfig, DQNAgent
from agent.replay import Transition
from errors import ConfigError
from neuralnet.network import NetParams
from observe.frames import preprocess
from observe.masks import MaskFamily, apply_mask, family_masks
from observe.stack import push_frame
from pong.env import EnvConfig, PongEnv
from toolkit.checkpoint import CheckpointBlob, load_checkpoint, save_checkpoint
from toolkit.config import RunConfig, dump_config
from toolkit.metrics import (
    EvaluationRow,
    MetricsRow,
    read_evaluations,
    read_metrics,
    write_evaluations,
    write_histogram,
    write_metrics,
)
from toolkit.rundir import RunDirectory
from trainer.config import TrainConfig
from trainer.curriculum import (
    CurriculumConfig,
    CurriculumTrigger,
    Phase,
    curriculum_update,
    initial_phase,
    phase_mask_override,
)
from trainer.evaluate import evaluate, observe_reset

# Training episode e plays env seed seed * SEED_STRIDE + e; evaluations always
# replay the same episodes starting at seed * SEED_STRIDE + EVAL_SEED_OFFSET.
SEED_STRIDE = 100_000
EVAL_SEED_OFFSET = 50_000


def episode_seed(seed: int, episode: int) -> int:
    return seed * SEED_STRIDE + episode


def evaluation_seed(seed: int) -> int:
    return seed * SEED_STRIDE + EVAL_SEED_OFFSET


@dataclass
class EpisodeStats:
    reward: int
    steps: int
    losses: List[float]

    @property
    def mean_loss(self) -> float:
        return float(np.mean(self.losses)) if self.losses else 0.0


@dataclass
class TrainingResult:
    params: NetParams
    phase: Phase
    metrics: List[MetricsRow] = field(default_factory=list)
    evaluations: List[EvaluationRow] = field(default_factory=list)
    checkpoints: List[Path] = field(default_factory=list)


def run_train_episode(agent: DQNAgent, env: PongEnv, phase: Phase, family: MaskFamily,
                      env_seed: int, episode: int) -> EpisodeStats:
    """
    One learning episode.

    The mask chosen at each step is applied to the frame that step produces,
    so it shapes the next observation.
    """
    agent.begin_episode(episode)
    obs = observe_reset(env.reset(env_seed), family, phase)
    masks = family_masks(family)
    stats = EpisodeStats(reward=0, steps=0, losses=[])

    while not env.done:
        action = agent.act(obs)
        result = env.step(action.game)
        mask = phase_mask_override(phase, masks[action.mask_index])
        next_obs = push_frame(obs, apply_mask(preprocess(result.frame), mask), mask)
        loss = agent.observe(Transition(obs, action, result.reward, next_obs, result.done))
        if loss is not None:
            stats.losses.append(loss)
        stats.reward += result.reward
        stats.steps += 1
        obs = next_obs
    return stats


def _checkpoint(agent: DQNAgent, train_config: TrainConfig, phase: Phase, episode: int) -> CheckpointBlob:
    return CheckpointBlob(
        seed=train_config.seed,
        phase=phase,
        family=train_config.mask_family,
        episode=episode,
        total_steps=agent.total_steps,
        online=agent.params,
        target=agent.target_params,
        adam=agent.optimizer,
    )


def _resume(agent: DQNAgent, path: Union[str, Path], train_config: TrainConfig) -> Tuple[Phase, int]:
    blob = load_checkpoint(path)
    if blob.family is not train_config.mask_family:
        raise ConfigError(
            f"checkpoint was trained with the {blob.family.value} family, "
            f"config asks for {train_config.mask_family.value}",
            field="train.mask_family",
        )
    if blob.online.keys() != agent.params.keys() or any(
        blob.online[name].shape != agent.params[name].shape for name in blob.online
    ):
        raise ConfigError("checkpoint does not match agent.architecture", field="agent.architecture")
    agent.restore(blob.online, blob.target, blob.adam, blob.total_steps)
    return blob.phase, blob.episode


def _restore_history(run: RunDirectory, result: TrainingResult, family: MaskFamily, last_episode: int):
    """Reload metrics and evaluation rows written up to the resumed checkpoint."""
    try:
        if run.metrics_path.exists():
            result.metrics = [row for row in read_metrics(run.metrics_path) if row.episode <= last_episode]
        if run.evaluations_path.exists():
            result.evaluations = [
                row for row in read_evaluations(run.evaluations_path, family) if row.episode <= last_episode
            ]
    except ValueError as e:
        raise ConfigError(f"cannot resume into {run.root}: {e}", field="train.mask_family") from e


def _evaluation_episodes(curriculum_config: CurriculumConfig, phase: Phase) -> Optional[int]:
    """While the score trigger is pending, an evaluation plays curriculum.window episodes."""
    if (curriculum_config.enabled and phase is Phase.FULLY_OBSERVABLE
            and curriculum_config.trigger is CurriculumTrigger.SCORE_THRESHOLD):
        return curriculum_config.window
    return None


def run_training(env_config: EnvConfig, agent_config: AgentConfig, curriculum_config: CurriculumConfig,
                 train_config: TrainConfig, out_dir: Optional[Union[str, Path]] = None,
                 resume_from: Optional[Union[str, Path]] = None) -> TrainingResult:
    """
    Train for train_config.total_episodes episodes.

    Args:
        env_config, agent_config, curriculum_config, train_config: Run settings
        out_dir: Where config echo, metrics, evaluations and checkpoints go;
            nothing is written when None
        resume_from: Checkpoint to continue from; training restarts at the
            episode after the saved one with an empty replay buffer

    Returns:
        TrainingResult with final params, final phase and all logged rows

    Raises:
        ConfigError: Invalid or inconsistent settings
        CheckpointError, OSError: From checkpoint and file I/O
    """
    env_config.validate()
    curriculum_config.validate()
    train_config.validate()
    agent_config = dataclasses.replace(agent_config, combine_mode=train_config.combine_mode).validate()
    verbose = train_config.verbose
    family = train_config.mask_family

    run = RunDirectory(out_dir, verbose=verbose) if out_dir is not None else None
    if run is not None:
        config_text = dump_config(RunConfig(env_config, agent_config, curriculum_config, train_config))
        run.write_text(run.config_path, config_text)

    agent = DQNAgent(agent_config, seed=train_config.seed)
    env = PongEnv(env_config)
    phase = initial_phase(curriculum_config)
    result = TrainingResult(params=agent.params, phase=phase)
    latest_eval_mean: Optional[float] = None
    start = 1

    if resume_from is not None:
        phase, last_episode = _resume(agent, resume_from, train_config)
        start = last_episode + 1
        if run is not None:
            _restore_history(run, result, family, last_episode)
        if result.evaluations:
            latest_eval_mean = result.evaluations[-1].mean_score
        if verbose:
            print(f"Resumed from {resume_from} at episode {start} ({phase.value})")

    def log(message: str):
        if verbose:
            tqdm.write(message)

    progress = tqdm(range(start, train_config.total_episodes + 1), desc="train", unit="ep",
                    disable=not verbose)
    for episode in progress:
        new_phase = curriculum_update(phase, episode, latest_eval_mean, curriculum_config)
        if new_phase is not phase:
            log(f"Episode {episode}: switching to {new_phase.value} observations")
            phase = new_phase

        started = time.perf_counter()
        stats = run_train_episode(agent, env, phase, family, episode_seed(train_config.seed, episode), episode)
        elapsed = time.perf_counter() - started
        result.metrics.append(MetricsRow(
            episode=episode,
            phase=phase.value,
            episode_reward=stats.reward,
            steps=stats.steps,
            mean_loss=stats.mean_loss,
            epsilon=agent.epsilon,
            wall_seconds=elapsed if train_config.wall_clock else 0.0,
        ))
        progress.set_postfix(reward=stats.reward, eps=f"{agent.epsilon:.3f}", sec=f"{elapsed:.1f}")
        if run is not None:
            run.write_with(run.metrics_path, lambda path: write_metrics(path, result.metrics))

        if episode % train_config.eval_every == 0:
            evaluation = evaluate(
                agent.snapshot(), env_config, train_config, evaluation_seed(train_config.seed),
                phase=phase, episodes=_evaluation_episodes(curriculum_config, phase),
                architecture=agent.architecture,
            )
            latest_eval_mean = evaluation.mean_score
            result.evaluations.append(EvaluationRow(episode, phase.value, evaluation.mean_score, evaluation.histogram))
            counts = " / ".join(f"{mask.value} {count}" for mask, count in evaluation.histogram.rows())
            log(f"Episode {episode}: eval mean score {evaluation.mean_score:.2f} ({counts})")
            if run is not None:
                run.write_with(run.histogram_path(episode), lambda path: write_histogram(path, evaluation.histogram))
                run.write_with(run.evaluations_path,
                               lambda path: write_evaluations(path, result.evaluations, family))

        if run is not None and episode % train_config.checkpoint_every == 0:
            path = save_checkpoint(run.checkpoint_path(episode), _checkpoint(agent, train_config, phase, episode))
            result.checkpoints.append(path)
            log(f"Checkpoint saved to {path}")

    progress.close()
    if run is not None:
        final_episode = max(start - 1, train_config.total_episodes)
        path = save_checkpoint(run.checkpoint_path(), _checkpoint(agent, train_config, phase, final_episode))
        result.checkpoints.append(path)
        if verbose:
            print(f"Checkpoint saved to {path}")

    result.params = agent.params
    result.phase = phase
    return result
