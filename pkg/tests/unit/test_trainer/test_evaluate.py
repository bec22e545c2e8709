"""
Unit tests for evaluation episodes and EvaluationWorker.

Tests verify that:
1. Evaluation is deterministic for a given seed
2. The mask histogram counts every decision exactly once
3. Splitting episodes across worker threads gives the same result as one thread
4. Fully observable evaluation never occludes a frame
5. Worker errors propagate to the caller
"""

import dataclasses

import pytest

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))


@pytest.fixture
def tiny_params():
    from agent.qnetwork import TINY, init_params
    return init_params(TINY, 0)


@pytest.fixture
def eval_config():
    from trainer.config import TrainConfig
    return TrainConfig(eval_episodes=3, eval_epsilon=0.05, verbose=False)


class TestEvaluate:
    """Test suite for evaluate()."""

    def test_deterministic(self, tiny_params, small_env_config, eval_config):
        """Same seed gives the same scores and histogram."""
        from trainer.evaluate import evaluate

        a = evaluate(tiny_params, small_env_config, eval_config, seed=50000)
        b = evaluate(tiny_params, small_env_config, eval_config, seed=50000)

        assert a.scores == b.scores
        assert a.histogram.counts == b.histogram.counts

    def test_histogram_counts_every_decision(self, tiny_params, small_env_config, eval_config):
        """Histogram total equals the number of decisions played."""
        from trainer.evaluate import evaluate

        result = evaluate(tiny_params, small_env_config, eval_config, seed=7, record_traces=True)

        assert len(result.traces) == 3
        assert result.histogram.total == sum(len(t.decisions) for t in result.traces)
        assert len(result.scores) == 3

    def test_workers_match_single_thread(self, tiny_params, small_env_config, eval_config):
        """Two workers produce exactly what one worker does."""
        from trainer.evaluate import evaluate

        single = evaluate(tiny_params, small_env_config, eval_config, seed=11, workers=1)
        double = evaluate(tiny_params, small_env_config, eval_config, seed=11, workers=2)

        assert single.scores == double.scores
        assert single.histogram.counts == double.histogram.counts

    def test_fully_observable_never_masks(self, tiny_params, small_env_config, eval_config):
        """Every applied mask is IDENTITY while fully observable."""
        import numpy as np
        from observe.frames import preprocess
        from observe.masks import MaskId
        from pong.env import PongEnv
        from trainer.curriculum import Phase
        from trainer.evaluate import evaluate

        result = evaluate(tiny_params, small_env_config, eval_config, seed=3, episodes=1,
                          phase=Phase.FULLY_OBSERVABLE, record_traces=True)
        trace = result.traces[0]

        assert {d.mask for d in trace.decisions} == {MaskId.IDENTITY}

        env = PongEnv(small_env_config)
        env.reset(trace.env_seed)
        for decision in trace.decisions[:20]:
            step = env.step(decision.action.game)
            assert np.array_equal(decision.frame, preprocess(step.frame))

    def test_occluded_uses_family_masks(self, tiny_params, small_env_config, eval_config):
        """Occluded decisions apply the chosen family mask."""
        from observe.masks import MaskFamily, family_masks
        from trainer.evaluate import evaluate

        result = evaluate(tiny_params, small_env_config, eval_config, seed=3, episodes=1, record_traces=True)
        masks = family_masks(MaskFamily.VERTICAL)

        for decision in result.traces[0].decisions:
            assert decision.mask is masks[decision.action.mask_index]

    def test_opening_gaze(self):
        """The reset frame is seen through the middle mask, or unmasked when fully observable."""
        from observe.masks import MaskFamily, MaskId
        from trainer.curriculum import Phase
        from trainer.evaluate import opening_gaze

        assert opening_gaze(MaskFamily.HORIZONTAL, Phase.OCCLUDED) is MaskId.H_MID
        assert opening_gaze(MaskFamily.VERTICAL, Phase.FULLY_OBSERVABLE) is MaskId.IDENTITY

    def test_worker_error_propagates(self, tiny_params, small_env_config, eval_config):
        """A failing episode in a worker thread raises in the caller."""
        from errors import ConfigError
        from trainer.evaluate import evaluate

        broken = dataclasses.replace(small_env_config, paddle_speed=0.0)

        with pytest.raises(ConfigError):
            evaluate(tiny_params, broken, eval_config, seed=0, workers=2)


class TestEvaluationWorker:
    """Test suite for EvaluationWorker callbacks."""

    def test_results_in_episode_order(self):
        """on_result receives outcomes for the assigned episodes, in order."""
        from trainer.worker import EvaluationWorker

        received = []
        finished = []
        worker = EvaluationWorker([0, 2, 4], lambda episode: episode * 10)
        worker.start(on_result=received.extend, on_finished=lambda: finished.append(True))
        worker.join()

        assert received == [0, 20, 40]
        assert finished == [True]
        assert not worker.is_running()

    def test_error_callback(self):
        """on_error receives the exception and on_result is not called."""
        from trainer.worker import EvaluationWorker

        def play(episode):
            raise RuntimeError("boom")

        received, errors = [], []
        worker = EvaluationWorker([0], play)
        worker.start(on_result=received.extend, on_error=errors.append)
        worker.join()

        assert received == []
        assert len(errors) == 1 and str(errors[0]) == "boom"
