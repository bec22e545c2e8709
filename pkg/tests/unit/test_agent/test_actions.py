"""
Unit tests for the combined 9-way action space.

Tests verify that:
1. combined_q sums game and mask values into the flat layout
2. encode_action/decode_action are a bijection over the 9 actions
3. The flat argmax always decomposes into the per-head argmaxes
4. select_action is greedy at epsilon 0 (ties to the lowest index)
5. select_action is uniform over all 9 actions at epsilon 1
"""

import pytest

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))

# 95% critical values of the chi-square distribution
CHI2_DF8 = 15.507


def _q(game, mask):
    import numpy as np
    from agent.actions import QOutput
    return QOutput(np.array(game, dtype=np.float32), np.array(mask, dtype=np.float32))


class TestCombinedQ:
    """Test suite for combined_q."""

    def test_known_values(self):
        """q9[3g + m] = q_game[g] + q_mask[m]."""
        from agent.actions import combined_q

        q9 = combined_q(_q([1, 0, -1], [0.5, 0, 0]))

        assert q9.tolist() == [1.5, 1, 1, 0.5, 0, 0, -0.5, -1, -1]

    def test_zero_case(self):
        """All-zero heads give all-zero combined values."""
        from agent.actions import combined_q

        assert combined_q(_q([0, 0, 0], [0, 0, 0])).tolist() == [0.0] * 9

    def test_argmax_decomposes(self, rng):
        """Flat argmax equals (argmax q_game, argmax q_mask) for random outputs."""
        import numpy as np
        from agent.actions import combined_q, decode_action

        for _ in range(1000):
            out = _q(rng.normal(size=3), rng.normal(size=3))
            best = decode_action(int(np.argmax(combined_q(out))))
            assert int(best.game) == int(np.argmax(out.q_game))
            assert best.mask_index == int(np.argmax(out.q_mask))

    def test_qoutput_validates(self):
        """QOutput rejects wrong shapes and non-finite values."""
        import numpy as np
        from agent.actions import QOutput
        from errors import NumericError

        with pytest.raises(ValueError):
            QOutput(np.zeros(9), np.zeros(3))
        with pytest.raises(NumericError):
            QOutput(np.array([0.0, np.nan, 0.0]), np.zeros(3))


class TestActionEncoding:
    """Test suite for the flat index bijection."""

    def test_bijection(self):
        """All 9 (game, mask) pairs map to distinct indices and back."""
        from agent.actions import decode_action, encode_action
        from pong.env import GameAction

        seen = set()
        for game in GameAction:
            for mask_index in range(3):
                action = encode_action(game, mask_index)
                assert decode_action(action.flat_index) == action
                seen.add(action.flat_index)

        assert seen == set(range(9))

    def test_layout(self):
        """flat_index = 3 * game + mask_index."""
        from agent.actions import encode_action
        from pong.env import GameAction

        assert encode_action(GameAction.DOWN, 1).flat_index == 7
        assert encode_action(GameAction.NOOP, 2).flat_index == 2

    @pytest.mark.parametrize("index", [-1, 9])
    def test_out_of_range(self, index):
        """Indices outside 0..8 raise ValueError."""
        from agent.actions import decode_action

        with pytest.raises(ValueError):
            decode_action(index)


class TestSelectAction:
    """Test suite for epsilon-greedy selection."""

    def test_greedy(self):
        """At epsilon 0 the best pair is chosen."""
        import numpy as np
        from agent.actions import select_action
        from pong.env import GameAction

        action = select_action(_q([0, 5, 0], [0, 0, 3]), 0.0, np.random.default_rng(0))

        assert action.game == GameAction.UP
        assert action.mask_index == 2
        assert action.flat_index == 5

    def test_ties_to_lowest_index(self):
        """Equal values resolve to flat index 0."""
        import numpy as np
        from agent.actions import select_action

        action = select_action(_q([0, 0, 0], [0, 0, 0]), 0.0, np.random.default_rng(0))

        assert action.flat_index == 0

    def test_modes_agree_when_greedy(self, rng):
        """Both combine modes pick the same greedy action."""
        import numpy as np
        from agent.actions import CombineMode, select_action

        for _ in range(200):
            out = _q(rng.normal(size=3), rng.normal(size=3))
            flat = select_action(out, 0.0, np.random.default_rng(0), CombineMode.FLATTEN_SUM)
            branch = select_action(out, 0.0, np.random.default_rng(0), CombineMode.INDEPENDENT_BRANCH)
            assert flat == branch

    def test_uniform_exploration(self):
        """At epsilon 1, 90000 draws pass a chi-square test over the 9 actions."""
        import numpy as np
        from agent.actions import select_action

        rng = np.random.default_rng(2024)
        out = _q([3, 2, 1], [1, 2, 3])
        counts = np.zeros(9)
        for _ in range(90000):
            counts[select_action(out, 1.0, rng).flat_index] += 1

        expected = 90000 / 9
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        assert chi2 < CHI2_DF8

    def test_stream_independent_of_epsilon(self):
        """One draw is consumed per call even when acting greedily."""
        import numpy as np
        from agent.actions import select_action

        out = _q([0, 1, 0], [0, 1, 0])
        a = np.random.default_rng(5)
        b = np.random.default_rng(5)
        select_action(out, 0.0, a)
        b.random()

        assert a.random() == b.random()

    def test_invalid_epsilon(self):
        """Epsilon outside [0, 1] raises ValueError."""
        import numpy as np
        from agent.actions import select_action

        with pytest.raises(ValueError):
            select_action(_q([0, 0, 0], [0, 0, 0]), 1.5, np.random.default_rng(0))
