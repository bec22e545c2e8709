"""
Unit tests for occlusion masks and frame preprocessing.

Tests verify that:
1. Each mask keeps exactly one third of the frame and zeroes the rest
2. Masks are idempotent and linear
3. The three masks of a family partition the frame
4. IDENTITY passes frames through unchanged
5. preprocess() area-averages raw frames to 84x84 in [0, 1]
"""

import pytest

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))

FAMILY_MASKS = ["H_TOP", "H_MID", "H_BOT", "V_LEFT", "V_MID", "V_RIGHT"]


def _frames(rng, count=100):
    return rng.random((count, 84, 84)).astype("float32")


class TestMaskAlgebra:
    """Test suite for apply_mask properties over random frames."""

    @pytest.mark.parametrize("name", FAMILY_MASKS)
    def test_zeroes_two_thirds(self, name):
        """A mask zeroes 4704 of the 7056 pixels of an all-ones frame."""
        import numpy as np
        from observe.masks import MaskId, apply_mask

        out = apply_mask(np.ones((84, 84), dtype=np.float32), MaskId[name])

        assert int((out == 0).sum()) == 4704
        assert int((out == 1).sum()) == 2352

    @pytest.mark.parametrize("name", FAMILY_MASKS)
    def test_idempotent(self, name, rng):
        """Masking twice equals masking once."""
        import numpy as np
        from observe.masks import MaskId, apply_mask

        mask = MaskId[name]
        for frame in _frames(rng):
            once = apply_mask(frame, mask)
            assert np.array_equal(apply_mask(once, mask), once)

    @pytest.mark.parametrize("name", FAMILY_MASKS)
    def test_linear(self, name, rng):
        """mask(a*x + b*y) == a*mask(x) + b*mask(y)."""
        import numpy as np
        from observe.masks import MaskId, apply_mask

        mask = MaskId[name]
        xs, ys = _frames(rng), _frames(rng)
        for x, y in zip(xs, ys):
            combined = apply_mask(0.3 * x + 0.7 * y, mask)
            separate = 0.3 * apply_mask(x, mask) + 0.7 * apply_mask(y, mask)
            assert np.allclose(combined, separate, atol=1e-6)

    @pytest.mark.parametrize("family", ["HORIZONTAL", "VERTICAL"])
    def test_family_partitions_frame(self, family, rng):
        """The three masks of a family sum back to the original frame."""
        import numpy as np
        from observe.masks import MaskFamily, apply_mask, family_masks

        masks = family_masks(MaskFamily[family])
        for frame in _frames(rng):
            total = sum(apply_mask(frame, m) for m in masks)
            assert np.array_equal(total, frame)

    def test_identity_passthrough(self, rng):
        """IDENTITY returns its input."""
        from observe.masks import MaskId, apply_mask

        frame = _frames(rng, 1)[0]

        assert apply_mask(frame, MaskId.IDENTITY) is frame

    def test_v_right_keeps_right_columns(self):
        """VRight zeroes columns 0..55 and keeps 56..83."""
        import numpy as np
        from observe.masks import MaskId, apply_mask

        out = apply_mask(np.ones((84, 84), dtype=np.float32), MaskId.V_RIGHT)

        assert not out[:, :56].any()
        assert out[:, 56:].all()

    def test_h_top_keeps_top_rows(self):
        """HTop keeps rows 0..27."""
        import numpy as np
        from observe.masks import MaskId, apply_mask

        out = apply_mask(np.ones((84, 84), dtype=np.float32), MaskId.H_TOP)

        assert out[:28].all()
        assert not out[28:].any()


class TestMaskIds:
    """Test suite for MaskId and MaskFamily lookups."""

    def test_family_order(self):
        """family_masks lists masks in action-index order."""
        from observe.masks import MaskFamily, MaskId, family_masks

        assert family_masks(MaskFamily.HORIZONTAL) == [MaskId.H_TOP, MaskId.H_MID, MaskId.H_BOT]
        assert family_masks(MaskFamily.VERTICAL) == [MaskId.V_LEFT, MaskId.V_MID, MaskId.V_RIGHT]

    def test_labels(self):
        """Mask values are the CSV labels."""
        from observe.masks import MaskId

        assert [m.value for m in MaskId] == ["HTop", "HMid", "HBot", "VLeft", "VMid", "VRight", "Identity"]

    def test_band(self):
        """band() gives axis and the 28-pixel slice."""
        from observe.masks import MaskId

        assert MaskId.H_MID.band() == (0, 28, 56)
        assert MaskId.V_RIGHT.band() == (1, 56, 84)
        assert MaskId.IDENTITY.band() is None
        assert MaskId.IDENTITY.family is None


class TestPreprocess:
    """Test suite for area-average downsampling."""

    def test_shape_and_dtype(self):
        """Raw field frames become 84x84 float32."""
        import numpy as np
        from observe.frames import preprocess

        out = preprocess(np.zeros((168, 160), dtype=np.float32))

        assert out.shape == (84, 84)
        assert out.dtype == np.float32

    def test_constant_frames_preserved(self):
        """Uniform frames keep their intensity."""
        import numpy as np
        from observe.frames import preprocess

        assert np.allclose(preprocess(np.ones((168, 160))), 1.0)
        assert np.allclose(preprocess(np.zeros((168, 160))), 0.0)

    def test_mass_preserved(self, rng):
        """Area averaging keeps the mean intensity."""
        import numpy as np
        from observe.frames import preprocess

        raw = rng.random((168, 160))

        assert preprocess(raw).mean() == pytest.approx(raw.mean(), abs=1e-5)

    def test_exact_halving(self):
        """168 rows average in pairs."""
        import numpy as np
        from observe.frames import preprocess

        raw = np.zeros((168, 84))
        raw[0, :] = 1.0

        out = preprocess(raw)

        assert np.allclose(out[0], 0.5)
        assert np.allclose(out[1:], 0.0)

    def test_rendered_frame_in_range(self):
        """A rendered game frame stays within [0, 1]."""
        from observe.frames import preprocess
        from pong.env import EnvConfig, reset

        _, frame = reset(EnvConfig(), seed=0)
        out = preprocess(frame)

        assert out.min() >= 0.0 and out.max() <= 1.0
        assert out.sum() > 0
