"""
Unit tests for the loss, optimizer and gradient checker.

Tests verify that:
1. huber_loss matches hand-computed values and gradients
2. adam_step leaves parameters alone for zero gradients and minimizes w^2
3. adam_step rejects non-finite and mis-shaped gradients
4. Analytic gradients agree with finite differences for every layer kind
"""

import pytest

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))


class TestHuberLoss:
    """Test suite for huber_loss."""

    def test_linear_region(self):
        """Error 2 with delta 1 costs 1.5 with gradient 1."""
        import numpy as np
        from neuralnet.losses import huber_loss

        loss, grad = huber_loss(np.array([2.0]), np.array([0.0]))

        assert loss == pytest.approx(1.5)
        assert grad.tolist() == [1.0]

    def test_quadratic_region(self):
        """Error 0.5 costs 0.125 with gradient 0.5."""
        import numpy as np
        from neuralnet.losses import huber_loss

        loss, grad = huber_loss(np.array([0.5]), np.array([0.0]))

        assert loss == pytest.approx(0.125)
        assert grad.tolist() == [0.5]

    def test_mean_over_batch(self):
        """Loss and gradient are averaged over elements."""
        import numpy as np
        from neuralnet.losses import huber_loss

        loss, grad = huber_loss(np.array([2.0, 0.5]), np.array([0.0, 0.0]))

        assert loss == pytest.approx((1.5 + 0.125) / 2)
        assert grad.tolist() == [0.5, 0.25]

    def test_shape_mismatch(self):
        """Mismatched shapes raise ShapeError."""
        import numpy as np
        from errors import ShapeError
        from neuralnet.losses import huber_loss

        with pytest.raises(ShapeError):
            huber_loss(np.zeros(3), np.zeros(4))


class TestAdam:
    """Test suite for adam_step."""

    def test_zero_gradient_is_noop(self):
        """A zero gradient leaves parameters unchanged and counts the step."""
        import numpy as np
        from neuralnet.optim import AdamState, adam_step

        params = {"w": np.array([1.0, -2.0])}
        state = AdamState.zeros_like(params)
        new_params, new_state = adam_step(params, {"w": np.zeros(2)}, state, lr=0.1)

        assert new_params["w"].tolist() == [1.0, -2.0]
        assert new_state.t == 1

    def test_minimizes_square(self):
        """100 steps on w^2 from 1 with lr 0.1 end near zero."""
        import numpy as np
        from neuralnet.optim import AdamState, adam_step

        params = {"w": np.array([1.0])}
        state = AdamState.zeros_like(params)
        for _ in range(100):
            params, state = adam_step(params, {"w": 2.0 * params["w"]}, state, lr=0.1)

        assert abs(float(params["w"][0])) < 0.2

    def test_first_step_size(self):
        """The first bias-corrected step moves each weight by lr."""
        import numpy as np
        from neuralnet.optim import AdamState, adam_step

        params = {"w": np.array([0.0, 0.0])}
        new_params, _ = adam_step(params, {"w": np.array([3.0, -0.01])},
                                  AdamState.zeros_like(params), lr=0.01)

        assert new_params["w"].tolist() == pytest.approx([-0.01, 0.01], rel=1e-4)

    def test_inputs_not_modified(self):
        """adam_step returns new arrays."""
        import numpy as np
        from neuralnet.optim import AdamState, adam_step

        params = {"w": np.array([1.0])}
        state = AdamState.zeros_like(params)
        adam_step(params, {"w": np.array([1.0])}, state, lr=0.1)

        assert params["w"].tolist() == [1.0]
        assert state.t == 0 and state.m["w"].tolist() == [0.0]

    def test_non_finite_gradient(self):
        """NaN gradients raise NumericError."""
        import numpy as np
        from errors import NumericError
        from neuralnet.optim import AdamState, adam_step

        params = {"w": np.array([1.0])}
        with pytest.raises(NumericError):
            adam_step(params, {"w": np.array([np.inf])}, AdamState.zeros_like(params), lr=0.1)

    def test_gradient_shape_mismatch(self):
        """Mis-shaped gradients raise ShapeError."""
        import numpy as np
        from errors import ShapeError
        from neuralnet.optim import AdamState, adam_step

        params = {"w": np.array([1.0])}
        with pytest.raises(ShapeError):
            adam_step(params, {"w": np.ones(2)}, AdamState.zeros_like(params), lr=0.1)


class TestGradCheck:
    """Test suite for finite-difference gradient checks."""

    @pytest.mark.parametrize("seed", range(5))
    def test_dense_exact(self, seed):
        """Dense gradients agree to 1e-6."""
        from neuralnet.gradcheck import CHECK_CHAINS, grad_check

        chain, shape = CHECK_CHAINS["dense"]

        assert grad_check(chain, seed, shape) <= 1e-6

    @pytest.mark.parametrize("name", ["dense_relu", "conv_relu_dense", "conv_stack"])
    def test_chains_within_tolerance(self, name):
        """Every chain agrees within TOLERANCE over ten seeds."""
        from neuralnet.gradcheck import CHECK_CHAINS, TOLERANCE, grad_check

        chain, shape = CHECK_CHAINS[name]

        assert max(grad_check(chain, seed, shape) for seed in range(10)) <= TOLERANCE

    def test_deterministic(self):
        """Same seed gives the same error."""
        from neuralnet.gradcheck import CHECK_CHAINS, grad_check

        chain, shape = CHECK_CHAINS["conv_relu_dense"]

        assert grad_check(chain, 3, shape) == grad_check(chain, 3, shape)

    def test_suite_covers_all_chains(self):
        """grad_check_suite reports one error per chain."""
        from neuralnet.gradcheck import CHECK_CHAINS, TOLERANCE, grad_check_suite

        results = grad_check_suite(seeds=2)

        assert set(results) == set(CHECK_CHAINS)
        assert all(error <= TOLERANCE for error in results.values())
