import numpy as np
import pytest

from wavevm.optimizers import AdamState, adam_step, gd_step


@pytest.mark.parametrize(
    "params, grad, eta, expected",
    [([1], [0], 0.7, [1]), ([1], [2], 0.1, [0.8]), ([0, 0], [1, -1], 0.5, [-0.5, 0.5])],
)
def test_gd_step(params, grad, eta, expected):
    np.testing.assert_allclose(gd_step(params, grad, eta), expected)


def test_gd_step_length_mismatch():
    with pytest.raises(ValueError):
        gd_step([1, 2], [1], 0.1)


def test_adam_zero_gradient():
    state = AdamState.zeros(2, eta=0.1)
    new, state2 = adam_step(state, [1.0, 2.0], [0.0, 0.0])
    np.testing.assert_array_equal(new, [1.0, 2.0])
    np.testing.assert_array_equal(state2.v, 0)
    np.testing.assert_array_equal(state2.w, 0)
    assert state2.t == 1


def test_adam_first_step_hand_value():
    state = AdamState.zeros(1, beta1=0.9, beta2=0.999, epsilon=1e-8, eta=0.1)
    new, _ = adam_step(state, [0.0], [1.0])
    assert -new[0] == pytest.approx(0.1 / (1 + 1e-8), rel=0, abs=1e-16)
    assert -new[0] == pytest.approx(0.0999999990, abs=1e-10)


def test_adam_constant_gradient_keeps_decreasing():
    state = AdamState.zeros(1, eta=0.1)
    theta = np.array([0.0])
    history = [theta[0]]
    for _ in range(2):
        theta, state = adam_step(state, theta, [1.0])
        history.append(theta[0])
    assert history[0] > history[1] > history[2]
    assert state.t == 2


def test_adam_without_momentum_takes_eta_sized_steps():
    state = AdamState.zeros(1, beta1=0.0, beta2=0.0, epsilon=1e-12, eta=0.05)
    new, _ = adam_step(state, [3.0], [42.0])
    assert new[0] - 3.0 == pytest.approx(-0.05, rel=1e-9)


def test_adam_does_not_mutate_state():
    state = AdamState.zeros(1)
    adam_step(state, [0.0], [1.0])
    assert state.t == 0 and state.v[0] == 0


def test_adam_validation():
    with pytest.raises(ValueError):
        AdamState.zeros(1, beta1=1.0)
    with pytest.raises(ValueError):
        AdamState.zeros(1, epsilon=0.0)
    with pytest.raises(ValueError):
        adam_step(AdamState.zeros(2), [0.0], [1.0])
