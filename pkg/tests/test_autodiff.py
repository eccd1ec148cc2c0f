import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavevm.autodiff import (
    DEFAULT_SHIFT,
    CostFunction,
    ShiftRule,
    central_difference,
    chain_gradient,
    mse_cost,
    mse_output_grad,
    parameter_shift_gradient,
)
from wavevm.gates import ParameterizedCircuit
from wavevm.measurement import prob_one_qubit


def z_expectation(qubit=0):
    def evaluate(w):
        p0, p1 = prob_one_qubit(w, qubit)
        return p0 - p1

    return evaluate


def rx_cost():
    c = ParameterizedCircuit(1)
    c.rx(0, "theta")
    return CostFunction(c, z_expectation())


def test_shift_coefficient():
    assert ShiftRule(math.pi / 2).c == pytest.approx(0.5)
    assert ShiftRule().s == DEFAULT_SHIFT == math.pi / 20


@pytest.mark.parametrize("s", [0.0, math.pi, -2 * math.pi, float("nan")])
def test_degenerate_shift_rejected(s):
    with pytest.raises(ValueError):
        ShiftRule(s)


def test_cos_gradient_exact():
    f = rx_cost()
    assert f([math.pi / 3]) == pytest.approx(0.5, abs=1e-15)
    g = parameter_shift_gradient(f, [math.pi / 3])
    assert g[0] == pytest.approx(-math.sin(math.pi / 3), abs=1e-12)


def test_two_shifts_agree():
    f = rx_cost()
    a = parameter_shift_gradient(f, [0.77], ShiftRule(math.pi / 20))
    b = parameter_shift_gradient(f, [0.77], ShiftRule(math.pi / 2))
    assert abs(a[0] - b[0]) < 1e-9


def test_constant_cost_gives_zero():
    c = ParameterizedCircuit(2)
    c.rx(1, "unused")
    g = parameter_shift_gradient(CostFunction(c, z_expectation(0)), [0.4])
    assert g[0] == pytest.approx(0.0, abs=1e-15)


def test_length_mismatch():
    with pytest.raises(ValueError):
        parameter_shift_gradient(rx_cost(), [0.1, 0.2])


def test_shared_parameter_rejected():
    c = ParameterizedCircuit(1)
    c.rx(0, "a")
    c.ry(0, "a")
    with pytest.raises(ValueError, match="drives 2 gates"):
        parameter_shift_gradient(CostFunction(c, z_expectation()), [0.3])


def test_evaluation_count():
    calls = []

    def f(theta):
        calls.append(1)
        return float(np.sum(np.sin(theta)))

    parameter_shift_gradient(f, np.zeros(5))
    assert len(calls) == 10


@settings(max_examples=40, deadline=None)
@given(theta=st.lists(st.floats(-math.pi, math.pi), min_size=2, max_size=2))
def test_two_parameter_circuit_matches_analytic(theta):
    c = ParameterizedCircuit(1)
    c.rx(0, "a")
    c.ry(0, "b")
    f = CostFunction(c, z_expectation())
    a, b = theta
    # <Z> = cos a cos b
    analytic = [-math.sin(a) * math.cos(b), -math.cos(a) * math.sin(b)]
    np.testing.assert_allclose(parameter_shift_gradient(f, theta), analytic, atol=1e-12)
    np.testing.assert_allclose(central_difference(f, theta), analytic, atol=1e-8)


@pytest.mark.parametrize(
    "y, yhat, expected",
    [([1, 2], [1, 2], 0.0), ([0], [2], 4.0), ([1, 0, 1], [0.5, 0.5, 0.5], 0.25)],
)
def test_mse(y, yhat, expected):
    assert mse_cost(y, yhat) == pytest.approx(expected)


def test_mse_errors():
    with pytest.raises(ValueError):
        mse_cost([], [])
    with pytest.raises(ValueError):
        mse_cost([1, 2], [1])


def test_mse_output_grad_matches_definition():
    np.testing.assert_allclose(mse_output_grad([1.0, 0.0], [0.5, 0.25]), [-1.0, 0.5])


def test_chain_gradient():
    np.testing.assert_allclose(chain_gradient(-2, 1, [0.5]), [-1.0])
    np.testing.assert_allclose(chain_gradient(-2 * (1 - 0.3), 0.3 * 0.7, [1, -1]), [-0.294, 0.294], atol=1e-15)
    np.testing.assert_array_equal(chain_gradient(0, 3, [1, 2]), [0, 0])
