"""Quantum linear regression: slope and intercept stored as single-qubit <Z> values.

Each coefficient is the expectation ``<Z> = p0 - p1`` of ``RY(t1) RX(t0) |0>``;
the model is ``y_hat = k (<w> x + <b>)`` with scaling factor ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .autodiff import ShiftRule, mse_cost, mse_output_grad, parameter_shift_gradient
from .data import Dataset
from .gates import ParameterizedCircuit, run
from .measurement import prob_one_qubit


class DegenerateDataError(ValueError):
    """Normal equations are singular (fewer than two distinct x values)."""


def _coefficient_circuit() -> ParameterizedCircuit:
    c = ParameterizedCircuit(1)
    c.rx(0, "theta0")
    c.ry(0, "theta1")
    return c


COEFFICIENT_CIRCUIT = _coefficient_circuit()


def qubit_expectation(params) -> float:
    """<Z> of the RX/RY coefficient circuit, in [-1, 1]."""
    p0, p1 = prob_one_qubit(run(COEFFICIENT_CIRCUIT, params), 0)
    return p0 - p1


@dataclass
class QlrModel:
    coef_params: np.ndarray
    intercept_params: np.ndarray
    k: float = 10.0
    loss_trace: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.coef_params = np.asarray(self.coef_params, dtype=float).reshape(2)
        self.intercept_params = np.asarray(self.intercept_params, dtype=float).reshape(2)

    @property
    def w_expectation(self) -> float:
        return qubit_expectation(self.coef_params)

    @property
    def b_expectation(self) -> float:
        return qubit_expectation(self.intercept_params)

    @property
    def slope(self) -> float:
        return self.k * self.w_expectation

    @property
    def intercept(self) -> float:
        return self.k * self.b_expectation


def qlr_predict(model: QlrModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    return model.k * (model.w_expectation * x + model.b_expectation)


def _single_feature(data: Dataset) -> np.ndarray:
    if data.num_features != 1:
        raise ValueError(f"linear regression needs a single feature, got {data.num_features}")
    return data.features[:, 0]


def qlr_gradient(model: QlrModel, data: Dataset, rule: ShiftRule | None = None) -> tuple[np.ndarray, np.ndarray]:
    """MSE gradient w.r.t. the slope-qubit and intercept-qubit angles."""
    rule = rule or ShiftRule()
    x = _single_feature(data)
    residual_grad = mse_output_grad(data.labels, qlr_predict(model, x))  # dC/dy_hat per sample
    # dy_hat/d<w> = k x, dy_hat/d<b> = k
    d_w = model.k * float(np.mean(residual_grad * x))
    d_b = model.k * float(np.mean(residual_grad))
    coef_grad = d_w * parameter_shift_gradient(qubit_expectation, model.coef_params, rule)
    intercept_grad = d_b * parameter_shift_gradient(qubit_expectation, model.intercept_params, rule)
    return coef_grad, intercept_grad


def qlr_loss(model: QlrModel, data: Dataset) -> float:
    return mse_cost(data.labels, qlr_predict(model, _single_feature(data)))


def qlr_train(
    data: Dataset,
    k: float = 10.0,
    eta: float = 0.01,
    iters: int = 1000,
    rule: ShiftRule | None = None,
    rng: np.random.Generator | int | None = 0,
    init: tuple | None = None,
) -> QlrModel:
    """Full-batch gradient descent on the MSE.

    Initial angles are standard-normal draws (coefficient qubit first) unless
    ``init = (coef_params, intercept_params)`` is given. ``loss_trace[t]`` is
    the training MSE before update ``t``.
    """
    _single_feature(data)
    if iters < 0:
        raise ValueError("iters must be non-negative")
    rule = rule or ShiftRule()
    if init is None:
        if not isinstance(rng, np.random.Generator):
            rng = np.random.Generator(np.random.PCG64(rng))
        init = (rng.standard_normal(2), rng.standard_normal(2))
    model = QlrModel(init[0], init[1], k=k)
    for _ in range(iters):
        model.loss_trace.append(qlr_loss(model, data))
        coef_grad, intercept_grad = qlr_gradient(model, data, rule)
        model.coef_params = model.coef_params - eta * coef_grad
        model.intercept_params = model.intercept_params - eta * intercept_grad
    return model


def ols_solve(data: Dataset) -> tuple[float, float]:
    """Least-squares ``(w, b)`` from the normal equations with design matrix ``[x, 1]``."""
    x = _single_feature(data)
    if x.size < 2:
        raise DegenerateDataError("need at least two samples")
    design = np.column_stack([x, np.ones_like(x)])
    gram = design.T @ design
    if np.ptp(x) == 0 or abs(np.linalg.det(gram)) < 1e-12 * max(1.0, np.abs(gram).max()) ** 2:
        raise DegenerateDataError("X^T X is singular: all x values are equal")
    w, b = np.linalg.solve(gram, design.T @ data.labels)
    return float(w), float(b)
