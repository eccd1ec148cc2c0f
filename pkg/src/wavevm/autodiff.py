"""Parameter-shift gradients and the squared-error chain rule."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .gates import ParameterizedCircuit, run
from .statevector import Wavefunction

DEFAULT_SHIFT = math.pi / 20


@dataclass(frozen=True)
class ShiftRule:
    """Shift angle ``s`` and its coefficient ``c = 1 / (2 sin s)``."""

    s: float = DEFAULT_SHIFT

    def __post_init__(self):
        if not math.isfinite(self.s) or abs(math.sin(self.s)) < 1e-12:
            raise ValueError(f"shift must satisfy sin(s) != 0, got s={self.s}")

    @property
    def c(self) -> float:
        return 1.0 / (2.0 * math.sin(self.s))


@dataclass
class CostFunction:
    """Expectation-style cost: run ``circuit`` noise-free and reduce the state to a scalar."""

    circuit: ParameterizedCircuit
    observable_eval: Callable[[Wavefunction], float]

    def __call__(self, params) -> float:
        return float(self.observable_eval(run(self.circuit, params)))

    def check_shiftable(self) -> None:
        # the rule is exact only when each angle enters one RX/RY/RZ gate
        for name, uses in self.circuit.parameter_uses().items():
            if uses > 1:
                raise ValueError(f"parameter {name!r} drives {uses} gates; shift rule would not be exact")


def parameter_shift_gradient(f: Callable, params, rule: ShiftRule | None = None) -> np.ndarray:
    """Gradient of ``f`` by ``c [f(theta_i + s) - f(theta_i - s)]`` per component.

    Calls ``f`` exactly ``2 * len(params)`` times.
    """
    rule = rule or ShiftRule()
    theta = np.asarray(params, dtype=float).reshape(-1)
    if isinstance(f, CostFunction):
        if theta.size != f.circuit.num_parameters:
            raise ValueError(f"expected {f.circuit.num_parameters} parameters, got {theta.size}")
        f.check_shiftable()
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        plus = theta.copy()
        minus = theta.copy()
        plus[i] += rule.s
        minus[i] -= rule.s
        grad[i] = rule.c * (f(plus) - f(minus))
    return grad


def central_difference(f: Callable, params, h: float = 1e-6) -> np.ndarray:
    theta = np.asarray(params, dtype=float).reshape(-1)
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        e = np.zeros_like(theta)
        e[i] = h
        grad[i] = (f(theta + e) - f(theta - e)) / (2 * h)
    return grad


def mse_cost(y_true, y_pred) -> float:
    y_true = np.asarray(y_true, dtype=float).reshape(-1)
    y_pred = np.asarray(y_pred, dtype=float).reshape(-1)
    if y_true.size == 0:
        raise ValueError("mse of empty vectors is undefined")
    if y_true.shape != y_pred.shape:
        raise ValueError(f"length mismatch: {y_true.size} vs {y_pred.size}")
    return float(np.mean((y_true - y_pred) ** 2))


def mse_output_grad(y_true, y_pred) -> np.ndarray:
    """Per-sample dC/dy_hat = -2 (y - y_hat) (without the 1/M)."""
    return -2.0 * (np.asarray(y_true, dtype=float) - np.asarray(y_pred, dtype=float))


def chain_gradient(dC_dyhat: float, dyhat_df: float, df_dtheta) -> np.ndarray:
    return float(dC_dyhat) * float(dyhat_df) * np.asarray(df_dtheta, dtype=float)
