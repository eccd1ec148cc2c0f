"""Plain gradient descent and Adam over flat parameter vectors."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


def _pair(params, grad) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(params, dtype=float)
    g = np.asarray(grad, dtype=float)
    if p.shape != g.shape:
        raise ValueError(f"params shape {p.shape} does not match gradient shape {g.shape}")
    return p, g


def gd_step(params, grad, eta: float) -> np.ndarray:
    p, g = _pair(params, grad)
    return p - eta * g


@dataclass(frozen=True)
class AdamState:
    v: np.ndarray
    w: np.ndarray
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    eta: float = 0.001

    def __post_init__(self):
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ValueError("beta1 and beta2 must lie in [0, 1)")
        if self.epsilon <= 0 or self.eta <= 0:
            raise ValueError("epsilon and eta must be positive")
        if np.shape(self.v) != np.shape(self.w):
            raise ValueError("moment vectors must have the same shape")

    @classmethod
    def zeros(cls, shape, **hyper) -> AdamState:
        return cls(np.zeros(shape), np.zeros(shape), **hyper)


def adam_step(state: AdamState, params, grad) -> tuple[np.ndarray, AdamState]:
    """One Adam update; returns new params and a new state with ``t + 1``."""
    p, g = _pair(params, grad)
    if np.shape(state.v) != p.shape:
        raise ValueError(f"state shape {np.shape(state.v)} does not match params shape {p.shape}")
    t1 = state.t + 1
    v = state.beta1 * state.v + (1.0 - state.beta1) * g
    w = state.beta2 * state.w + (1.0 - state.beta2) * g * g
    v_hat = v / (1.0 - state.beta1**t1)
    w_hat = w / (1.0 - state.beta2**t1)
    new = p - state.eta * v_hat / (np.sqrt(w_hat) + state.epsilon)
    return new, replace(state, v=v, w=w, t=t1)
