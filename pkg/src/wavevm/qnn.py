"""Quantum neural-network binary classifier.

Pipeline: min-max scaled features are amplitude-encoded one per qubit, pushed
through ``L`` layers of RX/RY rotations plus a CNOT ring, and decoded from the
probability of ``|1>`` on qubits 0 and 1 through ``sigmoid(gamma * (p0 - p1))``.
Training minimises ``mean (1 - y_hat(label))**2`` with Adam on parameter-shift
gradients.

Parameter tensors have shape ``(layers, qubits, 2)``; the flat order is
row-major, i.e. flat index ``(k * qubits + j) * 2 + r`` for layer ``k``,
qubit ``j`` and rotation ``r`` (0 = RX, 1 = RY).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .autodiff import ShiftRule
from .data import Dataset
from .gates import ParameterizedCircuit
from .measurement import prob_one_array
from .optimizers import AdamState, adam_step
from .statevector import Wavefunction

DEFAULT_GAMMA = 10.0


@dataclass
class QnnParams:
    theta: np.ndarray
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=float)
        if self.theta.ndim != 3 or self.theta.shape[2] != 2:
            raise ValueError(f"theta must have shape (layers, qubits, 2), got {self.theta.shape}")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")

    @property
    def layers(self) -> int:
        return self.theta.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.theta.shape[1]

    @classmethod
    def random(cls, layers: int, num_qubits: int, rng: np.random.Generator, gamma: float = DEFAULT_GAMMA) -> QnnParams:
        return cls(rng.standard_normal((layers, num_qubits, 2)), gamma)


def flatten_params(theta: np.ndarray) -> np.ndarray:
    return np.asarray(theta, dtype=float).reshape(-1)


def unflatten_params(flat, layers: int, num_qubits: int) -> np.ndarray:
    return np.asarray(flat, dtype=float).reshape(layers, num_qubits, 2)


# -- encoding ----------------------------------------------------------------


def _check_unit_interval(x: np.ndarray) -> None:
    if np.any(x < 0.0) or np.any(x > 1.0) or not np.all(np.isfinite(x)):
        raise ValueError("encoded values must lie in [0, 1]")


def encode_batch(samples) -> np.ndarray:
    """Product states for each row: qubit j carries ``sqrt(x_j)|0> + sqrt(1 - x_j)|1>``."""
    x = np.atleast_2d(np.asarray(samples, dtype=float))
    _check_unit_interval(x)
    qubit_states = np.stack([np.sqrt(x), np.sqrt(1.0 - x)], axis=-1)  # (M, N, 2)
    amps = qubit_states[:, 0, :]
    for j in range(1, x.shape[1]):
        amps = (amps[:, :, None] * qubit_states[:, j, None, :]).reshape(x.shape[0], -1)
    return amps.astype(np.complex128)


def encode_sample(scaled_sample) -> Wavefunction:
    x = np.asarray(scaled_sample, dtype=float).reshape(-1)
    return Wavefunction(encode_batch(x[None, :])[0])


# -- circuit -----------------------------------------------------------------


def param_name(layer: int, qubit: int, rotation: int) -> str:
    return f"theta_{layer}_{qubit}_{rotation}"


def qnn_circuit(num_qubits: int, layers: int) -> ParameterizedCircuit:
    """``layers`` repetitions of RX, RY on each qubit then CNOT(i, i+1) and CNOT(N-1, 0)."""
    if num_qubits < 1 or layers < 1:
        raise ValueError("need at least one qubit and one layer")
    c = ParameterizedCircuit(num_qubits)
    for k in range(layers):
        for j in range(num_qubits):
            c.rx(j, param_name(k, j, 0))
            c.ry(j, param_name(k, j, 1))
        if num_qubits > 1:
            for j in range(num_qubits - 1):
                c.cnot(j, j + 1)
            c.cnot(num_qubits - 1, 0)
    return c


# -- decoding ----------------------------------------------------------------


def sigmoid(x):
    return expit(x)


def decode_probabilities(p_one_q0, p_one_q1, gamma: float = DEFAULT_GAMMA):
    return sigmoid(gamma * (np.asarray(p_one_q0) - np.asarray(p_one_q1)))


def decode_prediction(w: Wavefunction, gamma: float = DEFAULT_GAMMA) -> float:
    """``S = sigmoid(gamma (P(q0=1) - P(q1=1)))``."""
    if w.num_qubits < 2:
        raise ValueError("decoding reads qubits 0 and 1; need at least two qubits")
    p0 = prob_one_array(w.amplitudes, 0, w.num_qubits)
    p1 = prob_one_array(w.amplitudes, 1, w.num_qubits)
    return float(decode_probabilities(p0, p1, gamma))


def conditional_prediction(S, label):
    """``S`` for label 0, ``1 - S`` for label 1 (works elementwise)."""
    S = np.asarray(S, dtype=float)
    label = np.asarray(label)
    out = np.where(label == 0, S, 1.0 - S)
    return float(out) if out.ndim == 0 else out


def predict_labels(S) -> np.ndarray:
    """argmax over ``(S, 1 - S)``; ties go to label 0."""
    return (np.asarray(S) < 0.5).astype(int)


# -- cost and gradient ---------------------------------------------------------


class _Model:
    """Cached circuit plus encoded states for one dataset."""

    def __init__(self, params: QnnParams, data: Dataset):
        if len(data) == 0:
            raise ValueError("dataset is empty")
        if data.num_features != params.num_qubits:
            raise ValueError(f"{data.num_features} features but {params.num_qubits} qubits")
        if params.num_qubits < 2:
            raise ValueError("the decoding rule needs at least two qubits")
        self.n = params.num_qubits
        self.circuit = qnn_circuit(self.n, params.layers)
        self.states = encode_batch(data.features)
        self.labels = data.int_labels()

    def measure(self, flat_theta) -> tuple[np.ndarray, np.ndarray]:
        out = self.circuit.evolve(self.states, flat_theta)
        return prob_one_array(out, 0, self.n), prob_one_array(out, 1, self.n)


def _qnn_outputs(params: QnnParams, data: Dataset) -> tuple[np.ndarray, np.ndarray]:
    model = _Model(params, data)
    p0, p1 = model.measure(flatten_params(params.theta))
    S = decode_probabilities(p0, p1, params.gamma)
    return S, model.labels


def qnn_predict(params: QnnParams, data: Dataset) -> np.ndarray:
    """Sigmoid outputs ``S_i`` for every sample."""
    return _qnn_outputs(params, data)[0]


def qnn_cost(params: QnnParams, data: Dataset) -> float:
    S, labels = _qnn_outputs(params, data)
    y_hat = conditional_prediction(S, labels)
    return float(np.mean((1.0 - y_hat) ** 2))


def qnn_accuracy(params: QnnParams, data: Dataset) -> float:
    S, labels = _qnn_outputs(params, data)
    return float(np.mean(predict_labels(S) == labels))


def qnn_gradient(
    params: QnnParams,
    data: Dataset,
    rule: ShiftRule | None = None,
    drop_rate: float = 0.0,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Gradient of :func:`qnn_cost` w.r.t. ``theta`` (same shape).

    Per sample: dC/dy_hat = -2 (1 - y_hat), dy_hat/dp = (-1)^l y_hat (1 - y_hat)
    and dp/dtheta = gamma c [(p0(+) - p0(-)) - (p1(+) - p1(-))]; averaged over
    samples. With ``drop_rate > 0`` each component is skipped (left 0) with
    that probability.
    """
    rule = rule or ShiftRule()
    if drop_rate and rng is None:
        raise ValueError("dropout needs an rng")
    model = _Model(params, data)
    flat = flatten_params(params.theta)

    p0, p1 = model.measure(flat)
    S = decode_probabilities(p0, p1, params.gamma)
    y_hat = conditional_prediction(S, model.labels)
    sign = np.where(model.labels == 0, 1.0, -1.0)
    upstream = -2.0 * (1.0 - y_hat) * sign * y_hat * (1.0 - y_hat)

    grad = np.zeros_like(flat)
    for i in range(flat.size):
        if drop_rate and rng.random() < drop_rate:
            continue
        plus = flat.copy()
        minus = flat.copy()
        plus[i] += rule.s
        minus[i] -= rule.s
        p0_plus, p1_plus = model.measure(plus)
        p0_minus, p1_minus = model.measure(minus)
        dp = params.gamma * rule.c * ((p0_plus - p0_minus) - (p1_plus - p1_minus))
        grad[i] = np.mean(upstream * dp)
    return grad.reshape(params.theta.shape)


def confusion_matrix(labels, preds) -> np.ndarray:
    """2x2 counts; row = true label, column = predicted label."""
    labels = np.asarray(labels, dtype=int).reshape(-1)
    preds = np.asarray(preds, dtype=int).reshape(-1)
    if labels.shape != preds.shape:
        raise ValueError(f"length mismatch: {labels.size} labels vs {preds.size} predictions")
    if np.any((labels < 0) | (labels > 1)) or np.any((preds < 0) | (preds > 1)):
        raise ValueError("labels and predictions must be 0 or 1")
    out = np.zeros((2, 2), dtype=int)
    np.add.at(out, (labels, preds), 1)
    return out


# -- training ----------------------------------------------------------------


@dataclass
class QnnConfig:
    """Training knobs; defaults follow the reference QNN experiment."""

    iters: int = 150
    eta: float = 0.1
    shift: float = math.pi / 20
    gamma: float = DEFAULT_GAMMA
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-6
    drop_rate: float = 0.0
    seed: int = 0


@dataclass
class QnnResult:
    params: QnnParams
    initial_params: QnnParams
    train_loss: list[float] = field(default_factory=list)
    train_acc: list[float] = field(default_factory=list)
    test_loss: list[float] = field(default_factory=list)
    test_acc: list[float] = field(default_factory=list)


def qnn_train(
    train: Dataset,
    layers: int,
    config: QnnConfig | None = None,
    test: Dataset | None = None,
    init: QnnParams | None = None,
) -> QnnResult:
    """Adam training on shift-rule gradients.

    Traces hold ``iters + 1`` entries: index 0 is the initial model and index
    ``t`` the model after ``t`` updates. Test metrics are recorded only when
    ``test`` is given.
    """
    config = config or QnnConfig()
    rng = np.random.Generator(np.random.PCG64(config.seed))
    params = init or QnnParams.random(layers, train.num_features, rng, config.gamma)
    initial = QnnParams(params.theta.copy(), params.gamma)
    rule = ShiftRule(config.shift)
    state = AdamState.zeros(
        params.theta.shape, beta1=config.beta1, beta2=config.beta2, epsilon=config.epsilon, eta=config.eta
    )
    result = QnnResult(params=params, initial_params=initial)

    def record(p: QnnParams) -> None:
        result.train_loss.append(qnn_cost(p, train))
        result.train_acc.append(qnn_accuracy(p, train))
        if test is not None:
            result.test_loss.append(qnn_cost(p, test))
            result.test_acc.append(qnn_accuracy(p, test))

    record(params)
    for _ in range(config.iters):
        grad = qnn_gradient(params, train, rule, config.drop_rate, rng)
        theta, state = adam_step(state, params.theta, grad)
        params = QnnParams(theta, params.gamma)
        record(params)
    result.params = params
    return result
