"""Experiment runners behind the command-line interface.

Each runner returns plain data (rows, dataclasses); writing files is left to
:mod:`wavevm.cli`.
"""

from __future__ import annotations

import math
import statistics
import time
import timeit
from dataclasses import dataclass, field

import numpy as np

from .autodiff import ShiftRule, mse_cost, parameter_shift_gradient
from .data import Dataset, min_max_scale, scale_split, synthetic_ads, synthetic_linear, train_test_split
from .gates import ParameterizedCircuit, run
from .measurement import measure_all
from .noise import make_rng
from .optimizers import gd_step
from .qnn import QnnConfig, QnnResult, confusion_matrix, predict_labels, qnn_predict, qnn_train
from .reference import dense_run
from .regression import QlrModel, ols_solve, qlr_predict, qlr_train
from .statevector import Wavefunction, probabilities

ORACLE_MAX_QUBITS = 6


def _calibrate(timer: timeit.Timer, min_block: float) -> int:
    """Smallest power-of-two loop count whose block lasts at least ``min_block`` seconds."""
    number = 1
    while min_block > 0 and timer.timeit(number) < min_block:
        number *= 2
    return number


def _median_time(fn, repeats: int, min_block: float = 0.0) -> float:
    """Median per-call time over ``repeats`` blocks (monotonic clock)."""
    timer = timeit.Timer(fn, timer=time.perf_counter)
    number = _calibrate(timer, min_block)
    return statistics.median(timer.repeat(repeats, number)) / number


def _check_range(qubit_min: int, qubit_max: int, depth: int = 1) -> None:
    if qubit_min < 1 or qubit_min > qubit_max:
        raise ValueError(f"invalid qubit range {qubit_min}..{qubit_max}")
    if depth < 1:
        raise ValueError("depth must be >= 1")


# -- gate benchmark ----------------------------------------------------------


def benchmark_circuit(num_qubits: int, depth: int) -> ParameterizedCircuit:
    """Per level: H and SX on every qubit, then CNOT(i, 0) for i = 1..N-1."""
    c = ParameterizedCircuit(num_qubits)
    for _ in range(depth):
        for q in range(num_qubits):
            c.h(q)
            c.sx(q)
        for q in range(1, num_qubits):
            c.cnot(q, 0)
    return c


@dataclass
class GateBenchRow:
    num_qubits: int
    seconds: float
    oracle_error: float | None = None


def gate_bench(
    qubit_min: int = 2,
    qubit_max: int = 10,
    depth: int = 10,
    repeats: int = 5,
    shots: int = 1024,
    seed: int = 0,
    oracle_max: int = ORACLE_MAX_QUBITS,
    min_block: float = 0.2,
) -> tuple[list[GateBenchRow], dict[int, Wavefunction]]:
    """Median wall time of build + run + full-register sampling for each N.

    Repeats are interleaved across qubit counts (repeat 1 for every N, then
    repeat 2, ...) so slow phases of the host hit all sizes alike. For
    ``N <= oracle_max`` the final distribution is also compared against the
    dense reference simulator.
    """
    _check_range(qubit_min, qubit_max, depth)
    rng = make_rng(seed)
    sizes = range(qubit_min, qubit_max + 1)

    def job(n):
        c = benchmark_circuit(n, depth)
        w = run(c)
        measure_all(w, shots, rng)
        return c, w

    timers = {n: timeit.Timer(lambda n=n: job(n), timer=time.perf_counter) for n in sizes}
    numbers = {n: _calibrate(timers[n], min_block) for n in sizes}
    samples: dict[int, list[float]] = {n: [] for n in sizes}
    for _ in range(repeats):
        for n in sizes:
            samples[n].append(timers[n].timeit(numbers[n]) / numbers[n])

    rows = []
    states = {}
    for n in sizes:
        circuit, w = job(n)
        states[n] = w
        error = None
        if n <= oracle_max:
            expected = np.abs(dense_run(circuit)) ** 2
            error = float(np.max(np.abs(probabilities(w) - expected)))
        rows.append(GateBenchRow(n, statistics.median(samples[n]), error))
    return rows, states


# -- QDP benchmark and tutorial --------------------------------------------------


def rotation_ansatz(num_qubits: int) -> ParameterizedCircuit:
    """RX(theta_{2j}) then RY(theta_{2j+1}) on each qubit j."""
    c = ParameterizedCircuit(num_qubits)
    for j in range(num_qubits):
        c.rx(j, f"theta{2 * j}")
        c.ry(j, f"theta{2 * j + 1}")
    return c


def weighted_index_cost(circuit: ParameterizedCircuit):
    """``params -> -sum_i i * prob[i]``"""
    weights = np.arange(1 << circuit.num_qubits, dtype=float)

    def cost(params) -> float:
        return -float(weights @ probabilities(run(circuit, params)))

    return cost


def gradient_descent(cost, params, iters: int, eta: float, rule: ShiftRule) -> tuple[np.ndarray, list[float]]:
    """Shift-rule gradient descent; ``trace[t]`` is the cost before step ``t``, plus the final cost."""
    params = np.asarray(params, dtype=float).copy()
    trace = []
    for _ in range(iters):
        trace.append(cost(params))
        params = gd_step(params, parameter_shift_gradient(cost, params, rule), eta)
    trace.append(cost(params))
    return params, trace


@dataclass
class QdpBenchRow:
    num_qubits: int
    seconds: float
    initial_cost: float
    final_cost: float


def qdp_bench(
    qubit_min: int = 1,
    qubit_max: int = 6,
    iters: int = 1000,
    eta: float = 0.01,
    shift: float = math.pi / 20,
    seed: int = 0,
    repeats: int = 1,
) -> list[QdpBenchRow]:
    _check_range(qubit_min, qubit_max)
    rule = ShiftRule(shift)
    rows = []
    for n in range(qubit_min, qubit_max + 1):
        circuit = rotation_ansatz(n)
        cost = weighted_index_cost(circuit)
        init = make_rng(seed + n).standard_normal(2 * n)
        result = {}

        def job():
            result["params"], result["trace"] = gradient_descent(cost, init, iters, eta, rule)

        seconds = _median_time(job, repeats)
        rows.append(QdpBenchRow(n, seconds, result["trace"][0], result["trace"][-1]))
    return rows


@dataclass
class TutorialResult:
    params: np.ndarray
    initial_params: np.ndarray
    output: float
    cost_trace: list[float] = field(default_factory=list)


def tutorial_output(params) -> float:
    """Probability of ``|1>`` after RX, RY on one qubit."""
    return float(probabilities(run(rotation_ansatz(1), params))[1])


def tutorial_cost(params) -> float:
    return abs(tutorial_output(params) - 1.0) ** 2


def qdp_tutorial(
    iters: int = 1000,
    eta: float = 0.01,
    shift: float = math.pi / 20,
    seed: int = 0,
    init=None,
) -> TutorialResult:
    """Maximise ``P(|1>)`` of one qubit by gradient descent on ``|P(1) - 1|**2``."""
    if init is None:
        init = make_rng(seed).standard_normal(2)
    init = np.asarray(init, dtype=float)
    params, trace = gradient_descent(tutorial_cost, init, iters, eta, ShiftRule(shift))
    return TutorialResult(params, init, tutorial_output(params), trace)


# -- regression --------------------------------------------------------------------


def normalize_targets(train: Dataset, test: Dataset) -> tuple[Dataset, Dataset]:
    """Min-max scale labels to [0, 1] using the bounds of train and test together."""
    both = min_max_scale(np.concatenate([train.labels, test.labels]))
    m = len(train)
    return (
        Dataset(train.features, both[:m], train.feature_names),
        Dataset(test.features, both[m:], test.feature_names),
    )


def head_tail_split(data: Dataset, n_train: int = 400, n_test: int = 10) -> tuple[Dataset, Dataset]:
    """First ``n_train`` rows train, last ``n_test`` rows test."""
    m = len(data)
    if n_train < 1 or n_test < 1 or n_train > m or n_test > m:
        raise ValueError(f"cannot take {n_train} train / {n_test} test rows from {m}")
    return data.subset(slice(0, n_train)), data.subset(slice(m - n_test, m))


@dataclass
class LinregResult:
    model: QlrModel
    ols: tuple[float, float]
    train: Dataset
    test: Dataset
    quantum_test_mse: float
    ols_test_mse: float

    def fit_rows(self) -> list[tuple[float, float, float, float]]:
        x = self.test.features[:, 0]
        y_q = qlr_predict(self.model, x)
        w, b = self.ols
        return [(float(xi), float(yi), float(qi), float(w * xi + b)) for xi, yi, qi in zip(x, self.test.labels, y_q)]


def run_linreg(
    train: Dataset | None = None,
    test: Dataset | None = None,
    k: float = 10.0,
    eta: float = 0.01,
    iters: int = 1000,
    shift: float = math.pi / 20,
    seed: int = 0,
) -> LinregResult:
    """Train the quantum regression model and the OLS reference on the same split.

    Without data the bundled synthetic 400/10 set is used. Targets are min-max
    scaled to [0, 1] before training.
    """
    if train is None or test is None:
        train, test = synthetic_linear(seed=seed)
    train, test = normalize_targets(train, test)
    model = qlr_train(train, k=k, eta=eta, iters=iters, rule=ShiftRule(shift), rng=seed)
    w, b = ols_solve(train)
    x_test = test.features[:, 0]
    return LinregResult(
        model=model,
        ols=(w, b),
        train=train,
        test=test,
        quantum_test_mse=mse_cost(test.labels, qlr_predict(model, x_test)),
        ols_test_mse=mse_cost(test.labels, w * x_test + b),
    )


# -- QNN -------------------------------------------------------------------------


@dataclass
class QnnRun:
    result: QnnResult
    train: Dataset
    test: Dataset
    train_confusion: np.ndarray
    test_confusion: np.ndarray


def prepare_qnn_data(data: Dataset | None = None, test_frac: float = 0.2, split_seed: int = 0):
    """Seeded split, then min-max bounds fitted on the training rows only."""
    if data is None:
        data = synthetic_ads()
    train, test = train_test_split(data, test_frac, split_seed)
    return scale_split(train, test)


def run_qnn(
    data: Dataset | None = None,
    layers: int = 5,
    config: QnnConfig | None = None,
    test_frac: float = 0.2,
    split_seed: int = 0,
) -> QnnRun:
    train, test = prepare_qnn_data(data, test_frac, split_seed)
    has_test = len(test) > 0
    result = qnn_train(train, layers, config, test=test if has_test else None)

    def confusion(ds: Dataset) -> np.ndarray:
        if len(ds) == 0:
            return np.zeros((2, 2), dtype=int)
        return confusion_matrix(ds.int_labels(), predict_labels(qnn_predict(result.params, ds)))

    return QnnRun(result, train, test, confusion(train), confusion(test))
