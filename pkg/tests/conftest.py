import math

import numpy as np
import pytest

from wavevm.gates import ParameterizedCircuit

GATE_POOL = ("H", "X", "Y", "Z", "SX", "RX", "RY", "RZ", "CNOT")

# (criterion label, title, outcome) for tests marked with ``criterion``
ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


def random_circuit(rng: np.random.Generator, n: int, depth: int, pool=GATE_POOL, named_params: bool = False):
    """``depth`` layers; each layer puts one random gate on every qubit (CNOT picks a random partner)."""
    c = ParameterizedCircuit(n)
    k = 0
    for _ in range(depth):
        for q in range(n):
            name = pool[rng.integers(len(pool))]
            if name == "CNOT":
                if n == 1:
                    name = "H"
                else:
                    other = int(rng.choice([t for t in range(n) if t != q]))
                    c.cnot(q, other)
                    continue
            if name in ("RX", "RY", "RZ"):
                angle = float(rng.uniform(-math.pi, math.pi))
                if named_params:
                    c.add(name, q, parameter=f"p{k}")
                    k += 1
                else:
                    c.add(name, q, parameter=angle)
            else:
                c.add(name, q)
    return c


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return v / np.linalg.norm(v)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        ACCEPTANCE_RESULTS.append((str(label), title, status))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, status in sorted(ACCEPTANCE_RESULTS, key=lambda r: (int(r[0].rstrip("ab")), r[0])):
        terminalreporter.write_line(f"[{status}] criterion {label}: {title}")
