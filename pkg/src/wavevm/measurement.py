"""Single-qubit probabilities, projective collapse and full-register sampling."""

from __future__ import annotations

import json

import numpy as np

from .statevector import Wavefunction, basis_label, probabilities


def _qubit_view(amps: np.ndarray, qubit: int, n: int) -> np.ndarray:
    # (..., hi, 2, cut): axis -2 is the bit of `qubit`
    return amps.reshape(*amps.shape[:-1], -1, 2, 1 << (n - qubit - 1))


def _check_index(w: Wavefunction, qubit: int) -> None:
    if not 0 <= qubit < w.num_qubits:
        raise ValueError(f"qubit index {qubit} out of range for {w.num_qubits} qubits")


def prob_one_array(amps: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Probability of outcome 1 on ``qubit`` for a batch of amplitude vectors."""
    ones = _qubit_view(amps, qubit, n)[..., 1, :]
    return np.sum(ones.real**2 + ones.imag**2, axis=(-2, -1))


def prob_one_qubit(w: Wavefunction, qubit: int) -> tuple[float, float]:
    """Return ``(p0, p1)`` for a measurement of ``qubit``; p1 is defined as ``1 - p0``."""
    _check_index(w, qubit)
    zeros = _qubit_view(w.amplitudes, qubit, w.num_qubits)[:, 0, :]
    p0 = float(np.sum(zeros.real**2 + zeros.imag**2))
    return p0, 1.0 - p0


def collapse_one_qubit(w: Wavefunction, qubit: int, rng: np.random.Generator) -> int:
    """Measure ``qubit`` projectively, mutate ``w`` to the post-measurement state.

    The outcome is drawn from ``(p0, p1)``; amplitudes inconsistent with it are
    zeroed and the rest divided by ``sqrt(p(outcome))``.
    """
    p0, _ = prob_one_qubit(w, qubit)
    if p0 >= 1.0:
        outcome = 0
    elif p0 <= 0.0:
        outcome = 1
    else:
        outcome = 0 if rng.random() < p0 else 1
    view = _qubit_view(w.amplitudes, qubit, w.num_qubits)
    kept = view[:, outcome, :]
    p = float(np.sum(kept.real**2 + kept.imag**2))
    new = np.zeros_like(view)
    new[:, outcome, :] = kept / np.sqrt(p)
    w.amplitudes = new.reshape(-1)
    return outcome


def measure_all(w: Wavefunction, shots: int, rng: np.random.Generator) -> dict[int, int]:
    """Sample ``shots`` i.i.d. basis indices from ``|alpha_j|^2`` without collapsing ``w``."""
    if int(shots) < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = probabilities(w)
    probs = probs / probs.sum()
    counts = rng.multinomial(int(shots), probs)
    return {int(j): int(counts[j]) for j in np.flatnonzero(counts)}


def histogram_to_dict(counts: dict[int, int], num_qubits: int) -> dict:
    return {
        "counts": {basis_label(j, num_qubits): c for j, c in sorted(counts.items())},
        "shots": int(sum(counts.values())),
    }


def histogram_to_json(counts: dict[int, int], num_qubits: int) -> str:
    return json.dumps(histogram_to_dict(counts, num_qubits), sort_keys=True)


def histogram_from_json(text: str) -> tuple[dict[int, int], int]:
    data = json.loads(text)
    counts = {int(label, 2): int(c) for label, c in data["counts"].items()}
    if sum(counts.values()) != data["shots"]:
        raise ValueError("histogram counts do not add up to shots")
    return counts, int(data["shots"])
