"""Dense wavefunction register.

Bit-ordering convention used everywhere in this package: basis index ``j`` is
read as the bitstring ``b_0 b_1 ... b_{N-1}`` with qubit 0 as the most
significant (leftmost) bit. Qubit ``n`` therefore has stride ``2**(N - n - 1)``
in the amplitude vector, so X on qubit 0 of ``|00>`` gives ``|10>`` (index 2).
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

MAX_QUBITS = 24
NORM_TOL = 1e-10
PRINT_DECIMALS = 6


class Wavefunction:
    """State of an ``num_qubits`` register as a flat complex128 amplitude vector."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes, num_qubits: int | None = None, check_norm: bool = True):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        n = _qubits_for_length(amps.size)
        if num_qubits is not None and num_qubits != n:
            raise ValueError(f"expected {2 ** num_qubits} amplitudes for {num_qubits} qubits, got {amps.size}")
        _check_qubit_count(n)
        if check_norm:
            norm = float(np.vdot(amps, amps).real)
            if abs(norm - 1.0) > NORM_TOL:
                raise ValueError(f"amplitudes are not normalized (sum |a|^2 = {norm!r})")
        self.num_qubits = n
        self.amplitudes = amps

    def __repr__(self) -> str:
        return f"Wavefunction(num_qubits={self.num_qubits}, {print_state(self)!r})"

    def __len__(self) -> int:
        return self.amplitudes.size

    def copy(self) -> Wavefunction:
        w = Wavefunction.__new__(Wavefunction)
        w.num_qubits = self.num_qubits
        w.amplitudes = self.amplitudes.copy()
        return w

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return probabilities(self)

    def print_state(self) -> str:
        return print_state(self)


def _qubits_for_length(size: int) -> int:
    if size < 2 or size & (size - 1):
        raise ValueError(f"amplitude vector length must be a power of two >= 2, got {size}")
    return size.bit_length() - 1


def _check_qubit_count(num_qubits: int) -> None:
    if not isinstance(num_qubits, (int, np.integer)) or isinstance(num_qubits, bool):
        raise TypeError(f"num_qubits must be an integer, got {type(num_qubits).__name__}")
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")


def new_register(num_qubits: int) -> Wavefunction:
    """Return ``|0...0>`` on ``num_qubits`` qubits."""
    _check_qubit_count(num_qubits)
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    w = Wavefunction.__new__(Wavefunction)
    w.num_qubits = int(num_qubits)
    w.amplitudes = amps
    return w


def probabilities(w: Wavefunction) -> np.ndarray:
    """Return ``|alpha_j|**2`` for every basis index (new array, state untouched)."""
    a = w.amplitudes
    return a.real * a.real + a.imag * a.imag


def basis_label(index: int, num_qubits: int) -> str:
    """Bitstring for ``index`` with qubit 0 leftmost."""
    return format(index, f"0{num_qubits}b")


def _format_amplitude(a: complex) -> str:
    # adding 0.0 turns -0.0 into 0.0 so rounding never prints "-0.000000"
    re = round(a.real, PRINT_DECIMALS) + 0.0
    im = round(a.imag, PRINT_DECIMALS) + 0.0
    return f"({re:.{PRINT_DECIMALS}f}{im:+.{PRINT_DECIMALS}f}j)"


def print_state(w: Wavefunction) -> str:
    """Render the state in bra-ket form, e.g. ``(0.707107+0.000000j)|0⟩ + ...``.

    Terms whose amplitude rounds to zero at six decimals are omitted.
    """
    terms = []
    threshold = 0.5 * 10.0 ** -PRINT_DECIMALS
    for j, a in enumerate(w.amplitudes):
        if abs(a.real) < threshold and abs(a.imag) < threshold:
            continue
        terms.append(f"{_format_amplitude(a)}|{basis_label(j, w.num_qubits)}⟩")
    return " + ".join(terms) if terms else "0"


def dump_csv(w: Wavefunction, path: str | Path) -> Path:
    """Write amplitudes as ``index,re,im`` rows."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "re", "im"])
        for j, a in enumerate(w.amplitudes):
            writer.writerow([j, repr(float(a.real)), repr(float(a.imag))])
    return path
