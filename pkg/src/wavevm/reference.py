"""Dense full-register reference simulator.

Builds each gate as an explicit ``2**N x 2**N`` operator (Kronecker products
for single-target gates, basis enumeration for multi-target blocks) and
multiplies it into the state. Exponentially expensive; used as a
correctness oracle for the amplitude kernels, never in the hot path.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .gates import GateOp, ParameterizedCircuit

P0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)
I2 = np.eye(2, dtype=np.complex128)


def _kron_all(factors) -> np.ndarray:
    # factors[0] belongs to qubit 0, the most significant bit
    return reduce(np.kron, factors)


def embed_single(u: np.ndarray, target: int, n: int, controls=()) -> np.ndarray:
    """Full operator for ``u`` on ``target``, active when every control is 1."""
    plain = [u if q == target else I2 for q in range(n)]
    if not controls:
        return _kron_all(plain)
    active = [u if q == target else (P1 if q in controls else I2) for q in range(n)]
    projector = [P1 if q in controls else I2 for q in range(n)]
    return np.eye(1 << n, dtype=np.complex128) - _kron_all(projector) + _kron_all(active)


def embed_block(u: np.ndarray, targets, n: int, controls=()) -> np.ndarray:
    """Full operator for a k-qubit block by enumerating basis states."""
    dim = 1 << n
    full = np.zeros((dim, dim), dtype=np.complex128)
    shift = [n - 1 - q for q in range(n)]
    for col in range(dim):
        bits = [(col >> shift[q]) & 1 for q in range(n)]
        if any(bits[c] == 0 for c in controls):
            full[col, col] = 1.0
            continue
        sub_col = 0
        for t in targets:
            sub_col = (sub_col << 1) | bits[t]
        for sub_row in range(1 << len(targets)):
            amp = u[sub_row, sub_col]
            if amp == 0:
                continue
            row_bits = list(bits)
            for pos, t in enumerate(targets):
                row_bits[t] = (sub_row >> (len(targets) - 1 - pos)) & 1
            row = 0
            for b in row_bits:
                row = (row << 1) | b
            full[row, col] += amp
    return full


def dense_operator(op: GateOp, n: int, values=None) -> np.ndarray:
    u = op.bound_matrix(values)
    if len(op.targets) == 1:
        return embed_single(u, op.targets[0], n, op.controls)
    return embed_block(u, op.targets, n, op.controls)


def dense_run(circuit: ParameterizedCircuit, params=(), initial=None) -> np.ndarray:
    """Final amplitude vector from explicit matrix-vector products."""
    values = circuit.bind(params)
    n = circuit.num_qubits
    if initial is None:
        psi = np.zeros(1 << n, dtype=np.complex128)
        psi[0] = 1.0
    else:
        psi = np.array(initial, dtype=np.complex128)
    for op in circuit.ops:
        psi = dense_operator(op, n, values) @ psi
    return psi


def dense_unitary(circuit: ParameterizedCircuit, params=()) -> np.ndarray:
    values = circuit.bind(params)
    n = circuit.num_qubits
    total = np.eye(1 << n, dtype=np.complex128)
    for op in circuit.ops:
        total = dense_operator(op, n, values) @ total
    return total
