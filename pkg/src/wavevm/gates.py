"""Gate kernels and the parameterized circuit container.

Every kernel updates the amplitude vector by local pair/block updates; no
``2**N x 2**N`` operator is ever formed. Kernels accept arrays with leading
batch dimensions (``(..., 2**N)``) so many states can be pushed through the
same gate in one call.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .statevector import Wavefunction, new_register

UNITARY_TOL = 1e-12

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2.0)
SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)


def rx(theta: float) -> np.ndarray:
    """exp(-i theta X / 2)"""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def ry(theta: float) -> np.ndarray:
    """exp(-i theta Y / 2)"""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def rz(theta: float) -> np.ndarray:
    """exp(-i theta Z / 2)"""
    e = complex(math.cos(theta / 2), math.sin(theta / 2))
    return np.array([[e.conjugate(), 0], [0, e]], dtype=np.complex128)


FIXED_GATES = {"H": H, "X": X, "Y": Y, "Z": Z, "SX": SX, "SWAP": SWAP}
ROTATIONS = {"RX": rx, "RY": ry, "RZ": rz}
# single-qubit gates applied to the target of a controlled op
CONTROLLED_GATES = {"CNOT": X, "CZ": Z}


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) < tol


def _check_matrix(matrix, k: int) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    dim = 1 << k
    if m.shape != (dim, dim):
        raise ValueError(f"gate on {k} qubit(s) needs a {dim}x{dim} matrix, got shape {m.shape}")
    if not is_unitary(m):
        raise ValueError("gate matrix is not unitary")
    return m


def _check_qubits(qubits: Sequence[int], num_qubits: int, what: str = "qubit") -> None:
    for q in qubits:
        if not 0 <= q < num_qubits:
            raise ValueError(f"{what} index {q} out of range for {num_qubits} qubits")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate {what} indices: {list(qubits)}")


# -- array kernels ---------------------------------------------------------


def _single_kernel(amps: np.ndarray, u: np.ndarray, target: int, n: int) -> np.ndarray:
    # qubit `target` has stride cut = 2**(n - target - 1); the (hi, 2, cut) view
    # pairs index i (bit 0) with i + cut (bit 1)
    cut = 1 << (n - target - 1)
    batch = amps.shape[:-1]
    old = amps.reshape(*batch, -1, 2, cut)
    new = np.empty_like(old)
    x0 = old[..., 0, :]
    x1 = old[..., 1, :]
    a, c = u[0, 0], u[0, 1]
    b, d = u[1, 0], u[1, 1]
    new[..., 0, :] = a * x0 + c * x1
    new[..., 1, :] = b * x0 + d * x1
    return new.reshape(amps.shape)


def _block_kernel(psi: np.ndarray, u: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Apply ``u`` to the given tensor axes of ``psi`` (shape ``(..., 2, ..., 2)``)."""
    k = len(axes)
    front = list(range(len(axes)))
    moved = np.moveaxis(psi, axes, front)
    rest = moved.shape[k:]
    block = moved.reshape(1 << k, -1)
    out = (u @ block).reshape((2,) * k + rest)
    return np.moveaxis(out, front, axes)


def _apply_kernel(
    amps: np.ndarray,
    u: np.ndarray,
    targets: Sequence[int],
    controls: Sequence[int],
    n: int,
) -> np.ndarray:
    if not controls and len(targets) == 1:
        return _single_kernel(amps, u, targets[0], n)
    batch = amps.shape[:-1]
    nb = len(batch)
    out = amps.reshape(*batch, *([2] * n)).copy()
    index: list = [slice(None)] * (nb + n)
    for c in controls:
        index[nb + c] = 1
    sub = out[tuple(index)]
    # surviving axes after the integer indexing on control axes
    kept = [q for q in range(n) if q not in controls]
    axes = [nb + kept.index(t) for t in targets]
    out[tuple(index)] = _block_kernel(sub, u, axes)
    return out.reshape(amps.shape)


# -- wavefunction-level operations -------------------------------------------


def apply_single(w: Wavefunction, matrix, target: int) -> None:
    """Apply a 2x2 unitary to ``target`` in place."""
    u = _check_matrix(matrix, 1)
    _check_qubits([target], w.num_qubits, "target")
    w.amplitudes = _single_kernel(w.amplitudes, u, target, w.num_qubits)


def apply_controlled(w: Wavefunction, matrix, control: int, target: int) -> None:
    """Apply ``matrix`` to ``target`` on the subspace where ``control`` is 1."""
    u = _check_matrix(matrix, 1)
    if control == target:
        raise ValueError("control and target must differ")
    _check_qubits([control, target], w.num_qubits)
    w.amplitudes = _apply_kernel(w.amplitudes, u, [target], [control], w.num_qubits)


def apply_general(w: Wavefunction, matrix, targets: Sequence[int]) -> None:
    """Apply a ``2**k x 2**k`` unitary to ``targets`` (targets[0] is the block's MSB)."""
    targets = [int(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate targets: {targets}")
    _check_qubits(targets, w.num_qubits, "target")
    u = _check_matrix(matrix, len(targets))
    w.amplitudes = _apply_kernel(w.amplitudes, u, targets, [], w.num_qubits)


# -- gate descriptors ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GateOp:
    """One gate in a circuit.

    Fixed gates carry ``matrix``; rotation gates carry either a bound ``angle``
    or the name of a circuit ``parameter`` resolved at run time.
    """

    name: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    matrix: np.ndarray | None = None
    parameter: str | None = None
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "controls", tuple(int(c) for c in self.controls))
        if not self.targets:
            raise ValueError("gate needs at least one target")
        qubits = self.targets + self.controls
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"targets {self.targets} and controls {self.controls} must be distinct")
        if min(qubits) < 0:
            raise ValueError("qubit indices must be non-negative")
        if self.name in ROTATIONS:
            if len(self.targets) != 1:
                raise ValueError(f"{self.name} acts on exactly one qubit")
            if (self.parameter is None) == (self.angle is None):
                raise ValueError(f"{self.name} needs exactly one of parameter or angle")
        else:
            if self.parameter is not None:
                raise ValueError(f"only RX/RY/RZ accept a parameter, not {self.name}")
            if self.matrix is None:
                raise ValueError(f"gate {self.name} has no matrix")
            object.__setattr__(self, "matrix", _check_matrix(self.matrix, len(self.targets)))

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def bound_matrix(self, values: dict[str, float] | None = None) -> np.ndarray:
        if self.name in ROTATIONS:
            theta = self.angle if self.parameter is None else values[self.parameter]
            return ROTATIONS[self.name](float(theta))
        return self.matrix

    def label(self) -> str:
        if self.name in ROTATIONS:
            arg = self.parameter if self.parameter is not None else f"{self.angle:.4g}"
            return f"{self.name}({arg})"
        return self.name


def named_gate(
    name: str,
    targets: int | Sequence[int],
    controls: int | Sequence[int] = (),
    parameter: str | float | None = None,
) -> GateOp:
    """Build a GateOp from the standard gate set.

    ``parameter`` is either a circuit parameter name (str) or a bound angle.
    """
    key = name.upper()
    targets = (targets,) if isinstance(targets, (int, np.integer)) else tuple(targets)
    controls = (controls,) if isinstance(controls, (int, np.integer)) else tuple(controls)
    if key in ROTATIONS:
        if parameter is None:
            raise ValueError(f"{key} needs an angle or parameter name")
        if isinstance(parameter, str):
            return GateOp(key, targets, controls, parameter=parameter)
        return GateOp(key, targets, controls, angle=float(parameter))
    if parameter is not None:
        raise ValueError(f"{key} takes no parameter")
    if key in FIXED_GATES:
        return GateOp(key, targets, controls, matrix=FIXED_GATES[key])
    if key in CONTROLLED_GATES:
        # CNOT(control, target) given as a two-element target list is also accepted
        if not controls and len(targets) == 2:
            controls, targets = targets[:1], targets[1:]
        if len(controls) != 1 or len(targets) != 1:
            raise ValueError(f"{key} needs one control and one target")
        return GateOp(key, targets, controls, matrix=CONTROLLED_GATES[key])
    raise ValueError(f"unknown gate {name!r}")


class ParameterizedCircuit:
    """Ordered gate list with named scalar parameters.

    Parameters referenced by rotation gates are declared on first use unless
    declared up front through ``parameter_names``.
    """

    def __init__(self, num_qubits: int, parameter_names: Iterable[str] = ()):
        if num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        self.num_qubits = int(num_qubits)
        self.ops: list[GateOp] = []
        self.parameter_names: list[str] = []
        for name in parameter_names:
            self.add_parameter(name)

    def __len__(self) -> int:
        return len(self.ops)

    def __repr__(self) -> str:
        return f"ParameterizedCircuit(num_qubits={self.num_qubits}, ops={len(self.ops)}, params={len(self.parameter_names)})"

    @property
    def num_parameters(self) -> int:
        return len(self.parameter_names)

    def add_parameter(self, name: str) -> str:
        if name in self.parameter_names:
            raise ValueError(f"parameter {name!r} already declared")
        self.parameter_names.append(name)
        return name

    def append(self, op: GateOp) -> ParameterizedCircuit:
        _check_qubits(op.qubits, self.num_qubits)
        if op.parameter is not None and op.parameter not in self.parameter_names:
            self.parameter_names.append(op.parameter)
        self.ops.append(op)
        return self

    def add(self, name: str, targets, controls=(), parameter=None) -> ParameterizedCircuit:
        return self.append(named_gate(name, targets, controls, parameter))

    def h(self, q):
        return self.add("H", q)

    def x(self, q):
        return self.add("X", q)

    def y(self, q):
        return self.add("Y", q)

    def z(self, q):
        return self.add("Z", q)

    def sx(self, q):
        return self.add("SX", q)

    def rx(self, q, parameter):
        return self.add("RX", q, parameter=parameter)

    def ry(self, q, parameter):
        return self.add("RY", q, parameter=parameter)

    def rz(self, q, parameter):
        return self.add("RZ", q, parameter=parameter)

    def cnot(self, control, target):
        return self.add("CNOT", target, control)

    def unitary(self, matrix, targets, controls=(), name: str = "U"):
        targets = (targets,) if isinstance(targets, (int, np.integer)) else tuple(targets)
        return self.append(GateOp(name, targets, controls, matrix=matrix))

    def parameter_uses(self) -> dict[str, int]:
        uses = dict.fromkeys(self.parameter_names, 0)
        for op in self.ops:
            if op.parameter is not None:
                uses[op.parameter] += 1
        return uses

    def bind(self, params) -> dict[str, float]:
        values = np.asarray(params, dtype=float).reshape(-1)
        if values.size != len(self.parameter_names):
            raise ValueError(f"expected {len(self.parameter_names)} parameters, got {values.size}")
        return dict(zip(self.parameter_names, values.tolist()))

    def evolve(self, states: np.ndarray, params=()) -> np.ndarray:
        """Push a batch of amplitude vectors ``(..., 2**N)`` through the circuit (noise-free)."""
        values = self.bind(params)
        amps = np.asarray(states, dtype=np.complex128)
        if amps.shape[-1] != 1 << self.num_qubits:
            raise ValueError(f"states must have trailing dimension {1 << self.num_qubits}")
        for op in self.ops:
            amps = _apply_kernel(amps, op.bound_matrix(values), op.targets, op.controls, self.num_qubits)
        return amps

    def run(self, params=(), noise_p=None, seed=None, initial_state: Wavefunction | None = None) -> Wavefunction:
        return run(self, params, noise_p=noise_p, seed=seed, initial_state=initial_state)

    def draw(self) -> str:
        return visual_circuit(self)


def apply_op(w: Wavefunction, op: GateOp, values: dict[str, float] | None = None) -> None:
    """Apply one GateOp to ``w`` in place, resolving its parameter from ``values``."""
    if max(op.qubits) >= w.num_qubits:
        raise ValueError(f"gate {op.name} on qubits {op.qubits} does not fit {w.num_qubits} qubits")
    w.amplitudes = _apply_kernel(w.amplitudes, op.bound_matrix(values), op.targets, op.controls, w.num_qubits)


def run(
    circuit: ParameterizedCircuit,
    params=(),
    noise_p=None,
    seed: int | None = None,
    initial_state: Wavefunction | None = None,
) -> Wavefunction:
    """Evolve ``|0...0>`` (or a copy of ``initial_state``) through ``circuit``.

    ``noise_p`` may be a probability or a ready :class:`~wavevm.noise.NoiseModel`;
    when given, the depolarizing channel hits every qubit after each gate.
    """
    values = circuit.bind(params)
    n = circuit.num_qubits
    if initial_state is None:
        w = new_register(n)
    else:
        if initial_state.num_qubits != n:
            raise ValueError("initial state size does not match circuit")
        w = initial_state.copy()

    model = None
    if noise_p is not None:
        from .noise import NoiseModel

        model = noise_p if isinstance(noise_p, NoiseModel) else NoiseModel(float(noise_p), seed=seed)

    for op in circuit.ops:
        apply_op(w, op, values)
        if model is not None:
            for q in range(n):
                model.apply(w, q)
    return w


# -- drawing ---------------------------------------------------------------

_WIRE = "─"


def _cells(op: GateOp, n: int) -> list[str | None]:
    cells: list[str | None] = [None] * n
    if op.controls:
        target_label = "⊕" if op.name == "CNOT" else op.label()
    else:
        target_label = op.label()
    for c in op.controls:
        cells[c] = "●"
    for t in op.targets:
        cells[t] = target_label
    lo, hi = min(op.qubits), max(op.qubits)
    for q in range(lo + 1, hi):
        if cells[q] is None:
            cells[q] = "┼"
    return cells


def visual_circuit(circuit: ParameterizedCircuit) -> str:
    """ASCII/box-drawing diagram: one row per qubit, one column per gate.

    Controls are drawn as ``●``, CNOT targets as ``⊕`` and wires crossed by a
    multi-qubit gate as ``┼``.
    """
    n = circuit.num_qubits
    prefix = [f"q{q}: " for q in range(n)]
    width = max(len(p) for p in prefix)
    rows = [p.ljust(width) + _WIRE for p in prefix]
    for op in circuit.ops:
        cells = _cells(op, n)
        col = max(len(c) for c in cells if c is not None)
        for q in range(n):
            text = cells[q] if cells[q] is not None else ""
            rows[q] += text.center(col, _WIRE) + _WIRE
    return "\n".join(rows)
