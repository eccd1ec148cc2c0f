"""Depolarizing noise by pure-state trajectory sampling.

Each call picks one Kraus branch of

    rho -> (1 - p) rho + p/3 (X rho X + Y rho Y + Z rho Z)

so averages over trajectories reproduce the channel. Random numbers come from
numpy's PCG64 bit generator (``numpy.random.Generator(PCG64(seed))``), whose
stream is fixed across platforms for a given seed.
"""

from __future__ import annotations

import numpy as np

from .gates import X, Y, Z, _single_kernel
from .statevector import Wavefunction

PAULIS = (X, Y, Z)


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class NoiseModel:
    """Single-qubit depolarizing channel with ``px = py = pz = p / 3``."""

    def __init__(self, p: float, seed: int | None = None, rng: np.random.Generator | None = None):
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"depolarizing probability must lie in [0, 1], got {p}")
        self.p = p
        self.rng_seed = seed
        self.rng = rng if rng is not None else make_rng(seed)

    @property
    def px(self) -> float:
        return self.p / 3.0

    py = px
    pz = px

    def __repr__(self) -> str:
        return f"NoiseModel(p={self.p}, seed={self.rng_seed})"

    def sample_branch(self) -> int:
        """Draw one uniform sample; return 0 for identity, 1/2/3 for X/Y/Z."""
        u = self.rng.random()
        if u < 1.0 - self.p:
            return 0
        # the remaining mass p is split into three equal slices
        slot = int((u - (1.0 - self.p)) / self.p * 3.0) if self.p > 0 else 0
        return 1 + min(slot, 2)

    def apply(self, w: Wavefunction, qubit: int) -> int:
        if not 0 <= qubit < w.num_qubits:
            raise ValueError(f"qubit index {qubit} out of range for {w.num_qubits} qubits")
        branch = self.sample_branch()
        if branch:
            w.amplitudes = _single_kernel(w.amplitudes, PAULIS[branch - 1], qubit, w.num_qubits)
        return branch


def apply_depolarizing(w: Wavefunction, qubit: int, model: NoiseModel) -> int:
    """Apply one sampled trajectory step of the channel; returns the branch taken."""
    return model.apply(w, qubit)
