"""Wavefunction quantum virtual machine with parameter-shift differentiation."""

from .autodiff import CostFunction, ShiftRule, chain_gradient, mse_cost, parameter_shift_gradient
from .gates import (
    GateOp,
    ParameterizedCircuit,
    apply_controlled,
    apply_general,
    apply_single,
    named_gate,
    run,
    visual_circuit,
)
from .measurement import collapse_one_qubit, measure_all, prob_one_qubit
from .noise import NoiseModel, apply_depolarizing
from .optimizers import AdamState, adam_step, gd_step
from .statevector import Wavefunction, new_register, print_state, probabilities

__version__ = "0.1.0"

__all__ = [
    "AdamState",
    "CostFunction",
    "GateOp",
    "NoiseModel",
    "ParameterizedCircuit",
    "ShiftRule",
    "Wavefunction",
    "adam_step",
    "apply_controlled",
    "apply_depolarizing",
    "apply_general",
    "apply_single",
    "chain_gradient",
    "collapse_one_qubit",
    "gd_step",
    "measure_all",
    "mse_cost",
    "named_gate",
    "new_register",
    "parameter_shift_gradient",
    "print_state",
    "prob_one_qubit",
    "probabilities",
    "run",
    "visual_circuit",
]
