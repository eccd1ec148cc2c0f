import math
import tracemalloc
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_circuit, random_state, random_unitary
from wavevm.gates import (
    CNOT,
    H,
    SWAP,
    SX,
    GateOp,
    ParameterizedCircuit,
    apply_controlled,
    apply_general,
    apply_op,
    apply_single,
    is_unitary,
    named_gate,
    run,
    rx,
    ry,
    rz,
    visual_circuit,
)
from wavevm.reference import dense_run, embed_block, embed_single
from wavevm.statevector import Wavefunction, new_register

GOLDEN = Path(__file__).parent / "golden"
S2 = 1 / math.sqrt(2)


def basis(n, index):
    v = np.zeros(1 << n, dtype=complex)
    v[index] = 1
    return Wavefunction(v)


# -- matrices ---------------------------------------------------------------


@pytest.mark.parametrize("u", [H, SX, CNOT, SWAP, rx(0.3), ry(-1.2), rz(2.5)])
def test_standard_matrices_are_unitary(u):
    assert is_unitary(u)


def test_sx_squares_to_x():
    np.testing.assert_allclose(SX @ SX, [[0, 1], [1, 0]], atol=1e-15)


def test_sx_matches_rx_half_pi_up_to_global_phase():
    ratio = SX / rx(math.pi / 2)
    np.testing.assert_allclose(ratio, ratio[0, 0] * np.ones((2, 2)), atol=1e-15)
    assert abs(abs(ratio[0, 0]) - 1) < 1e-15


# -- apply_single -----------------------------------------------------------


def test_hadamard_on_zero():
    w = new_register(1)
    apply_single(w, H, 0)
    np.testing.assert_allclose(w.amplitudes, [S2, S2], atol=1e-15)


def test_x_on_qubit0_flips_leftmost_bit():
    w = new_register(2)
    apply_single(w, named_gate("X", 0).matrix, 0)
    np.testing.assert_array_equal(w.amplitudes, [0, 0, 1, 0])


def test_rx_pi_on_zero():
    w = new_register(1)
    apply_single(w, rx(math.pi), 0)
    np.testing.assert_allclose(w.amplitudes, [0, -1j], atol=1e-15)


def test_ry_half_pi_probabilities():
    w = new_register(1)
    apply_single(w, ry(math.pi / 2), 0)
    np.testing.assert_allclose(np.abs(w.amplitudes) ** 2, [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("target", [-1, 2])
def test_apply_single_rejects_bad_target(target):
    with pytest.raises(ValueError):
        apply_single(new_register(2), H, target)


def test_apply_single_rejects_non_unitary():
    with pytest.raises(ValueError):
        apply_single(new_register(1), np.array([[1, 1], [0, 1]]), 0)


@pytest.mark.parametrize("target", [0, 1, 2, 3])
def test_apply_single_matches_kronecker_oracle(rng, target):
    n = 4
    psi = random_state(rng, n)
    u = random_unitary(rng, 2)
    w = Wavefunction(psi)
    apply_single(w, u, target)
    np.testing.assert_allclose(w.amplitudes, embed_single(u, target, n) @ psi, atol=1e-12)


def test_apply_single_never_builds_full_operator():
    # a 2^N x 2^N complex matrix at N=14 would be 4 GiB; the kernel must stay O(2^N)
    n = 14
    w = new_register(n)
    tracemalloc.start()
    apply_single(w, H, 3)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    state_bytes = 16 << n
    assert peak < 8 * state_bytes


# -- apply_controlled -------------------------------------------------------


def test_cnot_on_10_gives_11():
    w = basis(2, 0b10)
    apply_controlled(w, named_gate("X", 0).matrix, 0, 1)
    np.testing.assert_array_equal(w.amplitudes, [0, 0, 0, 1])


def test_cnot_makes_bell_state():
    w = Wavefunction([S2, 0, S2, 0])
    apply_controlled(w, named_gate("X", 0).matrix, 0, 1)
    np.testing.assert_allclose(w.amplitudes, [S2, 0, 0, S2], atol=1e-15)


def test_controlled_rejects_control_equal_target():
    with pytest.raises(ValueError):
        apply_controlled(new_register(2), H, 1, 1)


@pytest.mark.parametrize("control, target", [(0, 2), (2, 0), (1, 2), (2, 1)])
def test_controlled_matches_projector_oracle(rng, control, target):
    n = 3
    psi = random_state(rng, n)
    u = random_unitary(rng, 2)
    w = Wavefunction(psi)
    apply_controlled(w, u, control, target)
    np.testing.assert_allclose(w.amplitudes, embed_single(u, target, n, (control,)) @ psi, atol=1e-12)


# -- apply_general ----------------------------------------------------------


def test_swap_on_01_gives_10():
    w = basis(2, 0b01)
    apply_general(w, SWAP, [0, 1])
    np.testing.assert_array_equal(w.amplitudes, [0, 0, 1, 0])


@pytest.mark.parametrize("targets", [(0, 1), (1, 2), (2, 0), (0, 2)])
def test_general_two_qubit_matches_dense_oracle(rng, targets):
    n = 3
    psi = random_state(rng, n)
    u = random_unitary(rng, 4)
    w = Wavefunction(psi)
    apply_general(w, u, targets)
    np.testing.assert_allclose(w.amplitudes, embed_block(u, targets, n) @ psi, atol=1e-12)


def test_general_rejects_duplicate_targets():
    with pytest.raises(ValueError):
        apply_general(new_register(2), SWAP, [1, 1])


def test_general_rejects_wrong_matrix_size():
    with pytest.raises(ValueError):
        apply_general(new_register(3), SWAP, [0, 1, 2])


# -- GateOp / named_gate ----------------------------------------------------


def test_named_gate_unknown_name():
    with pytest.raises(ValueError):
        named_gate("FOO", 0)


def test_named_gate_rotation_needs_parameter():
    with pytest.raises(ValueError):
        named_gate("RX", 0)


def test_named_gate_fixed_gate_rejects_parameter():
    with pytest.raises(ValueError):
        named_gate("H", 0, parameter=0.1)


def test_named_gate_cnot_accepts_target_pair():
    op = named_gate("cnot", [0, 1])
    assert op.controls == (0,) and op.targets == (1,)


def test_gateop_rejects_overlapping_qubits():
    with pytest.raises(ValueError):
        GateOp("CNOT", (1,), (1,), matrix=np.eye(2))


def test_apply_op_rejects_qubit_outside_register():
    with pytest.raises(ValueError):
        apply_op(new_register(1), named_gate("H", 1))


# -- ParameterizedCircuit / run ---------------------------------------------


def test_empty_circuit_returns_ground_state():
    np.testing.assert_array_equal(run(ParameterizedCircuit(3)).amplitudes, new_register(3).amplitudes)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_rotation_ansatz_at_zero_is_identity(n):
    c = ParameterizedCircuit(n)
    for j in range(n):
        c.rx(j, f"theta{2 * j}")
        c.ry(j, f"theta{2 * j + 1}")
    assert c.num_parameters == 2 * n
    np.testing.assert_allclose(run(c, np.zeros(2 * n)).amplitudes, new_register(n).amplitudes, atol=1e-15)


def test_parameter_count_mismatch():
    c = ParameterizedCircuit(1)
    c.rx(0, "a")
    with pytest.raises(ValueError):
        run(c, [0.1, 0.2])


def test_named_parameters_follow_declaration_order():
    c = ParameterizedCircuit(1, parameter_names=["b", "a"])
    c.rx(0, "a")
    c.ry(0, "b")
    expected = ry(0.2) @ rx(0.7) @ np.array([1, 0])
    np.testing.assert_allclose(run(c, [0.2, 0.7]).amplitudes, expected, atol=1e-15)


def test_run_leaves_initial_state_untouched():
    init = Wavefunction([0, 1])
    c = ParameterizedCircuit(1)
    c.h(0)
    out = run(c, initial_state=init)
    np.testing.assert_array_equal(init.amplitudes, [0, 1])
    np.testing.assert_allclose(out.amplitudes, [S2, -S2], atol=1e-15)


def test_eight_qubit_random_circuit_matches_oracle():
    c = random_circuit(np.random.default_rng(8), 8, 20)
    np.testing.assert_allclose(run(c).amplitudes, dense_run(c), atol=1e-10, rtol=0)


def test_evolve_batch_matches_single_runs(rng):
    c = random_circuit(rng, 3, 5, named_params=True)
    params = rng.uniform(-3, 3, c.num_parameters)
    states = np.stack([random_state(rng, 3) for _ in range(4)])
    out = c.evolve(states, params)
    for s, o in zip(states, out):
        np.testing.assert_allclose(o, run(c, params, initial_state=Wavefunction(s)).amplitudes, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5), depth=st.integers(0, 6))
def test_random_circuits_property(seed, n, depth):
    rng = np.random.default_rng(seed)
    c = random_circuit(rng, n, depth)
    psi = run(c).amplitudes
    np.testing.assert_allclose(psi, dense_run(c), atol=1e-10, rtol=0)
    assert abs(np.vdot(psi, psi).real - 1) < 1e-10


# -- drawing ----------------------------------------------------------------


def test_visual_single_hadamard_golden():
    c = ParameterizedCircuit(1)
    c.h(0)
    assert visual_circuit(c) + "\n" == (GOLDEN / "circuit_single_h.txt").read_text(encoding="utf-8")


def test_visual_three_qubit_golden():
    c = ParameterizedCircuit(3)
    c.h(0)
    c.cnot(0, 2)
    c.rx(1, "theta")
    c.ry(2, 0.5)
    c.cnot(2, 0)
    assert c.draw() + "\n" == (GOLDEN / "circuit_three_qubit.txt").read_text(encoding="utf-8")


def test_visual_empty_circuit_is_bare_wires():
    assert visual_circuit(ParameterizedCircuit(2)).splitlines() == ["q0: ─", "q1: ─"]
