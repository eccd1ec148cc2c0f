import math
from pathlib import Path

import numpy as np
import pytest

from wavevm.statevector import MAX_QUBITS, Wavefunction, basis_label, dump_csv, new_register, print_state, probabilities

GOLDEN = Path(__file__).parent / "golden"


def test_new_register_one_qubit():
    assert np.array_equal(new_register(1).amplitudes, [1, 0])


def test_new_register_two_qubits():
    w = new_register(2)
    assert w.num_qubits == 2
    assert np.array_equal(w.amplitudes, [1, 0, 0, 0])


@pytest.mark.parametrize("n", [0, -1, MAX_QUBITS + 1])
def test_new_register_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        new_register(n)


def test_wavefunction_rejects_unnormalized_and_bad_length():
    with pytest.raises(ValueError):
        Wavefunction([1, 1])
    with pytest.raises(ValueError):
        Wavefunction([1, 0, 0])


@pytest.mark.parametrize(
    "amps, expected",
    [
        ([1 / math.sqrt(2), 1 / math.sqrt(2)], [0.5, 0.5]),
        ([1, 0], [1, 0]),
        ([0.6, 0.8j], [0.36, 0.64]),
    ],
)
def test_probabilities(amps, expected):
    p = probabilities(Wavefunction(amps))
    np.testing.assert_allclose(p, expected, atol=1e-15)
    assert abs(p.sum() - 1) < 1e-10


def test_probabilities_is_pure():
    w = Wavefunction([0.6, 0.8j])
    before = w.amplitudes.copy()
    a, b = probabilities(w), probabilities(w)
    assert np.array_equal(a, b)
    assert np.array_equal(w.amplitudes, before)


def test_basis_label_qubit0_is_leftmost():
    assert basis_label(2, 2) == "10"
    assert basis_label(1, 3) == "001"


def test_print_state_golden():
    states = [
        [1, 0],
        [1 / math.sqrt(2), 1 / math.sqrt(2)],
        [0, 1],
        [0.6, 0.8j],
        [1 / math.sqrt(2), 0, 0, -1 / math.sqrt(2)],
    ]
    rendered = "\n".join(print_state(Wavefunction(s)) for s in states) + "\n"
    assert rendered == (GOLDEN / "print_state.txt").read_text(encoding="utf-8")


def test_print_state_omits_zero_terms():
    assert print_state(Wavefunction([0, 1])) == "(1.000000+0.000000j)|1⟩"
    assert "|0⟩" not in print_state(Wavefunction([0, 1]))


def test_dump_csv(tmp_path):
    path = dump_csv(Wavefunction([0.6, 0.8j]), tmp_path / "amps.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "index,re,im"
    assert lines[1:] == ["0,0.6,0.0", "1,0.0,0.8"]
