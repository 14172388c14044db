"""Dense backend tests against the explicit matrix-product oracle."""

import numpy as np
import pytest

from gatesampler.backends.statevector import (
    StateVectorBackend,
    apply_op_dense,
    compute_probability_state_vector,
)
from gatesampler.circuit import Circuit, GateKind, GateOp, all_bitstrings
from gatesampler.generators import generate_random_circuit
from gatesampler.sampler import rng_stream

from oracle import oracle_state


def bell() -> StateVectorBackend:
    state = StateVectorBackend(2)
    state.apply_op(GateOp(GateKind.H, (0,)))
    state.apply_op(GateOp(GateKind.CNOT, (0, 1)))
    return state


def test_x_moves_amplitude():
    state = StateVectorBackend(2)
    apply_op_dense(state, GateOp(GateKind.X, (0,)))
    assert state.amplitudes[int("10", 2)] == pytest.approx(1.0)
    assert compute_probability_state_vector(state, "10") == pytest.approx(1.0)


def test_h_squared_is_identity():
    state = StateVectorBackend(1)
    state.apply_op(GateOp(GateKind.H, (0,)))
    state.apply_op(GateOp(GateKind.H, (0,)))
    assert abs(state.amplitudes[0] - 1.0) < 1e-12


def test_bell_probabilities():
    state = bell()
    assert state.compute_probability("00") == pytest.approx(0.5)
    assert state.compute_probability("01") == 0.0
    assert state.compute_probability("11") == pytest.approx(0.5)


@pytest.mark.parametrize("seed", range(5))
def test_random_circuit_matches_matrix_product(seed):
    circuit = generate_random_circuit(3, 12, seed=seed)
    state = StateVectorBackend(3)
    for op in circuit.ops:
        state.apply_op(op)
    np.testing.assert_allclose(state.amplitudes, oracle_state(circuit), atol=1e-10)


def test_two_qubit_gate_reversed_support():
    # CNOT(1,0) must differ from CNOT(0,1)
    circuit = Circuit(2, (GateOp(GateKind.X, (1,)), GateOp(GateKind.CNOT, (1, 0))))
    state = StateVectorBackend(2)
    for op in circuit.ops:
        state.apply_op(op)
    np.testing.assert_allclose(state.amplitudes, oracle_state(circuit), atol=1e-12)
    assert state.compute_probability("11") == pytest.approx(1.0)


def test_probabilities_sum_to_one():
    circuit = generate_random_circuit(4, 20, seed=3)
    state = StateVectorBackend(4)
    for op in circuit.ops:
        state.apply_op(op)
    total = sum(state.compute_probability(b) for b in all_bitstrings(4))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_norm_drift_over_1000_ops():
    circuit = generate_random_circuit(5, 300, seed=9)
    state = StateVectorBackend(5)
    for op in circuit.ops:
        state.apply_op(op)
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-10
    assert len(circuit.ops) >= 1000


def test_merged_matrix_equals_sequence():
    from gatesampler import gates

    ops = [
        GateOp(GateKind.H, (0,)),
        GateOp(GateKind.T, (0,)),
        GateOp(GateKind.S, (0,)),
        GateOp(GateKind.RX, (0,), param=0.7),
        GateOp(GateKind.H, (0,)),
    ]
    merged = np.eye(2, dtype=complex)
    for op in ops:
        merged = gates.unitary(op) @ merged
    seq = StateVectorBackend(1)
    for op in ops:
        seq.apply_op(op)
    once = StateVectorBackend(1)
    once.apply_op(GateOp(GateKind.MATRIX1Q, (0,), matrix=tuple(merged.reshape(-1))))
    np.testing.assert_allclose(seq.amplitudes, once.amplitudes, atol=1e-10)


def test_matrix2q_against_oracle():
    # sqrt-iSWAP-like unitary exercises the generic 4x4 path
    entries = (
        1, 0, 0, 0,
        0, 1 / np.sqrt(2), 1j / np.sqrt(2), 0,
        0, 1j / np.sqrt(2), 1 / np.sqrt(2), 0,
        0, 0, 0, 1,
    )
    circuit = Circuit(3, (
        GateOp(GateKind.H, (0,)),
        GateOp(GateKind.H, (2,)),
        GateOp(GateKind.MATRIX2Q, (2, 0), matrix=entries),
    ))
    state = StateVectorBackend(3)
    for op in circuit.ops:
        state.apply_op(op)
    np.testing.assert_allclose(state.amplitudes, oracle_state(circuit), atol=1e-12)


def test_project_qubit():
    state = bell()
    state.project_qubit(0, 1)
    assert state.compute_probability("11") == pytest.approx(1.0)


def test_channels_need_rng():
    state = StateVectorBackend(1)
    with pytest.raises(ValueError):
        state.apply_op(GateOp(GateKind.CHANNEL_BITFLIP, (0,), param=0.5))


def test_bitflip_channel_statistics():
    rng = rng_stream(0, 0)
    flips = 0
    for _ in range(2000):
        state = StateVectorBackend(1)
        state.apply_op(GateOp(GateKind.CHANNEL_BITFLIP, (0,), param=0.3), rng)
        flips += int(state.compute_probability("1") > 0.5)
    assert flips / 2000 == pytest.approx(0.3, abs=0.03)


def test_clone_is_independent():
    state = bell()
    copy = state.clone_state()
    copy.apply_op(GateOp(GateKind.X, (0,)))
    assert state.compute_probability("00") == pytest.approx(0.5)
