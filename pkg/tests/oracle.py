"""Independent brute-force oracle used by the test suite.

Deliberately self-contained: defines its own gate matrices and applies them
by building explicit 2^n x 2^n operators over basis indices, so it shares no
code path with the package's backends.
"""

from __future__ import annotations

import math

import numpy as np

from gatesampler.circuit import Circuit, GateKind, GateOp

_S2 = 1.0 / math.sqrt(2.0)

ORACLE_1Q = {
    GateKind.H: np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(0.25j * np.pi)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-0.25j * np.pi)]], dtype=complex),
}

ORACLE_2Q = {
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def oracle_matrix(op: GateOp) -> np.ndarray:
    kind = op.kind
    if kind in ORACLE_1Q:
        return ORACLE_1Q[kind]
    if kind in ORACLE_2Q:
        return ORACLE_2Q[kind]
    if kind is GateKind.MATRIX1Q:
        return np.array(op.matrix, dtype=complex).reshape(2, 2)
    if kind is GateKind.MATRIX2Q:
        return np.array(op.matrix, dtype=complex).reshape(4, 4)
    theta = op.param
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    if kind is GateKind.RX:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)
    raise ValueError(f"oracle has no matrix for {kind}")


def _bit(index: int, qubit: int, n: int) -> int:
    # qubit 0 is the most significant bit of the basis index
    return (index >> (n - 1 - qubit)) & 1


def _set_bit(index: int, qubit: int, value: int, n: int) -> int:
    shift = n - 1 - qubit
    return (index & ~(1 << shift)) | (value << shift)


def full_operator(op: GateOp, n: int) -> np.ndarray:
    """Explicit 2^n x 2^n matrix for one op, built index by index."""
    u = oracle_matrix(op)
    support = op.support
    dim = 1 << n
    full = np.zeros((dim, dim), dtype=complex)
    k = len(support)
    for col in range(dim):
        sub_in = 0
        for q in support:
            sub_in = (sub_in << 1) | _bit(col, q, n)
        for sub_out in range(1 << k):
            amp = u[sub_out, sub_in]
            if amp == 0.0:
                continue
            row = col
            for pos, q in enumerate(support):
                row = _set_bit(row, q, (sub_out >> (k - 1 - pos)) & 1, n)
            full[row, col] += amp
    return full


def oracle_state(circuit: Circuit) -> np.ndarray:
    """Final state: product of explicit full operators applied to e_0."""
    dim = 1 << circuit.n_qubits
    state = np.zeros(dim, dtype=complex)
    state[0] = 1.0
    for op in circuit.ops:
        if op.kind is GateKind.MEASURE:
            continue
        state = full_operator(op, circuit.n_qubits) @ state
    return state


def oracle_distribution(circuit: Circuit) -> np.ndarray:
    return np.abs(oracle_state(circuit)) ** 2


def dist_array(dist: dict[str, float], n_qubits: int) -> np.ndarray:
    """{bitstring: weight} -> dense array over basis indices."""
    arr = np.zeros(1 << n_qubits)
    for bits, w in dist.items():
        arr[int(bits, 2)] = w
    return arr


def tvd(p, q, n_qubits: int | None = None) -> float:
    """Total variation distance; accepts arrays or {bitstring: prob} dicts."""
    if isinstance(p, dict):
        p = dist_array(p, n_qubits)
    if isinstance(q, dict):
        q = dist_array(q, n_qubits)
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())
