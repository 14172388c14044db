"""Dense 2^n-amplitude backend; the correctness oracle for the others."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .. import gates
from ..circuit import GateKind, GateOp, index_of
from ..errors import UnsupportedOp
from .base import StateBackend


def apply_unitary_dense(amps: np.ndarray, u: np.ndarray, support: tuple[int, ...],
                        n_qubits: int) -> np.ndarray:
    """Apply a 2^k x 2^k unitary on ``support`` under big-endian ordering."""
    k = len(support)
    psi = amps.reshape((2,) * n_qubits)
    ut = u.reshape((2,) * (2 * k))
    psi = np.tensordot(ut, psi, axes=(tuple(range(k, 2 * k)), support))
    psi = np.moveaxis(psi, tuple(range(k)), support)
    return np.ascontiguousarray(psi).reshape(-1)


class StateVectorBackend(StateBackend):
    """Double-precision complex amplitudes, one per basis state."""

    name = "statevector"
    supports_mid_measure = True

    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self.amplitudes = np.zeros(1 << n_qubits, dtype=complex)
        self.amplitudes[0] = 1.0

    def apply_op(self, op: GateOp, rng: np.random.Generator | None = None) -> None:
        kind = op.kind
        if kind is GateKind.MEASURE:
            return
        if kind is GateKind.CHANNEL_BITFLIP:
            if rng is None:
                raise ValueError("channel application requires an rng (trajectory mode)")
            if rng.random() < op.param:
                self._apply_matrix(gates.unitary(GateOp(GateKind.X, op.support)), op.support)
            return
        if kind is GateKind.CHANNEL_DEPOLARIZE:
            if rng is None:
                raise ValueError("channel application requires an rng (trajectory mode)")
            p = op.param
            which = rng.choice(4, p=[1.0 - p, p / 3.0, p / 3.0, p / 3.0])
            if which:
                pauli = (GateKind.X, GateKind.Y, GateKind.Z)[which - 1]
                self._apply_matrix(gates.unitary(GateOp(pauli, op.support)), op.support)
            return
        self._apply_matrix(gates.unitary(op), op.support)

    def _apply_matrix(self, u: np.ndarray, support: tuple[int, ...]) -> None:
        self.amplitudes = apply_unitary_dense(self.amplitudes, u, support, self.n_qubits)

    def compute_probability(self, bits: str) -> float:
        return float(abs(self.amplitudes[index_of(bits)]) ** 2)

    def compute_probabilities(self, candidates: Sequence[str]) -> np.ndarray:
        idx = [index_of(b) for b in candidates]
        return np.abs(self.amplitudes[idx]) ** 2

    def project_qubit(self, qubit: int, bit: int) -> None:
        """Project ``qubit`` onto ``bit`` and renormalize (mid-circuit measure)."""
        psi = self.amplitudes.reshape((2,) * self.n_qubits)
        psi = np.moveaxis(psi, qubit, 0).copy()
        psi[1 - bit] = 0.0
        norm = np.linalg.norm(psi)
        if norm == 0.0:
            raise UnsupportedOp(self.name, "MEASURE", "projection onto zero-probability outcome")
        psi /= norm
        self.amplitudes = np.ascontiguousarray(np.moveaxis(psi, 0, qubit)).reshape(-1)

    def clone_state(self) -> "StateVectorBackend":
        other = StateVectorBackend.__new__(StateVectorBackend)
        other.n_qubits = self.n_qubits
        other.amplitudes = self.amplitudes.copy()
        return other

    def supports(self, kind: GateKind) -> bool:
        return True


def apply_op_dense(backend: StateVectorBackend, op: GateOp) -> StateVectorBackend:
    """Functional wrapper over StateVectorBackend.apply_op (unitary ops only)."""
    backend.apply_op(op)
    return backend


def compute_probability_state_vector(backend: StateVectorBackend, bits: str) -> float:
    return backend.compute_probability(bits)
