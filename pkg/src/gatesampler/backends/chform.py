"""CH-form stabilizer state with sum-over-Cliffords RZ support.

The state is omega * U_C * U_H |s>, where U_C is a control-type Clifford
(product of S, CZ, CNOT), U_H applies H on the qubits flagged in v, and
s is a basis state. U_C is tracked through its conjugation action on Paulis:

    U_C^-1 Z_p U_C = prod_j Z_j^G[p,j]
    U_C^-1 X_p U_C = i^gamma[p] * prod_j X_j^F[p,j] Z_j^M[p,j]

All update rules below follow from these two relations:

* Left-multiplying by a control-type gate g rewrites rows of F/G/M/gamma via
  U_C'^-1 P U_C' = U_C^-1 (g^-1 P g) U_C.
* Right-multiplying (g absorbed from a basis-superposition rewrite) transforms
  columns via U_C'^-1 P U_C' = g^-1 (U_C^-1 P U_C) g.
* Pauli gates and the two terms of H = (X + Z)/sqrt(2) are pushed through U_H
  (H swaps each qubit's X and Z components, with a sign when both are set)
  and applied to |s>; H then needs the superposition |t> + i^delta |u> to be
  folded back into CH form by absorbing CNOT/CZ/S gates into U_C.

Matrices are int64 0/1 arrays: the GF(2) matvec in the probability kernel is
then genuinely O(n^2)-dominated rather than numpy-dispatch-dominated, which
the runtime-scaling tests rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..circuit import Circuit, GateKind, GateOp, TWO_PI
from ..errors import UnsupportedOp
from .base import StateBackend

_SQRT2 = math.sqrt(2.0)

CLIFFORD_KINDS = frozenset({
    GateKind.H, GateKind.X, GateKind.Y, GateKind.Z, GateKind.S, GateKind.SDG,
    GateKind.CNOT, GateKind.CZ, GateKind.SWAP,
})

_NEAR_CLIFFORD_KINDS = CLIFFORD_KINDS | {GateKind.RZ, GateKind.T, GateKind.TDG}


@dataclass(frozen=True)
class RzDecomposition:
    """R(theta) = c_i * I + c_s * S, exactly."""

    c_i: complex
    c_s: complex


def decompose_rz(theta: float) -> RzDecomposition:
    """Two-term Clifford decomposition of R(theta) = diag(e^-i t/2, e^i t/2)."""
    half = theta / 2.0
    return RzDecomposition(
        c_i=complex(math.cos(half) - math.sin(half)),
        c_s=(1.0 - 1.0j) * math.sin(half),
    )


def _clifford_angle_index(theta: float, tol: float = 1e-12) -> int | None:
    """k in 0..3 when theta is within tol of k*pi/2 (mod 2pi), else None."""
    k = round(theta / (math.pi / 2.0))
    if abs(theta - k * (math.pi / 2.0)) <= tol:
        return k % 4
    return None


def has_stabilizer_effect(gate: GateOp | GateKind) -> bool:
    """True for Clifford kinds and for RZ at multiples of pi/2."""
    if isinstance(gate, GateOp):
        if gate.kind is GateKind.RZ:
            return _clifford_angle_index(gate.param) is not None
        gate = gate.kind
    return gate in CLIFFORD_KINDS


class CHFormState:
    """Mutable CH-form data; gate methods mutate in place."""

    def __init__(self, n_qubits: int):
        self.n = n_qubits
        self.F = np.eye(n_qubits, dtype=np.int64)
        self.G = np.eye(n_qubits, dtype=np.int64)
        self.M = np.zeros((n_qubits, n_qubits), dtype=np.int64)
        self.gamma = np.zeros(n_qubits, dtype=np.int64)
        self.v = np.zeros(n_qubits, dtype=np.int64)
        self.s = np.zeros(n_qubits, dtype=np.int64)
        self.omega: complex = 1.0 + 0.0j

    def copy(self) -> "CHFormState":
        other = CHFormState.__new__(CHFormState)
        other.n = self.n
        other.F = self.F.copy()
        other.G = self.G.copy()
        other.M = self.M.copy()
        other.gamma = self.gamma.copy()
        other.v = self.v.copy()
        other.s = self.s.copy()
        other.omega = self.omega
        return other

    # -- left multiplication by control-type gates -----------------------------

    def apply_s(self, q: int) -> None:
        # S^-1 X S = -i X Z
        self.M[q] ^= self.G[q]
        self.gamma[q] = (self.gamma[q] - 1) % 4

    def apply_sdg(self, q: int) -> None:
        # S X S^-1 = i X Z
        self.M[q] ^= self.G[q]
        self.gamma[q] = (self.gamma[q] + 1) % 4

    def apply_z(self, q: int) -> None:
        self.gamma[q] = (self.gamma[q] + 2) % 4

    def apply_cz(self, q: int, r: int) -> None:
        # CZ X_q CZ = X_q Z_r (and symmetrically)
        self.M[q] ^= self.G[r]
        self.M[r] ^= self.G[q]

    def apply_cnot(self, q: int, r: int) -> None:
        # CX X_q CX = X_q X_r ; CX Z_r CX = Z_q Z_r
        self.gamma[q] = (
            self.gamma[q] + self.gamma[r] + 2 * (int(self.M[q] @ self.F[r]) & 1)
        ) % 4
        self.F[q] ^= self.F[r]
        self.M[q] ^= self.M[r]
        self.G[r] ^= self.G[q]

    def apply_swap(self, q: int, r: int) -> None:
        self.apply_cnot(q, r)
        self.apply_cnot(r, q)
        self.apply_cnot(q, r)

    # -- Pauli gates pushed through U_C and U_H to (v, s, omega) ---------------

    def _pauli_x_images(self, q: int) -> tuple[np.ndarray, np.ndarray, int]:
        """U_H-frame image of U_C^-1 X_q U_C: flips, phases, and its sign bit."""
        v = self.v
        flips = np.where(v == 1, self.M[q], self.F[q])
        phases = np.where(v == 1, self.F[q], self.M[q])
        hswap_sign = int(np.sum(v & self.F[q] & self.M[q])) & 1
        return flips, phases, hswap_sign

    def apply_x(self, q: int) -> None:
        flips, phases, hsign = self._pauli_x_images(q)
        exponent = hsign + (int(phases @ self.s) & 1)
        self.omega *= (1j) ** int(self.gamma[q]) * (-1.0) ** (exponent & 1)
        self.s ^= flips

    def apply_y(self, q: int) -> None:
        # Y = i X Z
        self.apply_z(q)
        self.apply_x(q)
        self.omega *= 1j

    # -- Hadamard: resolve U_H(|t> + i^delta |u>) back into CH form ------------

    def apply_h(self, q: int) -> None:
        # X-term of H = (X + Z)/sqrt(2)
        flips, phases, hsign = self._pauli_x_images(q)
        t = self.s ^ flips
        alpha = (self.gamma[q] + 2 * (hsign + (int(phases @ self.s) & 1))) % 4
        # Z-term: Z^G[q] through U_H flips where v=1, phases where v=0
        u = self.s ^ (self.G[q] & self.v)
        beta = (2 * (int((self.G[q] & (1 - self.v)) @ self.s) & 1)) % 4
        delta = (beta - alpha) % 4
        self.omega *= (1j) ** int(alpha) / _SQRT2
        self._update_superposition(t, u, delta)

    def _update_superposition(self, t: np.ndarray, u: np.ndarray, delta: int) -> None:
        """Rewrite U_H(|t> + i^delta |u>) as nu * W_C U_H' |s'> and absorb W_C."""
        if np.array_equal(t, u):
            self.s = t
            self.omega *= 1.0 + (1j) ** delta
            return
        diff = t ^ u
        d0 = np.flatnonzero(diff & (1 - self.v))
        d1 = np.flatnonzero(diff & self.v)
        if d0.size:
            q = int(d0[0])
            for j in d0[1:]:
                self._right_cnot(q, int(j))
            for j in d1:
                self._right_cz(q, int(j))
        else:
            q = int(d1[0])
            for j in d1[1:]:
                self._right_cnot(int(j), q)
        # the absorbed gates fix the branch whose q-coordinate is 0 and map the
        # other branch's remaining differences onto coordinate q alone
        a = int(t[q])
        base = t if a == 0 else u
        nu, absorb_s, v_q, s_q = _resolve_single_qubit(int(self.v[q]), a, delta)
        if absorb_s:
            self._right_s(q)
        self.s = base.copy()
        self.s[q] = s_q
        self.v[q] = v_q
        self.omega *= nu

    # -- right multiplication (column updates) ---------------------------------

    def _right_s(self, q: int) -> None:
        self.M[:, q] ^= self.F[:, q]
        self.gamma -= self.F[:, q]
        self.gamma %= 4

    def _right_cz(self, q: int, r: int) -> None:
        self.gamma += 2 * self.F[:, q] * self.F[:, r]
        self.gamma %= 4
        self.M[:, q] ^= self.F[:, r]
        self.M[:, r] ^= self.F[:, q]

    def _right_cnot(self, q: int, r: int) -> None:
        self.G[:, q] ^= self.G[:, r]
        self.F[:, r] ^= self.F[:, q]
        self.M[:, q] ^= self.M[:, r]

    # -- amplitudes and probabilities -------------------------------------------

    def amplitude(self, bits: str) -> complex:
        """<bits|state> including the full phase; O(n^2)."""
        b = _bit_array(bits)
        bf = (b @ self.F) & 1
        mu = 0
        prefix_m = np.zeros(self.n, dtype=np.int64)
        for j in np.flatnonzero(b):
            mu += int(self.gamma[j]) + 2 * (int(prefix_m @ self.F[j]) & 1)
            prefix_m ^= self.M[j]
        scale = 2.0 ** (-0.5 * int(self.v.sum()))
        sign = (-1.0) ** (int((bf & self.v) @ self.s) & 1)
        fixed = self.v == 0
        if not np.array_equal(bf[fixed], self.s[fixed]):
            return 0.0j
        return self.omega * scale * (-1j) ** (mu % 4) * sign

    def probability(self, bits: str) -> float:
        """|<bits|state>|^2; the phase factors drop out."""
        b = _bit_array(bits)
        bf = (b @ self.F) & 1
        if (((bf ^ self.s) & (1 - self.v)) != 0).any():
            return 0.0
        return abs(self.omega) ** 2 * 2.0 ** (-int(self.v.sum()))

    def probabilities(self, candidates: Sequence[str]) -> np.ndarray:
        flat = np.frombuffer("".join(candidates).encode(), dtype=np.uint8)
        rows = (flat - 48).astype(np.int64).reshape(len(candidates), self.n)
        bf = (rows @ self.F) & 1
        bad = (((bf ^ self.s) & (1 - self.v)) != 0).any(axis=1)
        weight = abs(self.omega) ** 2 * 2.0 ** (-int(self.v.sum()))
        return np.where(bad, 0.0, weight)


def _bit_array(bits: str) -> np.ndarray:
    return (np.frombuffer(bits.encode(), dtype=np.uint8) - 48).astype(np.int64)


def _resolve_single_qubit(v_q: int, a: int, delta: int) -> tuple[complex, bool, int, int]:
    """Rewrite H^v_q (|a> + i^delta |1-a>) as nu * S^w H^v' |b>.

    Returns (nu, absorb_S, v', b). Enumerated from the eight nontrivial cases
    of the one-qubit superposition.
    """
    if v_q == 0:
        if delta % 2 == 0:
            return _SQRT2 * (-1.0) ** (a * (delta // 2)), False, 1, delta // 2
        if a == 0:
            return _SQRT2 + 0j, True, 1, 0 if delta == 1 else 1
        if delta == 1:
            return 1j * _SQRT2, True, 1, 1
        return -1j * _SQRT2, True, 1, 0
    if delta == 0:
        return _SQRT2 + 0j, False, 0, 0
    if delta == 2:
        return (-1.0) ** a * _SQRT2, False, 0, 1
    if delta == 1:
        return 1.0 + 1.0j, True, 1, 1 - a
    return 1.0 - 1.0j, True, 1, a


# -- functional surface -----------------------------------------------------------

def ch_initial(n_qubits: int) -> CHFormState:
    """The CH form of |0...0>."""
    return CHFormState(n_qubits)


def ch_apply_clifford(state: CHFormState, op: GateOp) -> CHFormState:
    kind = op.kind
    if kind not in CLIFFORD_KINDS:
        raise UnsupportedOp("stabilizer", kind.name, "not a Clifford kind")
    if kind is GateKind.H:
        state.apply_h(op.support[0])
    elif kind is GateKind.S:
        state.apply_s(op.support[0])
    elif kind is GateKind.SDG:
        state.apply_sdg(op.support[0])
    elif kind is GateKind.X:
        state.apply_x(op.support[0])
    elif kind is GateKind.Y:
        state.apply_y(op.support[0])
    elif kind is GateKind.Z:
        state.apply_z(op.support[0])
    elif kind is GateKind.CNOT:
        state.apply_cnot(*op.support)
    elif kind is GateKind.CZ:
        state.apply_cz(*op.support)
    else:
        state.apply_swap(*op.support)
    return state


def ch_amplitude(state: CHFormState, bits: str) -> complex:
    return state.amplitude(bits)


def compute_probability_stabilizer_state(state: CHFormState, bits: str) -> float:
    return state.probability(bits)


def act_on_near_clifford(
    state: CHFormState, op: GateOp, rng: np.random.Generator | None = None
) -> CHFormState:
    """Apply a Clifford, or stochastically substitute I/S for an RZ-family gate.

    Branch weights are |c|/(|c_I|+|c_S|) over the two-term decomposition; one
    call explores one of the 2^N expansion branches of an N-rotation circuit.
    """
    kind = op.kind
    if kind in CLIFFORD_KINDS:
        return ch_apply_clifford(state, op)
    if kind not in (GateKind.RZ, GateKind.T, GateKind.TDG):
        raise UnsupportedOp("stabilizer", kind.name)
    if kind is GateKind.T:
        theta = math.pi / 4.0
    elif kind is GateKind.TDG:
        theta = TWO_PI - math.pi / 4.0
    else:
        theta = op.param
    q = op.support[0]
    k = _clifford_angle_index(theta)
    if k is not None:
        # global phase dropped: R(k*pi/2) is I, S, Z, or SDG up to phase
        if k == 1:
            state.apply_s(q)
        elif k == 2:
            state.apply_z(q)
        elif k == 3:
            state.apply_sdg(q)
        return state
    if rng is None:
        raise ValueError("non-Clifford rotation requires an rng (trajectory mode)")
    dec = decompose_rz(theta)
    w_i, w_s = abs(dec.c_i), abs(dec.c_s)
    if rng.random() < w_s / (w_i + w_s):
        state.apply_s(q)
    return state


class StabilizerCHBackend(StateBackend):
    """Engine adapter around CHFormState."""

    name = "stabilizer"

    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self.state = CHFormState(n_qubits)

    def apply_op(self, op: GateOp, rng: np.random.Generator | None = None) -> None:
        if op.kind is GateKind.MEASURE:
            return
        act_on_near_clifford(self.state, op, rng)

    def compute_probability(self, bits: str) -> float:
        return self.state.probability(bits)

    def compute_probabilities(self, candidates: Sequence[str]) -> np.ndarray:
        return self.state.probabilities(candidates)

    def clone_state(self) -> "StabilizerCHBackend":
        other = StabilizerCHBackend.__new__(StabilizerCHBackend)
        other.n_qubits = self.n_qubits
        other.state = self.state.copy()
        return other

    def supports(self, kind: GateKind) -> bool:
        return kind in _NEAR_CLIFFORD_KINDS or kind is GateKind.MEASURE

    def needs_trajectories(self, circuit: Circuit) -> bool:
        return any(
            op.kind in (GateKind.T, GateKind.TDG)
            or (op.kind is GateKind.RZ and _clifford_angle_index(op.param) is None)
            for op in circuit.ops
        )
