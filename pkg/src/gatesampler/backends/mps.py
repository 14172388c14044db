"""Open-chain matrix product state backend with a bond-dimension cap.

Site tensors have shape (chi_left, 2, chi_right) with dimension-1 boundary
bonds. The chain is kept in mixed-canonical form: everything left of the
orthogonality center is left-isometric, everything right of it is
right-isometric, so the singular values produced when splitting a two-site
block are the true Schmidt coefficients of that cut. That makes the
bond-cap bookkeeping exact: discarded squared weight is the actual lost
state weight, and renormalizing the retained singular values to unit norm
keeps the represented state a distribution.

Two-qubit gates on adjacent sites merge the pair, apply the 4x4 unitary, and
split by SVD; non-adjacent supports are routed to adjacency with explicit
SWAP gates and routed back.
"""

from __future__ import annotations

import numpy as np

from .. import gates
from ..circuit import GateKind, GateOp
from ..errors import UnsupportedOp
from .base import StateBackend

_SWAP4 = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

#: singular values below this relative level are numerical Schmidt zeros
_RANK_EPS = 1e-12


class MPSBackend(StateBackend):
    name = "mps"

    def __init__(self, n_qubits: int, chi_max: int | None = None):
        if chi_max is not None and chi_max < 1:
            raise ValueError("chi_max must be positive or None")
        self.n_qubits = n_qubits
        self.chi_max = chi_max
        zero = np.zeros((1, 2, 1), dtype=complex)
        zero[0, 0, 0] = 1.0
        self.tensors = [zero.copy() for _ in range(n_qubits)]
        # product-state tensors are isometric from both sides, so any start is valid
        self.center = 0
        self.truncation_error = 0.0

    # -- gate application --------------------------------------------------------

    def apply_op(self, op: GateOp, rng: np.random.Generator | None = None) -> None:
        kind = op.kind
        if kind is GateKind.MEASURE:
            return
        if kind.is_channel:
            raise UnsupportedOp(self.name, kind.name)
        u = gates.unitary(op)
        if len(op.support) == 1:
            # a unitary on the physical index preserves either isometry class
            site = op.support[0]
            self.tensors[site] = np.einsum("ap,lpr->lar", u, self.tensors[site])
        else:
            self._apply_2q(u, op.support)

    def _apply_2q(self, u: np.ndarray, support: tuple[int, int]) -> None:
        a, b = support
        lo, hi = min(a, b), max(a, b)
        if a > b:
            # reorder the 4x4 matrix so index order matches chain order lo,hi
            u = u.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
        # route qubit hi down to site lo+1
        for site in range(hi - 1, lo, -1):
            self._apply_adjacent(_SWAP4, site)
        self._apply_adjacent(u, lo)
        for site in range(lo + 1, hi):
            self._apply_adjacent(_SWAP4, site)

    def _move_center_right(self) -> None:
        c = self.center
        t = self.tensors[c]
        chi_l, _, chi_r = t.shape
        q, r = np.linalg.qr(t.reshape(chi_l * 2, chi_r))
        self.tensors[c] = q.reshape(chi_l, 2, q.shape[1])
        self.tensors[c + 1] = np.tensordot(r, self.tensors[c + 1], axes=(1, 0))
        self.center = c + 1

    def _move_center_left(self) -> None:
        c = self.center
        t = self.tensors[c]
        chi_l, _, chi_r = t.shape
        q, r = np.linalg.qr(t.reshape(chi_l, 2 * chi_r).T)
        self.tensors[c] = q.T.reshape(q.shape[1], 2, chi_r)
        self.tensors[c - 1] = np.tensordot(self.tensors[c - 1], r.T, axes=(2, 0))
        self.center = c - 1

    def _apply_adjacent(self, u: np.ndarray, site: int) -> None:
        """Apply a 4x4 unitary on (site, site+1) via merge, apply, SVD split."""
        while self.center < site:
            self._move_center_right()
        while self.center > site + 1:
            self._move_center_left()
        left, right = self.tensors[site], self.tensors[site + 1]
        chi_l = left.shape[0]
        chi_r = right.shape[2]
        theta = np.tensordot(left, right, axes=(2, 0))  # (chi_l, 2, 2, chi_r)
        theta = np.einsum("abpq,lpqr->labr", u.reshape(2, 2, 2, 2), theta)
        mat = theta.reshape(chi_l * 2, 2 * chi_r)
        uu, sv, vh = np.linalg.svd(mat, full_matrices=False)
        rank = int(np.sum(sv > sv[0] * _RANK_EPS)) or 1
        keep = rank
        if self.chi_max is not None and keep > self.chi_max:
            keep = self.chi_max
            self.truncation_error += float(np.sum(sv[keep:rank] ** 2))
        if keep < len(sv):
            sv = sv[:keep] / np.linalg.norm(sv[:keep])
        self.tensors[site] = uu[:, :keep].reshape(chi_l, 2, keep)
        self.tensors[site + 1] = (sv[:, None] * vh[:keep]).reshape(keep, 2, chi_r)
        self.center = site + 1

    # -- probabilities ------------------------------------------------------------

    def compute_probability(self, bits: str) -> float:
        return float(abs(self.amplitude(bits)) ** 2)

    def amplitude(self, bits: str) -> complex:
        """Select each site's physical index, then contract the bond chain."""
        vec = self.tensors[0][:, int(bits[0]), :][0]
        for site in range(1, self.n_qubits):
            vec = vec @ self.tensors[site][:, int(bits[site]), :]
        return complex(vec[0])

    def amplitude_right_to_left(self, bits: str) -> complex:
        vec = self.tensors[-1][:, int(bits[-1]), :][:, 0]
        for site in range(self.n_qubits - 2, -1, -1):
            vec = self.tensors[site][:, int(bits[site]), :] @ vec
        return complex(vec[0])

    # -- helpers -------------------------------------------------------------------

    def bond_dimensions(self) -> list[int]:
        return [t.shape[2] for t in self.tensors[:-1]]

    def to_dense(self) -> np.ndarray:
        """Full 2^n state vector by contracting the whole chain."""
        acc = self.tensors[0]
        for t in self.tensors[1:]:
            acc = np.tensordot(acc, t, axes=(acc.ndim - 1, 0))
        return acc.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_dense()))

    def clone_state(self) -> "MPSBackend":
        other = MPSBackend.__new__(MPSBackend)
        other.n_qubits = self.n_qubits
        other.chi_max = self.chi_max
        other.tensors = [t.copy() for t in self.tensors]
        other.center = self.center
        other.truncation_error = self.truncation_error
        return other

    def supports(self, kind: GateKind) -> bool:
        return not kind.is_channel


# -- functional surface -------------------------------------------------------------

def mps_initial(n_qubits: int, chi_max: int | None = None) -> MPSBackend:
    return MPSBackend(n_qubits, chi_max=chi_max)


def mps_apply_op(state: MPSBackend, op: GateOp) -> MPSBackend:
    state.apply_op(op)
    return state


def mps_bitstring_probability(state: MPSBackend, bits: str) -> float:
    return state.compute_probability(bits)
