"""Unitary matrices for the supported gate kinds.

Two-qubit matrices use basis index 2*b(support[0]) + b(support[1]), matching
the package-wide big-endian bit ordering.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import GateKind, GateOp

_SQRT2_INV = 1.0 / math.sqrt(2.0)

_FIXED = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex),
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]], dtype=complex
    )


def unitary(op: GateOp) -> np.ndarray:
    """Dense matrix of a unitary op (2x2 or 4x4)."""
    kind = op.kind
    if kind in _FIXED:
        return _FIXED[kind]
    if kind is GateKind.RX:
        return rx(op.param)
    if kind is GateKind.RY:
        return ry(op.param)
    if kind is GateKind.RZ:
        return rz(op.param)
    if kind is GateKind.MATRIX1Q:
        return np.array(op.matrix, dtype=complex).reshape(2, 2)
    if kind is GateKind.MATRIX2Q:
        return np.array(op.matrix, dtype=complex).reshape(4, 4)
    raise ValueError(f"{kind.name} has no unitary matrix")
