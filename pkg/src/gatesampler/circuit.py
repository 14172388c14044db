"""Circuit intermediate representation.

Bit-ordering convention used everywhere in this package: qubit 0 is the
leftmost character of a rendered bitstring, and the integer encoding of a
bitstring is big-endian in qubit index (so "10" on two qubits is index 2).
Bitstrings are plain ``str`` objects of '0'/'1' characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

TWO_PI = 2.0 * math.pi

#: Kinds that take a rotation angle parameter (radians, stored in [0, 2pi)).
ROTATION_KINDS = frozenset({"RX", "RY", "RZ"})
#: Kinds that take a probability parameter.
CHANNEL_KINDS = frozenset({"CHANNEL_BITFLIP", "CHANNEL_DEPOLARIZE"})


class GateKind(Enum):
    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cx"
    CZ = "cz"
    SWAP = "swap"
    MEASURE = "measure"
    CHANNEL_BITFLIP = "bitflip"
    CHANNEL_DEPOLARIZE = "depolarize"
    MATRIX1Q = "matrix1q"
    MATRIX2Q = "matrix2q"

    @property
    def arity(self) -> int:
        if self in (GateKind.CNOT, GateKind.CZ, GateKind.SWAP, GateKind.MATRIX2Q):
            return 2
        if self is GateKind.MEASURE:
            return 0  # variable; MEASURE may list any number of qubits
        return 1

    @property
    def takes_angle(self) -> bool:
        return self.name in ROTATION_KINDS

    @property
    def takes_prob(self) -> bool:
        return self.name in CHANNEL_KINDS

    @property
    def is_channel(self) -> bool:
        return self.name in CHANNEL_KINDS

    @property
    def is_unitary(self) -> bool:
        return not self.is_channel and self is not GateKind.MEASURE


def _check_unitary(entries: tuple[complex, ...], dim: int) -> None:
    # U Udag = I within 1e-10, checked entrywise without numpy so the IR
    # stays dependency-free
    rows = [entries[r * dim:(r + 1) * dim] for r in range(dim)]
    for i in range(dim):
        for j in range(dim):
            acc = sum(rows[i][k] * rows[j][k].conjugate() for k in range(dim))
            want = 1.0 if i == j else 0.0
            if abs(acc - want) > 1e-10:
                raise ValueError("matrix entries are not unitary within 1e-10")


@dataclass(frozen=True)
class GateOp:
    """A single gate application: kind + ordered support qubits.

    ``param`` holds the rotation angle (radians) or channel probability,
    depending on the kind. ``matrix`` holds row-major entries for
    MATRIX1Q/MATRIX2Q.
    """

    kind: GateKind
    support: tuple[int, ...]
    param: float | None = None
    matrix: tuple[complex, ...] | None = None

    def __post_init__(self):
        support = tuple(self.support)
        object.__setattr__(self, "support", support)
        if len(set(support)) != len(support):
            raise ValueError(f"duplicate qubits in support {support}")
        if any(q < 0 for q in support):
            raise ValueError(f"negative qubit index in {support}")
        kind = self.kind
        if kind is GateKind.MEASURE:
            if not support:
                raise ValueError("MEASURE needs at least one qubit")
        elif len(support) != kind.arity:
            raise ValueError(f"{kind.name} acts on {kind.arity} qubit(s), got {support}")
        if kind.takes_angle:
            if self.param is None:
                raise ValueError(f"{kind.name} requires an angle")
            object.__setattr__(self, "param", float(self.param) % TWO_PI)
        elif kind.takes_prob:
            if self.param is None or not 0.0 <= self.param <= 1.0:
                raise ValueError(f"{kind.name} requires a probability in [0, 1]")
        elif self.param is not None:
            raise ValueError(f"{kind.name} takes no parameter")
        if kind in (GateKind.MATRIX1Q, GateKind.MATRIX2Q):
            dim = 2 if kind is GateKind.MATRIX1Q else 4
            if self.matrix is None or len(self.matrix) != dim * dim:
                raise ValueError(f"{kind.name} requires {dim * dim} entries")
            entries = tuple(complex(x) for x in self.matrix)
            object.__setattr__(self, "matrix", entries)
            _check_unitary(entries, dim)
        elif self.matrix is not None:
            raise ValueError(f"{kind.name} takes no matrix")

    def __repr__(self):
        extra = ""
        if self.param is not None:
            extra = f", {self.param:.6g}"
        elif self.matrix is not None:
            extra = ", <matrix>"
        return f"{self.kind.name}@{self.support}{extra}"


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``n_qubits``.

    A multi-qubit MEASURE may only appear as the final op (the terminal
    measurement). Single-qubit MEASURE ops may appear mid-circuit; the
    sampling engine decides which backends support them.
    """

    n_qubits: int
    ops: tuple[GateOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        ops = tuple(self.ops)
        object.__setattr__(self, "ops", ops)
        for i, op in enumerate(ops):
            if any(q >= self.n_qubits for q in op.support):
                raise ValueError(f"op {op!r} addresses qubit outside 0..{self.n_qubits - 1}")
            if op.kind is GateKind.MEASURE and len(op.support) > 1 and i != len(ops) - 1:
                raise ValueError("multi-qubit MEASURE must be the final op")

    @property
    def has_terminal_measure(self) -> bool:
        return bool(self.ops) and self.ops[-1].kind is GateKind.MEASURE

    def mid_circuit_measures(self) -> list[int]:
        """Indices of MEASURE ops that are not the terminal one."""
        return [i for i, op in enumerate(self.ops[:-1]) if op.kind is GateKind.MEASURE]

    def with_terminal_measure(self) -> "Circuit":
        """A copy with a terminal MEASURE over all qubits (no-op if present)."""
        if self.has_terminal_measure:
            return self
        measure = GateOp(GateKind.MEASURE, tuple(range(self.n_qubits)))
        return Circuit(self.n_qubits, self.ops + (measure,))


# -- bitstring helpers --------------------------------------------------------

def zeros(n: int) -> str:
    return "0" * n


def index_of(bits: str) -> int:
    """Big-endian integer encoding (qubit 0 = most significant)."""
    return int(bits, 2)


def bits_of(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def all_bitstrings(n: int) -> list[str]:
    return [bits_of(i, n) for i in range(1 << n)]


# -- small named-circuit builders ---------------------------------------------

def ghz_circuit(n_qubits: int) -> Circuit:
    """H on qubit 0 followed by a CNOT chain; no terminal measurement."""
    ops = [GateOp(GateKind.H, (0,))]
    ops += [GateOp(GateKind.CNOT, (i, i + 1)) for i in range(n_qubits - 1)]
    return Circuit(n_qubits, tuple(ops))


def rz_op(qubit: int, theta: float) -> GateOp:
    return GateOp(GateKind.RZ, (qubit,), param=theta)


def matrix1q_op(qubit: int, entries) -> GateOp:
    flat = tuple(complex(x) for x in entries)
    return GateOp(GateKind.MATRIX1Q, (qubit,), matrix=flat)


def is_clifford_angle(theta: float, tol: float = 1e-12) -> bool:
    """True when theta is a multiple of pi/2 (mod 2pi) within tol."""
    r = (theta % TWO_PI) % (math.pi / 2)
    return min(r, math.pi / 2 - r) <= tol


__all__ = [
    "GateKind",
    "GateOp",
    "Circuit",
    "zeros",
    "index_of",
    "bits_of",
    "all_bitstrings",
    "ghz_circuit",
    "rz_op",
    "matrix1q_op",
    "is_clifford_angle",
    "TWO_PI",
]
