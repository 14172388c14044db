"""Random-circuit generators.

All generators are pure functions of their arguments including the seed.
Moments are dense: every qubit receives exactly one gate per moment, with
disjoint supports inside a moment. None of the generators append a terminal
MEASURE; callers add it when sampling.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .circuit import TWO_PI, Circuit, GateKind, GateOp
from .errors import InvalidSpec
from .sampler import rng_stream

#: Default gate set for `random`-flavor circuits (all backends except the
#: stabilizer one support every kind here).
DEFAULT_GATE_SET = (
    GateKind.H, GateKind.X, GateKind.Y, GateKind.Z, GateKind.S, GateKind.T,
    GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CNOT, GateKind.CZ,
)
CLIFFORD_GATE_SET = (GateKind.H, GateKind.S, GateKind.CNOT)
CLIFFORD_T_GATE_SET = (GateKind.H, GateKind.S, GateKind.CNOT, GateKind.T)


def _make_op(kind: GateKind, support: tuple[int, ...], rng: np.random.Generator) -> GateOp:
    if kind.takes_angle:
        return GateOp(kind, support, param=float(rng.uniform(0.0, TWO_PI)))
    return GateOp(kind, support)


def generate_random_circuit(
    n_qubits: int,
    n_moments: int,
    gate_set: Sequence[GateKind] = DEFAULT_GATE_SET,
    two_qubit_fraction: float = 0.5,
    seed: int = 0,
) -> Circuit:
    """Random circuit of dense moments drawn from ``gate_set``.

    Within a moment, each still-unassigned qubit picks a two-qubit gate with
    probability ``two_qubit_fraction`` (when a partner qubit and a two-qubit
    kind are available) and a one-qubit gate otherwise.
    """
    gate_set = tuple(gate_set)
    if not gate_set:
        raise InvalidSpec("gate_set must be nonempty")
    if n_moments < 0:
        raise InvalidSpec("n_moments must be >= 0")
    one_q = [k for k in gate_set if k.arity == 1 and k.is_unitary]
    two_q = [k for k in gate_set if k.arity == 2]
    if two_q and n_qubits < 2:
        raise InvalidSpec("two-qubit gates require at least 2 qubits")
    if not one_q and not two_q:
        raise InvalidSpec("gate_set contains no unitary gates")

    rng = rng_stream(seed, 0)
    ops: list[GateOp] = []
    for _ in range(n_moments):
        free = list(rng.permutation(n_qubits))
        while free:
            q = int(free.pop())
            use_two = (
                two_q
                and free
                and (not one_q or rng.random() < two_qubit_fraction)
            )
            if use_two:
                partner = int(free.pop(int(rng.integers(len(free)))))
                kind = two_q[int(rng.integers(len(two_q)))]
                ops.append(_make_op(kind, (q, partner), rng))
            else:
                kind = one_q[int(rng.integers(len(one_q)))]
                ops.append(_make_op(kind, (q,), rng))
    return Circuit(n_qubits, tuple(ops))


def generate_ghz_random_cnot(n_qubits: int, seed: int = 0) -> Circuit:
    """One H on a random qubit, then a random spanning CNOT sequence.

    The final state is the n-qubit GHZ state regardless of seed: each CNOT
    has its control inside the already-entangled set and its target outside.
    """
    if n_qubits < 2:
        raise InvalidSpec("GHZ circuits need at least 2 qubits")
    rng = rng_stream(seed, 0)
    start = int(rng.integers(n_qubits))
    reached = [start]
    pending = [q for q in range(n_qubits) if q != start]
    ops = [GateOp(GateKind.H, (start,))]
    while pending:
        control = reached[int(rng.integers(len(reached)))]
        target = pending.pop(int(rng.integers(len(pending))))
        ops.append(GateOp(GateKind.CNOT, (control, target)))
        reached.append(target)
    return Circuit(n_qubits, tuple(ops))


def generate_fixed_cnot_circuit(
    n_qubits: int,
    n_single: int,
    n_cnots: int,
    seed: int = 0,
) -> Circuit:
    """Fixed total gate count: ``n_single`` random 1q gates + ``n_cnots`` CNOTs.

    Used by the width-scaling benchmarks where the entanglement budget must
    stay constant as the register grows; CNOTs land on random adjacent pairs
    so the cost of a point reflects the budget, not qubit routing.
    """
    if n_cnots > 0 and n_qubits < 2:
        raise InvalidSpec("CNOTs require at least 2 qubits")
    rng = rng_stream(seed, 0)
    one_q = [k for k in DEFAULT_GATE_SET if k.arity == 1]
    ops: list[GateOp] = []
    for _ in range(n_single):
        kind = one_q[int(rng.integers(len(one_q)))]
        ops.append(_make_op(kind, (int(rng.integers(n_qubits)),), rng))
    for _ in range(n_cnots):
        a = int(rng.integers(n_qubits - 1))
        pair = (a, a + 1) if rng.random() < 0.5 else (a + 1, a)
        ops.append(GateOp(GateKind.CNOT, pair))
    order = rng.permutation(len(ops))
    return Circuit(n_qubits, tuple(ops[i] for i in order))


def insert_t_gates(circuit: Circuit, n_t: int, seed: int = 0) -> Circuit:
    """Replace ``n_t`` randomly chosen single-qubit gates with T gates."""
    rng = rng_stream(seed, 0)
    slots = [i for i, op in enumerate(circuit.ops)
             if op.kind.arity == 1 and op.kind.is_unitary]
    if len(slots) < n_t:
        raise InvalidSpec(f"circuit has only {len(slots)} single-qubit gates")
    chosen = set(int(i) for i in rng.choice(slots, size=n_t, replace=False))
    ops = [
        GateOp(GateKind.T, op.support) if i in chosen else op
        for i, op in enumerate(circuit.ops)
    ]
    return Circuit(circuit.n_qubits, tuple(ops))
