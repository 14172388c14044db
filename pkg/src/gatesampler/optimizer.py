"""Single-qubit gate merging.

Maximal runs of consecutive one-qubit unitaries on the same qubit (with no
intervening op touching that qubit) collapse into one MATRIX1Q op, so the
sampler updates the bitstring once per run instead of once per gate.
Two-qubit gates, channels, and MEASUREs are barriers. Runs of length one are
left untouched, so the op count never increases and backends that cannot
apply MATRIX1Q still accept unmergeable circuits.
"""

from __future__ import annotations

import numpy as np

from . import gates
from .circuit import Circuit, GateKind, GateOp


def _merge(run: list[GateOp]) -> GateOp:
    if len(run) == 1:
        return run[0]
    acc = np.eye(2, dtype=complex)
    for op in run:
        acc = gates.unitary(op) @ acc
    return GateOp(GateKind.MATRIX1Q, run[0].support, matrix=tuple(acc.reshape(-1)))


def optimize_circuit(circuit: Circuit) -> Circuit:
    """Merge single-qubit runs; the output distribution is unchanged."""
    pending: dict[int, list[GateOp]] = {}
    out: list[GateOp] = []

    def flush(qubit: int) -> None:
        run = pending.pop(qubit, None)
        if run:
            out.append(_merge(run))

    for op in circuit.ops:
        if op.kind.arity == 1 and op.kind.is_unitary:
            pending.setdefault(op.support[0], []).append(op)
            continue
        for q in (op.support if op.support else range(circuit.n_qubits)):
            flush(q)
        out.append(op)
    for q in sorted(pending):
        flush(q)
    return Circuit(circuit.n_qubits, tuple(out))
