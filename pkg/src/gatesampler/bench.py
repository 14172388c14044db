"""Benchmark sweeps over depth, width, shots, or CNOT count.

Each sweep point runs ``trials`` independent circuits and records one CSV row
per trial. Timing covers state evolution and sampling only (circuit
construction and optimization are excluded). Configurations a backend cannot
feasibly run (dense representations past 26 qubits) are recorded as rows with
``skipped`` in the seconds column.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .circuit import Circuit
from .errors import InvalidSpec
from .generators import (
    CLIFFORD_GATE_SET,
    CLIFFORD_T_GATE_SET,
    generate_fixed_cnot_circuit,
    generate_ghz_random_cnot,
    generate_random_circuit,
)
from .optimizer import optimize_circuit
from .backends.base import backend_factory
from .sampler import sample_gate_by_gate, sample_qubit_by_qubit

CSV_HEADER = "backend,sampler,n_qubits,depth,shots,seconds,seed"

AXES = ("depth", "width", "shots", "cnot-count")
GENERATORS = ("random", "clifford", "clifford-t", "ghz-random", "fixed-cnot")

#: dense simulation is infeasible beyond this width
DENSE_QUBIT_LIMIT = 26


@dataclass
class BenchRecord:
    backend: str
    sampler: str
    n_qubits: int
    depth: int
    shots: int
    seconds: float | None  # None = skipped (infeasible configuration)
    seed: int

    def csv_row(self) -> str:
        seconds = "skipped" if self.seconds is None else f"{self.seconds:.6f}"
        return (f"{self.backend},{self.sampler},{self.n_qubits},{self.depth},"
                f"{self.shots},{seconds},{self.seed}")


def build_bench_circuit(generator: str, n_qubits: int, depth: int,
                        two_qubit_fraction: float, cnots: int, seed: int) -> Circuit:
    if generator == "random":
        return generate_random_circuit(n_qubits, depth,
                                       two_qubit_fraction=two_qubit_fraction, seed=seed)
    if generator == "clifford":
        return generate_random_circuit(n_qubits, depth, CLIFFORD_GATE_SET,
                                       two_qubit_fraction, seed=seed)
    if generator == "clifford-t":
        return generate_random_circuit(n_qubits, depth, CLIFFORD_T_GATE_SET,
                                       two_qubit_fraction, seed=seed)
    if generator == "ghz-random":
        return generate_ghz_random_cnot(n_qubits, seed=seed)
    if generator == "fixed-cnot":
        # depth counts single-qubit gates here; the CNOT budget is fixed
        return generate_fixed_cnot_circuit(n_qubits, depth, cnots, seed=seed)
    raise InvalidSpec(f"unknown generator {generator!r}")


def run_sweep(
    axis: str,
    values: list[int],
    *,
    generator: str = "random",
    qubits: int = 6,
    depth: int = 20,
    shots: int = 1000,
    backend: str = "statevector",
    sampler: str = "gate-by-gate",
    two_qubit_fraction: float = 0.3,
    cnots: int = 8,
    trials: int = 1,
    seed: int = 0,
    chi_max: int | None = None,
    optimize: bool = False,
) -> list[BenchRecord]:
    if axis not in AXES:
        raise InvalidSpec(f"axis must be one of {AXES}")
    records = []
    for point, value in enumerate(values):
        n_qubits, n_depth, n_shots, n_cnots = qubits, depth, shots, cnots
        if axis == "depth":
            n_depth = value
        elif axis == "width":
            n_qubits = value
        elif axis == "shots":
            n_shots = value
        else:
            n_cnots = value
        for trial in range(trials):
            circuit_seed = seed + 101 * point + trial
            label = backend if sampler == "gate-by-gate" else "statevector"
            dense = sampler == "qubit-by-qubit" or backend == "statevector"
            if dense and n_qubits > DENSE_QUBIT_LIMIT:
                records.append(BenchRecord(label, sampler, n_qubits, n_depth,
                                           n_shots, None, circuit_seed))
                continue
            circuit = build_bench_circuit(generator, n_qubits, n_depth,
                                          two_qubit_fraction, n_cnots, circuit_seed)
            circuit = circuit.with_terminal_measure()
            if optimize:
                circuit = optimize_circuit(circuit)
            if sampler == "qubit-by-qubit":
                result = sample_qubit_by_qubit(circuit, n_shots, seed=circuit_seed)
            else:
                factory = backend_factory(backend, chi_max=chi_max)
                result = sample_gate_by_gate(circuit, factory, n_shots, seed=circuit_seed)
            records.append(BenchRecord(label, sampler, n_qubits, n_depth,
                                       n_shots, result.runtime_s, circuit_seed))
    return records


def to_csv(records: list[BenchRecord]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for record in records:
        out.write(record.csv_row() + "\n")
    return out.getvalue()
