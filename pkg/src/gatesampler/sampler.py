"""Gate-by-gate sampling engine plus the qubit-by-qubit baseline.

The gate-by-gate loop walks the circuit once, keeping a candidate bitstring
per shot. After each gate the candidates over the gate's support are scored
with the backend's compute_probability, renormalized, and sampled.

Deterministic backends serve all shots with a single state evolution through
a multiplicity map {bitstring: count}; stochastic evolutions (channels,
mid-circuit measurement, stochastic gate decompositions) fall back to one
independent trajectory per shot, each with its own (seed, shot) RNG stream.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .circuit import Circuit, GateKind, GateOp, zeros
from .errors import NumericalUnderflow, UnsupportedOp
from .backends.base import StateBackend
from .backends.statevector import StateVectorBackend

#: probabilities whose candidate-set total falls below this abort the run
UNDERFLOW_FLOOR = 1e-300

BackendFactory = Callable[[int], StateBackend]


def rng_stream(seed: int, index: int) -> np.random.Generator:
    """Deterministic generator for (master seed, stream index)."""
    return np.random.default_rng((seed, index))


@dataclass
class SampleResult:
    """Measurement counts for one sampling run."""

    counts: dict[str, int]
    shots: int
    seed: int
    runtime_s: float
    backend: str

    def to_json(self) -> str:
        payload = {
            "counts": dict(sorted(self.counts.items())),
            "shots": self.shots,
            "seed": self.seed,
            "runtime_s": self.runtime_s,
            "backend": self.backend,
        }
        return json.dumps(payload, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["bitstring,count"]
        lines += [f"{b},{c}" for b, c in sorted(self.counts.items())]
        return "\n".join(lines) + "\n"

    def distribution(self) -> dict[str, float]:
        return {b: c / self.shots for b, c in self.counts.items()}


def candidates(bits: str, support: tuple[int, ...] | list[int]) -> list[str]:
    """All bitstrings agreeing with ``bits`` off-support.

    Enumerated in increasing integer order of the support bits (support
    sorted ascending, first support qubit most significant). Includes
    ``bits`` itself.
    """
    order = sorted(support)
    if not order:
        return [bits]
    if len(order) == 1:
        q = order[0]
        return [bits[:q] + "0" + bits[q + 1:], bits[:q] + "1" + bits[q + 1:]]
    chars = list(bits)
    out = []
    for value in range(1 << len(order)):
        for pos, q in enumerate(order):
            chars[q] = "1" if (value >> (len(order) - 1 - pos)) & 1 else "0"
        out.append("".join(chars))
    return out


def _check_supported(circuit: Circuit, backend: StateBackend) -> None:
    for op in circuit.ops:
        if not backend.supports(op.kind):
            raise UnsupportedOp(backend.name, op.kind.name)
    for i in circuit.mid_circuit_measures():
        if len(circuit.ops[i].support) != 1:
            raise UnsupportedOp(backend.name, "MEASURE", "mid-circuit MEASURE must be single-qubit")
        if not backend.supports_mid_measure:
            raise UnsupportedOp(backend.name, "MEASURE", "mid-circuit MEASURE needs state projection")


def _is_deterministic(circuit: Circuit, backend: StateBackend) -> bool:
    if backend.needs_trajectories(circuit):
        return False
    if any(op.kind.is_channel for op in circuit.ops):
        return False
    return not circuit.mid_circuit_measures()


def _update_candidates(backend: StateBackend, bits: str, op: GateOp,
                       rng: np.random.Generator, op_index: int) -> str:
    cands = candidates(bits, op.support)
    probs = np.asarray(backend.compute_probabilities(cands), dtype=float)
    total = float(probs.sum())
    if total < UNDERFLOW_FLOOR:
        raise NumericalUnderflow(
            f"all candidate probabilities underflow at op {op_index} ({op!r})"
        )
    r = rng.random() * total
    acc = 0.0
    for cand, p in zip(cands, probs):
        acc += p
        if r < acc:
            return cand
    return cands[-1]


def multiplicity_steps(
    circuit: Circuit, backend: StateBackend, shots: int, seed: int
) -> Iterator[tuple[GateOp, dict[str, int]]]:
    """Single-evolution sampling; yields the live multiplicity map per gate.

    The map never holds more than min(shots, 2^n) keys and its counts always
    sum to ``shots``. Keys are visited in sorted order so results do not
    depend on dict insertion order.
    """
    rng = rng_stream(seed, 0)
    mmap: dict[str, int] = {zeros(circuit.n_qubits): shots}
    for op_index, op in enumerate(circuit.ops):
        if op.kind is GateKind.MEASURE:
            continue
        backend.apply_op(op)
        updated: dict[str, int] = {}
        for bits in sorted(mmap):
            cands = candidates(bits, op.support)
            probs = np.asarray(backend.compute_probabilities(cands), dtype=float)
            total = float(probs.sum())
            if total < UNDERFLOW_FLOOR:
                raise NumericalUnderflow(
                    f"all candidate probabilities underflow at op {op_index} ({op!r})"
                )
            draws = rng.multinomial(mmap[bits], probs / total)
            for cand, count in zip(cands, draws):
                if count:
                    updated[cand] = updated.get(cand, 0) + int(count)
        mmap = updated
        yield op, mmap


def _sample_multiplicity(circuit: Circuit, backend: StateBackend,
                         shots: int, seed: int) -> dict[str, int]:
    mmap = {zeros(circuit.n_qubits): shots}
    for _, mmap in multiplicity_steps(circuit, backend, shots, seed):
        pass
    return mmap


def _run_trajectory(circuit: Circuit, factory: BackendFactory,
                    rng: np.random.Generator) -> str:
    state = factory(circuit.n_qubits)
    bits = zeros(circuit.n_qubits)
    last = len(circuit.ops) - 1
    for op_index, op in enumerate(circuit.ops):
        if op.kind is GateKind.MEASURE:
            if op_index == last:
                continue
            # mid-circuit single-qubit measurement: sample the bit, fix it,
            # project the state onto the outcome
            bits = _update_candidates(state, bits, op, rng, op_index)
            qubit = op.support[0]
            state.project_qubit(qubit, int(bits[qubit]))
            continue
        state.apply_op(op, rng)
        bits = _update_candidates(state, bits, op, rng, op_index)
    return bits


def _sample_per_shot(circuit: Circuit, factory: BackendFactory,
                     shots: int, seed: int) -> dict[str, int]:
    counts: dict[str, int] = {}
    for shot in range(shots):
        bits = _run_trajectory(circuit, factory, rng_stream(seed, shot))
        counts[bits] = counts.get(bits, 0) + 1
    return counts


def sample_gate_by_gate(circuit: Circuit, backend_factory: BackendFactory,
                        shots: int, seed: int = 0) -> SampleResult:
    """Sample ``shots`` bitstrings by walking the circuit gate by gate."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    backend = backend_factory(circuit.n_qubits)
    _check_supported(circuit, backend)
    start = time.perf_counter()
    if _is_deterministic(circuit, backend):
        counts = _sample_multiplicity(circuit, backend, shots, seed)
    else:
        counts = _sample_per_shot(circuit, backend_factory, shots, seed)
    runtime = time.perf_counter() - start
    return SampleResult(counts, shots, seed, runtime, backend.name)


def sample_with_trajectories(circuit: Circuit, backend_factory: BackendFactory,
                             shots: int, seed: int = 0) -> SampleResult:
    """One independent state evolution per shot (channels, mid-measure)."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    backend = backend_factory(circuit.n_qubits)
    _check_supported(circuit, backend)
    start = time.perf_counter()
    counts = _sample_per_shot(circuit, backend_factory, shots, seed)
    runtime = time.perf_counter() - start
    return SampleResult(counts, shots, seed, runtime, backend.name)


def sample_qubit_by_qubit(circuit: Circuit, shots: int, seed: int = 0) -> SampleResult:
    """Baseline: evolve a dense state fully, then sample conditional marginals."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    for op in circuit.ops:
        if op.kind.is_channel:
            raise UnsupportedOp("qubit-by-qubit", op.kind.name)
    if circuit.mid_circuit_measures():
        raise UnsupportedOp("qubit-by-qubit", "MEASURE", "mid-circuit MEASURE unsupported")
    start = time.perf_counter()
    state = StateVectorBackend(circuit.n_qubits)
    for op in circuit.ops:
        state.apply_op(op)
    probs = np.abs(state.amplitudes) ** 2
    rng = rng_stream(seed, 0)
    counts: dict[str, int] = {}
    for _ in range(shots):
        arr = probs
        bits = []
        for _q in range(circuit.n_qubits):
            halves = arr.reshape(2, -1)
            p0 = float(halves[0].sum())
            p1 = float(halves[1].sum())
            bit = int(rng.random() * (p0 + p1) >= p0)
            bits.append("1" if bit else "0")
            arr = halves[bit]
        key = "".join(bits)
        counts[key] = counts.get(key, 0) + 1
    runtime = time.perf_counter() - start
    return SampleResult(counts, shots, seed, runtime, "statevector")
