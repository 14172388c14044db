"""QAOA MaxCut demonstration.

The cost layer realizes exp(-i*gamma*Z_i Z_j) per edge as
CNOT(i,j) . RZ(2*gamma)@j . CNOT(i,j); the mixer applies RX(2*beta) on every
qubit. The parameter search sweeps a uniform grid over gamma in [0, pi) and
beta in [0, pi/2), picks the point with the highest mean sampled cut (ties:
first in row-major gamma-then-beta order), and reruns it with more shots.

Determinism: the graph is drawn from rng stream (seed, 0); grid point k
samples with integer seed seed+1+k; the final run uses seed+1+grid_points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, GateKind, GateOp
from .sampler import BackendFactory, SampleResult, rng_stream, sample_gate_by_gate


@dataclass(frozen=True)
class MaxCutInstance:
    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    seed: int
    edge_prob: float

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-loop in edge list")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")


@dataclass(frozen=True)
class QaoaParams:
    gamma: float
    beta: float
    layers: int = 1

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError("layers must be >= 1")


def generate_erdos_renyi(n_nodes: int, edge_prob: float, seed: int) -> MaxCutInstance:
    rng = rng_stream(seed, 0)
    edges = tuple(
        (i, j)
        for i in range(n_nodes)
        for j in range(i + 1, n_nodes)
        if rng.random() < edge_prob
    )
    return MaxCutInstance(n_nodes, edges, seed, edge_prob)


def cut_value(instance: MaxCutInstance, bits: str) -> int:
    """Number of edges whose endpoints fall on opposite sides."""
    return sum(bits[i] != bits[j] for i, j in instance.edges)


def brute_force_max_cut(instance: MaxCutInstance) -> int:
    """Exhaustive 2^n enumeration; the validation oracle for small graphs."""
    if instance.n_nodes > 20:
        raise ValueError("brute force limited to 20 nodes")
    best = 0
    for assignment in range(1 << instance.n_nodes):
        bits = format(assignment, f"0{instance.n_nodes}b")
        best = max(best, cut_value(instance, bits))
    return best


def build_qaoa_maxcut_circuit(instance: MaxCutInstance, params: QaoaParams) -> Circuit:
    ops: list[GateOp] = [GateOp(GateKind.H, (q,)) for q in range(instance.n_nodes)]
    for _ in range(params.layers):
        for i, j in sorted(instance.edges):
            ops.append(GateOp(GateKind.CNOT, (i, j)))
            ops.append(GateOp(GateKind.RZ, (j,), param=2.0 * params.gamma))
            ops.append(GateOp(GateKind.CNOT, (i, j)))
        for q in range(instance.n_nodes):
            ops.append(GateOp(GateKind.RX, (q,), param=2.0 * params.beta))
    ops.append(GateOp(GateKind.MEASURE, tuple(range(instance.n_nodes))))
    return Circuit(instance.n_nodes, tuple(ops))


def mean_cut(instance: MaxCutInstance, result: SampleResult) -> float:
    total = sum(count * cut_value(instance, bits) for bits, count in result.counts.items())
    return total / result.shots


def qaoa_search(
    instance: MaxCutInstance,
    backend_factory: BackendFactory,
    layers: int = 1,
    grid_size: int = 8,
    sweep_shots: int = 100,
    final_shots: int = 1000,
    seed: int = 0,
    backend_name: str = "mps",
) -> dict:
    """Grid-search (gamma, beta), rerun the best point, report the best cut."""
    sweep: list[list[float]] = []
    best = None  # (mean, gamma, beta)
    point = 0
    for gi in range(grid_size):
        gamma = gi * math.pi / grid_size
        row = []
        for bi in range(grid_size):
            beta = bi * (math.pi / 2.0) / grid_size
            circuit = build_qaoa_maxcut_circuit(instance, QaoaParams(gamma, beta, layers))
            result = sample_gate_by_gate(circuit, backend_factory, sweep_shots,
                                         seed=seed + 1 + point)
            score = mean_cut(instance, result)
            row.append(score)
            if best is None or score > best[0]:
                best = (score, gamma, beta)
            point += 1
        sweep.append(row)

    _, gamma, beta = best
    circuit = build_qaoa_maxcut_circuit(instance, QaoaParams(gamma, beta, layers))
    final = sample_gate_by_gate(circuit, backend_factory, final_shots,
                                seed=seed + 1 + grid_size * grid_size)
    best_bits = max(final.counts, key=lambda b: (cut_value(instance, b), b))
    report = {
        "graph": {
            "n_nodes": instance.n_nodes,
            "edge_prob": instance.edge_prob,
            "seed": instance.seed,
            "edges": [list(e) for e in sorted(instance.edges)],
        },
        "layers": layers,
        "grid_size": grid_size,
        "sweep_shots": sweep_shots,
        "final_shots": final_shots,
        "backend": backend_name,
        "sweep_mean_cuts": sweep,
        "best_params": {"gamma": gamma, "beta": beta},
        "best_bitstring": best_bits,
        "best_cut": cut_value(instance, best_bits),
        "mean_cut": mean_cut(instance, final),
        "max_cut_brute_force": (
            brute_force_max_cut(instance) if instance.n_nodes <= 20 else None
        ),
    }
    return report
