"""Acceptance suite: the package's end-to-end guarantees, one test each.

Every tolerance is pinned here, not computed at runtime. A conftest hook
prints one pass/fail line per test. The near-Clifford overlap tests use
pinned seeds; the qualitative properties (monotone convergence, degradation
with added T gates) hold honestly for these seeds rather than being tuned to
mask failures.
"""

import json
import time

import numpy as np
import pytest

from gatesampler.backends import MPSBackend, StabilizerCHBackend, StateVectorBackend
from gatesampler.backends.chform import ch_initial, ch_apply_clifford, decompose_rz
from gatesampler.bench import CSV_HEADER
from gatesampler.circuit import GateKind, GateOp, all_bitstrings, ghz_circuit
from gatesampler.cli import main as cli_main
from gatesampler.generators import (
    CLIFFORD_GATE_SET,
    generate_fixed_cnot_circuit,
    generate_ghz_random_cnot,
    generate_random_circuit,
    insert_t_gates,
)
from gatesampler.optimizer import optimize_circuit
from gatesampler.qaoa import generate_erdos_renyi, qaoa_search
from gatesampler.qasm import emit_qasm
from gatesampler.sampler import (
    multiplicity_steps,
    rng_stream,
    sample_gate_by_gate,
    sample_qubit_by_qubit,
)

from chform_oracle import gf2_invertible, reconstruct_dense_fast
from oracle import full_operator, oracle_distribution, oracle_state, tvd

BACKENDS = {
    "statevector": StateVectorBackend,
    "stabilizer": StabilizerCHBackend,
    "mps": MPSBackend,
}


def overlap(counts: dict, exact: np.ndarray, shots: int, n: int) -> float:
    emp = np.zeros(1 << n)
    for bits, c in counts.items():
        emp[int(bits, 2)] = c / shots
    return float(np.minimum(emp, exact).sum())


def empirical(counts: dict, shots: int, n: int) -> np.ndarray:
    arr = np.zeros(1 << n)
    for bits, c in counts.items():
        arr[int(bits, 2)] = c / shots
    return arr


# -- 1. GHZ correctness (every backend, < 1 s each) --------------------------------

def test_01_ghz_all_backends():
    circuit = ghz_circuit(2).with_terminal_measure()
    for name, factory in BACKENDS.items():
        result = sample_gate_by_gate(circuit, factory, shots=1000, seed=11)
        assert set(result.counts) <= {"00", "11"}, name
        assert 400 <= result.counts["00"] <= 600, name
        assert 400 <= result.counts["11"] <= 600, name
        assert result.runtime_s < 1.0, name


# -- 2+3. sampler soundness and cross-sampler agreement -----------------------------

_SOUNDNESS: dict = {}


def _soundness_runs():
    if not _SOUNDNESS:
        circuits = [generate_random_circuit(5, 20, seed=s) for s in range(20)]
        start = time.perf_counter()
        results = [
            sample_gate_by_gate(c, StateVectorBackend, shots=20000, seed=100 + i)
            for i, c in enumerate(circuits)
        ]
        _SOUNDNESS["elapsed"] = time.perf_counter() - start
        _SOUNDNESS["circuits"] = circuits
        _SOUNDNESS["results"] = results
    return _SOUNDNESS


def test_02_sampler_soundness():
    runs = _soundness_runs()
    for circuit, result in zip(runs["circuits"], runs["results"]):
        exact = oracle_distribution(circuit)
        assert tvd(empirical(result.counts, 20000, 5), exact) < 0.03
    assert runs["elapsed"] < 30.0


def test_03_cross_sampler_agreement():
    runs = _soundness_runs()
    for i, (circuit, gbg) in enumerate(zip(runs["circuits"], runs["results"])):
        qbq = sample_qubit_by_qubit(circuit, shots=20000, seed=500 + i)
        assert tvd(empirical(gbg.counts, 20000, 5),
                   empirical(qbq.counts, 20000, 5)) < 0.05


# -- 4. stabilizer oracle equivalence ------------------------------------------------

def _random_clifford_ops(n, n_ops, rng):
    kinds = (GateKind.H, GateKind.X, GateKind.Y, GateKind.Z, GateKind.S,
             GateKind.SDG, GateKind.CNOT, GateKind.CZ, GateKind.SWAP)
    ops = []
    while len(ops) < n_ops:
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind.arity == 2:
            if n < 2:
                continue
            a, b = rng.choice(n, size=2, replace=False)
            ops.append(GateOp(kind, (int(a), int(b))))
        else:
            ops.append(GateOp(kind, (int(rng.integers(n)),)))
    return ops


def test_04_stabilizer_oracle_equivalence():
    rng = rng_stream(404, 0)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        depth = int(rng.integers(20, 201))
        ops = _random_clifford_ops(n, depth, rng)
        state = ch_initial(n)
        dense = np.zeros(1 << n, dtype=complex)
        dense[0] = 1.0
        for op in ops:
            ch_apply_clifford(state, op)
            dense = full_operator(op, n) @ dense
            np.testing.assert_allclose(reconstruct_dense_fast(state), dense, atol=1e-10)
            assert gf2_invertible(state.F)
            assert gf2_invertible(state.G)
        probs = np.array([state.probability(b) for b in all_bitstrings(n)])
        np.testing.assert_allclose(probs, np.abs(dense) ** 2, atol=1e-10)


# -- 5. Rz decomposition identity ----------------------------------------------------

def test_05_rz_decomposition_identity():
    ident = np.eye(2)
    s_mat = np.diag([1.0, 1.0j])

    def rz(theta):
        return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])

    rng = rng_stream(505, 0)
    for theta in rng.uniform(0.0, 2 * np.pi, size=1000):
        dec = decompose_rz(float(theta))
        np.testing.assert_allclose(dec.c_i * ident + dec.c_s * s_mat, rz(theta),
                                   atol=1e-12)
    zero = decompose_rz(0.0)
    assert zero.c_i == 1.0 and zero.c_s == 0.0
    quarter = decompose_rz(np.pi / 2)
    assert abs(quarter.c_i) < 1e-15
    assert quarter.c_s == pytest.approx(np.exp(-0.25j * np.pi), abs=1e-15)


# -- 6. near-Clifford convergence (qualitative) ---------------------------------------

def _clifford_t_circuit(n_t: int, seed: int):
    base = generate_random_circuit(5, 8, CLIFFORD_GATE_SET, 0.4, seed=seed)
    return insert_t_gates(base, n_t, seed=seed + 1)


def test_06_near_clifford_convergence():
    circuit = _clifford_t_circuit(4, seed=5)
    exact = oracle_distribution(circuit)
    overlaps = []
    for shots in (1_000, 10_000, 100_000):
        result = sample_gate_by_gate(circuit, StabilizerCHBackend, shots=shots, seed=42)
        overlaps.append(overlap(result.counts, exact, shots, 5))
    assert overlaps[0] <= overlaps[1] <= overlaps[2]
    assert overlaps[2] > 0.9


# -- 7. adding T gates degrades overlap ------------------------------------------------

def test_07_t_gates_degrade_overlap():
    shots = 10_000
    pure_overlaps, noisy_overlaps = [], []
    for seed in range(5):
        base = generate_random_circuit(5, 10, CLIFFORD_GATE_SET, 0.4, seed=600 + seed)
        with_t = insert_t_gates(base, 8, seed=seed)
        res0 = sample_gate_by_gate(base, StabilizerCHBackend, shots=shots, seed=70 + seed)
        pure_overlaps.append(overlap(res0.counts, oracle_distribution(base), shots, 5))
        res8 = sample_gate_by_gate(with_t, StabilizerCHBackend, shots=shots, seed=80 + seed)
        noisy_overlaps.append(overlap(res8.counts, oracle_distribution(with_t), shots, 5))
    assert np.mean(pure_overlaps) >= np.mean(noisy_overlaps)


# -- 8. MPS oracle equivalence ----------------------------------------------------------

def test_08_mps_oracle_equivalence():
    # family depth chosen so the 20000-shot sampling-noise floor (~K/2N for
    # K occupied outcomes) sits below the 0.03 bound; bonds still reach 8
    for seed in range(20):
        circuit = generate_random_circuit(8, 5, two_qubit_fraction=0.25,
                                          seed=800 + seed)
        state = MPSBackend(8)
        for op in circuit.ops:
            state.apply_op(op)
        exact = np.abs(oracle_state(circuit)) ** 2
        probs = np.array([state.compute_probability(b) for b in all_bitstrings(8)])
        np.testing.assert_allclose(probs, exact, atol=1e-8)
        result = sample_gate_by_gate(circuit, lambda n: MPSBackend(n),
                                     shots=20000, seed=900 + seed)
        assert tvd(empirical(result.counts, 20000, 8), exact) < 0.03


# -- 9. MPS scaling shape -----------------------------------------------------------------

def _median_mps_runtime(circuit, trials=3):
    times = []
    for _ in range(trials):
        result = sample_gate_by_gate(circuit, lambda n: MPSBackend(n), shots=32, seed=9)
        times.append(result.runtime_s)
    return float(np.median(times))


def test_09_mps_scaling_shape():
    widths = [6, 8, 10, 12, 14, 16]
    fixed_medians = {}
    for n in widths:
        times = [
            _median_mps_runtime(
                generate_fixed_cnot_circuit(n, 60, 8, seed=s).with_terminal_measure()
            )
            for s in range(3)
        ]
        fixed_medians[n] = float(np.median(times))
    exponent = np.polyfit(np.log(widths),
                          np.log([fixed_medians[n] for n in widths]), 1)[0]
    assert exponent < 1.5

    ghz_medians = {}
    for n in (8, 14):
        times = [
            _median_mps_runtime(
                generate_ghz_random_cnot(n, seed=s).with_terminal_measure()
            )
            for s in range(3)
        ]
        ghz_medians[n] = float(np.median(times))
    ghz_ratio = ghz_medians[14] / ghz_medians[8]
    fixed_ratio = fixed_medians[14] / fixed_medians[8]
    assert ghz_ratio > fixed_ratio


# -- 10. multiplicity saturation ----------------------------------------------------------

def test_10_multiplicity_saturation():
    circuit = generate_random_circuit(4, 25, CLIFFORD_GATE_SET, 0.4, seed=1010)
    circuit = circuit.with_terminal_measure()

    def best_time(shots):
        return min(
            sample_gate_by_gate(circuit, StateVectorBackend, shots=shots, seed=3).runtime_s
            for _ in range(3)
        )

    t_small = best_time(10_000)
    t_large = best_time(1_000_000)
    assert t_large / t_small < 3.0

    backend = StateVectorBackend(4)
    for _, mmap in multiplicity_steps(circuit, backend, shots=1_000_000, seed=3):
        assert len(mmap) <= 16
        assert sum(mmap.values()) == 1_000_000


# -- 11. optimizer speedup and exactness -----------------------------------------------------

def test_11_optimizer_speedup():
    speedups = []
    for seed in range(3):
        circuit = generate_random_circuit(8, 50, two_qubit_fraction=0.15,
                                          seed=1100 + seed).with_terminal_measure()
        merged = optimize_circuit(circuit)
        assert len(merged.ops) < len(circuit.ops)
        assert tvd(oracle_distribution(circuit), oracle_distribution(merged)) < 1e-10

        def best_time(circ):
            return min(
                sample_gate_by_gate(circ, StateVectorBackend, shots=2000, seed=7).runtime_s
                for _ in range(2)
            )

        speedups.append(best_time(circuit) / best_time(merged))
    assert np.mean(speedups) >= 1.2


# -- 12. QAOA MaxCut ---------------------------------------------------------------------------

def test_12_qaoa_maxcut():
    start = time.perf_counter()
    instance = generate_erdos_renyi(10, 0.3, seed=7)
    report = qaoa_search(instance, lambda n: MPSBackend(n), layers=1, grid_size=8,
                         sweep_shots=100, final_shots=1000, seed=7)
    elapsed = time.perf_counter() - start
    assert report["max_cut_brute_force"] >= report["best_cut"]
    assert report["best_cut"] >= report["max_cut_brute_force"] - 1
    assert elapsed < 600.0


# -- 13. CLI determinism -------------------------------------------------------------------------

def test_13_cli_determinism(tmp_path):
    # sample: identical counts
    payloads = []
    for name in ("s1.json", "s2.json"):
        out = tmp_path / name
        assert cli_main(["sample", "--generator", "random", "--qubits", "5",
                         "--moments", "15", "--shots", "2000", "--seed", "77",
                         "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        data.pop("runtime_s")
        payloads.append(data)
    assert payloads[0] == payloads[1]

    # bench: identical rows excluding the seconds column
    rows = []
    for name in ("b1.csv", "b2.csv"):
        out = tmp_path / name
        assert cli_main(["bench", "--axis", "width", "--values", "3,5",
                         "--generator", "clifford", "--depth", "10",
                         "--shots", "300", "--trials", "2", "--seed", "13",
                         "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == CSV_HEADER
        rows.append([
            ",".join(col for i, col in enumerate(line.split(",")) if i != 5)
            for line in lines
        ])
    assert rows[0] == rows[1]

    # qaoa: byte-identical reports (no timing fields)
    reports = []
    for name in ("q1.json", "q2.json"):
        out = tmp_path / name
        assert cli_main(["qaoa", "--nodes", "5", "--edge-prob", "0.4",
                         "--grid-size", "3", "--sweep-shots", "50",
                         "--final-shots", "100", "--seed", "3",
                         "--out", str(out)]) == 0
        reports.append(out.read_text())
    assert reports[0] == reports[1]

    # optimize: byte-identical reports
    qasm = tmp_path / "c.qasm"
    qasm.write_text(emit_qasm(generate_random_circuit(3, 6, CLIFFORD_GATE_SET,
                                                      0.3, seed=2)))
    opts = []
    for name in ("o1.json", "o2.json"):
        out = tmp_path / name
        assert cli_main(["optimize", "--qasm", str(qasm), "--out", str(out)]) == 0
        opts.append(out.read_text())
    assert opts[0] == opts[1]
