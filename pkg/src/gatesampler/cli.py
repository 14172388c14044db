"""Command-line surface: sample, bench, optimize, qaoa.

Exit codes: 0 success, 2 unsupported op for the chosen backend, 3 input error
(bad flags, missing or malformed files).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import bench as bench_mod
from . import plotting
from .circuit import Circuit
from .errors import GatesamplerError, InvalidSpec, ParseError, UnsupportedExport, UnsupportedOp
from .generators import (
    CLIFFORD_GATE_SET,
    CLIFFORD_T_GATE_SET,
    generate_ghz_random_cnot,
    generate_random_circuit,
)
from .circuit import ghz_circuit
from .optimizer import optimize_circuit
from .qaoa import generate_erdos_renyi, qaoa_search
from .qasm import parse_qasm
from .backends.base import backend_factory
from .sampler import sample_gate_by_gate

EXIT_OK = 0
EXIT_UNSUPPORTED = 2
EXIT_INPUT = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the CLI contract reserves 2 for
    # unsupported ops and 3 for input errors
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _add_sample_parser(sub):
    p = sub.add_parser("sample", help="sample bitstrings from a circuit")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--qasm", help="OpenQASM 2.0 file to ingest")
    source.add_argument("--generator",
                        choices=("ghz", "ghz-random", "random", "clifford", "clifford-t"))
    p.add_argument("--qubits", type=int, default=4)
    p.add_argument("--moments", type=int, default=20)
    p.add_argument("--two-qubit-fraction", type=float, default=0.3)
    p.add_argument("--backend", choices=("statevector", "stabilizer", "mps"),
                   default="statevector")
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chi-max", type=int, default=None)
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--plot", help="write a counts histogram PNG here")


def _add_bench_parser(sub):
    p = sub.add_parser("bench", help="runtime sweeps, CSV output")
    p.add_argument("--axis", choices=bench_mod.AXES, required=True)
    p.add_argument("--values", required=True,
                   help="comma-separated sweep values, e.g. 2,4,8")
    p.add_argument("--generator", choices=bench_mod.GENERATORS, default="random")
    p.add_argument("--qubits", type=int, default=6)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--backend", choices=("statevector", "stabilizer", "mps"),
                   default="statevector")
    p.add_argument("--sampler", choices=("gate-by-gate", "qubit-by-qubit"),
                   default="gate-by-gate")
    p.add_argument("--two-qubit-fraction", type=float, default=0.3)
    p.add_argument("--cnots", type=int, default=8)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chi-max", type=int, default=None)
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--out", help="output CSV file (default: stdout)")
    p.add_argument("--plot", help="write a runtime-scaling PNG here")


def _add_optimize_parser(sub):
    p = sub.add_parser("optimize", help="merge single-qubit runs, report op counts")
    p.add_argument("--qasm", required=True)
    p.add_argument("--out", help="output JSON file (default: stdout)")


def _add_qaoa_parser(sub):
    p = sub.add_parser("qaoa", help="QAOA MaxCut demonstration")
    p.add_argument("--nodes", type=int, default=10)
    p.add_argument("--edge-prob", type=float, default=0.3)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--grid-size", type=int, default=8)
    p.add_argument("--sweep-shots", type=int, default=100)
    p.add_argument("--final-shots", type=int, default=1000)
    p.add_argument("--backend", choices=("statevector", "stabilizer", "mps"),
                   default="mps")
    p.add_argument("--chi-max", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output JSON file (default: stdout)")
    p.add_argument("--plot", help="write a sweep heatmap PNG here")


def _read_circuit(args) -> Circuit:
    if args.qasm:
        path = Path(args.qasm)
        if not path.exists():
            raise FileNotFoundError(f"no such file: {path}")
        return parse_qasm(path.read_text())
    n, moments, frac, seed = args.qubits, args.moments, args.two_qubit_fraction, args.seed
    if args.generator == "ghz":
        return ghz_circuit(n)
    if args.generator == "ghz-random":
        return generate_ghz_random_cnot(n, seed=seed)
    if args.generator == "clifford":
        return generate_random_circuit(n, moments, CLIFFORD_GATE_SET, frac, seed=seed)
    if args.generator == "clifford-t":
        return generate_random_circuit(n, moments, CLIFFORD_T_GATE_SET, frac, seed=seed)
    return generate_random_circuit(n, moments, two_qubit_fraction=frac, seed=seed)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_sample(args) -> int:
    circuit = _read_circuit(args).with_terminal_measure()
    if args.optimize:
        circuit = optimize_circuit(circuit)
    factory = backend_factory(args.backend, chi_max=args.chi_max)
    result = sample_gate_by_gate(circuit, factory, args.shots, seed=args.seed)
    _write(result.to_json() if args.format == "json" else result.to_csv(), args.out)
    if args.plot:
        plotting.plot_counts(result.counts, args.plot)
    return EXIT_OK


def _cmd_bench(args) -> int:
    values = [int(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise InvalidSpec("--values must list at least one integer")
    records = bench_mod.run_sweep(
        args.axis, values,
        generator=args.generator, qubits=args.qubits, depth=args.depth,
        shots=args.shots, backend=args.backend, sampler=args.sampler,
        two_qubit_fraction=args.two_qubit_fraction, cnots=args.cnots,
        trials=args.trials, seed=args.seed, chi_max=args.chi_max,
        optimize=args.optimize,
    )
    _write(bench_mod.to_csv(records), args.out)
    if args.plot:
        plotting.plot_bench(values, records, args.axis, args.plot)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    path = Path(args.qasm)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    circuit = parse_qasm(path.read_text())
    merged = optimize_circuit(circuit)
    report = {
        "n_qubits": circuit.n_qubits,
        "ops_before": len(circuit.ops),
        "ops_after": len(merged.ops),
        "kinds_before": dict(Counter(op.kind.name for op in circuit.ops)),
        "kinds_after": dict(Counter(op.kind.name for op in merged.ops)),
    }
    _write(json.dumps(report, sort_keys=True, indent=2), args.out)
    return EXIT_OK


def _cmd_qaoa(args) -> int:
    instance = generate_erdos_renyi(args.nodes, args.edge_prob, args.seed)
    factory = backend_factory(args.backend, chi_max=args.chi_max)
    report = qaoa_search(
        instance, factory,
        layers=args.layers, grid_size=args.grid_size,
        sweep_shots=args.sweep_shots, final_shots=args.final_shots,
        seed=args.seed, backend_name=args.backend,
    )
    _write(json.dumps(report, sort_keys=True, indent=2), args.out)
    if args.plot:
        plotting.plot_qaoa(report, args.plot)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="gatesampler",
                     description="gate-by-gate weak simulation of quantum circuits")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_sample_parser(sub)
    _add_bench_parser(sub)
    _add_optimize_parser(sub)
    _add_qaoa_parser(sub)
    args = parser.parse_args(argv)
    commands = {
        "sample": _cmd_sample,
        "bench": _cmd_bench,
        "optimize": _cmd_optimize,
        "qaoa": _cmd_qaoa,
    }
    try:
        return commands[args.command](args)
    except UnsupportedOp as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ParseError, UnsupportedExport, InvalidSpec, FileNotFoundError, OSError,
            ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except GatesamplerError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
