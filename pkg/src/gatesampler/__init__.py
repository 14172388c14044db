"""Weak simulation of quantum circuits by gate-by-gate bitstring sampling."""

from .circuit import Circuit, GateKind, GateOp, ghz_circuit
from .errors import (
    GatesamplerError,
    InvalidSpec,
    NumericalUnderflow,
    ParseError,
    UnsupportedExport,
    UnsupportedOp,
)
from .qasm import emit_qasm, parse_qasm
from .generators import (
    generate_fixed_cnot_circuit,
    generate_ghz_random_cnot,
    generate_random_circuit,
)
from .optimizer import optimize_circuit
from .sampler import (
    SampleResult,
    candidates,
    rng_stream,
    sample_gate_by_gate,
    sample_qubit_by_qubit,
    sample_with_trajectories,
)
from .backends import (
    MPSBackend,
    StabilizerCHBackend,
    StateBackend,
    StateVectorBackend,
    backend_factory,
)

__version__ = "0.1.0"
