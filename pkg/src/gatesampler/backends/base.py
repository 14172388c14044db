"""Backend contract used by the sampling engine."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Callable, Sequence

import numpy as np

from ..circuit import Circuit, GateKind, GateOp


class StateBackend(ABC):
    """Opaque quantum state with gate application and bitstring probability.

    A backend owns one evolving state. The engine clones backends rather than
    sharing them across shots, so implementations can mutate freely.
    """

    #: label used in results, error messages, and the CLI
    name: str = "abstract"
    #: whether the engine may project a single qubit mid-circuit
    supports_mid_measure: bool = False

    n_qubits: int

    @abstractmethod
    def apply_op(self, op: GateOp, rng: np.random.Generator | None = None) -> None:
        """Apply one op in place. ``rng`` is only consulted by stochastic ops."""

    @abstractmethod
    def compute_probability(self, bits: str) -> float:
        """Probability of measuring ``bits`` from the current state."""

    @abstractmethod
    def clone_state(self) -> "StateBackend":
        """Independent deep copy of this backend and its state."""

    @abstractmethod
    def supports(self, kind: GateKind) -> bool:
        """Whether apply_op can handle this gate kind at all."""

    def needs_trajectories(self, circuit: Circuit) -> bool:
        """Whether this backend evolves stochastically on ``circuit``.

        Channels and mid-circuit measurements are accounted for separately by
        the engine; this hook is for backend-intrinsic randomness (e.g.
        stochastic gate decompositions).
        """
        return False

    def compute_probabilities(self, candidates: Sequence[str]) -> np.ndarray:
        """Probabilities of several bitstrings; default loops compute_probability."""
        return np.array([self.compute_probability(b) for b in candidates])


def backend_factory(name: str, chi_max: int | None = None) -> Callable[[int], StateBackend]:
    """Factory for fresh backends, keyed by CLI name."""
    from .chform import StabilizerCHBackend
    from .mps import MPSBackend
    from .statevector import StateVectorBackend

    if name == "statevector":
        return StateVectorBackend
    if name == "stabilizer":
        return StabilizerCHBackend
    if name == "mps":
        return lambda n: MPSBackend(n, chi_max=chi_max)
    raise ValueError(f"unknown backend {name!r}")
