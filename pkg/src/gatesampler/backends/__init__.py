"""State backends: opaque state + apply_op + compute_probability."""

from .base import StateBackend, backend_factory
from .statevector import StateVectorBackend
from .chform import StabilizerCHBackend
from .mps import MPSBackend

__all__ = [
    "StateBackend",
    "StateVectorBackend",
    "StabilizerCHBackend",
    "MPSBackend",
    "backend_factory",
]
