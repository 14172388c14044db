"""Exception types shared across the package."""


class GatesamplerError(Exception):
    """Base class for all package errors."""


class ParseError(GatesamplerError):
    """Raised on malformed or unsupported QASM input."""

    def __init__(self, line: int, token: str, message: str):
        super().__init__(f"line {line}: {message} (near {token!r})")
        self.line = line
        self.token = token


class UnsupportedExport(GatesamplerError):
    """Raised when a circuit contains ops with no QASM spelling."""


class InvalidSpec(GatesamplerError):
    """Raised when generator arguments cannot produce a valid circuit."""


class UnsupportedOp(GatesamplerError):
    """Raised when a backend is asked to apply a gate kind it cannot represent."""

    def __init__(self, backend: str, kind: str, detail: str = ""):
        msg = f"backend {backend!r} does not support {kind}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.backend = backend
        self.kind = kind


class NumericalUnderflow(GatesamplerError):
    """Raised when every candidate bitstring probability underflows."""
