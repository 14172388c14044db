"""OpenQASM 2.0 subset: ingestion and emission.

Supported statements: the OPENQASM header, include lines (ignored), a single
qreg, cregs (ignored), comments, and the gate spellings
h x y z s sdg t tdg rx ry rz cx cz swap measure. Trailing measure statements
coalesce into one terminal MEASURE op; a measure before other gates must be
single-qubit and becomes a mid-circuit MEASURE.

Round-trip contract: parse_qasm(emit_qasm(c)) == c under structural equality,
i.e. dataclass equality of (n_qubits, ops) with ops compared by kind, support,
exact parameter value, and matrix entries.
"""

from __future__ import annotations

import math
import re

from .circuit import Circuit, GateKind, GateOp
from .errors import ParseError, UnsupportedExport

_GATES_1Q = {
    "h": GateKind.H, "x": GateKind.X, "y": GateKind.Y, "z": GateKind.Z,
    "s": GateKind.S, "sdg": GateKind.SDG, "t": GateKind.T, "tdg": GateKind.TDG,
}
_GATES_ROT = {"rx": GateKind.RX, "ry": GateKind.RY, "rz": GateKind.RZ}
_GATES_2Q = {"cx": GateKind.CNOT, "cz": GateKind.CZ, "swap": GateKind.SWAP}

_QREG_RE = re.compile(r"^qreg\s+(\w+)\s*\[\s*(\d+)\s*\]$")
_CREG_RE = re.compile(r"^creg\s+(\w+)\s*\[\s*(\d+)\s*\]$")
_REF_RE = re.compile(r"^(\w+)\s*\[\s*(\d+)\s*\]$")
_ANGLE_OK_RE = re.compile(r"^[\d.+\-*/()epi\s]+$")


def _eval_angle(expr: str, line: int) -> float:
    """Evaluate a QASM angle expression such as pi/4 or -0.5*pi."""
    if not _ANGLE_OK_RE.match(expr):
        raise ParseError(line, expr, "unsupported angle expression")
    try:
        return float(eval(expr, {"__builtins__": {}}, {"pi": math.pi, "e": math.e}))
    except Exception:
        raise ParseError(line, expr, "malformed angle expression") from None


def _strip_comments(text: str) -> list[tuple[int, str]]:
    """Split into (line_number, statement) pairs, comments removed."""
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if stmt:
                statements.append((lineno, stmt))
    return statements


def parse_qasm(text: str) -> Circuit:
    """Parse the supported OpenQASM 2.0 subset into a Circuit."""
    reg_name = None
    n_qubits = 0
    cregs: set[str] = set()
    # (kind, support, param) triples plus measured-qubit markers, in order
    items: list[tuple] = []

    def qubit(ref: str, lineno: int) -> int:
        m = _REF_RE.match(ref.strip())
        if not m:
            raise ParseError(lineno, ref, "expected a qubit reference like q[0]")
        name, idx = m.group(1), int(m.group(2))
        if name != reg_name:
            raise ParseError(lineno, ref, f"unknown register {name!r}")
        if idx >= n_qubits:
            raise ParseError(lineno, ref, f"qubit index {idx} out of range for {reg_name}[{n_qubits}]")
        return idx

    for lineno, stmt in _strip_comments(text):
        lowered = stmt.lower()
        if lowered.startswith("openqasm") or lowered.startswith("include"):
            continue
        m = _QREG_RE.match(stmt)
        if m:
            if reg_name is not None:
                raise ParseError(lineno, m.group(1), "multiple qregs are not supported")
            reg_name, n_qubits = m.group(1), int(m.group(2))
            if n_qubits < 1:
                raise ParseError(lineno, stmt, "qreg must have at least one qubit")
            continue
        m = _CREG_RE.match(stmt)
        if m:
            cregs.add(m.group(1))
            continue

        if reg_name is None:
            raise ParseError(lineno, stmt, "gate before qreg declaration")

        head, _, rest = stmt.partition(" ")
        head = head.strip()
        name, _, paren = head.partition("(")
        name = name.lower()

        if name == "measure":
            # "measure q[i] -> c[i]" or "measure q -> c"
            target = rest.split("->", 1)[0].strip()
            if target == reg_name:
                for q in range(n_qubits):
                    items.append(("measure", q, lineno))
            else:
                items.append(("measure", qubit(target, lineno), lineno))
            continue

        if name in _GATES_ROT:
            if not paren.endswith(")"):
                # angle may contain spaces; re-split from the raw statement
                full = stmt[len(name):].strip()
                if not full.startswith("("):
                    raise ParseError(lineno, stmt, f"{name} requires an angle")
                depth, close = 0, -1
                for i, ch in enumerate(full):
                    depth += ch == "("
                    depth -= ch == ")"
                    if depth == 0:
                        close = i
                        break
                if close < 0:
                    raise ParseError(lineno, stmt, "unbalanced parentheses")
                paren, rest = full[1:close] + ")", full[close + 1:]
            theta = _eval_angle(paren[:-1], lineno)
            args = [a for a in rest.split(",") if a.strip()]
            if len(args) != 1:
                raise ParseError(lineno, stmt, f"{name} acts on one qubit")
            items.append((GateOp(_GATES_ROT[name], (qubit(args[0], lineno),), param=theta),))
            continue

        if paren:
            raise ParseError(lineno, head, f"unsupported parameterized gate {name!r}")

        if name in _GATES_1Q:
            args = [a for a in rest.split(",") if a.strip()]
            if len(args) != 1:
                raise ParseError(lineno, stmt, f"{name} acts on one qubit")
            items.append((GateOp(_GATES_1Q[name], (qubit(args[0], lineno),)),))
            continue

        if name in _GATES_2Q:
            args = [a for a in rest.split(",") if a.strip()]
            if len(args) != 2:
                raise ParseError(lineno, stmt, f"{name} acts on two qubits")
            sup = (qubit(args[0], lineno), qubit(args[1], lineno))
            if sup[0] == sup[1]:
                raise ParseError(lineno, stmt, "two-qubit gate on a repeated qubit")
            items.append((GateOp(_GATES_2Q[name], sup),))
            continue

        raise ParseError(lineno, name, f"unsupported gate {name!r}")

    if reg_name is None:
        raise ParseError(0, "", "no qreg declaration found")

    # Coalesce the trailing run of measure markers into one terminal MEASURE.
    tail: list[int] = []
    while items and items[-1][0] == "measure":
        tail.append(items.pop()[1])
    ops: list[GateOp] = []
    for item in items:
        if item[0] == "measure":
            _, q, lineno = item
            ops.append(GateOp(GateKind.MEASURE, (q,)))
        else:
            ops.append(item[0])
    if tail:
        seen: list[int] = []
        for q in reversed(tail):
            if q not in seen:
                seen.append(q)
        ops.append(GateOp(GateKind.MEASURE, tuple(seen)))
    return Circuit(n_qubits, tuple(ops))


def emit_qasm(circuit: Circuit) -> str:
    """Emit OpenQASM 2.0 accepted by parse_qasm; parse(emit(c)) == c."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n_qubits}];",
    ]
    if any(op.kind is GateKind.MEASURE for op in circuit.ops):
        lines.append(f"creg c[{circuit.n_qubits}];")
    for op in circuit.ops:
        kind = op.kind
        if kind in (GateKind.MATRIX1Q, GateKind.MATRIX2Q) or kind.is_channel:
            raise UnsupportedExport(f"{kind.name} has no QASM spelling")
        if kind is GateKind.MEASURE:
            lines.extend(f"measure q[{q}] -> c[{q}];" for q in op.support)
        elif kind.takes_angle:
            lines.append(f"{kind.value}({op.param!r}) {_refs(op)};")
        else:
            lines.append(f"{kind.value} {_refs(op)};")
    return "\n".join(lines) + "\n"


def _refs(op: GateOp) -> str:
    return ",".join(f"q[{q}]" for q in op.support)
