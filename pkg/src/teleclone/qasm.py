"""OpenQASM 2.0 serialization of circuits, and a parser for the emitted
subset (round-trip oracle, not a general front end).

Register convention: quantum register ``q``; classical bits live in three
registers so single-bit conditions stay expressible with OpenQASM 2.0's
whole-register comparison: ``c_z[1]`` (bit 0), ``c_x[1]`` (bit 1) and
``c_clones[n-2]`` (the rest). Circuits with other classical-bit counts get a
single ``c`` register and support no conditions.
"""
from __future__ import annotations

import math
import re

from .circuit import Circuit, Gate, Instruction

_GATE_NAMES = {Gate.RY: "ry", Gate.RZ: "rz", Gate.H: "h", Gate.X: "x",
               Gate.Z: "z", Gate.CNOT: "cx"}


class QasmError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def format_angle(value: float) -> str:
    """Multiples of pi/4 print symbolically, everything else as a decimal
    with 17 significant digits (exact for binary64 round-trips)."""
    if value == 0.0:
        return "0"
    for k in range(-8, 9):
        if k and value == k * math.pi / 4:
            sign = "-" if k < 0 else ""
            k = abs(k)
            if k % 4 == 0:
                body = "pi" if k == 4 else f"{k // 4}*pi"
            elif k % 2 == 0:
                body = "pi/2" if k == 2 else f"{k // 2}*pi/2"
            else:
                body = "pi/4" if k == 1 else f"{k}*pi/4"
            return sign + body
    return repr(value)


def _clbit_registers(circuit: Circuit) -> list[tuple[str, int]]:
    n = circuit.num_clbits
    if n >= 3:
        return [("c_z", 1), ("c_x", 1), ("c_clones", n - 2)]
    if n > 0:
        return [("c", n)]
    return []


def _clbit_ref(registers: list[tuple[str, int]], bit: int) -> tuple[str, int]:
    for name, size in registers:
        if bit < size:
            return name, bit
        bit -= size
    raise ValueError(f"classical bit {bit} out of range")


def emit_qasm(circuit: Circuit) -> str:
    """Serialize to OpenQASM 2.0, one statement per line, instruction order
    preserved."""
    from .circuit import validate_circuit
    problems = validate_circuit(circuit)
    if problems:
        raise ValueError(f"refusing to emit invalid circuit: {problems[0]}")
    registers = _clbit_registers(circuit)
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg q[{circuit.num_qubits}];"]
    lines += [f"creg {name}[{size}];" for name, size in registers]
    for inst in circuit.instructions:
        lines.append(_emit_instruction(inst, registers))
    return "\n".join(lines) + "\n"


def _emit_instruction(inst: Instruction, registers) -> str:
    if inst.gate is Gate.BARRIER:
        return "barrier " + ", ".join(f"q[{q}]" for q in inst.qubits) + ";"
    if inst.gate is Gate.MEASURE:
        name, off = _clbit_ref(registers, inst.cbit)
        return f"measure q[{inst.qubits[0]}] -> {name}[{off}];"
    name = _GATE_NAMES[inst.gate]
    if inst.gate in (Gate.RY, Gate.RZ):
        name = f"{name}({format_angle(inst.param)})"
    stmt = f"{name} " + ", ".join(f"q[{q}]" for q in inst.qubits) + ";"
    if inst.condition is not None:
        bit, value = inst.condition
        reg, off = _clbit_ref(registers, bit)
        size = dict(registers)[reg]
        if size != 1:
            raise ValueError(
                f"condition on bit {bit} needs a dedicated 1-bit register")
        stmt = f"if({reg}=={value}) {stmt}"
    return stmt


_ANGLE_RE = re.compile(
    r"^\s*(-)?\s*(?:(\d+)\s*\*\s*)?pi(?:\s*/\s*(\d+))?\s*$")


def parse_angle(text: str, line: int) -> float:
    """Inverse of format_angle plus plain float literals."""
    m = _ANGLE_RE.match(text)
    if m:
        sign = -1.0 if m.group(1) else 1.0
        num = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(3)) if m.group(3) else 1
        return sign * num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise QasmError(f"cannot parse angle {text!r}", line) from None


_STATEMENT_RES = {
    "qreg": re.compile(r"^qreg\s+(\w+)\[(\d+)\];$"),
    "creg": re.compile(r"^creg\s+(\w+)\[(\d+)\];$"),
    "measure": re.compile(r"^measure\s+q\[(\d+)\]\s*->\s*(\w+)\[(\d+)\];$"),
    "barrier": re.compile(r"^barrier\s+(.+);$"),
    "if": re.compile(r"^if\s*\(\s*(\w+)\s*==\s*(\d+)\s*\)\s*(.+)$"),
    "gate": re.compile(r"^(ry|rz|h|x|z|cx)\s*(?:\(([^)]*)\))?\s+(.+);$"),
}
_QUBIT_RE = re.compile(r"^q\[(\d+)\]$")


def parse_qasm_subset(text: str) -> Circuit:
    """Parse text produced by emit_qasm back into a Circuit.

    Anything outside the emitted subset raises QasmError with the line
    number.
    """
    circuit: Circuit | None = None
    creg_order: list[tuple[str, int]] = []
    creg_offsets: dict[str, int] = {}
    num_clbits = 0
    saw_header = False

    def qubits_of(text: str, line: int) -> tuple[int, ...]:
        out = []
        for part in text.split(","):
            m = _QUBIT_RE.match(part.strip())
            if not m:
                raise QasmError(f"bad qubit reference {part.strip()!r}", line)
            out.append(int(m.group(1)))
        return tuple(out)

    instructions: list[Instruction] = []
    num_qubits = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("//")[0].strip()
        if not stmt:
            continue
        if stmt.startswith("OPENQASM"):
            if stmt != "OPENQASM 2.0;":
                raise QasmError(f"unsupported version {stmt!r}", lineno)
            saw_header = True
            continue
        if stmt.startswith("include"):
            continue
        m = _STATEMENT_RES["qreg"].match(stmt)
        if m:
            if m.group(1) != "q":
                raise QasmError(f"unexpected quantum register {m.group(1)!r}", lineno)
            num_qubits = int(m.group(2))
            continue
        m = _STATEMENT_RES["creg"].match(stmt)
        if m:
            name, size = m.group(1), int(m.group(2))
            creg_offsets[name] = num_clbits
            creg_order.append((name, size))
            num_clbits += size
            continue
        m = _STATEMENT_RES["measure"].match(stmt)
        if m:
            reg = m.group(2)
            if reg not in creg_offsets:
                raise QasmError(f"unknown classical register {reg!r}", lineno)
            instructions.append(Instruction(
                Gate.MEASURE, (int(m.group(1)),),
                cbit=creg_offsets[reg] + int(m.group(3))))
            continue
        m = _STATEMENT_RES["barrier"].match(stmt)
        if m:
            instructions.append(Instruction(Gate.BARRIER, qubits_of(m.group(1), lineno)))
            continue
        condition = None
        m = _STATEMENT_RES["if"].match(stmt)
        if m:
            reg, value = m.group(1), int(m.group(2))
            if reg not in creg_offsets:
                raise QasmError(f"unknown classical register {reg!r}", lineno)
            condition = (creg_offsets[reg], value)
            stmt = m.group(3).strip()
        m = _STATEMENT_RES["gate"].match(stmt)
        if m:
            name, angle_text, qubit_text = m.groups()
            qubits = qubits_of(qubit_text, lineno)
            param = None
            if name in ("ry", "rz"):
                if angle_text is None:
                    raise QasmError(f"{name} needs an angle", lineno)
                param = parse_angle(angle_text, lineno)
            elif angle_text is not None:
                raise QasmError(f"{name} takes no angle", lineno)
            gate = {"ry": Gate.RY, "rz": Gate.RZ, "h": Gate.H, "x": Gate.X,
                    "z": Gate.Z, "cx": Gate.CNOT}[name]
            instructions.append(Instruction(gate, qubits, param=param,
                                            condition=condition))
            continue
        raise QasmError(f"unsupported statement {stmt!r}", lineno)

    if not saw_header:
        raise QasmError("missing OPENQASM 2.0 header", 1)
    if num_qubits is None:
        raise QasmError("missing qreg declaration", 1)
    circuit = Circuit(num_qubits, num_clbits)
    circuit.extend(instructions)
    return circuit
