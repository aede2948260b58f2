"""Gate-level circuit IR: typed instructions, validation, gate counts, depth.

The gate alphabet is deliberately small (RY, RZ, H, X, Z, CNOT plus measure
and barrier) -- it is exactly what the telecloning circuits need and what the
QASM emitter understands. Circuits are append-only during construction and
treated as immutable afterwards, so they can be shared freely between
simulation workers.

Bit order is little-endian throughout: bit k of a basis-state index is the
value of qubit k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Gate(Enum):
    RY = "RY"
    RZ = "RZ"
    H = "H"
    X = "X"
    Z = "Z"
    CNOT = "CNOT"
    MEASURE = "MEASURE"
    BARRIER = "BARRIER"

    @property
    def is_unitary(self) -> bool:
        return self not in (Gate.MEASURE, Gate.BARRIER)

    @property
    def n_qubits(self) -> int | None:
        """Arity of the gate; None for BARRIER (any number of qubits)."""
        if self is Gate.CNOT:
            return 2
        if self is Gate.BARRIER:
            return None
        return 1


PARAMETRIC = frozenset({Gate.RY, Gate.RZ})


@dataclass(frozen=True)
class Instruction:
    """One circuit operation.

    ``condition`` is a (classical bit, required value) pair; the instruction
    is executed only when the stored bit equals the required value. ``cbit``
    is the classical bit a MEASURE writes.
    """
    gate: Gate
    qubits: tuple[int, ...]
    param: float | None = None
    cbit: int | None = None
    condition: tuple[int, int] | None = None


@dataclass(frozen=True)
class Violation:
    index: int          # instruction index, -1 for circuit-level problems
    message: str

    def __str__(self) -> str:
        return f"instruction {self.index}: {self.message}"


@dataclass
class Circuit:
    num_qubits: int
    num_clbits: int = 0
    instructions: list[Instruction] = field(default_factory=list)
    qubit_roles: dict[int, str] = field(default_factory=dict)

    # -- builder interface -------------------------------------------------

    def _append(self, inst: Instruction) -> "Circuit":
        problems = _check_instruction(inst, self.num_qubits, self.num_clbits)
        if problems:
            raise ValueError(f"bad instruction {inst}: {problems[0]}")
        self.instructions.append(inst)
        return self

    def ry(self, qubit: int, theta: float) -> "Circuit":
        return self._append(Instruction(Gate.RY, (qubit,), param=theta))

    def rz(self, qubit: int, phi: float) -> "Circuit":
        return self._append(Instruction(Gate.RZ, (qubit,), param=phi))

    def h(self, qubit: int) -> "Circuit":
        return self._append(Instruction(Gate.H, (qubit,)))

    def x(self, qubit: int, condition: tuple[int, int] | None = None) -> "Circuit":
        return self._append(Instruction(Gate.X, (qubit,), condition=condition))

    def z(self, qubit: int, condition: tuple[int, int] | None = None) -> "Circuit":
        return self._append(Instruction(Gate.Z, (qubit,), condition=condition))

    def cx(self, control: int, target: int) -> "Circuit":
        return self._append(Instruction(Gate.CNOT, (control, target)))

    def measure(self, qubit: int, cbit: int) -> "Circuit":
        return self._append(Instruction(Gate.MEASURE, (qubit,), cbit=cbit))

    def barrier(self, qubits: tuple[int, ...] | None = None) -> "Circuit":
        if qubits is None:
            qubits = tuple(range(self.num_qubits))
        return self._append(Instruction(Gate.BARRIER, tuple(qubits)))

    def extend(self, instructions) -> "Circuit":
        for inst in instructions:
            self._append(inst)
        return self

    # -- queries ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.instructions)


def _check_instruction(inst: Instruction, num_qubits: int, num_clbits: int) -> list[str]:
    problems = []
    if len(set(inst.qubits)) != len(inst.qubits):
        problems.append("duplicate qubit")
    for q in inst.qubits:
        if not 0 <= q < num_qubits:
            problems.append(f"qubit {q} out of range")
    arity = inst.gate.n_qubits
    if arity is not None and len(inst.qubits) != arity:
        problems.append(f"{inst.gate.value} takes {arity} qubit(s), got {len(inst.qubits)}")
    if inst.gate in PARAMETRIC:
        if inst.param is None or not math.isfinite(inst.param):
            problems.append("angle must be a finite number")
    elif inst.param is not None:
        problems.append(f"{inst.gate.value} takes no angle")
    if inst.gate is Gate.MEASURE:
        if inst.cbit is None:
            problems.append("measure needs a classical bit")
        elif not 0 <= inst.cbit < num_clbits:
            problems.append(f"classical bit {inst.cbit} out of range")
    elif inst.cbit is not None:
        problems.append("only measure writes a classical bit")
    if inst.condition is not None:
        if not inst.gate.is_unitary:
            problems.append(f"condition not allowed on {inst.gate.value}")
        else:
            bit, value = inst.condition
            if not 0 <= bit < num_clbits:
                problems.append(f"condition bit {bit} out of range")
            if value not in (0, 1):
                problems.append(f"condition value must be 0 or 1, got {value}")
    return problems


def validate_circuit(circuit: Circuit) -> list[Violation]:
    """Check every circuit invariant; violations are returned, not raised."""
    violations = []
    if circuit.num_qubits < 1:
        violations.append(Violation(-1, "circuit needs at least one qubit"))
    measured: set[int] = set()
    for i, inst in enumerate(circuit.instructions):
        for msg in _check_instruction(inst, circuit.num_qubits, circuit.num_clbits):
            violations.append(Violation(i, msg))
        if inst.gate is not Gate.BARRIER:
            for q in inst.qubits:
                if q in measured and inst.condition is None:
                    violations.append(Violation(
                        i, f"qubit {q} used after measurement without a condition"))
        if inst.gate is Gate.MEASURE:
            measured.update(inst.qubits)
    return violations


def count_gates(circuit: Circuit) -> dict[str, int]:
    """Multiset of gate kinds; conditioned gates count under their kind."""
    counts = {gate.value: 0 for gate in Gate}
    for inst in circuit.instructions:
        counts[inst.gate.value] += 1
    return counts


def compute_depth(circuit: Circuit) -> int:
    """Longest dependency path, counting each gate and measure as one layer.

    Instructions sharing a qubit are ordered; a measure and a conditioned
    gate sharing a classical bit are ordered (write before read, read before
    a later write). Two gates merely reading the same bit are independent.
    Barriers order every wire they span but add no layer.
    """
    qdepth = [0] * circuit.num_qubits
    cwrite = [0] * circuit.num_clbits
    cread = [0] * circuit.num_clbits
    best = 0
    for inst in circuit.instructions:
        if inst.gate is Gate.BARRIER:
            level = max((qdepth[q] for q in inst.qubits), default=0)
            for q in inst.qubits:
                qdepth[q] = level
            continue
        deps = [qdepth[q] for q in inst.qubits]
        if inst.condition is not None:
            deps.append(cwrite[inst.condition[0]])
        if inst.cbit is not None:
            deps.append(cwrite[inst.cbit])
            deps.append(cread[inst.cbit])
        level = max(deps, default=0) + 1
        for q in inst.qubits:
            qdepth[q] = level
        if inst.condition is not None:
            b = inst.condition[0]
            cread[b] = max(cread[b], level)
        if inst.cbit is not None:
            cwrite[inst.cbit] = level
        best = max(best, level)
    return best
