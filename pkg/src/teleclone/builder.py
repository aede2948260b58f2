"""Assembly of complete 1->M telecloning circuits.

Layout convention (fixed; the register order of the M=9 circuit drawing):
qubit 0 carries the message, qubits 1..M-1 the ancillas, qubit M the port,
qubits M+1..2M the clones. The message measurement writes classical bit 0
(the phase bit, driving Z corrections) and the port measurement writes bit 1
(the flip bit, driving X corrections); clone outcomes land in bits 2..M+1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, Gate, Instruction
from .dicke import build_dicke_unitary, build_scs, build_weight_ladder, ladder_angles

Z_BIT = 0
X_BIT = 1

BASES = ("X", "Y", "Z")


@dataclass(frozen=True)
class MessageSpec:
    """Pure message state: RY(psi) then RZ(phi) applied to |0>."""
    psi: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.psi) and math.isfinite(self.phi)):
            raise ValueError("message angles must be finite")
        psi = self.psi % (2 * math.pi)
        phi = self.phi % (2 * math.pi)
        if psi > math.pi:
            # RY(2pi - psi) with phi shifted by pi reaches the same state
            psi = 2 * math.pi - psi
            phi = (phi + math.pi) % (2 * math.pi)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "phi", phi)

    def bloch_vector(self) -> tuple[float, float, float]:
        return (math.sin(self.psi) * math.cos(self.phi),
                math.sin(self.psi) * math.sin(self.phi),
                math.cos(self.psi))


@dataclass(frozen=True)
class TetrahedralSet:
    states: tuple[MessageSpec, MessageSpec, MessageSpec, MessageSpec]

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i: int) -> MessageSpec:
        return self.states[i]


def tetrahedral_states() -> TetrahedralSet:
    """The four test states, mutually arccos(-1/3) apart on the Bloch sphere.

    State 0 is |0>; the other three sit on the cos(psi) = -1/3 circle at
    azimuths 0, 2pi/3, 4pi/3.
    """
    psi = math.acos(-1.0 / 3.0)
    return TetrahedralSet((
        MessageSpec(0.0, 0.0),
        MessageSpec(psi, 0.0),
        MessageSpec(psi, 2 * math.pi / 3),
        MessageSpec(psi, 4 * math.pi / 3),
    ))


@dataclass(frozen=True)
class TelecloningLayout:
    M: int
    message_index: int
    ancilla_indices: tuple[int, ...]
    port_index: int
    clone_indices: tuple[int, ...]
    z_bit: int
    x_bit: int
    clone_bits: tuple[int, ...]

    @property
    def num_qubits(self) -> int:
        return 2 * self.M + 1

    @property
    def num_clbits(self) -> int:
        return 2 + self.M

    @property
    def chain(self) -> tuple[int, ...]:
        """Ancillas plus port: the half of the ladder that is Bell-measured."""
        return self.ancilla_indices + (self.port_index,)


def make_layout(M: int) -> TelecloningLayout:
    if M < 2:
        raise ValueError(f"telecloning needs M >= 2 clones, got {M}")
    return TelecloningLayout(
        M=M,
        message_index=0,
        ancilla_indices=tuple(range(1, M)),
        port_index=M,
        clone_indices=tuple(range(M + 1, 2 * M + 1)),
        z_bit=Z_BIT,
        x_bit=X_BIT,
        clone_bits=tuple(range(2, M + 2)),
    )


def build_message_prep(spec: MessageSpec, qubit: int) -> list[Instruction]:
    """RY(psi) then RZ(phi) on a zeroed qubit."""
    return [Instruction(Gate.RY, (qubit,), param=spec.psi),
            Instruction(Gate.RZ, (qubit,), param=spec.phi)]


def correction_table(z_bit_value: int, x_bit_value: int) -> list[str]:
    """Pauli ops each clone applies for a given Bell outcome, in order."""
    if z_bit_value not in (0, 1) or x_bit_value not in (0, 1):
        raise ValueError("measurement bits must be 0 or 1")
    ops = []
    if x_bit_value:
        ops.append("X")
    if z_bit_value:
        ops.append("Z")
    return ops


def _roles(layout: TelecloningLayout) -> dict[int, str]:
    roles = {layout.message_index: "message", layout.port_index: "port"}
    for j, q in enumerate(layout.ancilla_indices, start=1):
        roles[q] = f"ancilla{j}"
    for k, q in enumerate(layout.clone_indices, start=1):
        roles[q] = f"clone{k}"
    return roles


def build_prep_circuit(M: int, spec: MessageSpec,
                       optimized: bool = True) -> tuple[Circuit, TelecloningLayout]:
    """Message prep plus telecloning-state preparation, up to the barrier.

    The chain register gets the full Dicke unitary only in the unoptimized
    variant; since the ancillas are discarded, a single split-and-shift on
    the chain is enough and removes the whole nested Dicke unitary.
    """
    layout = make_layout(M)
    circ = Circuit(layout.num_qubits, layout.num_clbits, qubit_roles=_roles(layout))
    circ.extend(build_message_prep(spec, layout.message_index))
    chain = list(layout.chain)
    clones = list(layout.clone_indices)
    circ.extend(build_weight_ladder(M, ladder_angles(M), chain, clones))
    if optimized:
        circ.extend(build_scs(M, chain))
    else:
        circ.extend(build_dicke_unitary(M, chain))
    circ.extend(build_dicke_unitary(M, clones))
    return circ, layout


def _basis_rotation(basis: str, qubit: int) -> list[Instruction]:
    if basis == "Z":
        return []
    if basis == "X":
        return [Instruction(Gate.H, (qubit,))]
    if basis == "Y":
        return [Instruction(Gate.RZ, (qubit,), param=-math.pi / 2),
                Instruction(Gate.H, (qubit,))]
    raise ValueError(f"unknown tomography basis {basis!r}")


def build_telecloning_circuit(M: int, spec: MessageSpec, optimized: bool = True,
                              tomography_basis: str = "Z") -> tuple[Circuit, TelecloningLayout]:
    """The full circuit: state prep, Bell measurement, feed-forward
    corrections, tomography rotations and clone measurements."""
    circ, layout = build_prep_circuit(M, spec, optimized)
    circ.barrier()
    # Bell measurement of (message, port): phase bit from the message wire,
    # flip bit from the port wire.
    circ.cx(layout.message_index, layout.port_index)
    circ.h(layout.message_index)
    circ.measure(layout.message_index, layout.z_bit)
    circ.measure(layout.port_index, layout.x_bit)
    for q in layout.clone_indices:
        circ.x(q, condition=(layout.x_bit, 1))
    for q in layout.clone_indices:
        circ.z(q, condition=(layout.z_bit, 1))
    for q in layout.clone_indices:
        circ.extend(_basis_rotation(tomography_basis, q))
    for q, b in zip(layout.clone_indices, layout.clone_bits):
        circ.measure(q, b)
    return circ, layout
