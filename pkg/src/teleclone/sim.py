"""Exact statevector simulation with mid-circuit measurement, classical
feed-forward, stochastic-Pauli noise and reduced-density-matrix extraction.

Noise is simulated by trajectories: each shot is a pure-state run in which a
random Pauli may be injected after every executed gate and each measured bit
may be flipped. Two independent, seed-derived RNG streams are used per shot,
one for measurement sampling and one for noise, so that a zero-rate noise
model reproduces the noiseless bit stream exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .builder import TelecloningLayout, correction_table
from .circuit import Circuit, Gate, Instruction

NORM_TOL = 1e-10


@dataclass
class Statevector:
    n: int
    amps: np.ndarray

    @classmethod
    def zero_state(cls, n: int) -> "Statevector":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n, amps)

    def copy(self) -> "Statevector":
        return Statevector(self.n, self.amps.copy())

    def norm_sq(self) -> float:
        return kernels.norm_sq(self.amps)


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing-style stochastic Pauli noise plus measurement flips.

    Default rates are the device numbers the protocol was run against:
    one-qubit 4e-5, two-qubit 3e-3, SPAM 3e-3. ``enabled`` gates everything.
    """
    p1: float = 4e-5
    p2: float = 3e-3
    p_spam: float = 3e-3
    enabled: bool = False

    def __post_init__(self):
        for name in ("p1", "p2", "p_spam"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name}={rate} outside [0, 1]")


@dataclass(frozen=True)
class ShotResult:
    z_bit: int
    x_bit: int
    clone_bits: tuple[int, ...]
    seed: int


def shot_rngs(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """(measurement, noise) generator pair, both derived from one seed."""
    meas_ss, noise_ss = np.random.SeedSequence(seed).spawn(2)
    return (np.random.Generator(np.random.PCG64(meas_ss)),
            np.random.Generator(np.random.PCG64(noise_ss)))


def apply_gate(state: Statevector, inst: Instruction, classical_store=None) -> Statevector:
    """Apply one unitary instruction in place; barriers are no-ops.

    A conditioned gate fires only when the stored classical bit matches.
    """
    if inst.gate is Gate.MEASURE:
        raise ValueError("apply_gate does not measure; use measure_qubit")
    if inst.gate is Gate.BARRIER:
        return state
    if inst.condition is not None:
        bit, value = inst.condition
        if classical_store is None or classical_store[bit] != value:
            return state
    a = state.amps
    if inst.gate is Gate.RY:
        kernels.apply_ry(a, inst.qubits[0], inst.param)
    elif inst.gate is Gate.RZ:
        kernels.apply_rz(a, inst.qubits[0], inst.param)
    elif inst.gate is Gate.H:
        kernels.apply_h(a, inst.qubits[0])
    elif inst.gate is Gate.X:
        kernels.apply_x(a, inst.qubits[0])
    elif inst.gate is Gate.Z:
        kernels.apply_z(a, inst.qubits[0])
    elif inst.gate is Gate.CNOT:
        kernels.apply_cnot(a, inst.qubits[0], inst.qubits[1])
    else:
        raise ValueError(f"unsupported gate {inst.gate}")
    return state


def measure_qubit(state: Statevector, qubit: int,
                  rng: np.random.Generator) -> tuple[int, Statevector]:
    """Born-rule sample one qubit and collapse the state in place."""
    p_one = kernels.prob_one(state.amps, qubit)
    bit = 1 if rng.random() < p_one else 0
    p_branch = p_one if bit else 1.0 - p_one
    if p_branch <= 0.0:
        raise RuntimeError("sampled a zero-probability measurement branch")
    kernels.collapse(state.amps, qubit, bit, 1.0 / math.sqrt(p_branch))
    return bit, state


def partial_trace_1q(state: Statevector, qubit: int) -> np.ndarray:
    if not 0 <= qubit < state.n:
        raise ValueError(f"qubit {qubit} out of range")
    return kernels.reduced_1q(state.amps, qubit)


_PAULI_APPLY = (kernels.apply_x, kernels.apply_y, kernels.apply_z)


def _inject_noise(state: Statevector, inst: Instruction, noise: NoiseModel,
                  rng: np.random.Generator) -> None:
    """Stochastic Pauli insertion after an executed gate.

    Uniform over the 3 non-identity Paulis for one-qubit gates, over the 15
    non-identity pairs for CNOT. Zero rates draw nothing, which keeps the
    noise stream aligned with the noiseless case.
    """
    if inst.gate is Gate.CNOT:
        if noise.p2 > 0.0 and rng.random() < noise.p2:
            pair = int(rng.integers(15)) + 1
            a, b = divmod(pair, 4)
            if a:
                _PAULI_APPLY[a - 1](state.amps, inst.qubits[0])
            if b:
                _PAULI_APPLY[b - 1](state.amps, inst.qubits[1])
    else:
        if noise.p1 > 0.0 and rng.random() < noise.p1:
            _PAULI_APPLY[int(rng.integers(3))](state.amps, inst.qubits[0])


def _spam_flip(bit: int, noise: NoiseModel | None, rng: np.random.Generator) -> int:
    if noise is not None and noise.enabled and noise.p_spam > 0.0:
        if rng.random() < noise.p_spam:
            bit ^= 1
    return bit


def run_shot(circuit: Circuit, noise: NoiseModel | None, seed: int) -> ShotResult:
    """One full trajectory: deterministic given the seed.

    Classical bit 0 is the message (phase) bit, bit 1 the port (flip) bit,
    the rest are clone outcomes, following the builder's layout.
    """
    meas_rng, noise_rng = shot_rngs(seed)
    noisy = noise is not None and noise.enabled
    state = Statevector.zero_state(circuit.num_qubits)
    classical = [0] * circuit.num_clbits
    for inst in circuit.instructions:
        if inst.gate is Gate.BARRIER:
            continue
        if inst.gate is Gate.MEASURE:
            bit, _ = measure_qubit(state, inst.qubits[0], meas_rng)
            classical[inst.cbit] = _spam_flip(bit, noise, noise_rng)
            continue
        if inst.condition is not None and classical[inst.condition[0]] != inst.condition[1]:
            continue
        apply_gate(state, inst)
        if noisy:
            _inject_noise(state, inst, noise, noise_rng)
    return ShotResult(z_bit=classical[0], x_bit=classical[1],
                      clone_bits=tuple(classical[2:]), seed=seed)


def simulate_unitary(circuit: Circuit) -> Statevector:
    """Run a measurement-free circuit from |0...0>."""
    state = Statevector.zero_state(circuit.num_qubits)
    for inst in circuit.instructions:
        if inst.gate is Gate.MEASURE:
            raise ValueError("circuit contains a measurement")
        if inst.gate is not Gate.BARRIER:
            apply_gate(state, inst)
    return state


@dataclass(frozen=True)
class ExactCloneResult:
    """Analytic Bell-outcome average of the corrected clone states."""
    probabilities: np.ndarray          # shape (4,), indexed by (z, x) as 2z+x
    clones: list[np.ndarray]           # M outcome-averaged 2x2 matrices
    per_outcome: np.ndarray            # shape (4, M, 2, 2)


def exact_clone_density(circuit: Circuit, layout: TelecloningLayout) -> ExactCloneResult:
    """Clone density matrices of a prep circuit, averaged over Bell outcomes.

    Runs the preparation exactly, performs the Bell-basis projection of
    (message, port) analytically for all four outcomes, applies the
    feed-forward correction for each, and partial-traces every clone.
    """
    if circuit.num_qubits != layout.num_qubits:
        raise ValueError("circuit does not match layout")
    state = simulate_unitary(circuit)
    # Bell basis change, then computational projections of message and port.
    kernels.apply_cnot(state.amps, layout.message_index, layout.port_index)
    kernels.apply_h(state.amps, layout.message_index)
    M = layout.M
    probs = np.zeros(4)
    per_outcome = np.zeros((4, M, 2, 2), dtype=np.complex128)
    p_z1 = kernels.prob_one(state.amps, layout.message_index)
    for z in (0, 1):
        pz = p_z1 if z else 1.0 - p_z1
        if pz <= 0.0:
            continue
        zstate = state.copy()
        kernels.collapse(zstate.amps, layout.message_index, z, 1.0 / math.sqrt(pz))
        p_x1 = kernels.prob_one(zstate.amps, layout.port_index)
        for x in (0, 1):
            px = p_x1 if x else 1.0 - p_x1
            if px <= 0.0:
                continue
            branch = zstate.copy()
            kernels.collapse(branch.amps, layout.port_index, x, 1.0 / math.sqrt(px))
            for pauli in correction_table(z, x):
                op = kernels.apply_x if pauli == "X" else kernels.apply_z
                for q in layout.clone_indices:
                    op(branch.amps, q)
            probs[2 * z + x] = pz * px
            for k, q in enumerate(layout.clone_indices):
                per_outcome[2 * z + x, k] = partial_trace_1q(branch, q)
    clones = [np.tensordot(probs, per_outcome[:, k], axes=(0, 0)) for k in range(M)]
    return ExactCloneResult(probabilities=probs, clones=clones, per_outcome=per_outcome)
