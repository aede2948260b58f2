"""Batch shot sampling with the exact per-seed semantics of run_shot.

run_shot is the reference: one full statevector trajectory per seed. For
telecloning-shaped circuits (a unitary prefix, a few early measurements, a
conditioned/unconditioned gate tail, then terminal measurements) almost all
of that work repeats identically across shots, so this module shares it:

  * the noiseless prefix is simulated once; its measurement branches and the
    terminal-outcome joint distributions are cached,
  * shots without an injected gate error never touch a statevector again --
    their bits are drawn from the cached distributions with the same RNG
    stream discipline as run_shot,
  * shots whose first error lands in the prefix are finished from a shared
    forward sweep of the prefix state (one fork per shot),
  * shots whose first error lands after the early measurements are finished
    from the cached measurement-branch states.

Circuits that do not fit the shape fall back to plain per-shot run_shot.
Results are keyed by shot index (seed = base_seed + index), so they do not
depend on worker count or on which path produced them.
"""
from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuit import Circuit, Gate, Instruction
from .sim import (NoiseModel, ShotResult, Statevector, apply_gate,
                  measure_qubit, run_shot, shot_rngs, _inject_noise, _spam_flip)

_MAX_EARLY_MEASURES = 3


@dataclass
class _Shape:
    prefix_end: int                 # instructions[:prefix_end] unitary, unconditioned
    early_measures: list[int]       # measure instruction indices, in order
    post_start: int                 # first instruction after the last early measure
    terminal_start: int             # start of the all-measure suffix
    terminal_qubits: list[int]
    terminal_cbits: list[int]


def _analyze(circuit: Circuit) -> _Shape | None:
    insts = circuit.instructions
    n = len(insts)
    terminal_start = n
    while terminal_start > 0 and insts[terminal_start - 1].gate is Gate.MEASURE:
        terminal_start -= 1
    first_measure = next((i for i, inst in enumerate(insts)
                          if inst.gate is Gate.MEASURE), n)
    if first_measure == n or terminal_start == n:
        return None
    for inst in insts[:first_measure]:
        if inst.condition is not None:
            return None
    early = [i for i in range(first_measure, terminal_start)
             if insts[i].gate is Gate.MEASURE]
    if not early or len(early) > _MAX_EARLY_MEASURES:
        return None
    # no gates interleaved between the early measurements, and the gate tail
    # may only condition on bits the early measurements wrote
    if early != list(range(first_measure, first_measure + len(early))):
        return None
    early_bits = {insts[i].cbit for i in early}
    for inst in insts[early[-1] + 1:terminal_start]:
        if inst.gate is Gate.MEASURE:
            return None
        if inst.condition is not None and inst.condition[0] not in early_bits:
            return None
    terminal = insts[terminal_start:]
    cbits = [inst.cbit for inst in terminal]
    if len(set(cbits)) != len(cbits):
        return None
    return _Shape(prefix_end=first_measure,
                  early_measures=early,
                  post_start=early[-1] + 1,
                  terminal_start=terminal_start,
                  terminal_qubits=[inst.qubits[0] for inst in terminal],
                  terminal_cbits=cbits)


def _marginal(state: Statevector, qubits: list[int]) -> np.ndarray:
    """Joint outcome distribution of the given qubits, axes in list order."""
    n = state.n
    probs = (state.amps.real ** 2 + state.amps.imag ** 2).reshape([2] * n)
    # numpy axis j corresponds to qubit n-1-j
    keep = [n - 1 - q for q in qubits]
    drop = tuple(ax for ax in range(n) if ax not in keep)
    if drop:
        probs = probs.sum(axis=drop)
    remaining = sorted(keep)
    order = [remaining.index(ax) for ax in keep]
    return probs.transpose(order)


class ShotSampler:
    """Deterministic batch sampler for one circuit and noise setting."""

    def __init__(self, circuit: Circuit, noise: NoiseModel | None = None):
        self.circuit = circuit
        self.noise = noise
        self.noisy = noise is not None and noise.enabled
        self.shape = _analyze(circuit)
        self._branch_states: dict[tuple[int, ...], Statevector] = {}
        self._branch_p1: dict[tuple[int, ...], float] = {}
        self._tables: dict[tuple, np.ndarray] = {}
        self._prepared = False

    # -- precomputation ----------------------------------------------------

    def _prepare(self) -> None:
        if self._prepared or self.shape is None:
            return
        shape = self.shape
        state = Statevector.zero_state(self.circuit.num_qubits)
        for inst in self.circuit.instructions[:shape.prefix_end]:
            apply_gate(state, inst)
        self._grow_branches(state, (), 0)
        self._prepared = True

    def _grow_branches(self, state: Statevector, bits: tuple[int, ...], k: int) -> None:
        """Depth-first collapse of the early measurements; caches the exact
        conditional probabilities run_shot would compute."""
        shape = self.shape
        if k == len(shape.early_measures):
            self._branch_states[bits] = state
            return
        qubit = self.circuit.instructions[shape.early_measures[k]].qubits[0]
        p_one = kernels.prob_one(state.amps, qubit)
        self._branch_p1[bits] = p_one
        for bit in (0, 1):
            p = p_one if bit else 1.0 - p_one
            if p <= 0.0:
                continue
            child = state.copy() if bit == 0 else state
            kernels.collapse(child.amps, qubit, bit, 1.0 / math.sqrt(p))
            self._grow_branches(child, bits + (bit,), k + 1)

    def _table(self, true_bits: tuple[int, ...], classical: tuple[int, ...]) -> np.ndarray:
        """Terminal joint distribution for a (true branch, recorded bits)
        pair, built on demand."""
        key = (true_bits, classical)
        if key not in self._tables:
            state = self._branch_states[true_bits].copy()
            store = list(classical)
            shape = self.shape
            for inst in self.circuit.instructions[shape.post_start:shape.terminal_start]:
                apply_gate(state, inst, store)
            self._tables[key] = _marginal(state, shape.terminal_qubits)
        return self._tables[key]

    # -- per-shot paths ------------------------------------------------------

    def _finish_with_state(self, state: Statevector, start: int, classical: list[int],
                           meas_rng, noise_rng) -> ShotResult:
        """run_shot's loop from an instruction index with live state."""
        noise = self.noise
        for inst in self.circuit.instructions[start:]:
            if inst.gate is Gate.BARRIER:
                continue
            if inst.gate is Gate.MEASURE:
                bit, _ = measure_qubit(state, inst.qubits[0], meas_rng)
                classical[inst.cbit] = _spam_flip(bit, noise, noise_rng)
                continue
            if inst.condition is not None and classical[inst.condition[0]] != inst.condition[1]:
                continue
            apply_gate(state, inst)
            if self.noisy:
                _inject_noise(state, inst, noise, noise_rng)
        return ShotResult(classical[0], classical[1], tuple(classical[2:]), -1)

    def _noise_check(self, inst: Instruction, rng) -> bool:
        """Mirror of _inject_noise's draw logic, without a state."""
        noise = self.noise
        if inst.gate is Gate.CNOT:
            return noise.p2 > 0.0 and rng.random() < noise.p2
        return noise.p1 > 0.0 and rng.random() < noise.p1


    def _one_shot(self, seed: int, sweep) -> ShotResult | None:
        """Table-path sampling; defers to sweep/branch replays on gate errors.

        Returns None when the shot was queued on the prefix sweep.
        """
        shape = self.shape
        insts = self.circuit.instructions
        meas_rng, noise_rng = shot_rngs(seed)
        # prefix: only noise draws can occur
        if self.noisy:
            for idx in range(shape.prefix_end):
                inst = insts[idx]
                if inst.gate is Gate.BARRIER:
                    continue
                if self._noise_check(inst, noise_rng):
                    sweep.append((idx, seed, meas_rng, noise_rng))
                    return None
        classical = [0] * self.circuit.num_clbits
        true_bits: tuple[int, ...] = ()
        for i in shape.early_measures:
            p_one = self._branch_p1[true_bits]
            bit = 1 if meas_rng.random() < p_one else 0
            true_bits += (bit,)
            classical[insts[i].cbit] = _spam_flip(bit, self.noise, noise_rng)
        if self.noisy:
            store = classical
            for idx in range(shape.post_start, shape.terminal_start):
                inst = insts[idx]
                if inst.gate is Gate.BARRIER:
                    continue
                if inst.condition is not None and store[inst.condition[0]] != inst.condition[1]:
                    continue
                if self._noise_check(inst, noise_rng):
                    return self._branch_replay(idx, true_bits, classical,
                                               meas_rng, noise_rng, seed)
        table = self._table(true_bits, tuple(classical))
        sub = table
        for i, cbit in enumerate(shape.terminal_cbits):
            total = sub.sum()
            p_one = float(sub[1].sum() / total) if total > 0.0 else 0.0
            bit = 1 if meas_rng.random() < p_one else 0
            sub = sub[bit]
            classical[cbit] = _spam_flip(bit, self.noise, noise_rng)
        return ShotResult(classical[0], classical[1], tuple(classical[2:]), seed)

    def _branch_replay(self, error_idx: int, true_bits, classical, meas_rng,
                       noise_rng, seed: int) -> ShotResult:
        """Finish a shot whose first gate error hit the post-measurement tail."""
        state = self._branch_states[true_bits].copy()
        for inst in self.circuit.instructions[self.shape.post_start:error_idx]:
            apply_gate(state, inst, classical)
        inst = self.circuit.instructions[error_idx]
        apply_gate(state, inst, classical)
        _apply_drawn_error(state, inst, noise_rng)
        result = self._finish_with_state(state, error_idx + 1, classical,
                                         meas_rng, noise_rng)
        return ShotResult(result.z_bit, result.x_bit, result.clone_bits, seed)

    def _run_sweep(self, sweep) -> dict[int, ShotResult]:
        """Finish prefix-error shots from one shared forward pass."""
        out = {}
        if not sweep:
            return out
        sweep.sort(key=lambda item: item[0])
        state = Statevector.zero_state(self.circuit.num_qubits)
        pos = 0
        insts = self.circuit.instructions
        for idx, seed, meas_rng, noise_rng in sweep:
            for inst in insts[pos:idx]:
                apply_gate(state, inst)
            pos = idx
            fork = state.copy()
            apply_gate(fork, insts[idx])
            _apply_drawn_error(fork, insts[idx], noise_rng)
            classical = [0] * self.circuit.num_clbits
            result = self._finish_with_state(fork, idx + 1, classical,
                                             meas_rng, noise_rng)
            out[seed] = ShotResult(result.z_bit, result.x_bit,
                                   result.clone_bits, seed)
        return out

    # -- public API ----------------------------------------------------------

    def sample_range(self, base_seed: int, start: int, stop: int) -> list[ShotResult]:
        if self.shape is None:
            return [run_shot(self.circuit, self.noise, base_seed + i)
                    for i in range(start, stop)]
        self._prepare()
        results: dict[int, ShotResult] = {}
        sweep: list = []
        for i in range(start, stop):
            seed = base_seed + i
            r = self._one_shot(seed, sweep)
            if r is not None:
                results[seed] = r
        results.update(self._run_sweep(sweep))
        return [results[base_seed + i] for i in range(start, stop)]

    def sample(self, base_seed: int, shots: int, workers: int = 1) -> list[ShotResult]:
        if shots < 0:
            raise ValueError("shots must be nonnegative")
        if workers <= 1 or shots < 2 * workers:
            return self.sample_range(base_seed, 0, shots)
        if self.shape is not None:
            self._prepare()   # before forking, so workers share the caches
        bounds = np.linspace(0, shots, workers + 1).astype(int)
        chunks = [(base_seed, int(a), int(b)) for a, b in zip(bounds, bounds[1:])]
        ctx = multiprocessing.get_context("fork")
        global _ACTIVE_SAMPLER
        _ACTIVE_SAMPLER = self
        try:
            with ctx.Pool(workers) as pool:
                parts = pool.map(_pool_range, chunks)
        finally:
            _ACTIVE_SAMPLER = None
        return [r for part in parts for r in part]


_ACTIVE_SAMPLER: ShotSampler | None = None


def _pool_range(args) -> list[ShotResult]:
    base_seed, start, stop = args
    return _ACTIVE_SAMPLER.sample_range(base_seed, start, stop)


def _apply_drawn_error(state: Statevector, inst: Instruction, rng) -> None:
    """Pauli insertion whose fire/no-fire draw already happened."""
    paulis = (kernels.apply_x, kernels.apply_y, kernels.apply_z)
    if inst.gate is Gate.CNOT:
        pair = int(rng.integers(15)) + 1
        a, b = divmod(pair, 4)
        if a:
            paulis[a - 1](state.amps, inst.qubits[0])
        if b:
            paulis[b - 1](state.amps, inst.qubits[1])
    else:
        paulis[int(rng.integers(3))](state.amps, inst.qubits[0])


def sample_shots(circuit: Circuit, shots: int, noise: NoiseModel | None = None,
                 base_seed: int = 0, workers: int = 1) -> list[ShotResult]:
    """Shots i = 0..shots-1 with seed base_seed + i, equal to run_shot on
    every seed but sharing the noiseless prefix work across the batch."""
    return ShotSampler(circuit, noise).sample(base_seed, shots, workers)
