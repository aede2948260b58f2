"""Experiment orchestration shared by the CLI and the test suite."""
from __future__ import annotations

import numpy as np

from .analysis import (CloneReport, aggregate, bell_proportions,
                       theoretical_fidelity)
from .builder import (BASES, MessageSpec, build_prep_circuit,
                      build_telecloning_circuit)
from .circuit import compute_depth, count_gates
from .sim import NoiseModel, ShotResult, exact_clone_density
from .sampling import ShotSampler
from .tomography import TomographyCounts, bloch_from_density, fidelity, message_density


def counts_from_results(per_basis: dict[str, list[ShotResult]],
                        M: int) -> TomographyCounts:
    shots = {len(v) for v in per_basis.values()}
    if len(shots) != 1:
        raise ValueError("bases were sampled with different shot counts")
    counts = {}
    for basis in BASES:
        ones = [0] * M
        for r in per_basis[basis]:
            for k, bit in enumerate(r.clone_bits):
                ones[k] += bit
        n = len(per_basis[basis])
        counts[basis] = [(n - ones[k], ones[k]) for k in range(M)]
    return TomographyCounts(shots_per_basis=shots.pop(), counts=counts)


def run_tomography_experiment(M: int, message: MessageSpec, shots: int,
                              seed: int, noise: NoiseModel | None = None,
                              optimized: bool = True,
                              workers: int = 1) -> CloneReport:
    """Sample all three basis circuits, reconstruct, and aggregate.

    Shot k of basis b uses seed = seed + b*shots + k, so every shot in the
    experiment is independently seeded and reproducible.
    """
    per_basis: dict[str, list[ShotResult]] = {}
    all_results: list[ShotResult] = []
    gate_counts: dict[str, int] = {}
    depth = 0
    for b, basis in enumerate(BASES):
        circuit, _ = build_telecloning_circuit(M, message, optimized, basis)
        if basis == "Z":
            gate_counts = count_gates(circuit)
            depth = compute_depth(circuit)
        sampler = ShotSampler(circuit, noise)
        results = sampler.sample(seed + b * shots, shots, workers)
        per_basis[basis] = results
        all_results.extend(results)
    counts = counts_from_results(per_basis, M)
    return aggregate(M, message, all_results, counts, gate_counts, depth,
                     optimized, seed, noise)


def run_exact_experiment(M: int, message: MessageSpec,
                         optimized: bool = True) -> CloneReport:
    """Analytic report: Bell-outcome-averaged clone states, no sampling."""
    prep, layout = build_prep_circuit(M, message, optimized)
    result = exact_clone_density(prep, layout)
    target = message_density(message)
    fidelities = [fidelity(rho, target) for rho in result.clones]
    zcirc, _ = build_telecloning_circuit(M, message, optimized, "Z")
    from dataclasses import asdict
    return CloneReport(
        M=M,
        message_psi=message.psi,
        message_phi=message.phi,
        fidelities=fidelities,
        mean_fidelity=float(np.mean(fidelities)),
        theoretical=theoretical_fidelity(1, M),
        bell_proportions=[float(p) for p in result.probabilities],
        blochs=[[float(v) for v in bloch_from_density(rho)] for rho in result.clones],
        densities=[[[[float(v.real), float(v.imag)] for v in row] for row in rho]
                   for rho in result.clones],
        gate_counts={k: v for k, v in count_gates(zcirc).items() if v},
        depth=compute_depth(zcirc),
        optimized=optimized,
        shots_per_basis=0,
        seed=0,
        noise=asdict(NoiseModel(enabled=False)),
        exact=True,
    )


def compare_variants(m_values=range(2, 10)) -> list[dict]:
    """Optimized vs unoptimized CNOT count, depth and exact fidelity per M."""
    rows = []
    for M in m_values:
        row = {"M": M, "theoretical": theoretical_fidelity(1, M)}
        for label, optimized in (("optimized", True), ("unoptimized", False)):
            circuit, _ = build_telecloning_circuit(M, MessageSpec(0.0, 0.0),
                                                   optimized, "Z")
            prep, layout = build_prep_circuit(M, MessageSpec(0.0, 0.0), optimized)
            exact = exact_clone_density(prep, layout)
            target = message_density(MessageSpec(0.0, 0.0))
            row[label] = {
                "cnot": count_gates(circuit)["CNOT"],
                "depth": compute_depth(circuit),
                "fidelity": float(np.mean([fidelity(rho, target)
                                           for rho in exact.clones])),
            }
        rows.append(row)
    return rows
