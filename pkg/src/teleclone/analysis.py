"""Closed-form cloning theory and aggregation of runs into report records."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .builder import MessageSpec
from .sim import NoiseModel, ShotResult
from .tomography import (TomographyCounts, bloch_from_density, message_density,
                         reconstruct_clones)


def theoretical_fidelity(N: int, M: int) -> float:
    """Optimal N->M universal symmetric cloning fidelity (MN+M+N)/(M(N+2))."""
    if N < 1 or M < N:
        raise ValueError(f"need M >= N >= 1, got N={N}, M={M}")
    return (M * N + M + N) / (M * (N + 2))


def shrinking_factor(M: int) -> float:
    """Weight of the pure component in the ideal 1->M clone state."""
    return (M + 2) / (3 * M)


def ideal_clone_density(M: int, message: MessageSpec) -> np.ndarray:
    """eta |psi><psi| + (1 - eta) I/2 with eta = (M+2)/(3M).

    The mixing weight is fixed by requiring the clone fidelity
    eta + (1-eta)/2 to meet the 1->M bound (2M+1)/(3M).
    """
    if M < 2:
        raise ValueError(f"need M >= 2 clones, got {M}")
    eta = shrinking_factor(M)
    return eta * message_density(message) + (1 - eta) * np.eye(2) / 2


@dataclass
class CloneReport:
    """Everything one telecloning run produced, with full provenance."""
    M: int
    message_psi: float
    message_phi: float
    fidelities: list[float]
    mean_fidelity: float
    theoretical: float
    bell_proportions: list[float]
    blochs: list[list[float]]
    densities: list[list[list[float]]]    # per clone, 2x2 of [re, im]
    gate_counts: dict[str, int]
    depth: int
    optimized: bool
    shots_per_basis: int
    seed: int
    noise: dict
    exact: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _density_payload(rho: np.ndarray) -> list[list[list[float]]]:
    return [[[float(v.real), float(v.imag)] for v in row] for row in rho]


def bell_proportions(results: list[ShotResult]) -> list[float]:
    if not results:
        raise ValueError("no shot results to aggregate")
    hist = [0, 0, 0, 0]
    for r in results:
        hist[2 * r.z_bit + r.x_bit] += 1
    return [h / len(results) for h in hist]


def aggregate(M: int, message: MessageSpec, results: list[ShotResult],
              counts: TomographyCounts, gate_counts: dict[str, int], depth: int,
              optimized: bool, seed: int, noise: NoiseModel | None,
              exact: bool = False) -> CloneReport:
    """Fold shot results and tomography counts into a CloneReport."""
    if counts.num_clones != M:
        raise ValueError(f"counts are for {counts.num_clones} clones, expected {M}")
    recon = reconstruct_clones(counts, message)
    fidelities = [f for _, f in recon]
    noise_payload = (asdict(noise) if noise is not None
                     else asdict(NoiseModel(enabled=False)))
    return CloneReport(
        M=M,
        message_psi=message.psi,
        message_phi=message.phi,
        fidelities=fidelities,
        mean_fidelity=float(np.mean(fidelities)),
        theoretical=theoretical_fidelity(1, M),
        bell_proportions=bell_proportions(results),
        blochs=[[float(v) for v in bloch_from_density(rho)] for rho, _ in recon],
        densities=[_density_payload(rho) for rho, _ in recon],
        gate_counts={k: v for k, v in gate_counts.items() if v},
        depth=depth,
        optimized=optimized,
        shots_per_basis=counts.shots_per_basis,
        seed=seed,
        noise=noise_payload,
        exact=exact,
    )
