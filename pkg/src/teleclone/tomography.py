"""Parallel single-qubit state tomography from X/Y/Z-basis counts.

Each clone is reconstructed independently: basis expectation values give a
Bloch vector estimate, an unphysical estimate is radially projected back onto
the Bloch ball (the least-squares physical fit for a single qubit), and the
result is compared against the pure message state with the closed-form
two-level fidelity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .builder import BASES, MessageSpec

_SIGMA = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class TomographyCounts:
    """Outcome counts per (basis, clone): counts[basis][k] = (n0, n1)."""
    shots_per_basis: int
    counts: dict[str, list[tuple[int, int]]]

    def __post_init__(self):
        for basis in BASES:
            if basis not in self.counts:
                raise ValueError(f"missing {basis}-basis counts")
        sizes = {len(self.counts[b]) for b in BASES}
        if len(sizes) != 1:
            raise ValueError("clone count differs between bases")
        for basis in BASES:
            for k, (n0, n1) in enumerate(self.counts[basis]):
                if n0 + n1 != self.shots_per_basis:
                    raise ValueError(
                        f"{basis} clone {k}: {n0}+{n1} != {self.shots_per_basis} shots")

    @property
    def num_clones(self) -> int:
        return len(self.counts["Z"])


def estimate_bloch(counts: TomographyCounts, clone: int) -> np.ndarray:
    """Raw Bloch estimate r_b = (n0 - n1)/shots for b in X, Y, Z."""
    if counts.shots_per_basis <= 0:
        raise ValueError("need at least one shot per basis")
    r = []
    for basis in BASES:
        n0, n1 = counts.counts[basis][clone]
        r.append((n0 - n1) / counts.shots_per_basis)
    return np.array(r)


def project_physical(r: np.ndarray) -> np.ndarray:
    """Closest Bloch vector with |r| <= 1 (radial shrink; identity inside)."""
    r = np.asarray(r, dtype=float)
    norm = float(np.linalg.norm(r))
    if norm <= 1.0:
        return r
    return r / norm


def density_from_bloch(r: np.ndarray) -> np.ndarray:
    """rho = (I + r . sigma)/2; requires a physical vector."""
    r = np.asarray(r, dtype=float)
    if np.linalg.norm(r) > 1.0 + 1e-12:
        raise ValueError(f"unphysical Bloch vector |r|={np.linalg.norm(r)}")
    rho = np.eye(2, dtype=np.complex128)
    for val, basis in zip(r, BASES):
        rho += val * _SIGMA[basis]
    return rho / 2.0


def bloch_from_density(rho: np.ndarray) -> np.ndarray:
    return np.array([np.trace(rho @ _SIGMA[b]).real for b in BASES])


def _check_physical(rho: np.ndarray, tol: float = 1e-8) -> None:
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError("density matrix trace is not 1")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise ValueError("density matrix has a negative eigenvalue")


def fidelity(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Uhlmann fidelity, squared convention, via the 2x2 closed form

        F = tr(rho1 rho2) + 2 sqrt(det(rho1) det(rho2)).
    """
    _check_physical(rho1)
    _check_physical(rho2)
    cross = float(np.trace(rho1 @ rho2).real)
    d1 = max(float(np.linalg.det(rho1).real), 0.0)
    d2 = max(float(np.linalg.det(rho2).real), 0.0)
    return min(max(cross + 2.0 * math.sqrt(d1 * d2), 0.0), 1.0)


def message_density(spec: MessageSpec) -> np.ndarray:
    return density_from_bloch(np.array(spec.bloch_vector()))


def reconstruct_clones(counts: TomographyCounts,
                       message: MessageSpec) -> list[tuple[np.ndarray, float]]:
    """Per clone: Bloch estimate -> physical projection -> density matrix ->
    fidelity against the pure message state."""
    target = message_density(message)
    out = []
    for k in range(counts.num_clones):
        rho = density_from_bloch(project_physical(estimate_bloch(counts, k)))
        out.append((rho, fidelity(rho, target)))
    return out
