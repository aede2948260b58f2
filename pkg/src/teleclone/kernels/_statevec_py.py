"""Pure-numpy statevector kernels, signature-compatible with the compiled ones.

Used when the Cython extension is unavailable (or forced via
TELECLONE_PURE_PYTHON). Each one-qubit update reshapes the amplitude array so
axis 1 is the target qubit's bit; that keeps everything vectorized.
"""
from __future__ import annotations

import math

import numpy as np


def _split(amps: np.ndarray, qubit: int) -> np.ndarray:
    return amps.reshape(-1, 2, 1 << qubit)


def apply_ry(amps: np.ndarray, qubit: int, theta: float) -> None:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    v = _split(amps, qubit)
    a0 = v[:, 0, :].copy()
    v[:, 0, :] *= c
    v[:, 0, :] -= s * v[:, 1, :]
    v[:, 1, :] *= c
    v[:, 1, :] += s * a0


def apply_rz(amps: np.ndarray, qubit: int, phi: float) -> None:
    v = _split(amps, qubit)
    v[:, 0, :] *= complex(math.cos(phi / 2), -math.sin(phi / 2))
    v[:, 1, :] *= complex(math.cos(phi / 2), math.sin(phi / 2))


def apply_h(amps: np.ndarray, qubit: int) -> None:
    r = 1.0 / math.sqrt(2.0)
    v = _split(amps, qubit)
    a0 = v[:, 0, :].copy()
    v[:, 0, :] += v[:, 1, :]
    v[:, 0, :] *= r
    v[:, 1, :] *= -1.0
    v[:, 1, :] += a0
    v[:, 1, :] *= r


def apply_x(amps: np.ndarray, qubit: int) -> None:
    v = _split(amps, qubit)
    v[:, [0, 1], :] = v[:, [1, 0], :]


def apply_y(amps: np.ndarray, qubit: int) -> None:
    v = _split(amps, qubit)
    a0 = v[:, 0, :].copy()
    v[:, 0, :] = -1j * v[:, 1, :]
    v[:, 1, :] = 1j * a0


def apply_z(amps: np.ndarray, qubit: int) -> None:
    v = _split(amps, qubit)
    v[:, 1, :] *= -1.0


def apply_cnot(amps: np.ndarray, control: int, target: int) -> None:
    hi, lo = max(control, target), min(control, target)
    v = amps.reshape(-1, 2, (1 << hi) >> (lo + 1), 2, 1 << lo)
    c_ax, t_ax = (1, 3) if control > target else (3, 1)
    sel = [slice(None)] * 5
    sel[c_ax] = 1
    one = v[tuple(sel)]
    one[...] = np.flip(one, axis=1 if c_ax == 3 else 2)


def prob_one(amps: np.ndarray, qubit: int) -> float:
    v = _split(amps, qubit)[:, 1, :]
    return float(np.sum(v.real * v.real + v.imag * v.imag))


def collapse(amps: np.ndarray, qubit: int, bit: int, scale: float) -> None:
    v = _split(amps, qubit)
    v[:, 1 - bit, :] = 0.0
    v[:, bit, :] *= scale


def reduced_1q(amps: np.ndarray, qubit: int) -> np.ndarray:
    v = _split(amps, qubit)
    a0 = v[:, 0, :].ravel()
    a1 = v[:, 1, :].ravel()
    rho = np.empty((2, 2), dtype=np.complex128)
    rho[0, 0] = np.vdot(a0, a0).real
    rho[1, 1] = np.vdot(a1, a1).real
    rho[0, 1] = np.vdot(a1, a0)   # sum a0 * conj(a1)
    rho[1, 0] = rho[0, 1].conjugate()
    return rho


def norm_sq(amps: np.ndarray) -> float:
    return float(np.sum(amps.real * amps.real + amps.imag * amps.imag))
