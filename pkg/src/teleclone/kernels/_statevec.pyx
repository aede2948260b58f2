# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled statevector kernels.

Every function mutates a 2**n complex amplitude array in place. The layout is
little-endian: bit q of an array index is the value of qubit q, so a
one-qubit gate on qubit q pairs amplitudes at distance 2**q.
"""
from libc.math cimport cos, sin, sqrt

import numpy as np
cimport numpy as cnp

ctypedef cnp.complex128_t cplx

cnp.import_array()


def apply_ry(cplx[::1] amps, int qubit, double theta):
    cdef double c = cos(0.5 * theta)
    cdef double s = sin(0.5 * theta)
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    cdef cplx a0, a1
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                a0 = amps[i]
                a1 = amps[i + stride]
                amps[i] = c * a0 - s * a1
                amps[i + stride] = s * a0 + c * a1


def apply_rz(cplx[::1] amps, int qubit, double phi):
    cdef cplx e0 = cos(0.5 * phi) - 1j * sin(0.5 * phi)
    cdef cplx e1 = cos(0.5 * phi) + 1j * sin(0.5 * phi)
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                amps[i] = e0 * amps[i]
                amps[i + stride] = e1 * amps[i + stride]


def apply_h(cplx[::1] amps, int qubit):
    cdef double r = 1.0 / sqrt(2.0)
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    cdef cplx a0, a1
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                a0 = amps[i]
                a1 = amps[i + stride]
                amps[i] = r * (a0 + a1)
                amps[i + stride] = r * (a0 - a1)


def apply_x(cplx[::1] amps, int qubit):
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    cdef cplx tmp
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                tmp = amps[i]
                amps[i] = amps[i + stride]
                amps[i + stride] = tmp


def apply_y(cplx[::1] amps, int qubit):
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    cdef cplx tmp
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                tmp = amps[i]
                amps[i] = -1j * amps[i + stride]
                amps[i + stride] = 1j * tmp


def apply_z(cplx[::1] amps, int qubit):
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base + stride, base + 2 * stride):
                amps[i] = -amps[i]


def apply_cnot(cplx[::1] amps, int control, int target):
    # enumerate indices with control=1, target=0 directly: three nested
    # strides around the two bit positions, no branch in the inner loop
    cdef int lo = target if target < control else control
    cdef int hi = control if target < control else target
    cdef Py_ssize_t cmask = (<Py_ssize_t>1) << control
    cdef Py_ssize_t tmask = (<Py_ssize_t>1) << target
    cdef Py_ssize_t inner = (<Py_ssize_t>1) << lo
    cdef Py_ssize_t mid = ((<Py_ssize_t>1) << hi) >> (lo + 1)
    cdef Py_ssize_t nouter = amps.shape[0] >> (hi + 1)
    cdef Py_ssize_t a, b, k, base, idx
    cdef cplx tmp
    with nogil:
        for a in range(nouter):
            for b in range(mid):
                base = (a << (hi + 1)) | (b << (lo + 1)) | cmask
                for k in range(base, base + inner):
                    idx = k
                    tmp = amps[idx]
                    amps[idx] = amps[idx | tmask]
                    amps[idx | tmask] = tmp


def prob_one(cplx[::1] amps, int qubit):
    """Probability that measuring ``qubit`` yields 1."""
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    cdef double p = 0.0
    cdef cplx a
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base + stride, base + 2 * stride):
                a = amps[i]
                p += a.real * a.real + a.imag * a.imag
    return p


def collapse(cplx[::1] amps, int qubit, int bit, double scale):
    """Project onto ``qubit == bit`` and multiply survivors by ``scale``."""
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base, keep, kill
    if bit:
        keep, kill = stride, 0
    else:
        keep, kill = 0, stride
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                amps[i + keep] = scale * amps[i + keep]
                amps[i + kill] = 0.0


def reduced_1q(cplx[::1] amps, int qubit):
    """2x2 reduced density matrix of ``qubit`` (returned, not in place)."""
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t nblocks = amps.shape[0] >> (qubit + 1)
    cdef Py_ssize_t b, i, base
    cdef double r00 = 0.0, r11 = 0.0
    cdef double re01 = 0.0, im01 = 0.0
    cdef cplx a0, a1
    with nogil:
        for b in range(nblocks):
            base = b << (qubit + 1)
            for i in range(base, base + stride):
                a0 = amps[i]
                a1 = amps[i + stride]
                r00 += a0.real * a0.real + a0.imag * a0.imag
                r11 += a1.real * a1.real + a1.imag * a1.imag
                re01 += a0.real * a1.real + a0.imag * a1.imag
                im01 += a0.imag * a1.real - a0.real * a1.imag
    rho = np.empty((2, 2), dtype=np.complex128)
    rho[0, 0] = r00
    rho[0, 1] = re01 + 1j * im01
    rho[1, 0] = re01 - 1j * im01
    rho[1, 1] = r11
    return rho


def norm_sq(cplx[::1] amps):
    cdef Py_ssize_t i
    cdef double p = 0.0
    cdef cplx a
    with nogil:
        for i in range(amps.shape[0]):
            a = amps[i]
            p += a.real * a.real + a.imag * a.imag
    return p
