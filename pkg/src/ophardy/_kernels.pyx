# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Poisson quadrature sum."""
import numpy as np


def poisson_sum(const double complex[::1] zetas,
                const double complex[::1] nodes,
                const double[::1] weights,
                const double complex[:, ::1] values):
    """``out[a, k] = sum_j weights[j] * P(zetas[a], nodes[j]) * values[j, k]``."""
    cdef Py_ssize_t nz = zetas.shape[0]
    cdef Py_ssize_t nn = nodes.shape[0]
    cdef Py_ssize_t m = values.shape[1]
    if values.shape[0] != nn or weights.shape[0] != nn:
        raise ValueError("nodes, weights and values disagree in length")
    out = np.zeros((nz, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double[::1] acc_re = np.zeros(m)
    cdef double[::1] acc_im = np.zeros(m)
    cdef Py_ssize_t a, j, k
    cdef double zr, zi, num, dx, dy, w
    with nogil:
        for a in range(nz):
            zr = zetas[a].real
            zi = zetas[a].imag
            num = 1.0 - (zr * zr + zi * zi)
            for k in range(m):
                acc_re[k] = 0.0
                acc_im[k] = 0.0
            for j in range(nn):
                dx = nodes[j].real - zr
                dy = nodes[j].imag - zi
                w = weights[j] * num / (dx * dx + dy * dy)
                for k in range(m):
                    acc_re[k] += w * values[j, k].real
                    acc_im[k] += w * values[j, k].imag
            for k in range(m):
                o[a, k] = acc_re[k] + 1j * acc_im[k]
    return out
