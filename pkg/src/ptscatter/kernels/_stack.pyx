# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stack kernel: transfer matrices of a layer stack over a k array.

Mirrors kernels._stack_py.stack_transfer; one C loop per wavenumber with the
2x2 complex propagator product unrolled.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex ccos(double complex)
    double complex csin(double complex)
    double complex cexp(double complex)
    double cabs(double complex)

DEF SMALL = 1e-6


def stack_transfer(values, widths, double x_left, ks):
    """Transfer matrices for a piecewise-constant potential; see _stack_py."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(widths, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k = np.ascontiguousarray(ks, dtype=np.float64)
    cdef Py_ssize_t nk = k.shape[0]
    cdef Py_ssize_t nl = v.shape[0]
    if w.shape[0] != nl:
        raise ValueError("values and widths must have equal length")
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] out = np.empty((nk, 2, 2), dtype=np.complex128)
    cdef double x_right = x_left
    cdef Py_ssize_t i, j
    for j in range(nl):
        x_right += w[j]
    cdef double complex p11, p12, p21, p22, q11, q12, q21, q22
    cdef double complex kap2, kap, z, c, s, el, er, ik, a11, a12, a21, a22
    cdef double kk
    with nogil:
        for i in range(nk):
            kk = k[i]
            p11 = 1.0
            p12 = 0.0
            p21 = 0.0
            p22 = 1.0
            for j in range(nl):
                kap2 = kk * kk - v[j]
                kap = csqrt(kap2)
                z = kap * w[j]
                c = ccos(z)
                if cabs(z) < SMALL:
                    s = w[j] * (1.0 - z * z / 6.0)
                else:
                    s = csin(z) / kap
                q11 = c * p11 + s * p21
                q12 = c * p12 + s * p22
                q21 = -kap2 * s * p11 + c * p21
                q22 = -kap2 * s * p12 + c * p22
                p11 = q11
                p12 = q12
                p21 = q21
                p22 = q22
            el = cexp(1j * kk * x_left)
            er = cexp(1j * kk * x_right)
            ik = 1j * kk
            a11 = p11 * el + p12 * ik * el
            a21 = p21 * el + p22 * ik * el
            a12 = p11 / el - p12 * ik / el
            a22 = p21 / el - p22 * ik / el
            out[i, 0, 0] = 0.5 * (a11 / er + a21 / (ik * er))
            out[i, 0, 1] = 0.5 * (a12 / er + a22 / (ik * er))
            out[i, 1, 0] = 0.5 * (a11 * er - a21 * er / ik)
            out[i, 1, 1] = 0.5 * (a12 * er - a22 * er / ik)
    return out
