# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled statevector kernels (hot inner loops).

Contracts mirror _kernels_py: in-place mutation of a complex128 amplitude
array of length 2^k, little-endian qubit order. Internally the complex
buffer is addressed as interleaved doubles so the loops reduce to real
multiply-adds the compiler can vectorize.
"""

from libc.math cimport cos, sin

BACKEND = "compiled"


def apply_phase(double complex[::1] amps, const double[::1] diag, double gamma):
    cdef Py_ssize_t i, n = amps.shape[0]
    cdef double* a = <double*> &amps[0]
    cdef double ph, cg, sg, re, im
    for i in range(n):
        ph = gamma * diag[i]
        cg = cos(ph)
        sg = sin(ph)
        re = a[2 * i]
        im = a[2 * i + 1]
        # multiply by exp(-j*ph)
        a[2 * i] = re * cg + im * sg
        a[2 * i + 1] = im * cg - re * sg


def apply_mixer(double complex[::1] amps, int k, double beta):
    cdef double c = cos(beta), s = sin(beta)
    cdef Py_ssize_t n = amps.shape[0]
    cdef double* a = <double*> &amps[0]
    cdef Py_ssize_t stride, block, i, j
    cdef double re0, im0, re1, im1
    cdef int q
    for q in range(k):
        stride = 1 << q
        block = 0
        while block < n:
            for i in range(block, block + stride):
                j = i + stride
                re0 = a[2 * i]
                im0 = a[2 * i + 1]
                re1 = a[2 * j]
                im1 = a[2 * j + 1]
                # rotation [[c, -j*s], [-j*s, c]]
                a[2 * i] = c * re0 + s * im1
                a[2 * i + 1] = c * im0 - s * re1
                a[2 * j] = c * re1 + s * im0
                a[2 * j + 1] = c * im1 - s * re0
            block += 2 * stride


def expectation(const double complex[::1] amps, const double[::1] diag):
    cdef Py_ssize_t i, n = amps.shape[0]
    cdef const double* a = <const double*> &amps[0]
    cdef double total = 0.0
    for i in range(n):
        total += (a[2 * i] * a[2 * i] + a[2 * i + 1] * a[2 * i + 1]) * diag[i]
    return total


def run_layers(double complex[::1] amps, const double[::1] diag,
               const double[::1] gammas, const double[::1] betas, int k):
    cdef Py_ssize_t layer, p = gammas.shape[0]
    for layer in range(p):
        apply_phase(amps, diag, gammas[layer])
        apply_mixer(amps, k, betas[layer])
