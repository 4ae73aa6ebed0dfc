# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`extbloch._pykernels`."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def kron(const double complex[:, ::1] a, const double complex[:, ::1] b):
    cdef Py_ssize_t ar = a.shape[0], ac = a.shape[1]
    cdef Py_ssize_t br = b.shape[0], bc = b.shape[1]
    out = np.empty((ar * br, ac * bc), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t i, j, k, l
    cdef double complex aij
    for i in range(ar):
        for j in range(ac):
            aij = a[i, j]
            for k in range(br):
                for l in range(bc):
                    o[i * br + k, j * bc + l] = aij * b[k, l]
    return out


def partial_trace(const double complex[:, ::1] d, Py_ssize_t na, Py_ssize_t nb, bint trace_out_b):
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    cdef double complex[:, ::1] o
    if trace_out_b:
        out = np.empty((na, na), dtype=np.complex128)
        o = out
        for i in range(na):
            for j in range(na):
                acc = 0
                for k in range(nb):
                    acc = acc + d[i * nb + k, j * nb + k]
                o[i, j] = acc
    else:
        out = np.empty((nb, nb), dtype=np.complex128)
        o = out
        for i in range(nb):
            for j in range(nb):
                acc = 0
                for k in range(na):
                    acc = acc + d[k * nb + i, k * nb + j]
                o[i, j] = acc
    return out


def trace_products(const double complex[:, ::1] d, const double complex[:, :, ::1] gens):
    cdef Py_ssize_t m = gens.shape[0], n = d.shape[0]
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t g, i, j
    cdef double complex acc
    for g in range(m):
        acc = 0
        for i in range(n):
            for j in range(n):
                acc = acc + d[i, j] * gens[g, j, i]
        o[g] = acc
    return out


def count_outcomes(const double[::1] uniforms, const double[::1] cdf):
    cdef Py_ssize_t n = cdf.shape[0], s = uniforms.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] c = counts
    cdef Py_ssize_t t, k
    cdef double u
    for t in range(s):
        u = uniforms[t]
        k = 0
        while k < n - 1 and u >= cdf[k]:
            k += 1
        c[k] += 1
    return counts
