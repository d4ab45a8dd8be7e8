# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the dyadic-spline evaluator.

Hot path of the whole package: every cutoff/bump/derivative evaluation inside
the nested quadratures lands here.  Semantics match `_fabius_fallback`.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport floor


cdef inline double _piece_eval(double x, Py_ssize_t npieces, double nk,
                               const double[:, ::1] coeff, const double[::1] knots) noexcept nogil:
    cdef double t = x * nk
    cdef long k = <long>(t + 0.5)
    if t == <double>k:
        return knots[k]
    cdef Py_ssize_t i = <Py_ssize_t>(x * npieces)
    if i > npieces - 1:
        i = npieces - 1
    cdef double dx = x - (2.0 * i + 1.0) / nk
    cdef double acc = coeff[i, coeff.shape[1] - 1]
    cdef Py_ssize_t b
    for b in range(coeff.shape[1] - 2, -1, -1):
        acc = acc * dx + coeff[i, b]
    return acc


def theta_eval(const double[::1] x, const double[:, ::1] coeff, const double[::1] knots):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t npieces = coeff.shape[0]
    cdef double nk = <double>(knots.shape[0] - 1)
    cdef Py_ssize_t j
    for j in range(n):
        out[j] = _piece_eval(x[j], npieces, nk, coeff, knots)
    return out_arr


def fext_eval(const double[::1] y, const double[:, ::1] coeff, const double[::1] knots):
    cdef Py_ssize_t n = y.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t npieces = coeff.shape[0]
    cdef double nk = <double>(knots.shape[0] - 1)
    cdef Py_ssize_t j
    cdef double yy, r, base, val
    cdef long m
    cdef unsigned long long v
    for j in range(n):
        yy = y[j]
        if yy < 0.0:
            yy = 0.0
        m = <long>floor(yy)
        r = yy - m
        if m & 1:
            base = 1.0 - r
        else:
            base = r
        val = _piece_eval(base, npieces, nk, coeff, knots)
        v = <unsigned long long>(m >> 1)
        v ^= v >> 32
        v ^= v >> 16
        v ^= v >> 8
        v ^= v >> 4
        v ^= v >> 2
        v ^= v >> 1
        if v & 1:
            val = -val
        out[j] = val
    return out_arr
