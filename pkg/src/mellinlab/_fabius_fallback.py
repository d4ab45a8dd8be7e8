"""NumPy reference kernels for the dyadic-spline evaluator.

Same contract as the compiled `_fabius_core`; selected by `_kernels` when the
extension is unavailable.  Inputs are 1-D contiguous float64 arrays.
"""
import numpy as np


def theta_eval(x, coeff, knots):
    """Evaluate theta on [0,1] (caller guarantees the range).

    Exactly-representable dyadics at the knot mesh are snapped to the exact
    table values; everything else goes through the piecewise Horner sum.
    """
    nk = knots.shape[0] - 1
    npieces = coeff.shape[0]
    t = x * nk  # exact: nk is a power of two
    k = np.rint(t)
    snap = t == k
    i = np.minimum((x * npieces).astype(np.int64), npieces - 1)
    dx = x - (2.0 * i + 1.0) / nk
    c = coeff[i]
    out = c[:, -1].copy()
    for b in range(coeff.shape[1] - 2, -1, -1):
        out *= dx
        out += c[:, b]
    if snap.any():
        out[snap] = knots[k[snap].astype(np.int64)]
    return out


def fext_eval(y, coeff, knots):
    """Extended chain function f on [0, inf): f = theta on [0,1], reflected on
    [1,2], continued with the pair-parity sign pattern beyond."""
    y = np.maximum(y, 0.0)
    m = np.floor(y).astype(np.int64)
    r = y - m
    base = np.where(m & 1, 1.0 - r, r)
    v = m >> 1
    # parity of popcount by xor-folding
    v ^= v >> 32
    v ^= v >> 16
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    sign = 1.0 - 2.0 * (v & 1)
    return sign * theta_eval(base, coeff, knots)
