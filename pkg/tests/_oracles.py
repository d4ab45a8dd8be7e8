"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately primitive: grid-based Picard iteration for
the base smoother, plain (log-)trapezoid integration, and Richardson
extrapolated finite differences.  None of it shares code with the package
internals it checks.
"""
import math

import numpy as np


def picard_theta(grid_power=16, iterations=48):
    """Fixed point of T[h](x) = int_0^x 2 h(2t) dt on [0, 1].

    Iterates from h_0(x) = x on a uniform grid of 2**grid_power intervals
    with cumulative trapezoid integration; the upper half is filled by the
    reflection h(x) = 1 - h(1 - x).  Returns (xs, values).
    """
    n = 2 ** grid_power
    xs = np.arange(n + 1) / n
    h = xs.copy()
    half = n // 2
    step = 1.0 / n
    for _ in range(iterations):
        # integrand on [0, 1/2]: 2 h(2t); grid index doubles exactly.
        integrand = 2.0 * h[0:n + 1:2]
        lower = np.concatenate((
            [0.0],
            np.cumsum(0.5 * step * (integrand[1:] + integrand[:-1]))))
        new = np.empty_like(h)
        new[:half + 1] = lower
        new[half:] = 1.0 - lower[::-1]
        h = new
    return xs, h


def picard_theta_at(x, table=None):
    """Linear interpolation of the Picard fixed point at arbitrary x."""
    if table is None:
        table = picard_theta()
    xs, h = table
    return np.interp(np.asarray(x, dtype=float), xs, h)


def mellin_trapezoid(f, s, lo=-30.0, hi=30.0, n=1 << 16):
    """int_0^inf x^(s-1) f(x) dx by trapezoid on the log axis.

    Spectrally accurate for smooth integrands that die out inside
    [e^lo, e^hi]; used only as an oracle, no error control.
    """
    u = np.linspace(lo, hi, n + 1)
    vals = np.exp(s * u) * np.asarray(f(np.exp(u)), dtype=float)
    return float(np.trapezoid(vals, u))


def log_convolve_trapezoid(f, g, x, lo=-25.0, hi=25.0, n=1 << 16):
    """(f * g)(x) = int f(x e^-u) g(e^u) du by plain trapezoid."""
    u = np.linspace(lo, hi, n + 1)
    vals = (np.asarray(f(float(x) * np.exp(-u)), dtype=float)
            * np.asarray(g(np.exp(u)), dtype=float))
    return float(np.trapezoid(vals, u))


def richardson_derivative(f, x, order=1, h=1e-3):
    """Central finite difference of given order with one Richardson step."""
    def central(step):
        if order == 1:
            return (f(x + step) - f(x - step)) / (2.0 * step)
        if order == 2:
            return (f(x + step) - 2.0 * f(x) + f(x - step)) / step ** 2
        if order == 3:
            return (f(x + 2 * step) - 2.0 * f(x + step)
                    + 2.0 * f(x - step) - f(x - 2 * step)) / (2.0 * step ** 3)
        if order == 4:
            return (f(x + 2 * step) - 4.0 * f(x + step) + 6.0 * f(x)
                    - 4.0 * f(x - step) + f(x - 2 * step)) / step ** 4
        raise ValueError("order must be 1..4")

    coarse, fine = central(h), central(0.5 * h)
    return (4.0 * fine - coarse) / 3.0


def grid_sup(f, lo, hi, n=200001):
    """sup |f| over a dense uniform grid on [lo, hi]."""
    x = np.linspace(lo, hi, n)
    return float(np.max(np.abs(np.asarray(f(x), dtype=float))))


def loggauss(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-np.log(x[pos]) ** 2)
    return out


def exprecip(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-x[pos] - 1.0 / x[pos])
    return out


SQRT_PI = math.sqrt(math.pi)


def loggauss_transform(s):
    """Closed form: int x^(s-1) e^(-ln(x)^2) dx = sqrt(pi) e^(s^2/4)."""
    return SQRT_PI * math.exp(0.25 * s * s)


def loggauss_selfconv(x):
    """Closed form: (loggauss * loggauss)(x) = sqrt(pi/2) e^(-ln(x)^2/2)."""
    return math.sqrt(0.5 * math.pi) * np.exp(-0.5 * np.log(x) ** 2)
