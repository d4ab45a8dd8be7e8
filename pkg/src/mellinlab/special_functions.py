"""The smooth dyadic base function theta, the bump eta, and plateau cutoffs.

theta: [0,1] -> [0,1] is the smooth, nowhere-analytic solution of
theta'(x) = 2*theta(2x) with theta(0) = 0, theta(1) = 1.  Derivatives never
come from differencing: the chain rule applied beta times gives

    theta^(beta)(x) = 2^(beta(beta+1)/2) * f(2^beta x)

where f is theta's reflected-and-signed extension to [0, inf) (see
`_fabius_exact.extension_exact`), so one extended evaluation yields any
derivative order exactly.

eta(t) = theta(1 - |t|) is the associated bump: support [-1, 1], eta(0) = 1,
eta'(t) = 2*(eta(2t+1) - eta(2t-1)).  theta_n is the smooth plateau cutoff
assembled from theta by the four-branch formula (rise on [1/n, 2/n], plateau
on [2/n, n], fall on [n, n+1]).
"""
from dataclasses import dataclass

import numpy as np

from ._fabius_exact import PIECE_DEGREE, knot_table, spline_tables
from ._kernels import fext_eval, theta_eval
from .errors import CapabilityError

MAX_ORDER = 8      # derivative cap B; 2^(b(b+1)/2) exhausts doubles beyond
DEFAULT_DEPTH = 10
_MIN_LEVEL = 6     # coarser meshes would be visibly inaccurate at degree 6
_MAX_LEVEL = 12    # finer meshes gain nothing in double precision


@dataclass(frozen=True)
class DyadicSpline:
    """Piecewise-Taylor representation of theta on a dyadic mesh.

    `pieces[i, b]` is theta^(b)(x0_i)/b! about the center x0_i of the i-th
    interval [i*2^-depth, (i+1)*2^-depth]; `knot_values[k]` holds the exact
    rational theta(k/2^(depth+1)) rounded once to float.  Evaluation snaps
    exactly-representable mesh dyadics to the table, so dyadic knots are
    exact by construction.
    """

    depth: int
    pieces: np.ndarray
    knot_values: np.ndarray

    @classmethod
    def build(cls, depth):
        if depth < 1:
            raise ValueError(f"depth must be >= 1, got {depth}")
        coeff, knots = spline_tables(depth)
        coeff.setflags(write=False)
        knots.setflags(write=False)
        return cls(depth=depth, pieces=coeff, knot_values=knots)

    def value(self, x):
        """theta at points of [0,1] (1-D float64 array in range)."""
        return theta_eval(np.ascontiguousarray(x, dtype=float),
                          self.pieces, self.knot_values)

    def extended(self, y):
        """The derivative-chain extension f at points of [0, inf)."""
        return fext_eval(np.ascontiguousarray(y, dtype=float),
                         self.pieces, self.knot_values)

    def check(self):
        """Continuity across knots and exactness at represented dyadics."""
        nk = self.knot_values.shape[0] - 1
        eps = np.spacing(1.0)
        ks = np.arange(nk + 1)
        below = self.value(np.maximum(ks / nk - eps, 0.0))
        at = self.value(ks / nk)
        if np.max(np.abs(below - at)) > 64 * eps:
            raise ValueError("spline discontinuous across knots")
        if np.max(np.abs(at - self.knot_values)) > 0:
            raise ValueError("spline not exact at dyadic knots")


_SPLINES: dict[int, DyadicSpline] = {}


def _spline(depth=DEFAULT_DEPTH):
    level = min(max(int(depth), _MIN_LEVEL), _MAX_LEVEL)
    sp = _SPLINES.get(level)
    if sp is None:
        sp = DyadicSpline.build(level)
        _SPLINES[level] = sp
    return sp


def _shaped(x):
    a = np.asarray(x, dtype=float)
    return np.atleast_1d(a).ravel(), a.shape, a.ndim == 0


def fabius(x, depth=DEFAULT_DEPTH):
    """theta(x) for x in [0,1].

    Parameters
    ----------
    x : float or array_like
    depth : int
        Accuracy request: evaluation error stays below 2^-depth times the
        scheme constant.  The mesh level actually used is clamped to
        [6, 12]; past 12 double precision is the binding constraint.

    Raises
    ------
    ValueError
        If any point lies outside [0, 1].
    """
    arr, shape, scalar = _shaped(x)
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("fabius domain is [0, 1]")
    out = _spline(depth).value(arr)
    return float(out[0]) if scalar else out.reshape(shape)


def fabius_derivative(x, beta, depth=DEFAULT_DEPTH):
    """theta^(beta)(x) via the exact chain identity (no differencing).

    beta = 0 returns the value itself.  Orders above MAX_ORDER raise
    CapabilityError: magnitudes 2^(b(b+1)/2) exhaust double precision.
    """
    if beta < 0:
        raise ValueError("derivative order must be >= 0")
    if beta > MAX_ORDER:
        raise CapabilityError(
            f"derivative order {beta} above configured max {MAX_ORDER}")
    if beta == 0:
        return fabius(x, depth)
    arr, shape, scalar = _shaped(x)
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("fabius domain is [0, 1]")
    scale = 2.0 ** (beta * (beta + 1) // 2)
    out = scale * _spline(depth).extended(2.0 ** beta * arr)
    return float(out[0]) if scalar else out.reshape(shape)


def eta(t):
    """Bump eta(t) = theta(1 - |t|); identically 0 outside (-1, 1)."""
    arr, shape, scalar = _shaped(t)
    out = np.zeros_like(arr)
    inside = np.abs(arr) < 1.0
    if inside.any():
        out[inside] = _spline().value(1.0 - np.abs(arr[inside]))
    return float(out[0]) if scalar else out.reshape(shape)


def eta_derivative(t, beta):
    """eta^(beta)(t) by the explicit dyadic-shift sum.

    On (-1, 1):

        eta^(beta)(t) = 2^(b(b+1)/2) * sum_{l=0}^{2^b} (-1)^s(l)
                        eta(2^b t + 2^b - 2l - 1),

    with s(l) the binary digit sum; outside the support every derivative
    vanishes.  The "-2l-1" shift is the variant that survives the
    finite-difference tie-break (the "+1" candidate fails grossly).
    """
    if beta < 0:
        raise ValueError("derivative order must be >= 0")
    if beta > MAX_ORDER:
        raise CapabilityError(
            f"derivative order {beta} above configured max {MAX_ORDER}")
    if beta == 0:
        return eta(t)
    arr, shape, scalar = _shaped(t)
    out = np.zeros_like(arr)
    inside = np.abs(arr) < 1.0
    if inside.any():
        ti = arr[inside]
        ls = np.arange(2 ** beta + 1)
        signs = np.where(_bit_parity(ls), -1.0, 1.0)
        args = 2.0 ** beta * ti[:, None] + 2.0 ** beta - 2.0 * ls - 1.0
        vals = np.zeros_like(args)
        hit = np.abs(args) < 1.0
        if hit.any():
            vals[hit] = _spline().value(1.0 - np.abs(args[hit]))
        out[inside] = 2.0 ** (beta * (beta + 1) // 2) * (vals * signs).sum(axis=1)
    return float(out[0]) if scalar else out.reshape(shape)


def _bit_parity(v):
    v = v.astype(np.int64).copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return (v & 1).astype(bool)


def eta_extremal_check(beta):
    """The extremal point t_beta and eta^(beta)(t_beta).

    t_1 = -1/2 and each next point halves toward -1 (t_{b+1} = (t_b - 1)/2,
    i.e. t_b = 2^-b - 1); there the derivative attains exactly
    2^(b(b+1)/2).  Returns (t_beta, value).
    """
    if not 1 <= beta <= MAX_ORDER:
        raise CapabilityError(
            f"order must be in [1, {MAX_ORDER}], got {beta}")
    t_beta = 2.0 ** (-beta) - 1.0
    return t_beta, eta_derivative(t_beta, beta)


@dataclass(frozen=True)
class CutoffFunction:
    """Smooth plateau cutoff theta_n: 0 until 1/n, 1 on [2/n, n], 0 past n+1.

    All derivatives obey |theta_n^(beta)| <= n^beta * 2^(beta(beta+1)/2).
    """

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"cutoff index must be >= 2, got {self.n}")

    @property
    def support(self):
        return (1.0 / self.n, self.n + 1.0)

    def value(self, x):
        arr, shape, scalar = _shaped(x)
        n = float(self.n)
        out = np.zeros_like(arr)
        rise = (arr >= 1.0 / n) & (arr < 2.0 / n)
        fall = (arr > n) & (arr <= n + 1.0)
        out[(arr >= 2.0 / n) & (arr <= n)] = 1.0
        if rise.any():
            out[rise] = _spline().value(n * arr[rise] - 1.0)
        if fall.any():
            out[fall] = _spline().value(n + 1.0 - arr[fall])
        return float(out[0]) if scalar else out.reshape(shape)

    def derivative(self, beta, x):
        if beta < 0:
            raise ValueError("derivative order must be >= 0")
        if beta > MAX_ORDER:
            raise CapabilityError(
                f"derivative order {beta} above configured max {MAX_ORDER}")
        if beta == 0:
            return self.value(x)
        arr, shape, scalar = _shaped(x)
        n = float(self.n)
        scale = 2.0 ** (beta * (beta + 1) // 2)
        out = np.zeros_like(arr)
        rise = (arr > 1.0 / n) & (arr < 2.0 / n)
        fall = (arr > n) & (arr < n + 1.0)
        if rise.any():
            out[rise] = n ** beta * scale * _spline().extended(
                2.0 ** beta * (n * arr[rise] - 1.0))
        if fall.any():
            out[fall] = (-1.0) ** beta * scale * _spline().extended(
                2.0 ** beta * (n + 1.0 - arr[fall]))
        return float(out[0]) if scalar else out.reshape(shape)


def cutoff(n):
    """The plateau cutoff theta_n; n must be an integer >= 2."""
    return CutoffFunction(n=int(n))


def exact_knots(depth):
    """Exact rational theta values at every dyadic of depth <= `depth`."""
    return knot_table(depth)


__all__ = [
    "MAX_ORDER", "DEFAULT_DEPTH", "PIECE_DEGREE", "DyadicSpline",
    "CutoffFunction", "fabius", "fabius_derivative", "eta", "eta_derivative",
    "eta_extremal_check", "cutoff", "exact_knots",
]
