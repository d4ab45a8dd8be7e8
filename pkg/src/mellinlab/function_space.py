"""Rapidly decreasing functions on the positive half-line.

A SmoothFunction bundles three things: a vectorized value oracle, a
derivative oracle exact to machine precision (no differencing), and a decay
certificate supplying numbers M_(alpha, beta) with

    |x^alpha f^(beta)(x)| <= M_(alpha, beta)   for all x > 0.

Certificates drive every domain truncation in the package, so they must be
honest upper bounds; they do not need to be tight.  The catalog ships a small
family of reference functions whose certificates are either exact analytic
bounds (compactly supported entries) or dense grid suprema with a safety
factor (the two global entries).

Seminorms p_(alpha, beta)(f) = sup |x^alpha f^(beta)(x)| are located on a
logarithmic grid over the certificate window and sharpened by golden-section
refinement around every grid-local maximum.  The translation-invariant metric
truncates the doubly infinite seminorm sum at total order N and reports the
exact tail weight it discarded.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from . import special_functions as sf
from .errors import CapabilityError, CertificateGap, MellinLabError
from .quadrature import DEFAULT_CONFIG, integrate_abs_power

ALPHA_RANGE = 25
BETA_MAX = sf.MAX_ORDER

_X_FLOOR = 1e-300


@dataclass(frozen=True)
class SeminormIndex:
    alpha: int
    beta: int

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("derivative order must be >= 0")


def _as_index(idx):
    if isinstance(idx, SeminormIndex):
        return idx
    alpha, beta = idx
    return SeminormIndex(int(alpha), int(beta))


class DecayCertificate:
    """Memoized table of envelope constants M_(alpha, beta).

    Entries come from an explicit dict, an extender callable, or both.  The
    extender is consulted lazily and its results cached, so building a
    certificate costs nothing until a bound is actually needed.  M = 0 is
    meaningful: it certifies the function vanishes identically at that index.
    """

    def __init__(self, bounds=None, extender=None,
                 alpha_range=(-ALPHA_RANGE, ALPHA_RANGE), beta_max=BETA_MAX):
        self._bounds = dict(bounds) if bounds else {}
        self._extender = extender
        self.alpha_range = alpha_range
        self.beta_max = beta_max

    def covers(self, alpha, beta):
        if (alpha, beta) in self._bounds:
            return True
        if self._extender is None or beta < 0:
            return False
        return (self.alpha_range[0] <= alpha <= self.alpha_range[1]
                and beta <= self.beta_max)

    def bound(self, alpha, beta):
        key = (alpha, beta)
        if key in self._bounds:
            return self._bounds[key]
        if not self.covers(alpha, beta):
            raise CertificateGap(
                f"insufficient decay certificate: no bound at "
                f"(alpha, beta) = ({alpha}, {beta})")
        value = float(self._extender(alpha, beta))
        if not (value >= 0.0):
            raise MellinLabError(
                f"certificate extender produced invalid bound {value!r}")
        self._bounds[key] = value
        return value

    def is_zero(self):
        return self.covers(0, 0) and self.bound(0, 0) == 0.0


@dataclass(frozen=True)
class SmoothFunction:
    """A certified element of the rapidly-decreasing class on (0, inf)."""

    value_oracle: object
    derivative_oracle: object
    certificate: DecayCertificate
    support: tuple = None
    label: str = "anonymous"

    def value(self, x):
        return self.value_oracle(np.asarray(x, dtype=float))

    def derivative(self, beta, x):
        x = np.asarray(x, dtype=float)
        if beta == 0:
            return self.value_oracle(x)
        return self.derivative_oracle(beta, x)


# ---------------------------------------------------------------------------
# catalog entries

@lru_cache(maxsize=None)
def _loggauss_poly(beta):
    # g0^(beta)(x) = g0(x) x^-beta Q_beta(ln x),  Q_0 = 1,
    # Q_(b+1) = Q_b' - (2L + b) Q_b.
    if beta == 0:
        return np.array([1.0])
    q = _loggauss_poly(beta - 1)
    b = beta - 1
    return P.polyadd(P.polyder(q), -P.polymul(np.array([b, 2.0]), q))


def _loggauss_value(x):
    with np.errstate(divide="ignore"):
        ln = np.log(x)
    return np.exp(-ln * ln)


def _loggauss_derivative(beta, x):
    with np.errstate(divide="ignore", invalid="ignore"):
        ln = np.log(x)
        out = np.exp(-ln * (ln + beta)) * P.polyval(ln, _loggauss_poly(beta))
    return np.where(x > 0, out, 0.0)


@lru_cache(maxsize=None)
def _expr_poly(beta):
    # g1^(beta)(x) = g1(x) S_beta(1/x),  S_0 = 1,
    # S_(b+1)(u) = (u^2 - 1) S_b(u) - u^2 S_b'(u).
    if beta == 0:
        return np.array([1.0])
    s = _expr_poly(beta - 1)
    return P.polysub(P.polymul(np.array([-1.0, 0.0, 1.0]), s),
                     P.polymul(np.array([0.0, 0.0, 1.0]), P.polyder(s)))


def _expr_value(x):
    out = np.zeros_like(x)
    ok = x > 1e-8
    xs = x[ok]
    out[ok] = np.exp(-xs - 1.0 / xs)
    return out


def _expr_derivative(beta, x):
    out = np.zeros_like(x)
    ok = x > 1e-8
    xs = x[ok]
    out[ok] = np.exp(-xs - 1.0 / xs) * P.polyval(1.0 / xs, _expr_poly(beta))
    return out


def _grid_sup_extender(log_weighted, lo, hi, n=6001, safety=1.5):
    """Upper bound sup of a smooth weighted magnitude by dense-grid sup.

    log_weighted(alpha, beta, L) returns log |x^alpha f^(beta)(x)| at
    x = e^L, vectorized in L.  The integrands here vary on unit scale in L,
    so a dense grid plus a 50% safety factor gives a sound envelope.
    """
    grid = np.linspace(lo, hi, n)

    def extender(alpha, beta):
        vals = log_weighted(alpha, beta, grid)
        top = float(np.max(vals))
        if top == -np.inf:
            return 0.0
        return safety * math.exp(top)

    return extender


def _loggauss_cert():
    def logw(alpha, beta, grid):
        q = np.abs(P.polyval(grid, _loggauss_poly(beta)))
        with np.errstate(divide="ignore"):
            return -grid * grid + (alpha - beta) * grid + np.log(q)

    return DecayCertificate(extender=_grid_sup_extender(logw, -32.0, 32.0))


def _expr_cert():
    def logw(alpha, beta, grid):
        s = np.abs(P.polyval(np.exp(-grid), _expr_poly(beta)))
        with np.errstate(divide="ignore"):
            return alpha * grid - np.exp(grid) - np.exp(-grid) + np.log(s)

    return DecayCertificate(extender=_grid_sup_extender(logw, -13.0, 13.0))


def _bump_cert():
    # support [1, 3]: x^alpha <= max(3^alpha, 1), |eta^(beta)| = 2^C(beta+1,2)
    def extender(alpha, beta):
        return max(3.0 ** alpha, 1.0) * 2.0 ** (beta * (beta + 1) // 2)

    return DecayCertificate(extender=extender)


def _cutoff_cert(n):
    # support (1/n, n+1): the rise contributes n^beta 2^C(beta+1,2)
    def extender(alpha, beta):
        edge = max((1.0 / n) ** alpha, (n + 1.0) ** alpha)
        return edge * n ** beta * 2.0 ** (beta * (beta + 1) // 2)

    return DecayCertificate(extender=extender)


def cutoff_function(n):
    """The plateau cutoff as a certified SmoothFunction."""
    c = sf.cutoff(n)
    return SmoothFunction(
        value_oracle=c.value,
        derivative_oracle=c.derivative,
        certificate=_cutoff_cert(n),
        support=c.support,
        label=f"theta{n}")


def zero_function():
    def val(x):
        return np.zeros_like(np.asarray(x, dtype=float))

    return SmoothFunction(
        value_oracle=val,
        derivative_oracle=lambda beta, x: val(x),
        certificate=DecayCertificate(extender=lambda a, b: 0.0),
        support=None,
        label="zero")


@lru_cache(maxsize=1)
def catalog():
    """Reference functions keyed by label.

    log-gauss and exp-recip decay faster than any power at both ends; bump
    and the theta entries are compactly supported; zero exercises degenerate
    paths.
    """
    bump = SmoothFunction(
        value_oracle=lambda x: sf.eta(x - 2.0),
        derivative_oracle=lambda beta, x: sf.eta_derivative(x - 2.0, beta),
        certificate=_bump_cert(),
        support=(1.0, 3.0),
        label="bump")
    entries = [
        SmoothFunction(_loggauss_value, _loggauss_derivative,
                       _loggauss_cert(), None, "log-gauss"),
        SmoothFunction(_expr_value, _expr_derivative,
                       _expr_cert(), None, "exp-recip"),
        bump,
        cutoff_function(2),
        cutoff_function(4),
        cutoff_function(8),
        zero_function(),
    ]
    return {f.label: f for f in entries}


def from_callable(value, derivative=None, bounds=None, support=None,
                  label="user"):
    """Wrap a plain callable.  Without an analytic derivative oracle,
    derivatives fall back to iterated central differences (adequate for low
    orders only), and without bounds the certificate covers nothing.
    """
    def fallback(beta, x, _h=1e-4):
        if beta == 0:
            return value(x)
        lower = lambda y: fallback(beta - 1, y)
        return (lower(x + _h) - lower(x - _h)) / (2.0 * _h)

    return SmoothFunction(
        value_oracle=value,
        derivative_oracle=derivative if derivative is not None else fallback,
        certificate=DecayCertificate(bounds=bounds),
        support=support,
        label=label)


# ---------------------------------------------------------------------------
# algebra of oracles

def scale(f, c):
    c = float(c)
    cert = DecayCertificate(
        extender=lambda a, b: abs(c) * f.certificate.bound(a, b),
        alpha_range=f.certificate.alpha_range,
        beta_max=f.certificate.beta_max)
    return SmoothFunction(
        value_oracle=lambda x: c * f.value(x),
        derivative_oracle=lambda beta, x: c * f.derivative(beta, x),
        certificate=cert,
        support=f.support,
        label=f"{c}*{f.label}")


def add(f, g):
    cf, cg = f.certificate, g.certificate
    cert = DecayCertificate(
        extender=lambda a, b: cf.bound(a, b) + cg.bound(a, b),
        alpha_range=(max(cf.alpha_range[0], cg.alpha_range[0]),
                     min(cf.alpha_range[1], cg.alpha_range[1])),
        beta_max=min(cf.beta_max, cg.beta_max))
    if f.support is None or g.support is None:
        support = None
    else:
        support = (min(f.support[0], g.support[0]),
                   max(f.support[1], g.support[1]))
    return SmoothFunction(
        value_oracle=lambda x: f.value(x) + g.value(x),
        derivative_oracle=lambda beta, x: (f.derivative(beta, x)
                                           + g.derivative(beta, x)),
        certificate=cert,
        support=support,
        label=f"{f.label}+{g.label}")


def subtract(f, g):
    return add(f, scale(g, -1.0))


def multiply(f, g):
    """Pointwise product; derivatives via the Leibniz rule.

    The product bound routes the weight x^alpha through whichever factor
    certifies it more cheaply, term by term.
    """
    cf, cg = f.certificate, g.certificate

    def extender(alpha, beta):
        total = 0.0
        for k in range(beta + 1):
            routes = []
            if cf.covers(alpha, k) and cg.covers(0, beta - k):
                routes.append(cf.bound(alpha, k) * cg.bound(0, beta - k))
            if cf.covers(0, k) and cg.covers(alpha, beta - k):
                routes.append(cf.bound(0, k) * cg.bound(alpha, beta - k))
            if not routes:
                raise CertificateGap(
                    f"insufficient decay certificate for product at "
                    f"(alpha, beta) = ({alpha}, {beta})")
            total += math.comb(beta, k) * min(routes)
        return total

    if f.support is None:
        support = g.support
    elif g.support is None:
        support = f.support
    else:
        lo = max(f.support[0], g.support[0])
        hi = min(f.support[1], g.support[1])
        if lo >= hi:
            return zero_function()
        support = (lo, hi)

    def derivative(beta, x):
        total = math.comb(beta, 0) * f.value(x) * g.derivative(beta, x)
        for k in range(1, beta + 1):
            total = total + (math.comb(beta, k)
                             * f.derivative(k, x) * g.derivative(beta - k, x))
        return total

    cert = DecayCertificate(
        extender=extender,
        alpha_range=(max(cf.alpha_range[0], cg.alpha_range[0]),
                     min(cf.alpha_range[1], cg.alpha_range[1])),
        beta_max=min(cf.beta_max, cg.beta_max))
    return SmoothFunction(
        value_oracle=lambda x: f.value(x) * g.value(x),
        derivative_oracle=derivative,
        certificate=cert,
        support=support,
        label=f"{f.label}*{g.label}")


def dilate(f, v):
    """(D_v f)(x) = f(x / v).  Bounds pick up the factor v^(alpha - beta)."""
    v = float(v)
    if v <= 0:
        raise ValueError("dilation parameter must be positive")
    cert = DecayCertificate(
        extender=lambda a, b: v ** (a - b) * f.certificate.bound(a, b),
        alpha_range=f.certificate.alpha_range,
        beta_max=f.certificate.beta_max)
    support = None
    if f.support is not None:
        support = (f.support[0] * v, f.support[1] * v)
    return SmoothFunction(
        value_oracle=lambda x: f.value(x / v),
        derivative_oracle=lambda beta, x: (v ** -beta
                                           * f.derivative(beta, x / v)),
        certificate=cert,
        support=support,
        label=f"dilate({f.label},{v})")


# ---------------------------------------------------------------------------
# seminorms and the metric

def _seminorm_window(f, alpha, beta, tol):
    """Log-window [la, lb] outside which x^alpha |f^(beta)| < tol / 10."""
    cert = f.certificate
    if f.support is not None:
        return (math.log(max(f.support[0], _X_FLOOR)),
                math.log(f.support[1]))
    lb = 34.0
    if cert.covers(alpha + 2, beta):
        m = cert.bound(alpha + 2, beta)
        lb = 0.5 * math.log(max(10.0 * m / tol, 4.0)) if m > 0 else 1.0
    la = -34.0
    if cert.covers(alpha - 2, beta):
        m = cert.bound(alpha - 2, beta)
        la = 0.5 * math.log(min(tol / (10.0 * m), 0.25)) if m > 0 else -1.0
    return min(la, -1.0), max(lb, 1.0)


def seminorm(f, idx, tol=1e-9):
    """p_(alpha, beta)(f) = sup over x > 0 of |x^alpha f^(beta)(x)|.

    Grid scan in log x over the certificate window, then simultaneous
    golden-section sharpening of every grid-local maximum.  Work happens on
    log magnitudes so large |alpha| cannot overflow the weight.
    """
    idx = _as_index(idx)
    if idx.beta > BETA_MAX:
        raise CapabilityError(
            f"derivative order {idx.beta} exceeds supported maximum {BETA_MAX}")
    if f.certificate.is_zero():
        return 0.0
    la, lb = _seminorm_window(f, idx.alpha, idx.beta, tol)
    grid = np.linspace(la, lb, 4096)

    def logmag(ln_x):
        vals = np.abs(f.derivative(idx.beta, np.exp(ln_x)))
        if not np.all(np.isfinite(vals)):
            raise MellinLabError(
                f"non-finite oracle values while evaluating seminorm "
                f"({idx.alpha}, {idx.beta}) of {f.label}")
        with np.errstate(divide="ignore"):
            return idx.alpha * ln_x + np.log(vals)

    h = logmag(grid)
    if np.all(h == -np.inf):
        return 0.0
    interior = (h[1:-1] >= h[:-2]) & (h[1:-1] >= h[2:])
    peaks = np.flatnonzero(interior) + 1
    lo = grid[peaks - 1] if peaks.size else np.array([])
    hi = grid[peaks + 1] if peaks.size else np.array([])
    # golden-section, all brackets in lockstep
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    if peaks.size:
        c = hi - phi * (hi - lo)
        d = lo + phi * (hi - lo)
        fc, fd = logmag(c), logmag(d)
        for _ in range(64):
            move = fc >= fd
            hi = np.where(move, d, hi)
            d2 = np.where(move, c, d)
            fd2 = np.where(move, fc, fd)
            lo = np.where(move, lo, c)
            c2 = np.where(move, hi - phi * (hi - lo), d2)
            need = np.where(move, c2, lo + phi * (hi - lo))
            fnew = logmag(need)
            c, fc = np.where(move, c2, d2), np.where(move, fnew, fd2)
            d, fd = np.where(move, d2, need), np.where(move, fd2, fnew)
        refined = np.maximum(fc, fd)
        best = max(float(np.max(h)), float(np.max(refined)))
    else:
        best = float(np.max(h))
    return math.exp(best) if best > -np.inf else 0.0


def metric_tail(n):
    """Exact discarded weight sum_(|alpha| + beta > n) 2^-(|alpha| + beta)."""
    return (2 * n + 5) * 2.0 ** -n


def metric(f, g, n=8, tol=1e-9):
    """Truncated translation-invariant metric on the function class.

    Sums 2^-(|alpha| + beta) p / (1 + p) over all index pairs with
    |alpha| + beta <= n and returns (value, tail), the tail being the exact
    weight of the discarded indices.  The full metric lies within [value,
    value + tail].
    """
    if n < 0:
        raise ValueError("truncation order must be >= 0")
    if n > BETA_MAX:
        raise CapabilityError(
            f"truncation order {n} needs derivatives beyond order {BETA_MAX}")
    diff = subtract(f, g)
    total = 0.0
    for k in range(n + 1):
        for alpha in range(-k, k + 1):
            p = seminorm(diff, (alpha, k - abs(alpha)), tol)
            total += 2.0 ** -k * p / (1.0 + p)
    return total, metric_tail(n)


# ---------------------------------------------------------------------------
# quantitative class facts

def weighted_lp_bound_check(f, alpha, beta, p, cfg=DEFAULT_CONFIG):
    """Check int |x^alpha f^(beta)|^p dx <= 2 (p_(a,b) + p_(a+2,b))^p.

    The right side follows from the envelope |x^alpha f^(beta)| <=
    M min(1, x^-2) with M the seminorm sum; the integral of min(1, x^-2p)
    is at most 2 for p >= 1.  Returns (lhs, rhs, ok).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    lhs = integrate_abs_power(f, p=p, c=p * alpha, beta=beta, cfg=cfg).value
    m = seminorm(f, (alpha, beta)) + seminorm(f, (alpha + 2, beta))
    rhs = 2.0 * m ** p
    return lhs, rhs, bool(lhs <= rhs + 1e-12 * (1.0 + rhs))


def nonnormability_witness(indices, eps, m):
    """Concentrating family separating any finite seminorm set from the
    derivative ladder above it.

    Returns (f_m, constraint_sups, blowup_value): every seminorm in
    `indices` evaluates to at most eps on f_m uniformly in m, while the
    seminorm at (0, beta_max + 2) grows without bound as m -> infinity.
    """
    indices = [_as_index(i) for i in indices]
    if not indices:
        raise ValueError("need at least one seminorm index")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if m < 1:
        raise ValueError("m must be >= 1")
    beta_top = max(i.beta for i in indices)
    if beta_top + 2 > BETA_MAX:
        raise CapabilityError(
            f"witness blowup order {beta_top + 2} exceeds maximum {BETA_MAX}")
    alpha_top = max(abs(i.alpha) for i in indices)
    base = catalog()["bump"]  # sup norm 1, support [1, 3]
    k = eps / (3.0 ** alpha_top
               * 2.0 ** ((beta_top + 1) * (beta_top + 2) // 2))
    lam = float(m) ** (1.0 / (beta_top + 1))
    f_m = scale(dilate(base, 1.0 / lam), k / m)
    constraint_sups = [seminorm(f_m, i) for i in indices]
    blowup_value = seminorm(f_m, (0, beta_top + 2))
    return f_m, constraint_sups, blowup_value


def density_experiment(f, idx, ns):
    """Error of the compactly supported truncations theta_n * f.

    Returns [(n, p_idx(f - theta_n f)) for n in ns]; the errors decay to 0,
    which is the computable face of density of compact support in the class.
    """
    idx = _as_index(idx)
    rows = []
    for n in ns:
        trunc = multiply(cutoff_function(int(n)), f)
        rows.append((int(n), seminorm(subtract(f, trunc), idx)))
    return rows
