"""Double-exponential quadrature with certificate-driven domain truncation.

All integrals in the package reduce to one of three shapes:

* a finite window [a, b] (tanh-sinh nodes, geometric convergence for the
  analytic integrands that arise after log substitution),
* the whole real line (sinh-stretched trapezoid, same character),
* a weighted half-line integral int_0^inf x^(s-1) f^(beta)(x) dx, which is
  first truncated to a window [a, b] chosen from f's decay certificate so the
  discarded tails are provably below budget, then log-substituted onto a
  finite window.

Error estimates are the difference of two successive refinement levels plus
any certified truncation tail; a result only reports converged=True when that
total meets the configured tolerance, and running out of refinement depth
raises instead of returning silently.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CertificateGap, ToleranceNotReached

_TINY = 1e-300


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets shared by every integration routine.

    truncation_margin divides the tolerance to set the tail budget, so
    truncation error stays an order below the reported estimate.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_refinement_depth: int = 12
    truncation_margin: float = 10.0

    def __post_init__(self):
        if self.rel_tol < 1e-14:
            raise ValueError("rel_tol must be >= 1e-14")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")
        if self.rel_tol == 0 and self.abs_tol == 0:
            raise ValueError("rel_tol and abs_tol cannot both be zero")
        if self.max_refinement_depth < 1:
            raise ValueError("max_refinement_depth must be >= 1")
        if self.truncation_margin <= 1:
            raise ValueError("truncation_margin must be > 1")

    def tail_budget(self):
        # sized against the absolute tolerance so truncation error stays
        # invisible; purely relative configs start from the relative one
        # and callers re-truncate once the value's scale is known
        return (self.abs_tol if self.abs_tol > 0 else self.rel_tol) \
            / self.truncation_margin


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


DEFAULT_CONFIG = QuadratureConfig()


@lru_cache(maxsize=32)
def _window_nodes(level):
    # tanh-sinh on (-1, 1): x = tanh(pi/2 sinh u), trapezoid in u.
    h = 0.5 / 2 ** level
    u = np.arange(-int(3.6 / h), int(3.6 / h) + 1) * h
    s = 0.5 * np.pi * np.sinh(u)
    x = np.tanh(s)
    w = h * 0.5 * np.pi * np.cosh(u) / np.cosh(s) ** 2
    # offsets 1+x and 1-x computed without cancellation, so callers can
    # place nodes relative to the nearest endpoint; together with dropping
    # float-saturated nodes this keeps the rule genuinely open and lets
    # integrable endpoint singularities converge to full precision
    one_plus = 2.0 / (1.0 + np.exp(-2.0 * s))
    one_minus = 2.0 / (1.0 + np.exp(2.0 * s))
    keep = (w > _TINY) & (one_plus > 0.0) & (one_minus > 0.0)
    return x[keep], w[keep], one_plus[keep], one_minus[keep]


@lru_cache(maxsize=32)
def _line_nodes(level):
    # t = sinh(2u): double-exponential decay in u for integrands with
    # Gaussian-or-faster falloff in t.
    h = 0.5 / 2 ** level
    u = np.arange(-int(4.2 / h), int(4.2 / h) + 1) * h
    return np.sinh(2.0 * u), h * 2.0 * np.cosh(2.0 * u)


def _tolerance(cfg, value):
    return max(cfg.abs_tol, cfg.rel_tol * abs(value))


def integrate_window(f, a, b, cfg=DEFAULT_CONFIG, tail_bound=0.0):
    """Integrate a vectorized callable over the finite window [a, b].

    tail_bound (certified mass outside the window, when the window came from
    a truncation step) is folded into the reported error estimate.
    """
    if b <= a:
        return IntegralResult(0.0, tail_bound, 0, True)
    half = 0.5 * (b - a)
    prev = None
    diff = math.inf
    evals = 0
    for level in range(cfg.max_refinement_depth + 1):
        x, w, op, om = _window_nodes(level)
        pts = np.where(x < 0.0, a + half * op, b - half * om)
        vals = np.asarray(f(pts), dtype=float)
        evals += x.size
        value = half * float(np.dot(w, vals))
        if prev is not None:
            diff = abs(value - prev)
            err = diff + tail_bound
            if err <= _tolerance(cfg, value):
                return IntegralResult(value, err, evals, True)
        prev = value
    best = IntegralResult(value, diff + tail_bound, evals, False)
    raise ToleranceNotReached(
        f"tolerance not reached after depth {cfg.max_refinement_depth} "
        f"(best estimate {best.value!r} +- {best.error_estimate:.3e})", best)


def integrate_window_array(f, a, b, cfg=DEFAULT_CONFIG, tail_bound=0.0):
    """Batched variant: f maps nodes to (..., n_nodes); integrates last axis.

    Returns (values, error_estimates, evaluations).  Convergence is demanded
    for every batch element simultaneously.
    """
    if b <= a:
        raise ValueError("empty window")
    half = 0.5 * (b - a)
    prev = None
    diff = None
    evals = 0
    for level in range(cfg.max_refinement_depth + 1):
        x, w, op, om = _window_nodes(level)
        pts = np.where(x < 0.0, a + half * op, b - half * om)
        vals = np.asarray(f(pts), dtype=float)
        evals += x.size * (vals.size // x.size)
        value = half * (vals @ w)
        if prev is not None:
            diff = np.abs(value - prev)
            err = diff + tail_bound
            tol = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(value))
            if np.all(err <= tol):
                return value, err, evals
        prev = value
    err = (np.full_like(np.asarray(value, dtype=float), np.inf)
           if diff is None else diff + tail_bound)
    raise ToleranceNotReached(
        "tolerance not reached in batched window integration",
        IntegralResult(float(np.max(np.abs(value))), float(np.max(err)),
                       evals, False))


def integrate_real_line(h, cfg=DEFAULT_CONFIG):
    """Integrate a smooth, absolutely integrable callable over the real line.

    The oracle must be vectorized and decay fast enough that the
    sinh-stretched nodes see it vanish (true after log substitution for
    everything this package integrates).
    """
    prev = None
    diff = math.inf
    evals = 0
    for level in range(cfg.max_refinement_depth + 1):
        t, w = _line_nodes(level)
        vals = np.asarray(h(t), dtype=float)
        evals += t.size
        value = float(np.dot(w, vals))
        if prev is not None:
            diff = abs(value - prev)
            if diff <= _tolerance(cfg, value):
                return IntegralResult(value, diff, evals, True)
        prev = value
    best = IntegralResult(value, diff, evals, False)
    raise ToleranceNotReached(
        f"tolerance not reached after depth {cfg.max_refinement_depth} "
        f"(best estimate {best.value!r} +- {best.error_estimate:.3e})", best)


def _decay_edge(eps_half, pairs, sign):
    """Shortest window edge certified by any (coeff, rate) decay envelope.

    Each pair bounds the one-sided tail beyond log-distance z >= 1 by
    coeff * exp(-rate * z) / rate; the edge takes the envelope that reaches
    eps_half soonest and reports the smallest bound valid there.
    """
    z = math.inf
    for coeff, rate in pairs:
        if not coeff > 0.0:
            return sign * 1.0, 0.0
        if math.isfinite(coeff):
            z = min(z, math.log(coeff / (eps_half * rate)) / rate)
    z = max(z, 1.0)
    tail = min(c * math.exp(-r * z) / r
               for c, r in pairs if math.isfinite(c))
    return sign * z, tail


def _envelope_pairs(certificate, beta, rate_of, alphas, scale=1.0, power=1.0):
    """(coeff, rate) tail envelopes from every covered certificate entry."""
    pairs = []
    for alpha in alphas:
        rate = rate_of(alpha)
        if rate > 0 and certificate.covers(alpha, beta):
            pairs.append(
                (scale * certificate.bound(alpha, beta) ** power, rate))
    return pairs


def weighted_tail_window(certificate, s, beta=0, eps=1e-15, support=None):
    """Window (a, b) with int outside of x^(s-1)|f^(beta)| certified <= eps.

    For each certified exponent alpha the envelope M_(alpha,beta) x^-alpha
    bounds the left tail by M a^(s-alpha)/(s-alpha) when alpha < s and the
    right tail by M b^(s-alpha)/(alpha-s) when alpha > s; each side takes
    the envelope that certifies the shortest reach.  A compact support makes
    the window exact with zero tail.

    Returns (a, b, tail_bound); raises CertificateGap when no certified
    exponent sits on the needed side of s.
    """
    if support is not None:
        lo, hi = support
        return max(lo, _TINY), hi, 0.0
    lo_a, hi_a = certificate.alpha_range
    base = math.floor(s - 1)
    left = _envelope_pairs(certificate, beta, lambda alpha: s - alpha,
                           range(base, max(base - 8, lo_a) - 1, -1))
    base = math.ceil(s) + 1
    right = _envelope_pairs(certificate, beta, lambda alpha: alpha - s,
                            range(base, min(base + 8, hi_a) + 1))
    if not left or not right:
        raise CertificateGap(
            f"insufficient decay certificate around exponent s={s}, "
            f"beta={beta} (alpha range {certificate.alpha_range})")
    za, tail_l = _decay_edge(0.5 * eps, left, -1.0)
    zb, tail_r = _decay_edge(0.5 * eps, right, 1.0)
    return math.exp(za), math.exp(zb), tail_l + tail_r


def integrate_half_line_weighted(f, s, beta=0, cfg=DEFAULT_CONFIG):
    """int_0^inf x^(s-1) f^(beta)(x) dx for a certified SmoothFunction.

    Substitutes x = e^t and integrates e^(st) f^(beta)(e^t) over the
    certificate-truncated window.  The zero function short-circuits to an
    exact 0; a missing envelope bound raises CertificateGap.
    """
    cert = f.certificate
    if cert.is_zero():
        return IntegralResult(0.0, 0.0, 0, True)
    if beta == 0:
        def integrand(t):
            return np.exp(s * t) * f.value(np.exp(t))
    else:
        def integrand(t):
            return np.exp(s * t) * f.derivative(beta, np.exp(t))

    eps = cfg.tail_budget()
    for _ in range(3):
        a, b, tail = weighted_tail_window(
            cert, s, beta, eps=eps, support=f.support)
        try:
            return integrate_window(integrand, math.log(a), math.log(b),
                                    cfg, tail_bound=tail)
        except ToleranceNotReached as exc:
            # if the certified tail is what blocks convergence, widen the
            # window against the value's now-known scale and go again
            scale = abs(exc.result.value)
            retry = max(cfg.abs_tol, cfg.rel_tol * scale) \
                / (2.0 * cfg.truncation_margin)
            if tail == 0.0 or retry >= eps:
                raise
            eps = retry
    raise ToleranceNotReached(
        "tolerance not reached after window re-truncation", exc.result)


def _sign_splits(oracle, ta, tb, scan=8193):
    """Bisection-refined zero crossings of a vectorized oracle on [ta, tb].

    Splitting an integral of |oracle| at these points moves the absolute
    value kinks to piece endpoints, where the double-exponential weights
    vanish and convergence stays geometric.
    """
    t = np.linspace(ta, tb, scan)
    v = np.asarray(oracle(t), dtype=float)
    s = np.sign(v)
    # exact zeros on the grid are crossings already located (a kink can land
    # exactly on a sample, e.g. for symmetric windows); collapse runs of
    # zeros -- a plateau of a cutoff derivative -- to their two boundaries
    splits = set()
    flanks = np.diff((s == 0.0).astype(int))
    for i in np.flatnonzero(flanks == 1) + 1:
        splits.add(float(t[i]))
    for i in np.flatnonzero(flanks == -1):
        splits.add(float(t[i]))
    idx = np.flatnonzero(s[:-1] * s[1:] < 0)
    if idx.size:
        lo, hi, slo = t[idx], t[idx + 1], s[idx]
        for _ in range(90):
            mid = 0.5 * (lo + hi)
            smid = np.sign(oracle(mid))
            left = slo * smid <= 0
            hi = np.where(left, mid, hi)
            lo = np.where(left, lo, mid)
            slo = np.where(left, slo, smid)
        splits.update(float(z) for z in 0.5 * (lo + hi))
    return sorted(z for z in splits if ta < z < tb)


def integrate_abs_power(f, p=1.0, c=0.0, beta=0, cfg=DEFAULT_CONFIG):
    """int_0^inf x^c |f^(beta)(x)|^p dx with certificate truncation.

    Each certified exponent alpha yields the tail envelope
    M_(alpha,beta)^p x^(c-p*alpha), integrable beyond the window edge
    whenever c + 1 - p*alpha is signed correctly; both sides take the
    envelope reaching the tail budget soonest.  The window is split at sign
    changes of f^(beta) so the absolute value never puts a kink in a
    quadrature panel's interior.
    """
    if p < 1:
        raise ValueError("power must be >= 1")
    cert = f.certificate
    if cert.is_zero():
        return IntegralResult(0.0, 0.0, 0, True)
    if f.support is not None:
        a, b, tail = max(f.support[0], _TINY), f.support[1], 0.0
    else:
        lo_a, hi_a = cert.alpha_range
        eps = cfg.tail_budget()
        base = math.floor((c + 1.0) / p)
        left = _envelope_pairs(cert, beta,
                               lambda alpha: c + 1.0 - p * alpha,
                               range(base, max(base - 8, lo_a) - 1, -1),
                               power=p)
        base = math.ceil((c + 1.0) / p)
        right = _envelope_pairs(cert, beta,
                                lambda alpha: p * alpha - c - 1.0,
                                range(base, min(base + 8, hi_a) + 1),
                                power=p)
        if not left or not right:
            raise CertificateGap(
                f"insufficient decay certificate for weight x^{c}, "
                f"power {p}, beta={beta}")
        za, tail_l = _decay_edge(0.5 * eps, left, -1.0)
        zb, tail_r = _decay_edge(0.5 * eps, right, 1.0)
        a, b, tail = math.exp(za), math.exp(zb), tail_l + tail_r
    ta, tb = math.log(a), math.log(b)

    def raw(t):
        x = np.exp(t)
        return f.value(x) if beta == 0 else f.derivative(beta, x)

    def integrand(t):
        return np.exp((c + 1.0) * t) * np.abs(raw(t)) ** p

    cuts = [ta] + _sign_splits(raw, ta, tb) + [tb]
    total, err, evals, converged = 0.0, tail, 0, True
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        try:
            piece = integrate_window(integrand, lo, hi, cfg)
        except ToleranceNotReached as exc:
            piece = exc.result
        total += piece.value
        err += piece.error_estimate
        evals += piece.evaluations
        converged = converged and piece.converged
    if err <= _tolerance(cfg, total):
        return IntegralResult(total, err, evals, True)
    if not converged:
        raise ToleranceNotReached(
            f"tolerance not reached on split window (best estimate "
            f"{total!r} +- {err:.3e})",
            IntegralResult(total, err, evals, False))
    return IntegralResult(total, err, evals, True)


def truncation_bounds(fs, s_center, s_radius, eps):
    """Window (a, b), a < 1 < b, outside which every f in fs satisfies
    int |f(x)| * |x^s - x^s_center| dx < eps for all |s - s_center| <= radius.

    Constructive selection rule M1*a^2/2 + M2/b < eps: with
    alpha_1 = floor(s_center - radius) - 1 the two power terms are together
    <= M1*x on (0,1], and with alpha_2 = ceil(s_center + radius) + 2 they are
    <= M2*x^-2 on [1,inf), where M1/M2 are twice the worst certified bounds.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    alpha_1 = math.floor(s_center - s_radius) - 1
    alpha_2 = math.ceil(s_center + s_radius) + 2
    m1 = 2.0 * max(f.certificate.bound(alpha_1, 0) for f in fs)
    m2 = 2.0 * max(f.certificate.bound(alpha_2, 0) for f in fs)
    a = min(0.5, math.sqrt(eps / m1)) if m1 > 0 else 0.5
    b = max(2.0, m2 / (0.5 * eps)) if m2 > 0 else 2.0
    return a, b
