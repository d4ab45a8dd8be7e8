"""Multiplicative functionals and recovery of their exponent.

Every nonzero continuous multiplicative functional on the convolution
algebra acts as point evaluation of the Mellin transform at some real s.
functional_ms builds such a functional; recover_exponent inverts one from
black-box queries alone, using the dilation response

    m(D_x g) / m(g) = x^s,

so the log-log slope of the response is the hidden exponent.  Disagreement
of the slope across probe points (the consistency residual) is the
computable signature that a black box is NOT of this form.

The e_function family witnesses injectivity of the exponent map: E_c(s)
integrates (x^s - x^c) against a fixed positive bump on [1, 3], vanishes at
s = c, and is strictly increasing in s, so distinct exponents give distinct
functionals.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBaseFunction, MellinLabError
from .function_space import dilate
from .mellin_ops import mellin_transform
from .quadrature import DEFAULT_CONFIG, IntegralResult, integrate_window
from . import mellin_ops


@dataclass(frozen=True)
class FunctionalOracle:
    apply: object
    description: str


@dataclass(frozen=True)
class RecoveryReport:
    s_estimate: float
    phi_samples: list
    consistency_residual: float


def functional_ms(s, cfg=DEFAULT_CONFIG):
    """The multiplicative functional whose exponent is s.

    The returned oracle is a black box: callers see only apply() and a
    generic description, which is what makes recovery experiments honest.
    """
    s = float(s)

    def apply(f):
        return mellin_transform(f, s, cfg).value

    return FunctionalOracle(
        apply=apply,
        description="dilation-equivariant multiplicative functional")


def additive_mixture_functional(s1, s2, cfg=DEFAULT_CONFIG):
    """Sum of two evaluation functionals: linear but NOT multiplicative.

    Exists so negative tests can confirm the recovery diagnostics flag a
    box that fails the dilation law.
    """
    def apply(f):
        return (mellin_transform(f, s1, cfg).value
                + mellin_transform(f, s2, cfg).value)

    return FunctionalOracle(
        apply=apply, description="additive mixture of two evaluations")


def dilation_identity_residual(g, x, y, probes=(0.5, 1.0, math.e, 5.0),
                               cfg=DEFAULT_CONFIG):
    """max_u |(D_y g * D_x g)(u) - (g * D_xy g)(u)| over the probe points.

    Both sides have Mellin transform (xy)^s (Mg)^2, so the residual is pure
    numerics; it certifies dilation compatibility of the convolution.
    """
    lhs = mellin_ops.mellin_convolve(dilate(g, y), dilate(g, x), cfg).function
    rhs = mellin_ops.mellin_convolve(g, dilate(g, x * y), cfg).function
    pts = np.asarray(probes, dtype=float)
    return float(np.max(np.abs(np.asarray(lhs.value(pts))
                               - np.asarray(rhs.value(pts)))))


def recover_exponent(m, g_star, probes=(math.e, 2.0, 0.5)):
    """Identify the exponent of a multiplicative functional from queries.

    phi(x) = m(D_x g*) / m(g*) equals x^s when m is evaluation at s, so
    each probe yields the estimate ln phi(x) / ln x.  Returns a
    RecoveryReport whose consistency_residual (spread of the per-probe
    estimates) is ~0 for genuine functionals and large for impostors.
    """
    if any(p <= 0 or p == 1 for p in probes):
        raise ValueError("probes must be positive and distinct from 1")
    if not probes:
        raise ValueError("need at least one probe")
    base = m.apply(g_star)
    if not abs(base) > 1e-12:
        raise DegenerateBaseFunction(
            "functional vanishes on the base function; dilation response "
            "is undefined")
    samples = []
    estimates = []
    for x in probes:
        phi = m.apply(dilate(g_star, x)) / base
        if not phi > 0:
            raise MellinLabError(
                f"non-positive dilation response phi({x}) = {phi!r}")
        samples.append((float(x), float(phi)))
        estimates.append(math.log(phi) / math.log(x))
    return RecoveryReport(
        s_estimate=float(np.mean(estimates)),
        phi_samples=samples,
        consistency_residual=float(np.max(estimates) - np.min(estimates)))


def _bump_weight(x):
    out = np.zeros_like(x)
    inside = (x > 1.0) & (x < 3.0)
    xi = x[inside]
    out[inside] = np.exp(-1.0 / ((3.0 - xi) * (xi - 1.0)))
    return out


def e_function_result(c, s, cfg=DEFAULT_CONFIG):
    """E_c(s) = int_1^3 (x^s - x^c) w(x) dx as a full IntegralResult,
    w the fixed positive bump vanishing to all orders at 1 and 3."""
    if s == c:
        return IntegralResult(0.0, 0.0, 0, True)

    def integrand(x):
        return (x ** s - x ** c) * _bump_weight(x)

    return integrate_window(integrand, 1.0, 3.0, cfg)


def e_function(c, s, cfg=DEFAULT_CONFIG):
    """Separating function value E_c(s); zero iff s = c, increasing in s."""
    return e_function_result(c, s, cfg).value


def e_monotonicity_check(c, s_grid, cfg=DEFAULT_CONFIG):
    """True when E_c is strictly increasing along s_grid with every
    difference exceeding the combined quadrature error of its endpoints."""
    s_grid = [float(s) for s in s_grid]
    if len(s_grid) < 2 or any(b <= a for a, b in zip(s_grid, s_grid[1:])):
        raise ValueError("s_grid must be strictly increasing")
    results = [e_function_result(c, s, cfg) for s in s_grid]
    for left, right in zip(results[:-1], results[1:]):
        gap = right.value - left.value
        if gap <= left.error_estimate + right.error_estimate:
            return False
    return True
