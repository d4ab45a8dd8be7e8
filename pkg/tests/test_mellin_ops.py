import math

import numpy as np
import pytest

import mellinlab as ml
from mellinlab import mellin_ops as mo

from _oracles import (SQRT_PI, log_convolve_trapezoid, loggauss,
                      loggauss_selfconv, loggauss_transform,
                      mellin_trapezoid)


# -- transform --------------------------------------------------------------

@pytest.mark.parametrize("s", [-2.0, -0.5, 0.0, 1.0, 1.5, 3.0])
def test_transform_closed_form(cat, qcfg, s):
    # M(e^{-ln^2 x})(s) = sqrt(pi) e^{s^2 / 4}
    res = mo.mellin_transform(cat["log-gauss"], s, qcfg)
    assert res.converged
    want = loggauss_transform(s)
    assert abs(res.value - want) < 1e-10 * want
    assert abs(res.value - want) <= res.error_estimate + 1e-13 * want


def test_transform_matches_trapezoid_oracle(cat, qcfg):
    g1 = cat["exp-recip"]
    for s in (-1.0, 0.5, 2.0):
        want = mellin_trapezoid(g1.value, s)
        got = mo.mellin_transform(g1, s, qcfg).value
        assert abs(got - want) < 1e-9 * (1.0 + abs(want))


def test_transform_of_cutoff_dominates_plateau(cat, qcfg):
    # the plateau [1, 2] of theta_2 alone contributes (2^s - 1) / s
    for s in (5.0, 10.0, 20.0):
        value = mo.mellin_transform(cat["theta2"], s, qcfg).value
        assert value >= (2.0 ** s - 1.0) / s


# -- convolution ------------------------------------------------------------

def test_self_convolution_closed_form(cat, qcfg):
    conv = mo.mellin_convolve(cat["log-gauss"], cat["log-gauss"], qcfg)
    x = np.array([0.25, 1.0, math.e, 10.0])
    dev = np.abs(conv.function.value(x) - loggauss_selfconv(x))
    assert float(dev.max()) < 1e-12
    at_one = conv.pointwise(1.0)
    assert at_one.converged
    assert abs(at_one.value - math.sqrt(math.pi / 2.0)) < 1e-12


def test_convolution_matches_trapezoid_oracle(cat, qcfg):
    conv = mo.mellin_convolve(cat["log-gauss"], cat["exp-recip"], qcfg)
    for x in (0.5, 1.0, 3.0):
        want = log_convolve_trapezoid(
            cat["log-gauss"].value, cat["exp-recip"].value, x)
        assert abs(float(conv.function.value(x)) - want) < 1e-9


def test_commutativity(cat, qcfg):
    x = np.array([0.25, 1.0, math.e, 10.0])
    for a, b in (("log-gauss", "exp-recip"), ("bump", "theta2")):
        fg = mo.mellin_convolve(cat[a], cat[b], qcfg).function.value(x)
        gf = mo.mellin_convolve(cat[b], cat[a], qcfg).function.value(x)
        assert float(np.max(np.abs(fg - gf))) < 1e-6


def test_associativity(cat, qcfg):
    f, g, h = cat["log-gauss"], cat["bump"], cat["theta2"]
    left = mo.mellin_convolve(
        mo.mellin_convolve(f, g, qcfg).function, h, qcfg).function
    right = mo.mellin_convolve(
        f, mo.mellin_convolve(g, h, qcfg).function, qcfg).function
    x = np.array([1.0, 4.0])
    assert float(np.max(np.abs(left.value(x) - right.value(x)))) < 1e-5


def test_bilinearity(cat, qcfg):
    from mellinlab import function_space as fs
    f, b, g = cat["log-gauss"], cat["bump"], cat["exp-recip"]
    combined = mo.mellin_convolve(fs.add(f, b), g, qcfg).function
    split = fs.add(mo.mellin_convolve(f, g, qcfg).function,
                   mo.mellin_convolve(b, g, qcfg).function)
    x = np.array([0.5, 1.0, 2.0, 8.0])
    assert float(np.max(np.abs(combined.value(x) - split.value(x)))) < 1e-8


def test_zero_factor_short_circuit(cat, qcfg):
    from mellinlab import function_space as fs
    conv = mo.mellin_convolve(fs.zero_function(), cat["log-gauss"], qcfg)
    assert conv.diagnostics == ["zero factor"]
    assert conv.function.certificate.is_zero()
    res = conv.pointwise(1.0)
    assert res.value == 0.0 and res.converged and res.evaluations == 0


def test_convolution_support_is_the_product_interval(cat, qcfg):
    conv = mo.mellin_convolve(cat["bump"], cat["bump"], qcfg).function
    assert conv.support == (1.0, 9.0)
    outside = np.array([0.5, 0.99, 9.01, 20.0])
    assert float(np.max(np.abs(conv.value(outside)))) == 0.0
    inside = conv.value(np.array([2.0, 3.0, 5.0]))
    assert np.all(inside > 0.0)


def test_inherited_certificate_is_sound(cat, qcfg):
    conv = mo.mellin_convolve(cat["log-gauss"], cat["exp-recip"], qcfg).function
    x = np.exp(np.linspace(-2.0, 2.0, 9))
    for alpha, beta in ((1, 0), (0, 1)):
        bound = conv.certificate.bound(alpha, beta)
        vals = np.abs(x ** alpha * conv.derivative(beta, x))
        assert float(vals.max()) <= bound * (1.0 + 1e-9)


def test_convolution_theorem(cat, qcfg):
    # M(f * g) = Mf Mg; exact closed form at s = 1 for the self-convolution
    res = mo.mellin_transform(
        mo.mellin_convolve(cat["log-gauss"], cat["log-gauss"], qcfg).function,
        1.0, qcfg)
    want = math.pi * math.exp(0.5)
    assert abs(res.value - want) < 1e-8 * want
    for f, g, s in (("log-gauss", "exp-recip", 2.0), ("bump", "theta2", -1.0)):
        assert mo.convolution_theorem_residual(cat[f], cat[g], s, qcfg) < 1e-6


@pytest.mark.parametrize("f,g,x,beta", [
    ("log-gauss", "exp-recip", 1.0, 1),
    ("log-gauss", "bump", 1.5, 2),
    ("bump", "theta2", 2.0, 1),
])
def test_derivative_oracle_consistency(cat, qcfg, f, g, x, beta):
    res = mo.convolution_derivative_residual(cat[f], cat[g], x, beta, qcfg)
    assert res < 1e-6


def test_derivative_residual_requires_positive_order(cat, qcfg):
    with pytest.raises(ValueError):
        mo.convolution_derivative_residual(
            cat["bump"], cat["bump"], 1.0, 0, qcfg)


# -- fast path --------------------------------------------------------------

def test_fast_convolution_matches_closed_form(cat):
    grid = mo.mellin_convolve_fast(
        cat["log-gauss"], cat["log-gauss"], (-8.0, 8.0, 1024))
    t = grid.grid()
    want = loggauss_selfconv(np.exp(t))
    assert float(np.max(np.abs(grid.samples - want))) < 1e-6
    assert grid.step == 16.0 / 1024


def test_fast_convolution_matches_direct(cat, qcfg):
    grid = mo.mellin_convolve_fast(
        cat["log-gauss"], cat["exp-recip"], (-8.0, 8.0, 1024))
    direct = mo.mellin_convolve(cat["log-gauss"], cat["exp-recip"], qcfg)
    idx = [400, 512, 700]
    x = np.exp(grid.grid()[idx])
    dev = np.abs(grid.samples[idx] - direct.function.value(x))
    assert float(dev.max()) < 1e-6


def test_fast_convolution_rejects_leaky_window(cat):
    with pytest.raises(ml.TailMassExceeded):
        mo.mellin_convolve_fast(
            cat["log-gauss"], cat["log-gauss"], (-2.0, 2.0, 256))


def test_fast_convolution_grid_validation(cat):
    with pytest.raises(ValueError):
        mo.mellin_convolve_fast(cat["bump"], cat["bump"], (-2.0, 3.0, 256))
    with pytest.raises(ValueError):
        mo.mellin_convolve_fast(cat["bump"], cat["bump"], (-8.0, 8.0, 1000))


def test_log_grid_function_validation():
    with pytest.raises(ValueError):
        mo.LogGridFunction(-1.0, 1.0, 12, np.zeros(12))
    with pytest.raises(ValueError):
        mo.LogGridFunction(1.0, -1.0, 16, np.zeros(16))
    with pytest.raises(ValueError):
        mo.LogGridFunction(-1.0, 1.0, 16, np.zeros(8))
    g = mo.LogGridFunction(-1.0, 1.0, 16, np.zeros(16))
    assert g.step == 0.125
    assert g.grid()[0] == -1.0 and len(g.grid()) == 16


# -- norms and the convolution inequality ------------------------------------

def test_haar_norm_closed_form(cat, qcfg):
    # |g0|_1 under dy / y equals int e^{-t^2} dt = sqrt(pi)
    assert abs(mo.haar_norm(cat["log-gauss"], 1, qcfg) - SQRT_PI) < 1e-10
    # |g0|_2^2 = int e^{-2 t^2} dt = sqrt(pi / 2)
    want = (math.pi / 2.0) ** 0.25
    assert abs(mo.haar_norm(cat["log-gauss"], 2, qcfg) - want) < 1e-10


def test_young_inequality_margins(cat, qcfg):
    for a, b in (("log-gauss", "log-gauss"), ("log-gauss", "exp-recip")):
        for p, q in ((1.0, 1.0), (2.0, 1.0), (1.5, 1.5)):
            lhs, rhs, margin = mo.young_inequality_check(
                cat[a], cat[b], p, q, qcfg)
            assert margin >= -1e-9 * (1.0 + rhs)
            assert lhs >= 0.0 and rhs >= 0.0


def test_young_equality_for_nonnegative_l1(cat, qcfg):
    # at p = q = 1 with nonnegative factors the inequality saturates at pi
    lhs, rhs, margin = mo.young_inequality_check(
        cat["log-gauss"], cat["log-gauss"], 1.0, 1.0, qcfg)
    assert abs(lhs - math.pi) < 1e-8
    assert abs(rhs - math.pi) < 1e-10
    assert abs(margin) < 1e-8


def test_young_exponent_validation(cat):
    with pytest.raises(ValueError):
        mo.young_inequality_check(cat["bump"], cat["bump"], 0.5, 1.0)
    with pytest.raises(ValueError):
        mo.young_inequality_check(cat["bump"], cat["bump"], 3.0, 3.0)
    with pytest.raises(ValueError):
        mo.haar_norm(cat["bump"], 0.9)
