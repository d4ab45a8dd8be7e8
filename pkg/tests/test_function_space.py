import math

import numpy as np
import pytest

import mellinlab as ml
from mellinlab import function_space as fs

from _oracles import SQRT_PI


# -- seminorm values on the log square bell ---------------------------------

@pytest.mark.parametrize("alpha", [-2, -1, 0, 1, 2, 3])
def test_weight_only_seminorms_closed_form(cat, alpha):
    # sup x^alpha e^{-ln^2 x} = e^{alpha^2 / 4}
    got = fs.seminorm(cat["log-gauss"], (alpha, 0))
    assert abs(got - math.exp(alpha * alpha / 4.0)) < 1e-12 * math.exp(
        alpha * alpha / 4.0)


def test_first_derivative_seminorm_closed_form(cat):
    # sup |g0'| is attained at x = 1/e with value exactly 2
    assert abs(fs.seminorm(cat["log-gauss"], (0, 1)) - 2.0) < 1e-12


def test_seminorm_accepts_index_objects(cat):
    idx = fs.SeminormIndex(1, 0)
    a = fs.seminorm(cat["log-gauss"], idx)
    b = fs.seminorm(cat["log-gauss"], (1, 0))
    assert a == b


def test_homogeneity(cat):
    g1 = cat["exp-recip"]
    for idx in ((1, 1), (0, 2), (-1, 0)):
        base = fs.seminorm(g1, idx)
        got = fs.seminorm(fs.scale(g1, 2.5), idx)
        assert abs(got - 2.5 * base) <= 1e-12 * (1.0 + abs(base))


def test_triangle_inequality_for_seminorms(cat):
    f, g = cat["log-gauss"], cat["bump"]
    for idx in ((0, 0), (1, 1), (-1, 2)):
        lhs = fs.seminorm(fs.add(f, g), idx)
        rhs = fs.seminorm(f, idx) + fs.seminorm(g, idx)
        assert lhs <= rhs + 1e-9 * (1.0 + rhs)


@pytest.mark.parametrize("v", [0.5, 3.0])
def test_dilation_covariance(cat, v):
    # p_(a,b)(f(./v)) = v^(a-b) p_(a,b)(f)
    f = cat["log-gauss"]
    for alpha, beta in ((0, 0), (2, 0), (1, 1), (-1, 2)):
        base = fs.seminorm(f, (alpha, beta))
        got = fs.seminorm(fs.dilate(f, v), (alpha, beta))
        want = v ** (alpha - beta) * base
        assert abs(got - want) <= 1e-9 * (1.0 + abs(want))


def test_certificates_dominate_seminorms(cat):
    indices = [(0, 0), (1, 0), (-1, 1), (2, 2), (0, 3)]
    for f in cat.values():
        for alpha, beta in indices:
            if not f.certificate.covers(alpha, beta):
                continue
            bound = f.certificate.bound(alpha, beta)
            value = fs.seminorm(f, (alpha, beta))
            assert value <= bound * (1.0 + 1e-9) + 1e-300, (
                f.label, alpha, beta, value, bound)


def test_zero_function_is_degenerate():
    z = fs.zero_function()
    assert z.certificate.is_zero()
    assert fs.seminorm(z, (3, 2)) == 0.0
    assert float(np.max(np.abs(z.value(np.linspace(0.1, 9.0, 50))))) == 0.0


def test_seminorm_order_capability_limit(cat):
    with pytest.raises(ml.CapabilityError):
        fs.seminorm(cat["log-gauss"], (0, fs.BETA_MAX + 1))


# -- certificates -----------------------------------------------------------

def test_uncertified_callable_has_gaps():
    f = fs.from_callable(lambda x: np.exp(-np.log(x) ** 2))
    assert not f.certificate.covers(0, 0)
    with pytest.raises(ml.CertificateGap):
        f.certificate.bound(0, 0)


def test_callable_difference_quotient_fallback(cat):
    f = fs.from_callable(lambda x: np.exp(-np.log(x) ** 2))
    x = np.array([0.7, 1.9])
    want = cat["log-gauss"].derivative(1, x)
    got = f.derivative(1, x)
    assert float(np.max(np.abs(got - want))) < 1e-5


def test_certificate_rejects_negative_bound():
    cert = fs.DecayCertificate(extender=lambda a, b: -1.0)
    with pytest.raises(ml.MellinLabError):
        cert.bound(0, 0)


# -- metric -----------------------------------------------------------------

def test_metric_vanishes_on_the_diagonal(cat):
    value, tail = fs.metric(cat["log-gauss"], cat["log-gauss"], n=4)
    assert value == 0.0
    assert tail == fs.metric_tail(4)


def test_metric_tail_closed_form():
    # sum over |alpha| + beta > n of 2^-(|alpha| + beta) = (2n + 5) 2^-n
    assert fs.metric_tail(8) == 21.0 / 256.0
    assert fs.metric_tail(0) == 5.0
    # cross-check against a brute partial sum of the discarded weights
    n, brute = 6, 0.0
    for k in range(n + 1, 200):
        brute += (2 * k + 1) * 2.0 ** -k
    assert abs(fs.metric_tail(n) - brute) < 1e-15


def test_metric_symmetry_and_boundedness(cat):
    f, g = cat["log-gauss"], cat["exp-recip"]
    dfg, tail = fs.metric(f, g, n=6)
    dgf, _ = fs.metric(g, f, n=6)
    assert dfg == dgf
    assert dfg > 0.0
    assert dfg + tail < 6.0


def test_metric_truncation_is_monotone(cat):
    f, g = cat["log-gauss"], cat["bump"]
    v6, t6 = fs.metric(f, g, n=6)
    v8, t8 = fs.metric(f, g, n=8)
    assert 0.0 <= v8 - v6 <= t6 + 1e-12
    assert t8 < t6


def test_metric_triangle_inequality(cat):
    f, g, h = cat["log-gauss"], cat["exp-recip"], cat["bump"]
    dfh, _ = fs.metric(f, h, n=5)
    dfg, _ = fs.metric(f, g, n=5)
    dgh, _ = fs.metric(g, h, n=5)
    assert dfh <= dfg + dgh + 1e-9


def test_metric_validation(cat):
    with pytest.raises(ValueError):
        fs.metric(cat["bump"], cat["bump"], n=-1)
    with pytest.raises(ml.CapabilityError):
        fs.metric(cat["bump"], cat["bump"], n=fs.BETA_MAX + 1)


# -- integrability ----------------------------------------------------------

def test_weighted_integral_closed_forms(cat, qcfg):
    g0 = cat["log-gauss"]
    cases = {
        # int e^{t - t^2} dt
        (0, 0, 1): SQRT_PI * math.exp(0.25),
        # int e^{3t - 2 t^2} dt
        (1, 0, 2): math.sqrt(math.pi / 2.0) * math.exp(9.0 / 8.0),
        # int 2|t| e^{-t - t^2} dt = 2 + sqrt(pi) e^{1/4} erf(1/2)
        (-1, 1, 1): 2.0 + SQRT_PI * math.exp(0.25) * math.erf(0.5),
    }
    for (alpha, beta, p), want in cases.items():
        lhs, rhs, ok = fs.weighted_lp_bound_check(g0, alpha, beta, p, qcfg)
        assert ok
        assert lhs <= rhs
        assert abs(lhs - want) < 1e-9 * want


def test_weighted_integral_rejects_bad_exponent(cat):
    with pytest.raises(ValueError):
        fs.weighted_lp_bound_check(cat["log-gauss"], 0, 0, 0.5)


# -- nonnormability witness --------------------------------------------------

@pytest.mark.parametrize("m", [2, 4, 8, 16])
def test_witness_blowup_is_linear(m):
    # with the single constraint (0, 0): lambda = m, amplitude eps / m, and
    # the order-2 extremal of the bump is 8, so the blowup is exactly 4 m
    _, sups, blowup = fs.nonnormability_witness([(0, 0)], 1.0, m)
    assert max(sups) <= 1.0
    assert abs(blowup - 4.0 * m) <= 1e-12 * 4.0 * m


def test_witness_respects_several_constraints():
    # highest constrained order here is 1, so lambda = sqrt(m) and the
    # order-3 blowup scales like sqrt(m): doubling m multiplies it by sqrt 2
    indices = [(0, 0), (1, 1), (-1, 0)]
    for m in (3, 9):
        _, sups, blowup = fs.nonnormability_witness(indices, 0.5, m)
        assert max(sups) <= 0.5 * (1.0 + 1e-12)
    _, _, b1 = fs.nonnormability_witness(indices, 0.5, 4)
    _, _, b2 = fs.nonnormability_witness(indices, 0.5, 8)
    assert abs(b2 / b1 - math.sqrt(2.0)) < 1e-9


def test_witness_validation():
    with pytest.raises(ValueError):
        fs.nonnormability_witness([], 1.0, 2)
    with pytest.raises(ValueError):
        fs.nonnormability_witness([(0, 0)], 0.0, 2)
    with pytest.raises(ValueError):
        fs.nonnormability_witness([(0, 0)], 1.0, 0)
    with pytest.raises(ml.CapabilityError):
        fs.nonnormability_witness([(0, 7)], 1.0, 2)


# -- density of compact support ----------------------------------------------

def test_truncation_errors_decay(cat):
    rows = fs.density_experiment(cat["log-gauss"], (1, 1), [4, 8, 16, 32, 64])
    errs = [e for _, e in rows]
    assert all(a > b > 0.0 for a, b in zip(errs[:-1], errs[1:]))
    logs_n = np.log([n for n, _ in rows])
    slope = float(np.polyfit(logs_n, np.log(errs), 1)[0])
    assert slope <= -0.8


def test_cutoff_truncation_is_exact_on_the_plateau(cat):
    g0, theta = cat["log-gauss"], cat["theta4"]
    trunc = fs.multiply(theta, g0)
    x = np.linspace(0.5, 4.0, 101)
    assert float(np.max(np.abs(trunc.value(x) - g0.value(x)))) == 0.0
    outside = np.array([0.1, 5.5, 9.0])
    assert float(np.max(np.abs(trunc.value(outside)))) == 0.0
    assert trunc.support == (0.25, 5.0)


# -- oracle algebra ----------------------------------------------------------

def test_algebra_supports():
    cat = fs.catalog()
    s = fs.add(cat["bump"], cat["theta2"])
    assert s.support == (0.5, 3.0)
    assert fs.add(cat["bump"], cat["log-gauss"]).support is None
    assert fs.multiply(cat["bump"], cat["theta2"]).support == (1.0, 3.0)
    assert fs.dilate(cat["bump"], 2.0).support == (2.0, 6.0)


def test_dilate_validation(cat):
    with pytest.raises(ValueError):
        fs.dilate(cat["bump"], 0.0)
    with pytest.raises(ValueError):
        fs.dilate(cat["bump"], -1.0)


def test_product_derivatives_use_leibniz(cat):
    f, g = cat["log-gauss"], cat["theta2"]
    prod = fs.multiply(f, g)
    x = np.array([0.8, 1.7, 2.4])
    want = f.derivative(1, x) * g.value(x) + f.value(x) * g.derivative(1, x)
    assert float(np.max(np.abs(prod.derivative(1, x) - want))) < 1e-14
