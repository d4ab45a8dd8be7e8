import math

import numpy as np
import pytest

import mellinlab as ml
from mellinlab import function_space as fs
from mellinlab import mellin_ops as mo
from mellinlab import structure_space as ss

from _oracles import loggauss_transform


# -- multiplicative functionals ----------------------------------------------

@pytest.mark.parametrize("s", [-1.0, 0.0, 2.0])
def test_functional_is_multiplicative(cat, qcfg, s):
    # m_s(f * g) = m_s(f) m_s(g)
    m = ss.functional_ms(s, qcfg)
    f, g = cat["log-gauss"], cat["exp-recip"]
    conv = mo.mellin_convolve(f, g, qcfg).function
    lhs = m.apply(conv)
    rhs = m.apply(f) * m.apply(g)
    assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(rhs))


def test_functional_dilation_response(cat, qcfg):
    # m_s(D_x g) = x^s m_s(g)
    m = ss.functional_ms(1.5, qcfg)
    g = cat["log-gauss"]
    base = m.apply(g)
    assert abs(base - loggauss_transform(1.5)) < 1e-9 * base
    for x in (0.5, 2.0, math.e):
        assert abs(m.apply(fs.dilate(g, x)) - x ** 1.5 * base) <= (
            1e-9 * (1.0 + abs(base)))


def test_functional_descriptions_hide_the_exponent():
    a = ss.functional_ms(0.0)
    b = ss.functional_ms(2.5)
    assert a.description == b.description
    assert "2.5" not in b.description


def test_dilation_compatibility_of_convolution(cat, qcfg):
    res = ss.dilation_identity_residual(
        cat["log-gauss"], 2.0, 0.5, probes=(0.5, 1.0, math.e), cfg=qcfg)
    assert res < 1e-9


# -- exponent recovery --------------------------------------------------------

@pytest.mark.parametrize("s", [-2.25, 0.0, 1.5, 3.0])
@pytest.mark.parametrize("base", ["log-gauss", "exp-recip", "bump"])
def test_exponent_recovery(cat, qcfg, s, base):
    report = ss.recover_exponent(ss.functional_ms(s, qcfg), cat[base])
    assert abs(report.s_estimate - s) < 1e-9
    assert report.consistency_residual < 1e-9
    assert len(report.phi_samples) == 3


def test_recovery_flags_non_multiplicative_box(cat, qcfg):
    box = ss.additive_mixture_functional(0.0, 2.0, qcfg)
    report = ss.recover_exponent(box, cat["log-gauss"])
    assert report.consistency_residual > 0.01


def test_recovery_rejects_degenerate_base(qcfg):
    m = ss.functional_ms(1.0, qcfg)
    with pytest.raises(ml.DegenerateBaseFunction):
        ss.recover_exponent(m, fs.zero_function())


def test_recovery_probe_validation(cat, qcfg):
    m = ss.functional_ms(1.0, qcfg)
    with pytest.raises(ValueError):
        ss.recover_exponent(m, cat["log-gauss"], probes=(2.0, 1.0))
    with pytest.raises(ValueError):
        ss.recover_exponent(m, cat["log-gauss"], probes=(-0.5, 2.0))


# -- separating family --------------------------------------------------------

def test_e_function_frozen_values(qcfg):
    # independent high-resolution trapezoid oracle, frozen
    assert abs(ss.e_function(0.0, 1.0, qcfg) - 0.4439938161680794) < 1e-12
    assert abs(ss.e_function(0.0, -1.0, qcfg) + 0.2123949660814226) < 1e-12
    assert abs(ss.e_function(0.0, -2.0, qcfg) + 0.31766050165635124) < 1e-12
    assert abs(ss.e_function(0.0, 2.0, qcfg) - 1.4021829252572138) < 1e-12


def test_e_function_diagonal_short_circuit(qcfg):
    res = ss.e_function_result(1.0, 1.0, qcfg)
    assert res.value == 0.0 and res.evaluations == 0 and res.converged
    assert ss.e_function(0.0, 0.0, qcfg) == 0.0


def test_e_function_sign(qcfg):
    assert ss.e_function(1.0, 2.0, qcfg) > 0.0
    assert ss.e_function(1.0, 0.0, qcfg) < 0.0


def test_e_function_antisymmetry(qcfg):
    # E_c(s) = -E_s(c) since the integrand is antisymmetric in (s, c)
    a = ss.e_function(0.5, 2.0, qcfg)
    b = ss.e_function(2.0, 0.5, qcfg)
    assert abs(a + b) < 1e-12 * (1.0 + abs(a))


def test_e_function_monotone(qcfg):
    grid = [-2.0, -1.0, -0.5, 0.0, 0.75, 1.5, 3.0]
    assert ss.e_monotonicity_check(0.0, grid, qcfg)
    values = [ss.e_function(0.0, s, qcfg) for s in grid]
    assert all(b > a for a, b in zip(values[:-1], values[1:]))


def test_e_monotonicity_grid_validation(qcfg):
    with pytest.raises(ValueError):
        ss.e_monotonicity_check(0.0, [1.0], qcfg)
    with pytest.raises(ValueError):
        ss.e_monotonicity_check(0.0, [2.0, 1.0], qcfg)


def test_separating_weight_is_a_bump():
    x = np.linspace(0.0, 4.0, 401)
    w = ss._bump_weight(x)
    assert np.all(w >= 0.0)
    assert float(np.max(w[(x <= 1.0) | (x >= 3.0)])) == 0.0
    assert float(np.max(w)) > 0.0
