import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from bgtransform.errors import DomainError
from bgtransform.quadrature import (
    IntegrandError,
    QuadratureRule,
    bg_density_radial,
    fourier_rule,
    integrate_fourier,
    integrate_planar,
    integrate_real_line,
    planar_rule,
    radial_cutoff,
    real_line_rule,
)
from bgtransform.specfun import Sigma, pochhammer


def test_rule_validation():
    with pytest.raises(DomainError):
        QuadratureRule("nowhere", [1.0], [1.0])
    with pytest.raises(DomainError):
        QuadratureRule("radial_positive", [0.0, 1.0], [1.0, 1.0])
    with pytest.raises(DomainError):
        QuadratureRule("angular_periodic", [2 * np.pi], [1.0])
    with pytest.raises(DomainError):
        QuadratureRule("real_line_mapped", [1.0, 2.0], [1.0])
    with pytest.raises(DomainError):
        QuadratureRule("real_line_mapped", [1.0], [np.inf])


def test_rules_are_read_only():
    rule = real_line_rule(64)
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0


def test_real_line_examples():
    rule = real_line_rule(200)
    val = integrate_real_line(lambda x: 1 / (x ** 2 + 0.25), rule)
    assert abs(val - 2 * np.pi) / (2 * np.pi) < 1e-12
    assert abs(integrate_real_line(lambda x: x / (1 + x ** 4), rule)) < 1e-15
    g = integrate_real_line(lambda x: np.exp(-x * x), rule)
    assert_allclose(g.real, math.sqrt(math.pi), rtol=1e-12)
    assert_allclose(integrate_real_line(lambda x: np.exp(-x * x), real_line_rule(400)).real, g.real, rtol=1e-13)


def test_real_line_min_points():
    with pytest.raises(DomainError):
        real_line_rule(4)


def test_integrand_error_reports_node():
    rule = real_line_rule(16)

    def f(x):
        x = np.asarray(x)
        if np.any(x > 5):
            return np.where(x > 5, np.nan, 1.0)
        return np.ones_like(x)

    with pytest.raises(IntegrandError) as info:
        integrate_real_line(f, rule)
    assert rule.nodes[info.value.index] > 5


def test_radial_cutoff_grows_with_degree():
    s = Sigma(2)
    assert radial_cutoff(s, 0) == 25 + 2
    assert radial_cutoff(s, 30) > radial_cutoff(s, 10) > 25


@pytest.mark.parametrize("two_sigma", [1, 2, 3, 4, 5])
def test_planar_examples(two_sigma):
    s = Sigma(two_sigma)
    rule = planar_rule(s, 200, 32)
    assert_allclose(integrate_planar(lambda z: np.ones_like(z), rule).real, 1.0, rtol=1e-13)
    assert abs(integrate_planar(lambda z: z, rule)) < 1e-14
    assert_allclose(integrate_planar(lambda z: np.abs(z) ** 2, rule).real, two_sigma, rtol=1e-13)


@pytest.mark.parametrize("two_sigma", [1, 2, 5])
def test_planar_moments(two_sigma):
    s = Sigma(two_sigma)
    rule = planar_rule(s, 200, 32)
    for n in range(13):
        val = integrate_planar(lambda z: np.abs(z) ** (2 * n), rule).real
        ref = pochhammer(two_sigma, n) * math.factorial(n)
        assert val == pytest.approx(ref, rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(0, 15), st.integers(0, 15))
def test_planar_angular_orthogonality(two_sigma, m, n):
    if m == n:
        return
    rule = planar_rule(Sigma(two_sigma), 120, 32)
    scale = math.sqrt(pochhammer(two_sigma, m) * math.factorial(m)
                      * pochhammer(two_sigma, n) * math.factorial(n))
    val = integrate_planar(lambda z: z ** m * np.conj(z) ** n, rule)
    assert abs(val) / scale < 1e-14


def test_planar_self_convergence():
    s = Sigma(3)
    f = lambda z: np.abs(z) ** 16  # noqa: E731
    a = integrate_planar(f, planar_rule(s, 100, 32)).real
    b = integrate_planar(f, planar_rule(s, 200, 32)).real
    assert abs(a - b) / b < 1e-8


def test_planar_validation():
    with pytest.raises(DomainError):
        planar_rule(Sigma(1), 200, 7)
    with pytest.raises(DomainError):
        planar_rule(Sigma(1), 4, 16)


def test_planar_rule_is_cached():
    assert planar_rule(Sigma(2), 64, 16) is planar_rule(Sigma(2), 64, 16)


def test_density_matches_literal_at_half():
    r = np.linspace(0.05, 4, 9)
    assert_allclose(bg_density_radial(Sigma(1), r), bg_density_radial(Sigma(1), r, literal_weight=True))


def test_literal_density_misnormalized():
    # the 1/2 - sigma order does not integrate to one for sigma != 1/2
    rule = planar_rule(Sigma(2), 200, 16, literal_weight=True)
    total = integrate_planar(lambda z: np.ones_like(z), rule).real
    assert abs(total - 1) > 0.1


def test_fourier_rule_exact_transforms():
    rule = fourier_rule()
    # e^{-|x|} -> 2 / (1 + t^2); 1 / (x^2 + 1/4) -> 2 pi e^{-|t|/2}
    for t in [0.0, 0.3, -1.7, 5.0, 40.0]:
        if t != 0:  # the kink at 0 is outside the t = 0 line rule's scope
            v1 = integrate_fourier(lambda x: np.exp(-np.abs(x)), t, rule)
            assert abs(v1 - 2 / (1 + t * t)) < 1e-12
        v2 = integrate_fourier(lambda x: 1 / (x * x + 0.25), t, rule)
        assert abs(v2 - 2 * np.pi * np.exp(-abs(t) / 2)) < 1e-12


def test_fourier_slow_decay():
    # 1/(1/2 - ix) decays like 1/|x|: transform is 2 pi e^{-t/2} for t > 0, 0 for t < 0
    rule = fourier_rule()
    f = lambda x: 1 / (0.5 - 1j * x)  # noqa: E731
    for t in [0.1, 1.0, 7.0]:
        assert abs(integrate_fourier(f, t, rule) - 2 * np.pi * np.exp(-t / 2)) < 1e-12
        assert abs(integrate_fourier(f, -t, rule)) < 1e-12


def test_fourier_rule_needs_fourier_domain():
    with pytest.raises(DomainError):
        integrate_fourier(np.cos, 1.0, real_line_rule(32))
