import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from bgtransform.errors import AccuracyError, DomainError, RangeError
from bgtransform.specfun import (
    SeriesControl,
    Sigma,
    bessel_I,
    bessel_I_scaled,
    bessel_J,
    gamma_half,
    hyp0f1,
    hyp1f1,
    hyp1f1_euler,
    hyp1f1_series,
    hyp2f1_terminating,
    laguerre,
    log_bessel_I,
    macdonald_K,
    macdonald_K_closed,
    meixner,
    pochhammer,
)

mp.mp.dps = 30


# --- Sigma ---------------------------------------------------------------

def test_sigma_fields():
    s = Sigma(3)
    assert s.value == 1.5
    assert s.alpha == 2
    assert 2 * s.nu == 1 - s.two_sigma
    assert s.weight_order == 2
    assert str(s) == "3/2" and str(Sigma(4)) == "2"


@pytest.mark.parametrize("bad", [0, -1, 1.5, True, "2"])
def test_sigma_rejects(bad):
    with pytest.raises(DomainError):
        Sigma(bad)


def test_series_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(rel_tol=0)
    with pytest.raises(DomainError):
        SeriesControl(max_terms=0)


# --- Gamma and Pochhammer ------------------------------------------------

def test_gamma_half_examples():
    assert gamma_half(2) == 1.0
    assert_allclose(gamma_half(1), 1.7724538509055159, rtol=1e-15)
    assert_allclose(gamma_half(7), 15 * math.sqrt(math.pi) / 8, rtol=1e-15)


@pytest.mark.parametrize("two_a", range(1, 40))
def test_gamma_half_vs_math(two_a):
    assert_allclose(gamma_half(two_a), math.gamma(two_a / 2), rtol=4e-15)


def test_gamma_half_errors():
    with pytest.raises(DomainError):
        gamma_half(0)
    with pytest.raises(RangeError):
        gamma_half(400)


def test_pochhammer_examples():
    assert pochhammer(2.7, 0) == 1.0
    assert pochhammer(1, 5) == 120
    assert pochhammer(3, 4) == 360
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


@given(st.floats(-20, 20, allow_nan=False), st.integers(0, 50))
def test_pochhammer_step(a, n):
    lhs = pochhammer(a, n + 1)
    rhs = pochhammer(a, n) * (a + n)
    assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-300)


# --- Bessel --------------------------------------------------------------

def test_bessel_J_examples():
    assert bessel_J(0, 0) == 1.0
    assert bessel_J(1, 0) == 0.0
    assert_allclose(bessel_J(0.5, 2.0), math.sqrt(2 / (math.pi * 2)) * math.sin(2), rtol=1e-14)
    assert_allclose(bessel_J(1.5, 2.5), 0.5250802646640031, rtol=1e-14)


def test_bessel_I_examples():
    assert bessel_I(0, 0) == 1.0
    assert_allclose(bessel_I(1, 1e-8), 0.5e-8, rtol=1e-12)
    # frozen mpmath value
    assert_allclose(bessel_I(1, 2.0), 1.590636854637329, rtol=1e-15)


@pytest.mark.parametrize("nu", [0, 1, 2, 3, 4, 0.5, 2.5])
@pytest.mark.parametrize("x", [0.1, 3.0, 12.0, 29.0, 31.0, 80.0, 250.0])
def test_bessel_I_vs_mpmath(nu, x):
    ref = float(mp.besseli(nu, x) * mp.exp(-x))
    assert_allclose(bessel_I_scaled(nu, x), ref, rtol=2e-14)
    assert_allclose(log_bessel_I(nu, x), float(mp.log(mp.besseli(nu, x))), rtol=1e-14, atol=1e-15)


def test_bessel_I_overflow():
    with pytest.raises(RangeError):
        bessel_I(1, 800.0)
    assert np.isfinite(bessel_I_scaled(1, 800.0))


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_I(0, -1.0)
    with pytest.raises(DomainError):
        bessel_J(-0.5, 0.0)


# --- MacDonald K ---------------------------------------------------------

def test_macdonald_K_examples():
    ref = math.sqrt(math.pi / 2) * math.exp(-1)
    assert_allclose(macdonald_K(0.5, 1.0), ref, rtol=1e-14)
    assert_allclose(macdonald_K(-0.5, 1.0), ref, rtol=1e-14)
    # frozen mpmath values
    assert_allclose(macdonald_K(0, 2.0), 0.11389387274953344, rtol=1e-14)
    assert_allclose(macdonald_K(1, 2.0), 0.13986588181652243, rtol=1e-14)
    assert_allclose(macdonald_K(3, 0.5), 62.05790952993026, rtol=1e-13)


@pytest.mark.parametrize("two_nu", [1, 3, 5, 7, -3])
def test_macdonald_K_closed_forms(two_nu):
    xi = np.linspace(0.1, 10, 40)
    closed = np.array([macdonald_K_closed(two_nu, x) for x in xi])
    assert_allclose(macdonald_K(two_nu / 2, xi), closed, rtol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.floats(0.1, 40.0))
def test_macdonald_K_vs_mpmath(two_nu, xi):
    ref = float(mp.besselk(two_nu / 2, xi))
    assert macdonald_K(two_nu / 2, xi) == pytest.approx(ref, rel=1e-12)


def test_macdonald_K_domain():
    with pytest.raises(DomainError):
        macdonald_K(0.3, 1.0)
    with pytest.raises(DomainError):
        macdonald_K(0, 0.0)
    with pytest.raises(DomainError):
        macdonald_K_closed(2, 1.0)


# --- hypergeometric ------------------------------------------------------

def test_hyp0f1_examples():
    assert hyp0f1(3, 0) == 1
    # 0F1(; nu+1; -zeta^2/4) = Gamma(nu+1) (zeta/2)^-nu J_nu(zeta), nu = zeta = 1
    assert_allclose(hyp0f1(2, -0.25).real, 2 * bessel_J(1, 1.0), rtol=1e-14)
    assert_allclose(hyp0f1(1, 1).real, bessel_I(0, 2.0), rtol=1e-14)
    assert_allclose(hyp0f1(3, 2 - 1j), 1.796278003837044 - 0.5334719101741671j, rtol=1e-14)
    with pytest.raises(DomainError):
        hyp0f1(-2, 1.0)


@pytest.mark.parametrize("two_sigma", range(1, 9))
def test_hyp0f1_bessel_chain(two_sigma):
    # 0F1(; 2s; x) = Gamma(2s) x^{(1-2s)/2} I_{2s-1}(2 sqrt x)
    for x in np.linspace(0.05, 25, 30):
        lhs = hyp0f1(two_sigma, x).real
        rhs = gamma_half(2 * two_sigma) * x ** ((1 - two_sigma) / 2) * bessel_I(two_sigma - 1, 2 * math.sqrt(x))
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_hyp1f1_examples():
    assert hyp1f1(1.3, 2.0, 0) == 1
    assert_allclose(hyp1f1(2, 2, 1 + 1j), np.exp(1 + 1j), rtol=1e-15)
    assert_allclose(hyp1f1(1.5, 2, -1).real, 0.4886144672642784, rtol=1e-14)
    # large |z|: Euler route
    assert_allclose(hyp1f1(2.5, 4, 20j), 0.020409504503205795 - 0.047460627663437296j, rtol=1e-12)
    assert_allclose(hyp1f1(1.5, 2, -15 + 9j), 0.005368204445219926 + 0.005948774598014873j, rtol=1e-11)


def test_hyp1f1_routes_agree():
    for z in [3 + 4j, -5 + 1j, 8j, -9.0]:
        assert_allclose(hyp1f1_euler(1.5, 3.0, z), hyp1f1_series(1.5, 3.0, z), rtol=1e-12)


def test_hyp1f1_terminating_and_errors():
    # 1F1(-2; b; z) = 1 - 2z/b + z^2/(b(b+1))
    assert_allclose(hyp1f1(-2, 3, -4.0).real, 1 + 8 / 3 + 16 / 12, rtol=1e-15)
    with pytest.raises(DomainError):
        hyp1f1(1, 0, 1.0)
    with pytest.raises(DomainError):
        hyp1f1_euler(3.0, 2.0, 1.0)
    with pytest.raises(AccuracyError):
        hyp1f1_series(0.5, 1.5, 30.0, SeriesControl(max_terms=5))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.floats(-12, 12), st.floats(-12, 12))
def test_hyp1f1_vs_mpmath(two_sigma, re, im):
    a, b = two_sigma / 2 + 0.5, float(two_sigma)
    z = complex(re, im)
    ref = complex(mp.hyp1f1(a, b, z))
    scale = max(1.0, abs(np.exp(z)))
    assert abs(hyp1f1(a, b, z) - ref) <= 1e-12 * scale


def test_hyp2f1_terminating_examples():
    assert hyp2f1_terminating(0, 2.3, 4.0, 1.7 - 2j) == 1
    s = 1.5
    zeta = 0.3 + 0.8j
    assert_allclose(hyp2f1_terminating(1, s + 0.5, 2 * s, zeta), 1 - (s + 0.5) / (2 * s) * zeta, rtol=1e-15)
    assert hyp2f1_terminating(7, 1.5, 2.0, 0j) == 1


def test_hyp2f1_terminating_vectorized_and_guard():
    zeta = np.array([0.5, 1 + 1j, -2.0])
    out = hyp2f1_terminating(5, 1.5, 3.0, zeta)
    ref = [complex(mp.hyp2f1(-5, 1.5, 3.0, complex(z))) for z in zeta]
    assert_allclose(out, ref, rtol=1e-14)
    with pytest.raises(DomainError):
        hyp2f1_terminating(65, 1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        hyp2f1_terminating(3, 1.0, -1.0, 0.5)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 16), st.integers(1, 5), st.floats(-20, 20))
def test_hyp2f1_on_hardy_argument(n, two_sigma, x):
    # argument 1/(1/2 - ix) lies on the circle |zeta - 1| = 1
    zeta = 1 / (0.5 - 1j * x)
    s = two_sigma / 2
    ref = complex(mp.hyp2f1(-n, s + 0.5, 2 * s, zeta))
    # sum of |terms|; the alternating sum cannot beat eps times this
    cond = float(mp.hyp2f1(-n, s + 0.5, 2 * s, -abs(zeta)))
    assert abs(hyp2f1_terminating(n, s + 0.5, 2 * s, zeta) - ref) < 1e-14 * cond


def test_laguerre_examples():
    t = np.linspace(0, 5, 7)
    assert_allclose(laguerre(0, 1.5, t), 1.0)
    assert_allclose(laguerre(1, 1.5, t), 2.5 - t)
    assert laguerre(2, 0, 0.0) == 1.0
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 0.5)


@pytest.mark.parametrize("alpha", [0, 1, 2, 3, 0.5])
def test_laguerre_recurrence(alpha):
    t = np.linspace(0.1, 30, 25)
    for n in range(1, 40):
        lhs = (n + 1) * laguerre(n + 1, alpha, t)
        rhs = (2 * n + 1 + alpha - t) * laguerre(n, alpha, t) - (n + alpha) * laguerre(n - 1, alpha, t)
        assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12 * np.max(np.abs(lhs)))


def test_laguerre_vs_mpmath():
    for n, alpha, t in [(5, 2, 3.3), (12, 0, 7.5), (20, 3, 40.0)]:
        assert_allclose(laguerre(n, alpha, t), float(mp.laguerre(n, alpha, t)), rtol=1e-12)


def test_meixner_examples():
    assert meixner(0, 1.3, 2.0, 0.7) == 1
    u, b, c = 2.5, 3.0, 0.4 + 0.2j
    assert_allclose(meixner(1, u, b, c), 1 + (u / b) * (1 - 1 / c), rtol=1e-15)
    assert meixner(2, 1, 2, 0.5) == 0
    assert_allclose(meixner(3, 2.5, 3, 0.5 + 0.25j), -0.73325 + 1.111j, rtol=1e-14)
    with pytest.raises(DomainError):
        meixner(2, 1.0, 2.0, 0)


def test_meixner_generating_sum():
    # sum_n M_n(u, b; c) zeta^n / n! = e^zeta 1F1(-u; b; (1-c)/c zeta)
    u, b, c, zeta = 3.0, 2.0, 0.6, 0.5
    lhs = math.fsum((meixner(n, u, b, c) * zeta ** n / math.factorial(n)).real for n in range(40))
    rhs = (np.exp(zeta) * hyp1f1(-u, b, (1 - c) / c * zeta)).real
    assert_allclose(lhs, rhs, rtol=1e-13)
