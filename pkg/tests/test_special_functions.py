import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from ifunc.special import bessel_i, bessel_k, gamma_power, log_gamma, near_pole


@pytest.mark.parametrize(
    "z, expected",
    [(1.0, 0.0), (0.5, 0.5 * math.log(math.pi)), (4.0, math.log(6.0))],
)
def test_log_gamma_elementary_values(z, expected):
    assert abs(log_gamma(z) - expected) < 1e-12


@pytest.mark.parametrize("z", [0.3 + 0.2j, 2.5 - 7j, -3.7 + 0.1j, 40 + 60j, 1e-3 + 1e-3j])
def test_log_gamma_matches_mpmath(z):
    want = complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))
    assert abs(log_gamma(z) - want) <= 1e-12 * max(1.0, abs(want))


@pytest.mark.parametrize("z", [0.7 + 0.4j, -2.3 + 5j, 12.5 - 3j])
def test_log_gamma_recurrence(z):
    lhs = log_gamma(z + 1) - log_gamma(z)
    d = lhs - complex(np.log(z))
    # equal modulo 2 pi i
    assert abs(d.real) < 1e-12
    assert abs(d.imag - 2 * math.pi * round(d.imag / (2 * math.pi))) < 1e-12


@pytest.mark.parametrize("x", [0.25, 0.6, 0.9])
def test_log_gamma_reflection(x):
    total = log_gamma(x) + log_gamma(1 - x)
    assert abs(total.real - math.log(math.pi / math.sin(math.pi * x))) < 1e-12


def test_log_gamma_pole_raises():
    from ifunc.errors import PoleError

    with pytest.raises(PoleError):
        log_gamma(-2.0)
    assert near_pole(-3.0)
    assert not near_pole(-2.5)


def test_gamma_power_values():
    assert abs(gamma_power(0.5, 2) - math.pi) < 1e-13
    assert abs(gamma_power(3, 1) - 2) < 1e-13
    want = complex(mpmath.exp(0.5 * mpmath.loggamma(1 + 1j)))
    assert abs(gamma_power(1 + 1j, 0.5) - want) < 1e-12 * abs(want)


def test_bessel_k_half_order_closed_form():
    want = math.sqrt(math.pi / 4) * math.exp(-2)
    assert abs(bessel_k(-0.5, 2) - want) < 1e-10 * want
    assert abs(bessel_k(-0.5, 2) - 0.1199377) < 1e-7


@pytest.mark.parametrize("nu, x", [(0.3, 1.2), (2.7, 0.5), (7.2, 9.0), (1.0, 40.0)])
def test_bessel_k_symmetry(nu, x):
    assert bessel_k(nu, x) == pytest.approx(bessel_k(-nu, x), rel=1e-12)


def test_bessel_k_zero_order_against_quadrature():
    want, _ = integrate.quad(lambda t: math.exp(-math.cosh(t)), 0, 10.0, epsabs=0, epsrel=1e-13)
    assert abs(bessel_k(0, 1) - want) < 1e-10
    assert abs(bessel_k(0, 1) - 0.4210244382) < 1e-9


def test_bessel_i_small_argument():
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(1, 1.0) == pytest.approx(float(mpmath.besseli(1, 1)), rel=1e-12)
