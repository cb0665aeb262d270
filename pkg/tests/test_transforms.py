import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import gamma as sgamma

from ifunc.contour import evaluate
from ifunc.errors import StripError
from ifunc.params import IFunctionParams, chi
from ifunc.transforms import (
    epstein_power,
    epstein_product,
    epstein_quotient,
    epstein_scale,
    laplace_ifunction,
    mellin_function,
    mellin_ifunction,
    product_mellin_params,
)
from ifunc.verification import integrate as oracle_integrate
from ifunc.verification import mellin_convolution

EXPONENTIAL = IFunctionParams(1, 0, [], [(0, 1, 1)])
WEIBULL2 = IFunctionParams(1, 0, [], [(0.5, 0.5, 1)])
CONSTANT = IFunctionParams(1, 0, [(1, 1, 1)], [(0, 1, 1)])


def test_mellin_exponential():
    assert mellin_ifunction(EXPONENTIAL, 1.0, 1.0, 3).real == pytest.approx(2.0, rel=1e-14)


def test_mellin_sigma_rescale():
    delta = 1.7
    got = mellin_ifunction(EXPONENTIAL, delta, 2.0, 1.0)
    want = 0.5 * delta ** (-0.5) * chi(EXPONENTIAL, 0.5)
    assert got == pytest.approx(want, rel=1e-13)


def test_mellin_weibull_against_quadrature():
    got = mellin_ifunction(WEIBULL2, 1.0, 1.0, 2.0).real
    want = oracle_integrate(lambda x: x * evaluate(WEIBULL2, x).real, 0, math.inf)
    assert got == pytest.approx(want, rel=1e-8)


def test_mellin_function_strip():
    M = mellin_function(EXPONENTIAL, 1.0, 1.0)
    assert M(2.0) == pytest.approx(1.0)
    with pytest.raises(StripError):
        M(-0.5)


def test_product_mellin_constant_second_factor():
    for s in (1.0, 1.7, 2.0 + 0.5j):
        pm = product_mellin_params(EXPONENTIAL, 2.0, 1.0, CONSTANT, 0.5, 0.0, s)
        assert pm.value() == pytest.approx(mellin_ifunction(EXPONENTIAL, 2.0, 1.0, s), rel=1e-9)


def test_product_mellin_two_gamma_type_factors():
    # x**(alpha-1) exp(-a x) times 0F1(; alpha; lam x) written as I-functions
    alpha, a, lam = 2.0, 1.5, 0.8
    p1 = IFunctionParams(1, 0, [], [(alpha - 1, 1, 1)])
    p2 = IFunctionParams(1, 0, [], [(0, 1, 1), (1 - alpha, 1, 1)])
    s = 2.5
    pm = product_mellin_params(p1, a, 1.0, p2, -lam, 1.0, s)

    def f(x):
        return x ** (s - 1) * evaluate(p1, a * x).real * evaluate(p2, -lam * x).real

    want = oracle_integrate(f, 0, math.inf, rel_tol=1e-9)
    assert pm.value().real == pytest.approx(want, rel=1e-7)


def test_laplace_exponential():
    assert laplace_ifunction(EXPONENTIAL, 1.0, 1.0, 1.0) == pytest.approx(0.5, rel=1e-12)
    assert laplace_ifunction(EXPONENTIAL, 1.0, 1.0, 1e-9) == pytest.approx(
        mellin_ifunction(EXPONENTIAL, 1.0, 1.0, 1.0).real, rel=1e-8
    )


def test_laplace_weibull_against_quadrature():
    got = laplace_ifunction(WEIBULL2, 1.0, 1.0, 1.0)
    # the kernel function is 2 x exp(-x**2)
    want, _ = integrate.quad(lambda x: math.exp(-x) * 2 * x * math.exp(-x * x), 0, np.inf, epsabs=0, epsrel=1e-12)
    want2 = oracle_integrate(lambda x: math.exp(-x) * evaluate(WEIBULL2, x).real, 0, math.inf)
    assert got == pytest.approx(want2, rel=1e-7)
    assert got == pytest.approx(want, rel=1e-7)


def test_epstein_rules():
    M = mellin_function(EXPONENTIAL, 1.0, 1.0)
    for s in (1.3, 2.0 + 0.4j):
        assert epstein_scale(M, 1.0)(s) == M(s)
        assert epstein_scale(M, 2.0)(s) == pytest.approx(2.0 ** (s - 1) * M(s), rel=1e-13)
        assert epstein_power(M, 0.5)(s) == pytest.approx(M(0.5 * s + 0.5), rel=1e-13)
    assert epstein_quotient(M, M)(1.0) == pytest.approx(1.0, rel=1e-13)
    prod = epstein_product([M, M])
    assert prod(3.0) == pytest.approx(4.0, rel=1e-13)
    f = lambda x: math.exp(-x)
    want = oracle_integrate(lambda y: y * y * mellin_convolution(f, f, y), 0, math.inf, rel_tol=1e-8)
    assert prod(3.0).real == pytest.approx(want, rel=1e-7)
