import math

import numpy as np
import pytest
from scipy.special import gamma as sgamma

from ifunc.algebra import bessel_gamma, power
from ifunc.catalog import catalog
from ifunc.closed_forms import constant_pattern
from ifunc.errors import RestrictionError
from ifunc.ifig import gig, ifig_to_product_form, inverse_gamma, inverse_gaussian, make_ifig
from ifunc.params import IFunctionParams
from ifunc.special import bessel_k
from ifunc.verification import integrate


def test_gamma_equivalent_normalizer():
    d = make_ifig(2.0, 1.0, 0.0)
    assert d.k2 == pytest.approx(1.0, rel=1e-12)
    info = d.mellin_info(1.5)
    assert info.terms == 1


def test_gig_normalizer():
    alpha, beta, gam = 1.5, 2.0, 3.0
    d = gig(alpha, beta, gam)
    want = beta ** (alpha / 2) / (2 * gam ** (alpha / 2) * bessel_k(alpha, math.sqrt(beta * gam)))
    # the constant I-factor contributes delta-independent unity
    assert d.k2 == pytest.approx(want, rel=1e-6)


def test_pdf_support():
    d = gig(1.5, 2.0, 3.0)
    assert d.pdf(0.0) == 0.0 and d.pdf(-1.0) == 0.0


def test_inverse_gaussian_pdf():
    mu, lam = 1.0, 1.0
    d = inverse_gaussian(mu, lam)
    for x in (0.5, 1.0, 2.0):
        want = math.sqrt(lam / (2 * math.pi * x**3)) * math.exp(-lam * (x - mu) ** 2 / (2 * mu**2 * x))
        assert d.pdf(x) == pytest.approx(want, rel=1e-7)


def test_inverse_gamma_pdf():
    theta, lam = 3.0, 2.0
    d = inverse_gamma(theta, lam)
    for x in (0.3, 1.0, 4.0):
        want = lam**theta * x ** (-theta - 1) * math.exp(-lam / x) / sgamma(theta)
        assert d.pdf(x) == pytest.approx(want, rel=1e-7)
    inv = power(catalog("gamma", theta=theta, lam=1 / lam), -1)
    for x in (0.3, 1.0, 4.0):
        assert d.pdf(x) == pytest.approx(inv.pdf(x), rel=1e-8)


def test_mellin_normalization_and_quadrature():
    d = gig(1.5, 2.0, 3.0)
    assert d.mellin(1.0) == pytest.approx(1.0, rel=1e-10)
    want = integrate(lambda x: x * d.pdf(x), 0, math.inf)
    assert d.mellin(2.0) == pytest.approx(want, rel=1e-6)
    for e in (make_ifig(2.5, 1.3, 0.0), inverse_gamma(3.0, 2.0)):
        assert e.mellin(1.0) == pytest.approx(1.0, rel=1e-10)


def test_general_i_factor_series_matches_quadrature():
    p = IFunctionParams(1, 0, [], [(0.5, 1, 1)])
    d = make_ifig(1.2, 0.8, 0.6, p, delta=0.7, sigma=1.0)
    assert d.mellin(1.0) == pytest.approx(1.0, rel=1e-9)
    want = integrate(lambda x: x**0.5 * d.pdf(x), 0, math.inf)
    assert d.mellin(1.5) == pytest.approx(want, rel=1e-6)
    doubled = d.with_cap(2 * d.series_cap)
    assert doubled.mellin(2.0) == pytest.approx(d.mellin(2.0), rel=1e-10)


def test_b_zero_reduces_to_product_form():
    p = IFunctionParams(1, 0, [], [(0.5, 1, 1)])
    d = make_ifig(2.0, 1.5, 0.0, p, delta=0.4, sigma=1.0)
    assert d.mellin_info(2.0).terms == 1
    pf = ifig_to_product_form(d)
    for s in (1.0, 1.7, 2.5):
        assert d.mellin(s) == pytest.approx(pf.mellin(s).real, rel=1e-9)
    for x in np.geomspace(0.1, 8, 10):
        assert d.pdf(x) == pytest.approx(pf.pdf(x), rel=1e-9)


def test_bessel_gamma_as_conversion():
    alpha, a, lam = 2.0, 1.5, 0.7
    second = IFunctionParams(1, 0, [], [(0.0, 1.0, 1.0), (1.0 - alpha, 1.0, 1.0)])
    d = make_ifig(alpha, a, 0.0, second, delta=-lam, sigma=1.0, validate=False)
    pf = ifig_to_product_form(d)
    ref = bessel_gamma(alpha, a, lam)
    for x in (0.3, 1.0, 3.0):
        assert pf.pdf(x) == pytest.approx(ref.pdf(x), rel=1e-9)


def test_conversion_rejects_positive_b():
    with pytest.raises(RestrictionError):
        ifig_to_product_form(gig(1.5, 2.0, 3.0))


def test_moments():
    alpha, beta, gam = 1.5, 2.0, 3.0
    d = gig(alpha, beta, gam)
    assert d.moment(0) == pytest.approx(1.0, rel=1e-10)
    w = math.sqrt(beta * gam)
    want = math.sqrt(gam / beta) * bessel_k(alpha + 1, w) / bessel_k(alpha, w)
    assert d.moment(1) == pytest.approx(want, rel=1e-6)
    assert inverse_gamma(3.0, 2.0).moment(1) == pytest.approx(1.0, rel=1e-6)


def test_laplace():
    mu, lam = 1.0, 1.0
    d = inverse_gaussian(mu, lam)
    assert d.laplace(0.0) == pytest.approx(1.0, rel=1e-12)
    assert d.laplace(1.0) == pytest.approx(math.exp(1 - math.sqrt(3)), rel=1e-6)
    values = [d.laplace(r) for r in np.linspace(0, 5, 10)]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_gig_embeds_inverse_gaussian():
    mu, lam = 1.3, 2.1
    a = gig(-0.5, lam / mu**2, lam)
    b = inverse_gaussian(mu, lam)
    for x in (0.4, 1.0, 2.5):
        assert a.pdf(x) == pytest.approx(b.pdf(x), rel=1e-10)


def test_restrictions():
    with pytest.raises(RestrictionError):
        make_ifig(1.0, 0.0, 0.0)
    with pytest.raises(RestrictionError):
        make_ifig(1.0, -1.0, 1.0)
