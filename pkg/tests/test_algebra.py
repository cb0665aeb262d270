import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats
from scipy.special import hyp0f1

from ifunc.algebra import (
    bessel_gamma,
    confluent_gamma,
    make_product_form,
    noncentral_chi_square,
    power,
    product,
    product_form_from_dict,
    quotient,
    scale,
)
from ifunc.catalog import catalog
from ifunc.closed_forms import constant_pattern
from ifunc.errors import DomainError
from ifunc.special import bessel_k
from ifunc.verification import integrate, mellin_convolution, quotient_convolution

STRIP_POINTS = [1.2, 1.5 + 0.3j, 2.0, 1.1 - 1.7j, 1.8 + 2.2j]


def _same_mellin(d1, d2, points=STRIP_POINTS, rel=1e-10):
    for s in points:
        assert d1.mellin(s) == pytest.approx(d2.mellin(s), rel=rel)


def test_single_factor_product():
    d = catalog("gamma", theta=2.5, lam=1.5)
    _same_mellin(product([d]), d)


def test_uniform_times_gamma_is_exponential():
    lam = 1.7
    p = product([catalog("uniform"), catalog("gamma", theta=2.0, lam=lam)])
    e = catalog("exponential", lam=lam)
    for x in np.geomspace(0.05, 10, 10):
        assert p.pdf(x) == pytest.approx(e.pdf(x), rel=1e-9)


def test_product_of_unit_exponentials():
    e = catalog("exponential")
    p = product([e, e])
    assert p.pdf(1.0) == pytest.approx(2 * bessel_k(0, 2.0), rel=1e-6)
    assert p.pdf(1.0) == pytest.approx(mellin_convolution(e.pdf, e.pdf, 1.0), rel=1e-6)


def test_three_factor_product_mellin():
    ds = [catalog("gamma", theta=2.0), catalog("half_normal", lam=0.7), catalog("beta_first_kind")]
    p = product(ds)
    for s in STRIP_POINTS[:3]:
        assert p.mellin(s) == pytest.approx(np.prod([d.mellin(s) for d in ds]), rel=1e-10)


def test_scale():
    d = catalog("gamma", theta=1.5, lam=0.8)
    s1 = scale(d, 1.0)
    for x in (0.1, 1.0, 4.0):
        assert s1.pdf(x) == pytest.approx(d.pdf(x), rel=1e-12)
    lam, theta = 1.5, 2.5
    se = scale(catalog("exponential", lam=lam), theta)
    target = catalog("exponential", lam=lam * theta)
    for x in (0.2, 1.0, 5.0):
        assert se.pdf(x) == pytest.approx(target.pdf(x), rel=1e-10)
    a = 3.0
    for r in (1, 2, 0.5):
        assert scale(d, a).moment(r) == pytest.approx(a**r * d.moment(r), rel=1e-10)
    with pytest.raises(DomainError):
        scale(d, -1.0)


def test_power():
    d = catalog("gamma", theta=2.5, lam=1.2)
    _same_mellin(power(d, 1), d)
    theta, lam = 3.0, 2.0
    w = power(catalog("exponential", lam=lam), Fraction(1, 3))
    target = catalog("weibull", theta=theta, lam=lam)
    for x in (0.3, 1.0, 1.6):
        assert w.pdf(x) == pytest.approx(target.pdf(x), rel=1e-10)
    assert power(catalog("exponential", lam=lam), "1/3").pdf(1.0) == pytest.approx(target.pdf(1.0), rel=1e-10)
    g = catalog("gamma", theta=3.0, lam=2.0)
    inv = power(g, -1)
    for x in (0.2, 0.7, 3.0):
        assert inv.pdf(x) == pytest.approx(g.pdf(1 / x) / x**2, rel=1e-8)
    twice = power(power(g, 0.5), 4)
    assert twice.pdf(1.3) == pytest.approx(power(g, 2).pdf(1.3), rel=1e-9)
    with pytest.raises(DomainError):
        power(g, 0)


def test_quotient():
    l1, l2 = 2.0, 0.5
    q = quotient(catalog("half_normal", lam=l1), catalog("half_normal", lam=l2))
    target = catalog("half_cauchy", lam=l1 / l2)
    for x in (0.1, 1.0, 7.0):
        assert q.pdf(x) == pytest.approx(target.pdf(x), rel=1e-9)
    e = catalog("exponential")
    qe = quotient(e, e)
    assert qe.pdf(1.0) == pytest.approx(0.25, rel=1e-10)
    assert qe.pdf(1.0) == pytest.approx(quotient_convolution(e.pdf, e.pdf, 1.0), rel=1e-8)
    d1, d2 = catalog("gamma", theta=2.5), catalog("weibull", theta=1.5)
    s = 1.3 + 0.7j
    assert quotient(d1, d2).mellin(s) == pytest.approx(d1.mellin(s) * d2.mellin(2 - s), rel=1e-10)


def test_quotient_bounded_support():
    q = quotient(catalog("uniform"), catalog("pareto", lam=2.0))
    assert q.support == (0.0, 1.0)
    assert integrate(q.pdf, 0.0, 1.0) == pytest.approx(1.0, rel=1e-8)


def test_product_form_constant_second_factor():
    g = catalog("gamma", theta=2.0, lam=1.5)
    pf = make_product_form(g.params, g.delta, g.sigma, constant_pattern(), 0.5, 0.0)
    for x in (0.3, 1.0, 2.5):
        assert pf.pdf(x) == pytest.approx(g.pdf(x), rel=1e-9)


def test_bessel_gamma_normalizer():
    alpha, a, lam = 2.0, 1.5, 0.7
    d = bessel_gamma(alpha, a, lam)
    assert d.moment(0) == pytest.approx(1.0, rel=1e-10)
    # k1 = a exp(-lam / a) for alpha = 2 after the gamma-function factors cancel
    mass = integrate(lambda x: x ** (alpha - 1) * math.exp(-a * x) * hyp0f1(alpha, lam * x), 0, math.inf)
    assert d.pdf(1.0) == pytest.approx(math.exp(-a) * hyp0f1(alpha, lam) / mass, rel=1e-7)


def test_noncentral_chi_square():
    nu, beta = 4.0, 2.0
    d = noncentral_chi_square(nu, beta)
    for x in (1.0, 3.0, 8.0):
        series = sum(
            math.exp(-beta / 2) * (beta / 2) ** j / math.factorial(j) * stats.chi2.pdf(x, nu + 2 * j) for j in range(60)
        )
        assert d.pdf(x) == pytest.approx(series, rel=1e-7)
    assert d.moment(0) == pytest.approx(1.0, rel=1e-10)
    assert d.moment(1) == pytest.approx(nu + beta, rel=1e-6)


def test_confluent_gamma_mean():
    d = confluent_gamma(2.0, 1.0, 1.0)
    assert d.moment(0) == pytest.approx(1.0, rel=1e-10)
    # the 1F1 factor leaves binary64 range near x = 710; the tail past 200 is below exp(-190)
    want = integrate(lambda x: x * d.pdf(x), 0, 200.0, rel_tol=1e-9)
    assert d.moment(1) == pytest.approx(want, rel=1e-6)


def test_product_form_far_tail():
    # exp(-2x) underflows on its own here; the product must not
    d = confluent_gamma(2.0, 1.0, 1.0)
    x = 400.0
    log_want = math.log(d.k1) + math.log(2 * x) - 2 * x + x - math.log(x)
    # 1F1(1; 2; x) = (exp(x) - 1) / x
    assert math.log(d.pdf(x)) == pytest.approx(log_want, rel=1e-10)


def test_product_form_round_trip():
    d = noncentral_chi_square(3.0, 1.5)
    e = product_form_from_dict(d.to_dict())
    assert e.pdf(2.0) == pytest.approx(d.pdf(2.0), rel=1e-12)
