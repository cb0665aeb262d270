import math

import numpy as np
import pytest
from scipy.special import gamma as sgamma

from ifunc.catalog import CATALOG, catalog, catalog_names
from ifunc.distribution import distribution_from_dict, make_distribution
from ifunc.errors import DivergenceError, DomainError, MomentDivergenceError, NegativeDensityError, NormalizationError
from ifunc.params import IFunctionParams
from ifunc.verification import integrate, reference_pdf

EXPONENTIAL = IFunctionParams(1, 0, [], [(0, 1, 1)])
UNIFORM = IFunctionParams(1, 0, [(1, 1, 1)], [(0, 1, 1)])


def test_normalizing_constants():
    for lam in (0.5, 2.0):
        d = make_distribution(EXPONENTIAL, 1 / lam, 1.0)
        assert d.k0 == pytest.approx(1 / lam, rel=1e-12)
    assert make_distribution(UNIFORM, 1.0, 1.0, (0.0, 1.0)).k0 == pytest.approx(1.0, rel=1e-12)
    theta, lam = 3.5, 2.0
    d = make_distribution(IFunctionParams(1, 0, [], [(theta - 1, 1, 1)]), 1 / lam, 1.0)
    assert d.k0 == pytest.approx(1 / (lam * sgamma(theta)), rel=1e-12)


def test_rejects_invalid_kernels():
    # exp(x) is not normalizable
    with pytest.raises(NormalizationError):
        make_distribution(EXPONENTIAL, -1.0, 1.0)
    # Gamma(s) / Gamma(3 - s) is a Bessel J kernel: positive mass, oscillating sign
    with pytest.raises(NegativeDensityError) as info:
        make_distribution(IFunctionParams(1, 0, [], [(0, 1, 1), (-2, 1, 1)]), 1.0, 1.0)
    assert 5 < info.value.x < 10


def test_pdf_values(unit_exponential, uniform):
    d = catalog("exponential", lam=2.0)
    assert d.pdf(1.0) == pytest.approx(0.5 * math.exp(-0.5), rel=1e-12)
    assert uniform.pdf(0.3) == pytest.approx(1.0, rel=1e-12)
    for dist in (d, uniform, catalog("pareto")):
        assert dist.pdf(-1.0) == 0.0


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_matches_reference(name):
    d = catalog(name)
    lo, hi = d.support
    xs = np.linspace(lo, hi, 7)[1:-1] if math.isfinite(hi) else np.geomspace(max(lo, 0.0) + 0.05, max(lo, 0.0) + 8, 6)
    for x in xs:
        assert d.pdf(x) == pytest.approx(reference_pdf(name, x, **CATALOG[name].defaults), rel=1e-9)


def test_catalog_parameter_blocks():
    e = catalog("exponential", lam=4.0)
    assert (e.params.m, e.params.n, e.params.p, e.params.q) == (1, 0, 0, 1)
    assert e.params.lower[0].as_tuple() == (0, 1, 1) and e.delta == 0.25 and e.sigma == 1
    hc = catalog("half_cauchy", lam=2.0)
    assert (hc.params.m, hc.params.n) == (1, 1)
    assert hc.params.upper[0].as_tuple() == (0, 0.5, 1) and hc.params.lower[0].as_tuple() == (0, 0.5, 1)
    assert hc.delta == 0.5
    pa = catalog("pareto", lam=3.0)
    assert (pa.params.m, pa.params.n, pa.params.p, pa.params.q) == (0, 1, 1, 1)
    assert pa.support == (1.0, math.inf)
    assert catalog("uniform").k0 == pytest.approx(1.0)
    with pytest.raises(DomainError):
        catalog("gamma", shape=1.0)
    with pytest.raises(DomainError):
        catalog("nonexistent")
    assert len(catalog_names()) == 16


def test_moments(uniform, unit_exponential):
    assert uniform.moment(2) == pytest.approx(1 / 3, rel=1e-10)
    w = catalog("weibull", theta=2.0, lam=1.0)
    assert w.moment(1) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-10)
    assert w.moment(1) == pytest.approx(integrate(lambda x: x * w.pdf(x), 0, math.inf), rel=1e-8)
    for d in (uniform, unit_exponential, catalog("half_cauchy"), catalog("pareto")):
        assert d.moment(0) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(MomentDivergenceError):
        catalog("half_cauchy").moment(1)


def test_cdf_and_survival(uniform, unit_exponential):
    assert unit_exponential.cdf(1e-12) == pytest.approx(0.0, abs=1e-10)
    assert uniform.cdf(0.5) == pytest.approx(0.5, rel=1e-10)
    assert unit_exponential.cdf(1.0) == pytest.approx(1 - math.exp(-1), rel=1e-10)
    want = integrate(unit_exponential.pdf, 0, 1.0)
    assert unit_exponential.cdf(1.0) == pytest.approx(want, rel=1e-9)
    for d in (unit_exponential, catalog("beta_first_kind"), catalog("pareto")):
        lo, hi = d.support
        x = 0.4 if math.isfinite(hi) else lo + 1.3
        assert d.cdf(x) + d.survival(x) == pytest.approx(1.0, abs=1e-10)


def test_hazard(uniform):
    for lam in (0.5, 2.0):
        d = catalog("exponential", lam=lam)
        for x in (0.5, 1.0, 2.0):
            assert d.hazard(x) == pytest.approx(1 / lam, rel=1e-9)
    g = catalog("gamma", theta=2.5, lam=1.0)
    assert g.hazard(1.2) == pytest.approx(g.pdf(1.2) / g.survival(1.2), rel=1e-12)
    assert uniform.hazard(0.5) == pytest.approx(2.0, rel=1e-9)


def test_characteristic_and_mgf(unit_exponential):
    for name in ("exponential", "uniform", "half_normal"):
        assert catalog(name).characteristic(0.0) == pytest.approx(1.0, abs=1e-12)
    assert unit_exponential.mgf(0.5) == pytest.approx(2.0, rel=1e-9)
    for t in np.linspace(-10, 10, 20):
        phi = unit_exponential.characteristic(t)
        assert abs(phi) <= 1 + 1e-12
        assert phi == pytest.approx(1 / (1 - 1j * t), rel=1e-8)
    with pytest.raises(DivergenceError):
        unit_exponential.mgf(2.0)
    lo, hi, closed = unit_exponential.mgf_strip()
    assert hi == pytest.approx(1.0)


def test_order_statistics(uniform):
    g = catalog("gamma", theta=2.0, lam=1.0)
    assert g.order_statistic_pdf(1, 1, 0.7) == pytest.approx(g.pdf(0.7), rel=1e-12)
    assert uniform.order_statistic_pdf(2, 1, 0.5) == pytest.approx(1.0, rel=1e-10)
    N, x = 4, 1.3
    total = sum(g.order_statistic_pdf(N, j, x) for j in range(1, N + 1))
    assert total == pytest.approx(N * g.pdf(x), rel=1e-10)


def test_quantile(uniform, unit_exponential):
    assert uniform.quantile(0.25) == pytest.approx(0.25, rel=1e-9)
    assert unit_exponential.quantile(0.5) == pytest.approx(math.log(2), rel=1e-9)
    d = catalog("weibull", theta=1.5, lam=2.0)
    for p in (0.1, 0.5, 0.9):
        assert d.cdf(d.quantile(p)) == pytest.approx(p, abs=1e-9)


def test_sample_is_seed_stable(unit_exponential):
    a = unit_exponential.sample(8, seed=3)
    b = unit_exponential.sample(8, seed=3)
    assert np.array_equal(a, b)
    assert np.all(a > 0)


def test_dict_round_trip():
    d = catalog("beta_second_kind", theta=2.5, lam=1.5)
    e = distribution_from_dict(d.to_dict())
    assert e.params == d.params and e.delta == d.delta and e.support == d.support
    assert e.pdf(0.8) == d.pdf(0.8)
