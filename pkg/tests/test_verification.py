import json
import math

import numpy as np
import pytest
from scipy import stats

from ifunc.errors import NonConvergenceError
from ifunc.special import bessel_k
from ifunc.verification import (
    compare,
    integrate,
    kolmogorov_threshold,
    ks_bound,
    ks_statistic,
    mellin_convolution,
    quotient_convolution,
    reference_cdf,
    reference_pdf,
    reference_sample,
)


def test_integrate_elementary():
    assert integrate(lambda x: math.exp(-x), 0, math.inf) == pytest.approx(1.0, rel=1e-12)
    assert integrate(lambda x: 1.0, 0, 1) == pytest.approx(1.0, rel=1e-14)
    assert integrate(lambda x: x**1.5 * math.exp(-x), 0, math.inf) == pytest.approx(1.3293403882, rel=1e-9)


def test_integrate_reports_failure():
    with pytest.raises(NonConvergenceError):
        integrate(lambda x: 1 / x, 0, 1)
    with pytest.raises(NonConvergenceError):
        integrate(lambda x: 1 / x, 1, math.inf)


def test_convolutions():
    f = lambda x: math.exp(-x)
    assert mellin_convolution(f, f, 1.0) == pytest.approx(2 * bessel_k(0, 2.0), rel=1e-9)
    assert mellin_convolution(f, f, 1.0) == pytest.approx(0.2277877455, abs=1e-9)
    assert quotient_convolution(f, f, 1.0) == pytest.approx(0.25, rel=1e-10)
    uniform = lambda x: 1.0 if 0 < x < 1 else 0.0
    want = integrate(lambda x: math.exp(-x) / x, 1.0, math.inf)
    got = mellin_convolution(f, uniform, 1.0, (0.0, math.inf), (0.0, 1.0))
    assert got == pytest.approx(want, rel=1e-9)


def test_reference_forms():
    assert reference_pdf("exponential", 1.0, lam=2.0) == pytest.approx(0.5 * math.exp(-0.5), rel=1e-14)
    assert reference_pdf("half_cauchy", 0.0 + 1.0, lam=1.0) == pytest.approx(1 / math.pi, rel=1e-14)
    assert reference_cdf("exponential", 1.0, lam=1.0) == pytest.approx(1 - math.exp(-1), rel=1e-10)


def test_reference_samplers():
    n = 10**5
    x = reference_sample("exponential", n, seed=1, lam=1.0)
    assert abs(x.mean() - 1.0) < 5 / math.sqrt(n)
    u = reference_sample("uniform", 1000, seed=2)
    assert np.all((u > 0) & (u < 1))
    assert np.array_equal(reference_sample("gamma", 50, seed=7, theta=2.0, lam=1.0),
                          reference_sample("gamma", 50, seed=7, theta=2.0, lam=1.0))


def test_ks_statistic():
    n = 10**5
    x = reference_sample("exponential", n, seed=11, lam=1.0)
    cdf = lambda t: 1 - math.exp(-t)
    d = ks_statistic(x, cdf)
    assert d < kolmogorov_threshold(n)
    assert kolmogorov_threshold(n) == pytest.approx(1.95 / math.sqrt(n), rel=0.01)
    assert d == pytest.approx(stats.kstest(x, "expon").statistic, rel=1e-12)
    assert ks_statistic([0.0], lambda t: 0.5) == pytest.approx(0.5)
    y = np.sort(reference_sample("uniform", 1000, seed=3))
    ecdf = lambda t: np.searchsorted(y, t, side="right") / y.size
    assert ks_statistic(y, ecdf, continuous=False) < 1 / y.size


def test_ks_bound_brackets_exact_statistic():
    x = reference_sample("weibull", 20000, seed=5, theta=2.0, lam=1.0)
    cdf = lambda t: 1 - math.exp(-t * t)
    exact = ks_statistic(x, cdf)
    b = ks_bound(x, cdf, grid_points=500)
    assert b.lower <= exact + 1e-15 and exact <= b.upper + 1e-15


def test_report_json():
    r = compare("q", 1.0, 1.0 + 1e-12, 1e-10)
    assert r.passed
    row = json.loads(r.to_json())
    assert set(row) == {"quantity", "kernel", "oracle", "rel_error", "tolerance", "passed"}
    assert not compare("q", 1.0, 2.0, 1e-3).passed
