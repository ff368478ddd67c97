import math

import pytest

from staticlab.quadrature import (
    QuadratureConfig,
    QuadratureError,
    adaptive,
    composite_simpson,
)


def test_adaptive_polynomial_exact():
    res = adaptive(lambda x: x ** 4, 0.0, 1.0)
    assert res.value == pytest.approx(0.2, abs=1e-14)


def test_adaptive_oscillatory():
    res = adaptive(lambda x: math.sin(10 * x), 0.0, math.pi)
    exact = (1 - math.cos(10 * math.pi)) / 10
    assert res.value == pytest.approx(exact, abs=1e-10)
    assert res.evaluations <= 100_000


def test_adaptive_near_singular_endpoint():
    cfg = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-10, max_evals=100_000)
    res = adaptive(lambda x: 1.0 / math.sqrt(x), 1e-10, 1.0, cfg)
    assert res.value == pytest.approx(2.0 * (1 - 1e-5), rel=1e-8)


def test_adaptive_budget_enforced():
    cfg = QuadratureConfig(abs_tol=1e-30, rel_tol=1e-30, max_evals=500)
    with pytest.raises(QuadratureError):
        adaptive(lambda x: math.exp(-x * x), 0.0, 5.0, cfg)


def test_adaptive_counts_evaluations():
    calls = 0

    def f(x):
        nonlocal calls
        calls += 1
        return x * x

    res = adaptive(f, 0.0, 1.0)
    assert res.evaluations == calls


def test_composite_simpson_order():
    exact = 1.0 - math.cos(1.0)
    err = [abs(composite_simpson(math.sin, 0.0, 1.0, p).value - exact)
           for p in (4, 8, 16)]
    assert err[0] / err[1] > 4.0
    assert err[1] / err[2] > 4.0


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        adaptive(lambda x: x, 1.0, 1.0)
