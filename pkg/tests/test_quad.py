import math

import numpy as np
import pytest

import hypercalc.expr as ex
from hypercalc.growth import GrowthClass
from hypercalc.quad import (ContourSpec, DimensionError, DivergentTailError,
                            adaptive_interval, auto_radius, integrate_box,
                            integrate_line, tail_bound, verify_growth)


def test_adaptive_interval_gaussian():
    val, err, _ = adaptive_interval(lambda x: np.exp(-x * x), -8.0, 8.0,
                                    abs_tol=1e-12)
    assert abs(val - math.sqrt(math.pi)) < 1e-11
    assert err < 1e-10


def test_adaptive_interval_oscillatory():
    val, _, _ = adaptive_interval(lambda x: np.exp(-x * x) * np.cos(10 * x),
                                  -8.0, 8.0, abs_tol=1e-12,
                                  max_panel=math.pi / 10)
    want = math.sqrt(math.pi) * math.exp(-25.0)
    assert abs(val - want) < 1e-12


def test_integrate_line_shift_invariance():
    spec1 = ContourSpec(imag_offset=0.25, truncation_radius=12.0, abs_tol=1e-12,
                        growth=GrowthClass.exp_decay(1.0, constant=3.0))
    spec2 = ContourSpec(imag_offset=0.5, truncation_radius=12.0, abs_tol=1e-12,
                        growth=GrowthClass.exp_decay(1.0, constant=3.0))
    e = ex.parse_expr("exp(-(z*z))")

    def f(z):
        return ex.evaluate(e, {"z": z})

    r1 = integrate_line(f, spec1)
    r2 = integrate_line(f, spec2)
    assert abs(r1.value - r2.value) < 1e-10


def test_tail_bound_certifies():
    g = GrowthClass.exp_decay(1.0, constant=2.0)
    e = ex.parse_expr("2*exp(-z)")
    for r in (5.0, 10.0):
        actual = abs(ex.evaluate(e, {"z": r}))
        assert tail_bound(g, 0.0, r) >= actual


def test_tail_bound_divergent():
    with pytest.raises(DivergentTailError):
        tail_bound(GrowthClass.tempered(2.0), 0.0, 10.0)


def test_auto_radius_meets_tolerance():
    g = GrowthClass.exp_decay(1.0, constant=1.0)
    r = auto_radius(g, 1e-10)
    assert tail_bound(g, 0.0, r) <= 1e-10


def test_integrate_box_gaussian_2d():
    res = integrate_box(lambda pts: np.exp(-(pts ** 2).sum(axis=1)),
                        [6.0, 6.0], abs_tol=1e-10)
    assert abs(res.value - math.pi) < 1e-9


def test_integrate_box_dimension_cap():
    with pytest.raises(DimensionError):
        integrate_box(lambda pts: pts[:, 0] * 0 + 1.0, [1.0] * 4,
                      abs_tol=1e-6)


def test_verify_growth_rejects_wrong_claim():
    e = ex.parse_expr("exp(-(z*z)/2)")
    ok = verify_growth(e, GrowthClass.exp_decay(0.5, constant=4.0))
    assert ok.passed
    bad = verify_growth(ex.parse_expr("z*z"), GrowthClass.tempered(-1.0))
    assert not bad.passed
