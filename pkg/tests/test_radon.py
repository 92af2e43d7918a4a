import math
from fractions import Fraction

import numpy as np
import pytest

import hypercalc.corpus as cp
import hypercalc.hyper as hy
import hypercalc.radon as rd

MD = cp.multidim_corpus()
SUITE = cp.test_suite()


def _two_route_gap(f, omega, phi):
    direct = hy.pair(rd.radon_transform(f, omega).hyper, phi)
    via_ft = hy.pair(rd.radon_via_fourier(f, omega), phi)
    return abs(direct - via_ft)


def test_two_route_agreement_gaussian():
    omega = np.array([0.6, 0.8])
    assert _two_route_gap(MD["gauss2"], omega, SUITE[0]) < 1e-8


def test_two_route_agreement_point_source():
    omega = np.array([1.0, 0.0])
    assert _two_route_gap(MD["point_J"], omega, SUITE[0]) < 1e-10


def test_gaussian_slice_pairing_value():
    # integral over the plane of exp(-|x|^2/2) against exp(-u^2) on the
    # omega-axis equals pi / sqrt(2) regardless of direction
    for omega in (np.array([1.0, 0.0]), np.array([0.6, 0.8])):
        sl = rd.radon_transform(MD["gauss2"], omega)
        got = hy.pair(sl.hyper, SUITE[0])
        assert abs(got - math.pi / math.sqrt(2.0)) < 1e-8


def test_point_source_slice_is_delta_combo():
    omega = np.array([0.6, 0.8])
    sl = rd.radon_transform(MD["point_a"], omega)
    phi = SUITE[0]
    a_dot = 0.6 * 0.5 + 0.8 * (1.0 / 3.0)
    want = phi.derivative_at(a_dot, 0)
    assert abs(hy.pair(sl.hyper, phi) - want) < 1e-12


def test_helgason_moments_of_gaussian():
    p0 = rd.helgason_moment(MD["gauss2"], 0)
    p2 = rd.helgason_moment(MD["gauss2"], 2)
    omega = np.array([0.6, 0.8])
    assert abs(p0(omega) - math.pi) < 1e-9
    assert abs(p2(omega) - math.pi / 2.0) < 1e-8  # (pi/2) * |omega|^2


def test_helgason_exact_for_point_source():
    omega = (Fraction(3, 5), Fraction(4, 5))
    pk = rd.helgason_moment(MD["point_a"], 3)
    a_dot = Fraction(3, 5) * Fraction(1, 2) + Fraction(4, 5) * Fraction(1, 3)
    assert pk(omega) == a_dot ** 3


def test_helgason_polynomials_have_fixed_parity():
    omega = np.array([0.6, 0.8])
    for k in range(4):
        pk = rd.helgason_moment(MD["skew_gauss2"], k)
        v_plus = pk(omega)
        v_minus = pk(-omega)
        assert abs(v_minus - (-1.0) ** k * v_plus) < 1e-12 * (1 + abs(v_plus))


def test_slice_moment_matches_helgason():
    omega = np.array([0.6, 0.8])
    for k in range(3):
        pk = rd.helgason_moment(MD["skew_gauss2"], k)
        m = rd.slice_moment(MD["skew_gauss2"], omega, k)
        assert abs(m - pk(omega)) < 1e-8 * (1 + abs(m))


def test_expansion_coefficient_closed_form():
    omega = (Fraction(3, 5), Fraction(4, 5))
    expansion = rd.radon_asymptotic_sum(MD["point_J"], 4)
    for k in range(5):
        assert expansion.coefficient(k, omega) == sum(
            rd.example_point_coefficient(s, omega, k)
            for s in MD["point_J"].sources)


def test_expansion_coefficient_parity():
    omega = (Fraction(3, 5), Fraction(4, 5))
    neg = (Fraction(-3, 5), Fraction(-4, 5))
    expansion = rd.radon_asymptotic_sum(MD["point_J"], 4)
    for k in range(5):
        assert expansion.coefficient(k, neg) == \
            (-1) ** k * expansion.coefficient(k, omega)


def test_gevrey_probe_envelope():
    fit = rd.gevrey_probe(MD["point_a"], np.array([0.6, 0.8]), 2.0j)
    assert fit.envelope_ok
    assert not fit.negligible


def test_gevrey_probe_negligible_radial():
    fit = rd.gevrey_probe(MD["gauss2"], np.array([1.0, 0.0]), 0.5j)
    assert fit.negligible


def test_gevrey_probe_order_cap():
    with pytest.raises(ValueError):
        rd.gevrey_probe(MD["point_a"], np.array([0.6, 0.8]), 2.0j,
                        max_order=6)


def _delta_moments(a, n_terms=80):
    return [complex(a) ** k for k in range(n_terms)]


def test_support_check_accepts_true_support():
    a = 0.6
    rep = rd.support_check(_delta_moments(a), S=a + 0.1, bound=(1.0, a))
    assert rep.passed[1e-3]
    assert rep.rate <= 1e-3


def test_support_check_divergent_sequence():
    moments = [float(math.factorial(k)) ** 2 for k in range(12)]
    rep = rd.support_check(moments, S=1.0)
    assert not rep.passed[0.5]
    assert "diverges" in rep.diagnosis


def test_support_check_rejects_bad_bound():
    with pytest.raises(ValueError):
        rd.support_check(_delta_moments(0.6, n_terms=6), S=0.7,
                         bound=(1.0, 0.6))


def test_multidim_moment_exact_for_point_source():
    m = rd.multidim_moment(MD["point_a"], (1, 1))
    assert m == Fraction(1, 2) * Fraction(1, 3)


def test_radon_slice_direction_validation():
    with pytest.raises(ValueError):
        rd.radon_transform(MD["gauss2"], np.array([0.5, 0.5]))
