import math

import numpy as np
import pytest

import hypercalc.corpus as cp
import hypercalc.expr as ex
import hypercalc.hyper as hy
import hypercalc.spectral as sp
from hypercalc.growth import GrowthClass

CORPUS = cp.default_corpus()
SUITE = cp.test_suite()


def test_fourier_of_delta_family():
    assert abs(complex(np.asarray(sp.fourier_transform(
        hy.delta_derivative(0))(3.0))) - 1.0) < 1e-10
    # delta'': hat = (i xi)^2 * ... with our convention hat(delta^(n)) = (i xi)^n
    fhat = sp.fourier_transform(hy.delta_derivative(2))
    got = complex(np.asarray(fhat(2.0)))
    assert abs(got - (1j * 2.0) ** 2) < 1e-10


def test_fourier_of_sech_closed_form():
    fhat = sp.fourier_transform(CORPUS["sech"])
    for xi in (0.0, 1.0, -2.5):
        want = math.pi / math.cosh(math.pi * xi / 2.0)
        assert abs(complex(np.asarray(fhat(float(xi)))) - want) < 1e-9


def test_fourier_of_gaussian():
    fhat = sp.fourier_transform(CORPUS["gaussian"])
    for xi in (0.5, 2.0):
        want = math.sqrt(2.0 * math.pi) * math.exp(-xi * xi / 2.0)
        assert abs(complex(np.asarray(fhat(xi))) - want) < 1e-9


def test_fourier_rejects_tempered_input():
    with pytest.raises(hy.AdmissibilityError):
        sp.fourier_transform(CORPUS["lorentz"])


def test_moments_of_sech():
    assert abs(sp.moment(CORPUS["sech"], 0) - math.pi) < 1e-10
    assert abs(sp.moment(CORPUS["sech"], 1)) < 1e-10
    assert abs(sp.moment(CORPUS["sech"], 2) - math.pi ** 3 / 4.0) < 1e-9


def test_moments_of_delta():
    assert abs(sp.moment(hy.delta_derivative(2), 2) - 2.0) < 1e-12
    assert abs(sp.moment(hy.delta_derivative(0, at=0.5), 3) - 0.125) < 1e-12


def test_round_trip_sech():
    f = CORPUS["sech"]
    back = sp.inverse_fourier(sp.fourier_transform(f))
    phi = SUITE[0]
    assert abs(hy.pair(f, phi) - hy.pair(back, phi)) < 1e-6


def test_inverse_fourier_of_one_is_delta():
    fld = sp.SmoothField(lambda xi, order=0: np.ones_like(np.asarray(xi,
                                                                     dtype=complex)),
                         growth=GrowthClass.infra_exponential(), cheap=True)
    f = sp.inverse_fourier(fld)
    phi = SUITE[0]
    assert abs(hy.pair(f, phi) - phi.derivative_at(0.0, 0)) < 1e-8


def test_asymptotic_sum_coefficients():
    s = sp.asymptotic_sum(CORPUS["sech"], 2)
    assert abs(s.coefficients[0] - math.pi) < 1e-9
    assert abs(s.coefficients[1]) < 1e-9
    assert abs(s.coefficients[2] - math.pi ** 3 / 8.0) < 1e-8


def test_remainder_moments_vanish():
    s = sp.asymptotic_sum(CORPUS["gaussian"], 3)
    rem = sp.remainder_moments(CORPUS["gaussian"], s)
    assert max(abs(r) for r in rem) < 1e-8


def test_parametric_order_slopes():
    fit = sp.parametric_order_check(CORPUS["sech"], SUITE[0], 2)
    assert not fit.vacuous
    assert fit.slope <= -4.5  # parity-boosted case, expected near -(N+3)
    fit2 = sp.parametric_order_check(CORPUS["sech"], SUITE[1], 1)
    assert not fit2.vacuous
    assert fit2.slope <= -2.75


def test_parametric_order_vacuous_for_delta():
    fit = sp.parametric_order_check(hy.delta_derivative(0), SUITE[0], 2)
    assert fit.vacuous


def test_realize_moments():
    mu = [1.0 + 0j, 0.5j, -0.25 + 0j, 0.125 + 0j, 1.0 + 0j]
    real = sp.realize_moments(mu)
    for n, target in enumerate(mu):
        assert abs(sp.moment(real.hyperfunction, n) - target) < 1e-8


def test_build_multiplier_polynomial_case():
    J, info = sp.build_multiplier(lambda k: float(k), K_terms=2)
    # J(zeta) = (1 + zeta^2)(1 + zeta^2/16): finite polynomial coefficients
    got = complex(np.asarray(J.symbol(2.0)))
    want = (1 + 4.0) * (1 + 4.0 / 16.0)
    assert abs(got - want) < 1e-12
    assert info.min_ratio > 0
    # no sign change on the real axis, where the product is manifestly >= 1
    assert all(Jv.real >= 1.0 - 1e-12 for z, Jv in info.samples
               if abs(z.imag) < 1e-12)


def test_structural_representation_of_delta():
    rep = sp.structural_representation(hy.delta_derivative(0))
    phi = SUITE[0]
    direct = hy.pair(hy.delta_derivative(0), phi)
    recon = rep.reconstruct_pairing(phi)
    assert abs(direct - recon) < 1e-6
    # f0 of (1 - D^2)^-1 delta is exp(-|x|)/2
    x = np.asarray(rep.x_grid)
    want = 0.5 * np.exp(-np.abs(x))
    assert np.max(np.abs(np.asarray(rep.f0_values) - want)) < 1e-5


def test_structural_representation_of_gaussian():
    f = CORPUS["gaussian"]
    rep = sp.structural_representation(f)
    phi = SUITE[0]
    direct = hy.pair(f, phi)
    recon = rep.reconstruct_pairing(phi)
    assert abs(direct - recon) < 1e-5 * (1 + abs(direct))
