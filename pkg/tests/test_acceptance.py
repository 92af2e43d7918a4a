"""Full acceptance battery: one test per criterion, one status line each."""

import pytest

import hypercalc.acceptance as ac


@pytest.fixture(scope="module")
def results():
    return {r.cid: r for r in ac.run_all(seed=7)}


@pytest.fixture
def _check(results, capsys):
    def inner(cid):
        r = results[cid]
        with capsys.disabled():
            print(r.line())
        assert r.passed, r.line()
    return inner


def test_criterion_01_delta_calculus(_check):
    _check(1)


def test_criterion_02_contour_independence(_check):
    _check(2)


def test_criterion_03_fourier_round_trip(_check):
    _check(3)


def test_criterion_04_moment_duality(_check):
    _check(4)


def test_criterion_05_expansion_remainders(_check):
    _check(5)


def test_criterion_06_parametric_order_slopes(_check):
    _check(6)


def test_criterion_07_moment_realization(_check):
    _check(7)


def test_criterion_08_radon_two_routes(_check):
    _check(8)


def test_criterion_09_helgason_moments(_check):
    _check(9)


def test_criterion_10_radon_expansion(_check):
    _check(10)


def test_criterion_11_support_criterion(_check):
    _check(11)


def test_criterion_12_formal_ode_series(_check):
    _check(12)


def test_criterion_13_gevrey_envelope(_check):
    _check(13)


def test_criterion_14_determinism(_check):
    _check(14)
