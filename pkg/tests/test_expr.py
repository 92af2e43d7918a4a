import math

import numpy as np
import pytest

import hypercalc.expr as ex


RNG = np.random.default_rng(12345)

ATOMS = ["z", "1", "2", "pi", "i", "0.5"]
FUNCS = ["exp", "sech", "tanh", "gaussian"]


def random_expr(depth=3):
    if depth == 0 or RNG.uniform() < 0.3:
        return str(RNG.choice(ATOMS))
    kind = RNG.integers(0, 5)
    a = random_expr(depth - 1)
    b = random_expr(depth - 1)
    if kind == 0:
        return f"({a}+{b})"
    if kind == 1:
        return f"({a}-{b})"
    if kind == 2:
        return f"({a}*{b})"
    if kind == 3:
        return f"{RNG.choice(FUNCS)}(({a})/4)"
    return f"(-{a})"


def test_parse_print_round_trip():
    for _ in range(200):
        text = random_expr()
        e = ex.parse_expr(text)
        printed = ex.print_expr(e)
        again = ex.parse_expr(printed)
        z = complex(RNG.uniform(-1, 1), RNG.uniform(-1, 1))
        v1 = ex.evaluate(e, {"z": z})
        v2 = ex.evaluate(again, {"z": z})
        assert abs(v1 - v2) <= 1e-12 * (1 + abs(v1))


def test_derivative_matches_finite_difference():
    for _ in range(200):
        e = ex.parse_expr(random_expr())
        d = ex.differentiate(e)
        z = complex(RNG.uniform(-1, 1), RNG.uniform(0.2, 1.0))
        try:
            sym = ex.evaluate(d, {"z": z})
            num = ex.finite_difference(e, z)
        except ex.PoleError:
            continue
        assert abs(sym - num) <= 1e-5 * (1 + abs(sym))


def test_essential_singularity_evaluation():
    e = ex.parse_expr("exp(-1/z)")
    v = ex.evaluate(e, {"z": 1j})
    assert abs(v - np.exp(1j)) < 1e-14


def test_pole_detection():
    e = ex.parse_expr("1/z")
    with pytest.raises(ex.PoleError):
        ex.evaluate(e, {"z": 0.0})


def test_parse_error_offset():
    with pytest.raises(ex.ParseError) as exc:
        ex.parse_expr("1+*2")
    assert exc.value.position == 3


def test_unknown_identifier():
    with pytest.raises(ex.ParseError):
        ex.parse_expr("foo(z)")


def test_integer_power_and_scale():
    e = ex.parse_expr("z^3")
    assert abs(ex.evaluate(e, {"z": 2.0}) - 8.0) < 1e-14
    s = ex.scale_argument(e, 0.5)
    assert abs(ex.evaluate(s, {"z": 2.0}) - 1.0) < 1e-14


def test_vectorized_evaluation():
    e = ex.parse_expr("sech(z)*exp(-(z*z)/2)")
    z = np.linspace(-3, 3, 17).astype(complex)
    v = ex.evaluate(e, {"z": z})
    assert v.shape == z.shape
    single = ex.evaluate(e, {"z": z[3]})
    assert abs(v[3] - single) < 1e-14


def test_simplify_constant_folding():
    e = ex.parse_expr("0*z + 2*3")
    s = ex.simplify(e)
    assert ex._is_const(s, 6.0)


def test_multi_coordinate():
    e = ex.parse_expr("x1*x2 + x1^2")
    v = ex.evaluate(e, {"x1": 2.0, "x2": 3.0})
    assert abs(v - 10.0) < 1e-14
