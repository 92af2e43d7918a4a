"""Expression DSL for the analytic functions used throughout the library.

The grammar is deliberately small: rational arithmetic, integer powers,
``exp``, ``sech``, ``tanh`` and ``gaussian(u) = exp(-u^2)``, over the
variable ``z`` (one-dimensional) or coordinates ``x1`` .. ``x9``.  Trees are
immutable, evaluation is pure and accepts numpy arrays, and differentiation
is symbolic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

EPS_POLE = 1e-12

COORD_NAMES = tuple(["z"] + [f"x{i}" for i in range(1, 10)])
_FUNCTIONS = ("exp", "sech", "tanh", "gaussian")


class ExprError(Exception):
    """Base class for expression errors."""


class ParseError(ExprError):
    """Syntax error; carries a 1-based offset into the source text."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class PoleError(ExprError):
    """A quotient denominator came within EPS_POLE of zero."""


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Expr:
    def __call__(self, z, **coords):
        env = dict(coords)
        if z is not None:
            env["z"] = z
        return evaluate(self, env)


@dataclass(frozen=True)
class Const(Expr):
    value: complex


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    func: str  # one of _FUNCTIONS
    arg: Expr


# ---------------------------------------------------------------------------
# Parser

_TOK_NUM = "num"
_TOK_IDENT = "ident"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tokens.append((_TOK_NUM, text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_TOK_IDENT, text[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            tokens.append((_TOK_OP, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i + 1)
    tokens.append((_TOK_END, "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, at = self.peek()
        if kind != _TOK_OP or val != op:
            raise ParseError(f"expected {op!r}", at + 1)
        return self.next()

    def parse(self):
        e = self.expr()
        kind, val, at = self.peek()
        if kind != _TOK_END:
            raise ParseError(f"unexpected token {val!r}", at + 1)
        return e

    def expr(self):
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val in "+-":
                self.next()
                rhs = self.term()
                e = Add(e, rhs) if val == "+" else Sub(e, rhs)
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val in "*/":
                self.next()
                rhs = self.factor()
                e = Mul(e, rhs) if val == "*" else Div(e, rhs)
            else:
                return e

    def factor(self):
        kind, val, at = self.peek()
        if kind == _TOK_OP and val == "-":
            self.next()
            return Neg(self.factor())
        e = self.base()
        kind, val, _ = self.peek()
        if kind == _TOK_OP and val == "^":
            self.next()
            nkind, nval, nat = self.peek()
            sign = 1
            if nkind == _TOK_OP and nval == "-":
                self.next()
                sign = -1
                nkind, nval, nat = self.peek()
            if nkind != _TOK_NUM or not nval.isdigit():
                raise ParseError("expected integer exponent", nat + 1)
            self.next()
            return Pow(e, sign * int(nval))
        return e

    def base(self):
        kind, val, at = self.next()
        if kind == _TOK_NUM:
            x = float(val)
            if x == int(x) and "e" not in val and "E" not in val and "." not in val:
                return Const(complex(int(x)))
            return Const(complex(x))
        if kind == _TOK_IDENT:
            if val == "i":
                return Const(1j)
            if val == "pi":
                return Const(complex(math.pi))
            if val in _FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, arg)
            if val in COORD_NAMES:
                return Var(val)
            raise ParseError(f"unknown identifier {val!r}", at + 1)
        if kind == _TOK_OP and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", at + 1)


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing

# precedence contexts: 0 = additive, 1 = multiplicative, 2 = power base
def _fmt_real(x):
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _const_str(v):
    if v.imag == 0:
        if v.real < 0:
            return f"(-{_fmt_real(-v.real)})", 3
        return _fmt_real(v.real), 3
    if v.real == 0:
        if v.imag == 1:
            return "i", 3
        if v.imag == -1:
            return "(-i)", 3
        return f"({_fmt_real(v.imag)}*i)", 3
    sign = "+" if v.imag >= 0 else "-"
    return f"({_fmt_real(v.real)}{sign}{_fmt_real(abs(v.imag))}*i)", 3


def _to_str(e, level):
    # returns string valid in a context of the given precedence level
    if isinstance(e, Const):
        s, prec = _const_str(e.value)
    elif isinstance(e, Var):
        s, prec = e.name, 3
    elif isinstance(e, Add):
        s, prec = f"{_to_str(e.left, 0)}+{_to_str(e.right, 1)}", 0
    elif isinstance(e, Sub):
        s, prec = f"{_to_str(e.left, 0)}-{_to_str(e.right, 1)}", 0
    elif isinstance(e, Mul):
        s, prec = f"{_to_str(e.left, 1)}*{_to_str(e.right, 2)}", 1
    elif isinstance(e, Div):
        s, prec = f"{_to_str(e.left, 1)}/{_to_str(e.right, 2)}", 1
    elif isinstance(e, Neg):
        s, prec = f"(-{_to_str(e.arg, 1)})", 3
    elif isinstance(e, Pow):
        s, prec = f"{_to_str(e.base, 3)}^{e.exponent}", 2
    elif isinstance(e, Call):
        s, prec = f"{e.func}({_to_str(e.arg, 0)})", 3
    else:
        raise TypeError(f"not an expression: {e!r}")
    if prec < level:
        return f"({s})"
    return s


def print_expr(e: Expr) -> str:
    """Render the tree so that ``parse_expr(print_expr(t)) == t`` for parser output."""
    return _to_str(e, 0)


# ---------------------------------------------------------------------------
# Evaluation


def _sech(u):
    # 1/cosh with overflow-safe tails
    return 2.0 * np.exp(-np.abs(np.real(u))) / (
        np.exp(1j * np.imag(u) + np.real(u) - np.abs(np.real(u)))
        + np.exp(-1j * np.imag(u) - np.real(u) - np.abs(np.real(u)))
    )


def evaluate(e: Expr, env, eps_pole: float = EPS_POLE):
    """Evaluate at a point (or numpy array of points) given by ``env``.

    ``env`` maps coordinate names to values; a bare complex number is
    shorthand for ``{"z": value}``.
    """
    if not isinstance(env, dict):
        env = {"z": env}
    return _eval(e, env, eps_pole)


def _eval(e, env, eps_pole):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise ExprError(f"unbound variable {e.name!r}") from None
    if isinstance(e, Add):
        return _eval(e.left, env, eps_pole) + _eval(e.right, env, eps_pole)
    if isinstance(e, Sub):
        return _eval(e.left, env, eps_pole) - _eval(e.right, env, eps_pole)
    if isinstance(e, Mul):
        return _eval(e.left, env, eps_pole) * _eval(e.right, env, eps_pole)
    if isinstance(e, Div):
        den = _eval(e.right, env, eps_pole)
        if np.min(np.abs(den)) < eps_pole:
            raise PoleError("denominator magnitude below pole threshold")
        return _eval(e.left, env, eps_pole) / den
    if isinstance(e, Neg):
        return -_eval(e.arg, env, eps_pole)
    if isinstance(e, Pow):
        base = _eval(e.base, env, eps_pole)
        if e.exponent < 0 and np.min(np.abs(base)) < eps_pole:
            raise PoleError("negative power of a near-zero base")
        return base ** e.exponent
    if isinstance(e, Call):
        u = _eval(e.arg, env, eps_pole)
        if e.func == "exp":
            return np.exp(u)
        if e.func == "sech":
            return _sech(u)
        if e.func == "tanh":
            return np.tanh(u)
        if e.func == "gaussian":
            return np.exp(-(u * u))
        raise ExprError(f"unknown function {e.func!r}")
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Simplification (constant folding only)

_ZERO = Const(0 + 0j)
_ONE = Const(1 + 0j)


def _is_const(e, v=None):
    return isinstance(e, Const) and (v is None or e.value == v)


def simplify(e: Expr) -> Expr:
    if isinstance(e, Add):
        a, b = simplify(e.left), simplify(e.right)
        if _is_const(a) and _is_const(b):
            return Const(a.value + b.value)
        if _is_const(a, 0):
            return b
        if _is_const(b, 0):
            return a
        return Add(a, b)
    if isinstance(e, Sub):
        a, b = simplify(e.left), simplify(e.right)
        if _is_const(a) and _is_const(b):
            return Const(a.value - b.value)
        if _is_const(b, 0):
            return a
        if _is_const(a, 0):
            return simplify(Neg(b))
        return Sub(a, b)
    if isinstance(e, Mul):
        a, b = simplify(e.left), simplify(e.right)
        if _is_const(a) and _is_const(b):
            return Const(a.value * b.value)
        if _is_const(a, 0) or _is_const(b, 0):
            return _ZERO
        if _is_const(a, 1):
            return b
        if _is_const(b, 1):
            return a
        return Mul(a, b)
    if isinstance(e, Div):
        a, b = simplify(e.left), simplify(e.right)
        if _is_const(a, 0):
            return _ZERO
        if _is_const(b, 1):
            return a
        if _is_const(a) and _is_const(b) and b.value != 0:
            return Const(a.value / b.value)
        return Div(a, b)
    if isinstance(e, Neg):
        a = simplify(e.arg)
        if _is_const(a):
            return Const(-a.value)
        if isinstance(a, Neg):
            return a.arg
        return Neg(a)
    if isinstance(e, Pow):
        b = simplify(e.base)
        if e.exponent == 0:
            return _ONE
        if e.exponent == 1:
            return b
        if _is_const(b):
            return Const(b.value ** e.exponent)
        return Pow(b, e.exponent)
    if isinstance(e, Call):
        return Call(e.func, simplify(e.arg))
    return e


# ---------------------------------------------------------------------------
# Differentiation


def _d(e, coord):
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Var):
        return _ONE if e.name == coord else _ZERO
    if isinstance(e, Add):
        return Add(_d(e.left, coord), _d(e.right, coord))
    if isinstance(e, Sub):
        return Sub(_d(e.left, coord), _d(e.right, coord))
    if isinstance(e, Neg):
        return Neg(_d(e.arg, coord))
    if isinstance(e, Mul):
        return Add(Mul(_d(e.left, coord), e.right), Mul(e.left, _d(e.right, coord)))
    if isinstance(e, Div):
        num = Sub(Mul(_d(e.left, coord), e.right), Mul(e.left, _d(e.right, coord)))
        return Div(num, Pow(e.right, 2))
    if isinstance(e, Pow):
        return Mul(Mul(Const(complex(e.exponent)), Pow(e.base, e.exponent - 1)),
                   _d(e.base, coord))
    if isinstance(e, Call):
        du = _d(e.arg, coord)
        if e.func == "exp":
            inner = e
        elif e.func == "sech":
            inner = Neg(Mul(e, Call("tanh", e.arg)))
        elif e.func == "tanh":
            inner = Sub(_ONE, Pow(Call("tanh", e.arg), 2))
        elif e.func == "gaussian":
            inner = Neg(Mul(Mul(Const(2 + 0j), e.arg), e))
        else:
            raise ExprError(f"unknown function {e.func!r}")
        return Mul(inner, du)
    raise TypeError(f"not an expression: {e!r}")


def differentiate(e: Expr, order: int = 1, coordinate: str = "z") -> Expr:
    """Symbolic derivative of the given order with respect to a coordinate."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    out = simplify(e)
    for _ in range(order):
        out = simplify(_d(out, coordinate))
    return out


def substitute(e: Expr, coordinate: str, replacement: Expr) -> Expr:
    """Replace every occurrence of a variable by another expression."""
    if isinstance(e, Var):
        return replacement if e.name == coordinate else e
    if isinstance(e, (Const,)):
        return e
    if isinstance(e, Add):
        return Add(substitute(e.left, coordinate, replacement),
                   substitute(e.right, coordinate, replacement))
    if isinstance(e, Sub):
        return Sub(substitute(e.left, coordinate, replacement),
                   substitute(e.right, coordinate, replacement))
    if isinstance(e, Mul):
        return Mul(substitute(e.left, coordinate, replacement),
                   substitute(e.right, coordinate, replacement))
    if isinstance(e, Div):
        return Div(substitute(e.left, coordinate, replacement),
                   substitute(e.right, coordinate, replacement))
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, coordinate, replacement))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, coordinate, replacement), e.exponent)
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, coordinate, replacement))
    raise TypeError(f"not an expression: {e!r}")


def scale_argument(e: Expr, factor: complex, coordinate: str = "z") -> Expr:
    """Return the tree for ``e`` with its argument scaled: z -> factor*z."""
    return simplify(substitute(e, coordinate, Mul(Const(complex(factor)), Var(coordinate))))


def finite_difference(e: Expr, z, h: float = 1e-5, coordinate: str = "z"):
    """Central second-order difference; cross-check for `differentiate`."""
    env_p = {coordinate: z + h}
    env_m = {coordinate: z - h}
    return (evaluate(e, env_p) - evaluate(e, env_m)) / (2 * h)
