"""Expressions in one variable ``x`` and the functions built from them.

Grammar (loosest to tightest binding)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?          # right-associative
    atom  := number | 'x' | ident '(' expr (',' expr)? ')' | '(' expr ')'

so ``-x^2`` is ``-(x^2)``, ``2^-1`` is ``0.5`` and ``2^3^2`` is ``512``.
Numbers are decimal literals with an optional exponent.  There is no
implicit multiplication.  U+2212 (minus sign) is accepted for ``-``.

Evaluation works elementwise on floats or numpy arrays.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

__all__ = [
    "ExprError",
    "ExprSyntaxError",
    "UnknownFunctionError",
    "ArityError",
    "ExprDomainError",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "Expr",
    "parse",
    "to_text",
    "evaluate",
    "FunctionSpec",
    "central_difference",
    "richardson_derivative",
    "derivative",
    "FUNCTIONS",
]


class ExprError(ValueError):
    """Base class for expression parse and evaluation failures."""


class ExprSyntaxError(ExprError):
    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        self.found = found
        exp = ", ".join(self.expected)
        super().__init__(f"syntax error at offset {offset}: expected {exp}; found {found}")


class UnknownFunctionError(ExprError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown function {name!r} at offset {offset}")


class ArityError(ExprError):
    def __init__(self, name: str, expected: int, got: int, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"{name} takes {expected} argument(s), got {got} (offset {offset})")


class ExprDomainError(ExprError, ArithmeticError):
    """A sub-expression left its domain or produced a non-finite value."""

    def __init__(self, message: str, subexpr: str, argument: float):
        self.subexpr = subexpr
        self.argument = argument
        super().__init__(f"{message} in {subexpr} at x={argument!r}")


# -- syntax tree --------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[Num, Var, Neg, BinOp, Call]

#: function name -> arity
FUNCTIONS = {"exp": 1, "ln": 1, "sqrt": 1, "abs": 1, "sinh": 1, "cosh": 1, "pow": 2}


# -- tokenizer ------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, ident, op, end
    text: str
    offset: int  # UTF-8 byte offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    byte = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(byte, {"expression"}, repr(text[pos]))
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            if s == "−":
                s = "-"
            toks.append(_Tok(kind, s, byte))
        byte += len(m.group().encode("utf-8"))
        pos = m.end()
    toks.append(_Tok("end", "", byte))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _describe(self, tok: _Tok) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def fail(self, expected):
        raise ExprSyntaxError(self.tok.offset, expected, self._describe(self.tok))

    def expect(self, text: str):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return
        self.fail({repr(text)})

    def at(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            self.fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+", "-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at("*", "/"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.at("-"):
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.i += 1
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "x":
                return Var()
            if tok.text not in FUNCTIONS:
                raise UnknownFunctionError(tok.text, tok.offset)
            self.expect("(")
            args = [self.expr()]
            if self.at(","):
                self.i += 1
                args.append(self.expr())
            self.expect(")")
            if len(args) != FUNCTIONS[tok.text]:
                raise ArityError(tok.text, FUNCTIONS[tok.text], len(args), tok.offset)
            return Call(tok.text, tuple(args))
        if self.at("("):
            self.i += 1
            node = self.expr()
            if self.at(","):
                self.fail({"')'"})
            self.expect(")")
            return node
        self.fail({"number", "'x'", "function name", "'('", "'-'"})


def parse(text: str) -> Expr:
    """Parse ``text`` into an immutable syntax tree.

    >>> parse("x^2 + 3*x")
    BinOp(op='+', left=BinOp(op='^', left=Var(), right=Num(value=2.0)), right=BinOp(op='*', left=Num(value=3.0), right=Var()))
    """
    return _Parser(text).parse()


def to_text(node: Expr) -> str:
    """Fully parenthesised rendering; ``parse(to_text(e)) == e``."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return f"(-{to_text(node.arg)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_text(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation -------------------------------------------------------------------

def _first_bad(mask, x):
    if np.ndim(x) == 0:
        return float(x)
    idx = np.flatnonzero(np.broadcast_to(mask, np.shape(x)))[0]
    return float(np.asarray(x).ravel()[idx])


def _check(node, mask, x, message):
    if np.any(mask):
        raise ExprDomainError(message, to_text(node), _first_bad(mask, x))


def _eval(node: Expr, x):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -_eval(node.arg, x)
    if isinstance(node, BinOp):
        a = _eval(node.left, x)
        b = _eval(node.right, x)
        op = node.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            _check(node, np.asarray(b) == 0, x, "division by zero")
            return np.divide(a, b)
        return _pow(node, a, b, x)
    if isinstance(node, Call):
        args = [_eval(a, x) for a in node.args]
        name = node.name
        if name == "pow":
            return _pow(node, args[0], args[1], x)
        (a,) = args
        if name == "ln":
            _check(node, np.asarray(a) <= 0, x, "logarithm of non-positive value")
            return np.log(a)
        if name == "sqrt":
            _check(node, np.asarray(a) < 0, x, "square root of negative value")
            return np.sqrt(a)
        if name == "exp":
            return np.exp(a)
        if name == "abs":
            return np.abs(a)
        if name == "sinh":
            return np.sinh(a)
        if name == "cosh":
            return np.cosh(a)
    raise TypeError(f"not an expression node: {node!r}")


def _pow(node, a, b, x):
    a_arr = np.asarray(a)
    b_arr = np.asarray(b)
    _check(node, (a_arr == 0) & (b_arr < 0), x, "zero raised to a negative power")
    _check(node, (a_arr < 0) & (b_arr != np.round(b_arr)), x, "negative base with non-integer exponent")
    return np.power(np.asarray(a, dtype=float), b)


def evaluate(node: Expr, x):
    """Evaluate ``node`` at ``x`` (float or array); domain violations raise."""
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=np.float64)
    with np.errstate(all="ignore"):
        out = np.asarray(_eval(node, xa), dtype=np.float64)
    out = np.broadcast_to(out, xa.shape)
    bad = ~np.isfinite(out)
    if np.any(bad):
        raise ExprDomainError("non-finite result", to_text(node), _first_bad(bad, xa))
    return float(out) if scalar else np.array(out)


# -- differentiation ----------------------------------------------------------------

_STEP_SCALE = np.finfo(float).eps ** (1.0 / 3.0)


def central_difference(f: Callable, x, h):
    """Plain central difference ``(f(x+h) - f(x-h)) / 2h``."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


def default_step(x):
    return _STEP_SCALE * np.maximum(np.abs(x), 1.0)


def derivative(f, x, h=None):
    """Derivative of ``f`` at ``x``.

    A :class:`FunctionSpec` uses its exact derivative when it has one;
    anything else goes through :func:`richardson_derivative`.
    """
    if isinstance(f, FunctionSpec):
        return f.derivative(x, h)
    return richardson_derivative(f, x, h)


def richardson_derivative(f: Callable, x, h=None):
    """Numerical derivative: one Richardson step on central differences.

    ``h`` defaults to ``eps**(1/3) * max(|x|, 1)``.  Combining steps ``h``
    and ``h/2`` cancels the ``h**2`` term, so the truncation error is
    ``O(h**4)`` while rounding stays ``O(eps/h)``.
    """
    if h is None:
        h = default_step(x)
    d1 = central_difference(f, x, h)
    d2 = central_difference(f, x, 0.5 * h)
    return (4.0 * d2 - d1) / 3.0


# -- function specs ---------------------------------------------------------------

def _builtin_table():
    def power(a):
        a = float(a)
        return (
            lambda x: np.power(x, a),
            lambda x: a * np.power(x, a - 1.0),
            f"x^{a!r}",
        )

    def affine(a, b):
        a, b = float(a), float(b)
        return (
            lambda x: a * np.asarray(x, dtype=float) + b,
            lambda x: np.full(np.shape(x), a) if np.ndim(x) else a,
            f"{a!r}*x + {b!r}",
        )

    return {
        "exp": lambda: (np.exp, np.exp, "exp(x)"),
        "ln1p": lambda: (np.log1p, lambda x: 1.0 / (1.0 + np.asarray(x, dtype=float)), "ln(1 + x)"),
        "xexp": lambda: (
            lambda x: x * np.exp(x),
            lambda x: (1.0 + np.asarray(x, dtype=float)) * np.exp(x),
            "x*exp(x)",
        ),
        "power": power,
        "affine": affine,
    }


_BUILTINS = _builtin_table()


class FunctionSpec:
    """A real function on a sub-interval of (0, inf) with its derivative.

    Built-in families carry exact derivatives; parsed expressions use
    :func:`derivative`.  Instances are callable on floats and numpy arrays.
    """

    def __init__(self, name, func, deriv=None, *, expr=None, domain=(0.0, math.inf), builtin=False):
        lo, hi = float(domain[0]), float(domain[1])
        if not (0.0 <= lo < hi):
            raise ValueError(f"bad domain {domain!r}; need 0 <= lo < hi")
        self.name = name
        self.expr = expr
        self.domain = (lo, hi)
        self.is_builtin = builtin
        self._func = func
        self._deriv = deriv

    @classmethod
    def parse(cls, text: str, domain=(0.0, math.inf)) -> "FunctionSpec":
        node = parse(text)
        return cls(text.strip(), lambda x: evaluate(node, x), expr=node, domain=domain)

    @classmethod
    def builtin(cls, family: str, *params, domain=(0.0, math.inf)) -> "FunctionSpec":
        try:
            make = _BUILTINS[family]
        except KeyError:
            raise ValueError(f"unknown built-in family {family!r}; choose from {sorted(_BUILTINS)}") from None
        func, deriv, label = make(*params)
        return cls(label, func, deriv, domain=domain, builtin=True)

    @classmethod
    def from_callable(cls, func: Callable, name: str = "f", deriv=None, domain=(0.0, math.inf)):
        return cls(name, func, deriv, domain=domain, builtin=deriv is not None)

    def _check_domain(self, x):
        lo, hi = self.domain
        xa = np.asarray(x)
        bad = (xa <= lo) | (xa >= hi) if lo == 0.0 else (xa < lo) | (xa > hi)
        if np.any(bad):
            raise ExprDomainError("argument outside declared domain", self.name, _first_bad(bad, xa))

    def __call__(self, x):
        self._check_domain(x)
        with np.errstate(all="ignore"):
            out = self._func(x)
        if np.ndim(x) == 0:
            out = float(out)
            if not math.isfinite(out):
                raise ExprDomainError("non-finite result", self.name, float(x))
            return out
        out = np.asarray(out, dtype=np.float64)
        if not np.all(np.isfinite(out)):
            raise ExprDomainError("non-finite result", self.name, _first_bad(~np.isfinite(out), x))
        return out

    def derivative(self, x, h=None):
        if self._deriv is not None and h is None:
            self._check_domain(x)
            with np.errstate(all="ignore"):
                out = self._deriv(x)
            return float(out) if np.ndim(x) == 0 else np.asarray(out, dtype=np.float64)
        return richardson_derivative(self._eval_raw, x, h)

    def _eval_raw(self, x):
        # no domain check; the difference stencil may step past a closed end
        with np.errstate(all="ignore"):
            out = self._func(x)
        return float(out) if np.ndim(x) == 0 else np.asarray(out, dtype=np.float64)

    def __repr__(self):
        kind = "builtin" if self.is_builtin else "parsed"
        return f"FunctionSpec({self.name!r}, {kind})"
