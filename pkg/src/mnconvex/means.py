"""Bivariate means of positive reals.

Every mean here is evaluated through the log-ratio ``d = ln(hi/lo)`` of the
canonically ordered pair, which keeps the formulas free of catastrophic
cancellation both near the diagonal ``x ~ y`` and for widely separated
arguments.  Arguments are sorted before any arithmetic, so every mean is
bitwise symmetric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "MeanDomainError",
    "PositivePair",
    "MeanKind",
    "ARITHMETIC",
    "GEOMETRIC",
    "HARMONIC",
    "LOGARITHMIC",
    "IDENTRIC",
    "EBANKS",
    "alzer",
    "power",
    "evaluate",
    "evaluate_many",
    "alzer_limit_form",
    "DIAGONAL_GUARD",
    "PARAM_GUARD",
]

#: below this |ln(x/y)| the logarithmic and identric means use series
DIAGONAL_GUARD = 1e-8
#: half-width of the neighbourhoods of p = 0, -1 (Alzer) and t = 0 (power)
PARAM_GUARD = 1e-8


class MeanDomainError(ValueError):
    """Raised for non-finite or non-positive mean arguments."""


class PositivePair(NamedTuple):
    x: float
    y: float

    @classmethod
    def of(cls, x, y) -> "PositivePair":
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)) or x <= 0.0 or y <= 0.0:
            raise MeanDomainError(f"mean arguments must be finite and positive, got ({x!r}, {y!r})")
        return cls(x, y)


# integer codes shared with the compiled kernels
CODE_A, CODE_G, CODE_H, CODE_L, CODE_I, CODE_J, CODE_M, CODE_E = range(8)

_FAMILIES = {
    "A": CODE_A,
    "G": CODE_G,
    "H": CODE_H,
    "L": CODE_L,
    "I": CODE_I,
    "J": CODE_J,
    "M": CODE_M,
    "E": CODE_E,
}
_LONG_NAMES = {
    "arithmetic": "A",
    "geometric": "G",
    "harmonic": "H",
    "logarithmic": "L",
    "identric": "I",
    "alzer": "J",
    "power": "M",
    "ebanks": "E",
}


@dataclass(frozen=True)
class MeanKind:
    """One of the eight supported means.

    ``family`` is a single letter (A, G, H, L, I, J, M, E); the Alzer family
    ``J`` and the power family ``M`` carry a finite real ``param``.
    """

    family: str
    param: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown mean family {self.family!r}")
        if self.family in ("J", "M"):
            if self.param is None or not math.isfinite(self.param):
                raise ValueError(f"mean family {self.family} needs a finite parameter")
            object.__setattr__(self, "param", float(self.param))
        elif self.param is not None:
            raise ValueError(f"mean family {self.family} takes no parameter")

    @property
    def code(self) -> int:
        return _FAMILIES[self.family]

    @classmethod
    def parse(cls, text: str) -> "MeanKind":
        """Parse ``A``, ``G``, ``H``, ``L``, ``I``, ``E``, ``J:<p>`` or ``M:<t>``."""
        text = text.strip()
        head, sep, tail = text.partition(":")
        head = _LONG_NAMES.get(head.lower(), head.upper())
        if head in ("J", "M"):
            if not sep:
                raise ValueError(f"mean {text!r} needs a parameter, e.g. {head}:2")
            try:
                param = float(tail)
            except ValueError:
                raise ValueError(f"bad mean parameter in {text!r}") from None
            return cls(head, param)
        if sep:
            raise ValueError(f"mean {head} takes no parameter")
        return cls(head)

    def __str__(self) -> str:
        if self.param is None:
            return self.family
        return f"{self.family}:{self.param!r}"

    def __call__(self, x, y) -> float:
        return evaluate(self, (x, y))


ARITHMETIC = MeanKind("A")
GEOMETRIC = MeanKind("G")
HARMONIC = MeanKind("H")
LOGARITHMIC = MeanKind("L")
IDENTRIC = MeanKind("I")
EBANKS = MeanKind("E")


def alzer(p: float) -> MeanKind:
    return MeanKind("J", p)


def power(t: float) -> MeanKind:
    return MeanKind("M", t)


# ---------------------------------------------------------------------------
# scalar kernels; all take hi > lo > 0

def _log_ratio(hi: float, lo: float) -> float:
    r = hi / lo
    if r < 2.0:
        # hi - lo is exact here (Sterbenz)
        return math.log1p((hi - lo) / lo)
    if math.isinf(r):
        return math.log(hi) - math.log(lo)
    return math.log(r)


def _arithmetic(hi, lo):
    return 0.5 * hi + 0.5 * lo


def _geometric(hi, lo):
    prod = hi * lo
    if 1e-300 < prod < 1e300:
        return math.sqrt(prod)
    return math.sqrt(hi) * math.sqrt(lo)


def _harmonic(hi, lo):
    return lo * (hi / _arithmetic(hi, lo))


def _logarithmic(hi, lo, d):
    if d < DIAGONAL_GUARD:
        d2 = d * d
        return _geometric(hi, lo) * (1.0 + d2 * (1.0 / 24 + d2 * (1.0 / 1920 + d2 / 322560)))
    return (hi - lo) / d


def _identric(hi, lo, d):
    if d < DIAGONAL_GUARD:
        s2 = 0.25 * d * d
        q = s2 * (1.0 / 3 - s2 * (1.0 / 45 - s2 * (2.0 / 945 - s2 / 4725)))
        return _geometric(hi, lo) * math.exp(q)
    # ln(I/hi) = d/expm1(d) - 1
    return hi * math.exp(d / math.expm1(d) - 1.0)


def _log_abs_expm1(t):
    if t > 0.0:
        return t + math.log1p(-math.exp(-t))
    return math.log(-math.expm1(t))


def _alzer_ratio(p, hi, lo, d):
    """J_p from the expm1 representation; p away from 0 and -1."""
    a = (p + 1.0) * d
    b = p * d
    # pick the base whose exponents stay non-positive where possible
    if p > 0.0 or (-1.0 < p < 0.0 and (p + 1.0) > -p):
        base, a, b = hi, -a, -b
    else:
        base = lo
    factor = p / (p + 1.0)
    if a < 700.0 and b < 700.0:
        return factor * base * (math.expm1(a) / math.expm1(b))
    # far-apart pair with a huge exponent: work with logarithms
    sign = 1.0 if (a > 0) == (b > 0) else -1.0
    ratio = sign * math.exp(_log_abs_expm1(a) - _log_abs_expm1(b) + math.log(base))
    return factor * ratio


def _alzer(p, hi, lo, d):
    if p == 1.0:
        return _arithmetic(hi, lo)
    if p == -2.0:
        return _harmonic(hi, lo)
    if abs(p) < PARAM_GUARD:
        return _logarithmic(hi, lo, d)
    if abs(p + 1.0) < PARAM_GUARD:
        return (lo / _logarithmic(hi, lo, d)) * hi
    return _alzer_ratio(p, hi, lo, d)


def _power(t, hi, lo, d):
    if t == 1.0:
        return _arithmetic(hi, lo)
    if abs(t) < PARAM_GUARD:
        return _geometric(hi, lo)
    if t > 0.0:
        return hi * math.exp(math.log1p(0.5 * math.expm1(-t * d)) / t)
    return lo * math.exp(math.log1p(0.5 * math.expm1(t * d)) / t)


def _ebanks(hi, lo):
    return math.sqrt(_geometric(hi, lo)) * math.sqrt(_arithmetic(hi, lo))


def mean_scalar(code: int, param: float, x: float, y: float) -> float:
    """Evaluate mean ``code`` at an already validated pair."""
    if x == y:
        return x
    hi, lo = (x, y) if x > y else (y, x)
    if code == CODE_A:
        r = _arithmetic(hi, lo)
    elif code == CODE_G:
        r = _geometric(hi, lo)
    elif code == CODE_H:
        r = _harmonic(hi, lo)
    elif code == CODE_E:
        r = _ebanks(hi, lo)
    else:
        d = _log_ratio(hi, lo)
        if code == CODE_L:
            r = _logarithmic(hi, lo, d)
        elif code == CODE_I:
            r = _identric(hi, lo, d)
        elif code == CODE_J:
            r = _alzer(param, hi, lo, d)
        elif code == CODE_M:
            r = _power(param, hi, lo, d)
        else:
            raise ValueError(f"bad mean code {code}")
    # internality
    if r < lo:
        return lo
    if r > hi:
        return hi
    return r


def _as_pair(pair) -> PositivePair:
    if isinstance(pair, PositivePair):
        return PositivePair.of(pair.x, pair.y)
    x, y = pair
    return PositivePair.of(x, y)


def evaluate(kind: MeanKind, pair) -> float:
    """Return ``kind`` evaluated at ``pair`` (a :class:`PositivePair` or 2-tuple).

    >>> evaluate(ARITHMETIC, (1, 3))
    2.0
    >>> round(evaluate(alzer(2), (1, 2)), 12)
    1.555555555556
    """
    pair = _as_pair(pair)
    return mean_scalar(kind.code, kind.param or 0.0, pair.x, pair.y)


def alzer_limit_form(p: float, pair) -> float:
    """Alzer mean ``J_p`` through its cancellation-safe form.

    ``J_p = p/(p+1) * y * E((p+1) d) / E(p d)`` with ``d = ln(x/y)`` and
    ``E(t) = expm1(t)``.  Within ``PARAM_GUARD`` of ``p = 0`` the
    logarithmic mean is returned and within it of ``p = -1`` the value
    ``G^2/L``; both are the continuous extensions of the formula.
    """
    if not math.isfinite(p):
        raise ValueError("Alzer parameter must be finite")
    pair = _as_pair(pair)
    return mean_scalar(CODE_J, float(p), pair.x, pair.y)


def evaluate_many(kind: MeanKind, xs: Iterable[float], ys: Iterable[float]) -> np.ndarray:
    """Vectorised :func:`evaluate` over paired arrays (compiled when available)."""
    from mnconvex._backend import kernels

    x = np.ascontiguousarray(xs, dtype=np.float64)
    y = np.ascontiguousarray(ys, dtype=np.float64)
    x, y = np.broadcast_arrays(x, y)
    x = np.ascontiguousarray(x).ravel()
    y = np.ascontiguousarray(y).ravel()
    if x.size and not (np.all(np.isfinite(x)) and np.all(np.isfinite(y)) and x.min() > 0 and y.min() > 0):
        bad = np.flatnonzero(~(np.isfinite(x) & np.isfinite(y) & (x > 0) & (y > 0)))[0]
        raise MeanDomainError(
            f"mean arguments must be finite and positive, got ({x[bad]!r}, {y[bad]!r}) at index {bad}"
        )
    out = np.empty_like(x)
    kernels.batch_mean(kind.code, kind.param or 0.0, x, y, out)
    return out
