"""MN-convexity of a positive function, by definition and by criterion.

The definitional check samples pairs and compares ``f(M(x, y))`` with
``N(f(x), f(y))``.  The criterion check samples the monotonicity of
``x**(1-p) * f'(x) * f(x)**(q-1)`` on a grid: it is increasing exactly when
``f`` is convex with respect to the power means ``M_p`` (arguments) and
``M_q`` (values).  The letters map A -> 1, G -> 0, H -> -1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from mnconvex._backend import kernels
from mnconvex.expr import ExprError, FunctionSpec
from mnconvex.means import ARITHMETIC, GEOMETRIC, HARMONIC, MeanKind, evaluate_many, power
from mnconvex.sampling import IntervalSpec, grid, sample_pairs

__all__ = [
    "EQUALITY_TOL",
    "Outcome",
    "Monotonicity",
    "Witness",
    "Verdict",
    "MonotoneResult",
    "PQPair",
    "PreconditionError",
    "LETTER_EXPONENT",
    "monotone_classify",
    "classify_values",
    "definitional_check",
    "criterion_check",
    "criterion_quantity",
    "nine_case_check",
    "log_convexity_check",
    "builtin_catalog",
]

#: margins within +-EQUALITY_TOL * (1 + |lhs| + |rhs|) are ties
EQUALITY_TOL = 1e-9
#: Inconclusive when derivative evaluation fails on more than this share of the grid
MAX_FAILED_SHARE = 0.01


class Outcome(str, Enum):
    CONVEX = "ConvexHolds"
    CONCAVE = "ConcaveHolds"
    BOTH = "BothHold"
    NEITHER = "NeitherHolds"
    INCONCLUSIVE = "Inconclusive"


class Monotonicity(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    NEITHER = "neither"


class PreconditionError(ValueError):
    """A check's input requirement (typically positivity of f) is not met."""


@dataclass(frozen=True)
class Witness:
    """A sampled point set and the two sides compared there.

    ``violates`` names the claim this sample refutes (``convex``,
    ``concave``, ``increasing`` or ``decreasing``); ``margin`` is
    ``(rhs - lhs) / (1 + |lhs| + |rhs|)``.
    """

    points: tuple
    lhs: float
    rhs: float
    margin: float
    violates: str


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witnesses: tuple = ()
    min_margin: float = math.nan
    samples_used: int = 0
    trend: str | None = None
    note: str | None = None

    @property
    def convex(self) -> bool:
        return self.outcome in (Outcome.CONVEX, Outcome.BOTH)

    @property
    def concave(self) -> bool:
        return self.outcome in (Outcome.CONCAVE, Outcome.BOTH)


@dataclass(frozen=True)
class MonotoneResult:
    trend: Monotonicity
    min_margin: float
    witnesses: tuple = field(default=())


@dataclass(frozen=True)
class PQPair:
    p: float
    q: float


LETTER_EXPONENT = {"A": 1.0, "G": 0.0, "H": -1.0}


def _margin(lhs, rhs):
    return (rhs - lhs) / (1.0 + np.abs(lhs) + np.abs(rhs))


def classify_values(xs, values, tol: float = EQUALITY_TOL) -> MonotoneResult:
    """Classify sampled values ``values[i] = g(xs[i])`` on an increasing grid."""
    v = np.ascontiguousarray(values, dtype=np.float64)
    xs = np.asarray(xs, dtype=np.float64)
    if not np.all(np.isfinite(v)):
        bad = np.flatnonzero(~np.isfinite(v))[0]
        raise ValueError(f"non-finite sample {v[bad]!r} at x={xs[bad]!r}")
    min_up, up_i, up_j, min_down, down_i, down_j = kernels.monotone_scan(v, tol)
    vmax, vmin = float(v.max()), float(v.min())
    spread = (vmax - vmin) / (1.0 + abs(vmax) + abs(vmin))

    def witness(i, j, violates):
        a, b = float(v[i]), float(v[j])
        m = _margin(a, b) if violates == "increasing" else _margin(b, a)
        return Witness((float(xs[i]), float(xs[j])), a, b, float(m), violates)

    if spread <= tol:
        return MonotoneResult(Monotonicity.CONSTANT, -spread)
    if up_j < 0:
        return MonotoneResult(Monotonicity.INCREASING, float(min_up), (witness(down_i, down_j, "decreasing"),))
    if down_j < 0:
        return MonotoneResult(Monotonicity.DECREASING, float(min_down), (witness(up_i, up_j, "increasing"),))
    return MonotoneResult(
        Monotonicity.NEITHER,
        float(min(min_up, min_down)),
        (witness(up_i, up_j, "increasing"), witness(down_i, down_j, "decreasing")),
    )


def monotone_classify(g: Callable, iv: IntervalSpec, tol: float = EQUALITY_TOL) -> MonotoneResult:
    """Classify ``g`` as increasing, decreasing, constant or neither on ``iv``.

    ``neither`` carries the first inversion found in each direction.
    """
    xs = grid(iv)
    try:
        vals = np.asarray(g(xs), dtype=np.float64)
        if vals.shape != xs.shape:
            raise TypeError
    except TypeError:
        vals = np.array([g(float(t)) for t in xs], dtype=np.float64)
    return classify_values(xs, vals, tol)


# -- definitional check ----------------------------------------------------------

def _as_kind(m) -> MeanKind:
    if isinstance(m, MeanKind):
        return m
    return MeanKind.parse(str(m))


def _eval_f(f, x, what):
    try:
        return np.asarray(f(x), dtype=np.float64)
    except ExprError as exc:
        raise ExprError(f"f failed while evaluating {what}: {exc}") from exc


def definitional_check(f, M, N, iv: IntervalSpec, tol: float = EQUALITY_TOL) -> Verdict:
    """Compare ``f(M(x, y))`` with ``N(f(x), f(y))`` over sampled pairs."""
    M = _as_kind(M)
    N = _as_kind(N)
    xs, ys = sample_pairs(iv)
    lhs = _eval_f(f, evaluate_many(M, xs, ys), f"f(M(x, y)) with M={M}")
    fx = _eval_f(f, xs, "f(x)")
    fy = _eval_f(f, ys, "f(y)")
    if N.family != "A":
        bad = (fx <= 0) | (fy <= 0)
        if np.any(bad):
            i = np.flatnonzero(bad)[0]
            raise PreconditionError(
                f"mean {N} of function values needs f > 0; f({xs[i]!r}) = {fx[i]!r}, f({ys[i]!r}) = {fy[i]!r}"
            )
    if N.family == "A":
        # the arithmetic mean of values needs no positivity
        hi, lo = np.maximum(fx, fy), np.minimum(fx, fy)
        rhs = 0.5 * hi + 0.5 * lo
    else:
        rhs = evaluate_many(N, fx, fy)
    margin = _margin(lhs, rhs)
    convex_ok = bool(np.all(margin >= -tol))
    concave_ok = bool(np.all(margin <= tol))

    def witness(i, violates):
        return Witness((float(xs[i]), float(ys[i])), float(lhs[i]), float(rhs[i]), float(margin[i]), violates)

    witnesses = []
    if not convex_ok:
        witnesses.append(witness(int(np.argmin(margin)), "convex"))
    if not concave_ok:
        witnesses.append(witness(int(np.argmax(margin)), "concave"))
    if convex_ok and concave_ok:
        outcome, mm = Outcome.BOTH, -float(np.max(np.abs(margin)))
    elif convex_ok:
        outcome, mm = Outcome.CONVEX, float(np.min(margin))
    elif concave_ok:
        outcome, mm = Outcome.CONCAVE, float(np.min(-margin))
    else:
        outcome, mm = Outcome.NEITHER, float(np.min(margin))
    return Verdict(outcome, tuple(witnesses), mm, int(xs.size))


# -- criterion checks --------------------------------------------------------------

def criterion_quantity(f, p: float, q: float, xs) -> np.ndarray:
    """``x**(1-p) * f'(x) * f(x)**(q-1)`` at ``xs``."""
    fx = np.asarray(f(xs), dtype=np.float64)
    if q != 1.0 and np.any(fx <= 0):
        i = np.flatnonzero(np.atleast_1d(fx <= 0))[0]
        raise PreconditionError(f"criterion needs f > 0; f({np.atleast_1d(xs)[i]!r}) = {np.atleast_1d(fx)[i]!r}")
    fp = np.asarray(_derivative(f, xs), dtype=np.float64)
    with np.errstate(all="ignore"):
        return np.power(xs, 1.0 - p) * fp * np.power(fx, q - 1.0)


def _derivative(f, xs):
    if isinstance(f, FunctionSpec):
        return f.derivative(xs)
    from mnconvex.expr import richardson_derivative

    return richardson_derivative(f, xs)


def _derivative_robust(f, xs):
    """Derivative on the grid; failed points come back as NaN."""
    try:
        out = np.asarray(_derivative(f, xs), dtype=np.float64)
        return out
    except (ExprError, ArithmeticError, ValueError):
        pass
    out = np.empty_like(xs)
    for i, t in enumerate(xs):
        try:
            out[i] = float(_derivative(f, float(t)))
        except (ExprError, ArithmeticError, ValueError):
            out[i] = math.nan
    return out


def _trend_verdict(mono: MonotoneResult, samples: int, note=None) -> Verdict:
    outcome = {
        Monotonicity.INCREASING: Outcome.CONVEX,
        Monotonicity.DECREASING: Outcome.CONCAVE,
        Monotonicity.CONSTANT: Outcome.BOTH,
        Monotonicity.NEITHER: Outcome.NEITHER,
    }[mono.trend]
    return Verdict(outcome, mono.witnesses, mono.min_margin, samples, mono.trend.value, note)


def criterion_check(f, pq: PQPair, iv: IntervalSpec, tol: float = EQUALITY_TOL) -> Verdict:
    """(p, q)-convexity of ``f`` from the monotonicity of its criterion quantity.

    ConvexHolds when the quantity increases, ConcaveHolds when it decreases,
    BothHold when it is constant within ``tol``.
    """
    xs = grid(iv)
    fx = _eval_f(f, xs, "f on the criterion grid")
    # with q = 1 the quantity does not involve f itself
    if pq.q != 1.0 and np.any(fx <= 0):
        i = np.flatnonzero(fx <= 0)[0]
        raise PreconditionError(f"criterion needs f > 0; f({xs[i]!r}) = {fx[i]!r}")
    fp = _derivative_robust(f, xs)
    ok = np.isfinite(fp)
    failed = int(xs.size - ok.sum())
    if failed > MAX_FAILED_SHARE * xs.size:
        return Verdict(
            Outcome.INCONCLUSIVE,
            samples_used=int(xs.size),
            note=f"derivative failed at {failed} of {xs.size} grid points",
        )
    xs, fx, fp = xs[ok], fx[ok], fp[ok]
    with np.errstate(all="ignore"):
        g = np.power(xs, 1.0 - pq.p) * fp * np.power(fx, pq.q - 1.0)
    if not np.all(np.isfinite(g)):
        return Verdict(Outcome.INCONCLUSIVE, samples_used=int(xs.size), note="criterion quantity overflowed")
    note = f"derivative failed at {failed} grid points" if failed else None
    return _trend_verdict(classify_values(xs, g, tol), int(xs.size), note)


def _letter(m) -> float:
    if isinstance(m, MeanKind):
        if m.family == "M":
            return m.param
        m = m.family
    try:
        return LETTER_EXPONENT[str(m).upper()]
    except KeyError:
        raise ValueError(f"criterion needs an A, G or H mean (or a power mean M:t), not {m!r}") from None


def nine_case_check(f, M, N, iv: IntervalSpec, tol: float = EQUALITY_TOL) -> Verdict:
    """MN-convexity for M, N in {A, G, H} through the (p, q) criterion.

    The monotone quantities reduce to f', f'/f, f'/f^2, x f', x f'/f,
    x f'/f^2, x^2 f', x^2 f'/f and x^2 f'/f^2.
    """
    return criterion_check(f, PQPair(_letter(M), _letter(N)), iv, tol)


def log_convexity_check(f, iv: IntervalSpec, tol: float = EQUALITY_TOL) -> Verdict:
    """Log-convexity from the monotonicity of ``f'/f`` (the AG criterion)."""
    return criterion_check(f, PQPair(1.0, 0.0), iv, tol)


def letter_mean(letter: str) -> MeanKind:
    return {"A": ARITHMETIC, "G": GEOMETRIC, "H": HARMONIC}.get(letter) or power(_letter(letter))


def builtin_catalog() -> dict[str, FunctionSpec]:
    """Built-in functions with exact derivatives used by the concordance suite."""
    return {
        "exp": FunctionSpec.builtin("exp"),
        "ln1p": FunctionSpec.builtin("ln1p"),
        "square": FunctionSpec.builtin("power", 2),
        "cube": FunctionSpec.builtin("power", 3),
        "sqrt": FunctionSpec.builtin("power", 0.5),
        "reciprocal": FunctionSpec.builtin("power", -1),
        "affine": FunctionSpec.builtin("affine", 2, 1),
        "xexp": FunctionSpec.builtin("xexp"),
    }
