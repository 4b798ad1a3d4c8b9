import math

import numpy as np
import pytest

from mnconvex.convexity import (
    EQUALITY_TOL,
    Monotonicity,
    Outcome,
    PQPair,
    PreconditionError,
    builtin_catalog,
    classify_values,
    criterion_check,
    criterion_quantity,
    definitional_check,
    letter_mean,
    log_convexity_check,
    monotone_classify,
    nine_case_check,
)
from mnconvex.expr import FunctionSpec
from mnconvex.means import MeanKind, evaluate
from mnconvex.sampling import IntervalSpec

LETTERS = ("A", "G", "H")
P = FunctionSpec.parse


def iv(lo, hi, n=2000, seed=42):
    return IntervalSpec(lo, hi, samples=n, seed=seed)


def test_definitional_examples():
    assert definitional_check(P("x^2"), "A", "A", iv(0.1, 10)).outcome is Outcome.CONVEX
    for a in ("2", "-1", "0.5", "3.7"):
        assert definitional_check(P(f"x^{a}"), "G", "G", iv(0.1, 10)).outcome is Outcome.BOTH
    assert definitional_check(P("exp(x)"), "A", "G", iv(0.1, 5)).outcome is Outcome.BOTH


def test_criterion_examples():
    ex = FunctionSpec.builtin("exp")
    assert criterion_check(ex, PQPair(1, 1), iv(0.1, 5)).outcome is Outcome.CONVEX
    assert criterion_check(ex, PQPair(1, 0), iv(0.1, 5)).outcome is Outcome.BOTH
    ln1p = FunctionSpec.builtin("ln1p")
    assert criterion_check(ln1p, PQPair(0, 0), iv(0.5, 50, n=1000)).outcome is Outcome.CONCAVE


def test_ln1p_gg_quantity_decreases_by_brute_force():
    xs = np.geomspace(0.5, 50, 1000)
    g = xs / ((1 + xs) * np.log1p(xs))
    assert np.all(np.diff(g) < 0)
    got = criterion_quantity(FunctionSpec.builtin("ln1p"), 0.0, 0.0, xs)
    assert np.allclose(got, g, rtol=1e-14)


def test_nine_case_examples():
    assert nine_case_check(P("x^2"), "H", "A", iv(0.1, 10)).outcome is Outcome.CONVEX
    recip = P("1/x")
    assert nine_case_check(recip, "H", "H", iv(0.1, 10)).outcome is Outcome.CONCAVE
    assert definitional_check(recip, "H", "H", iv(0.1, 10, n=10_000)).outcome is Outcome.CONCAVE


@pytest.mark.parametrize("f", ["x^2", "sqrt(x)", "exp(-x)", "x^3 - 4*x + 10", "cosh(x)"])
def test_aa_agrees_with_definition(f):
    fs = P(f)
    plan = iv(0.2, 3, n=1000)
    assert nine_case_check(fs, "A", "A", plan).outcome is definitional_check(fs, "A", "A", plan).outcome


QUANTITIES = {
    ("A", "A"): lambda x, f, d: d,
    ("A", "G"): lambda x, f, d: d / f,
    ("A", "H"): lambda x, f, d: d / f**2,
    ("G", "A"): lambda x, f, d: x * d,
    ("G", "G"): lambda x, f, d: x * d / f,
    ("G", "H"): lambda x, f, d: x * d / f**2,
    ("H", "A"): lambda x, f, d: x**2 * d,
    ("H", "G"): lambda x, f, d: x**2 * d / f,
    ("H", "H"): lambda x, f, d: x**2 * d / f**2,
}


@pytest.mark.parametrize("mn", QUANTITIES)
def test_letter_map_reduces_to_nine_quantities(mn):
    f = FunctionSpec.builtin("xexp")
    xs = np.geomspace(0.1, 5, 50)
    p, q = (1.0, 0.0, -1.0)[LETTERS.index(mn[0])], (1.0, 0.0, -1.0)[LETTERS.index(mn[1])]
    got = criterion_quantity(f, p, q, xs)
    want = QUANTITIES[mn](xs, f(xs), f.derivative(xs))
    assert np.allclose(got, want, rtol=1e-13)


def test_letter_map_soundness():
    plan = iv(0.1, 10)
    for f in builtin_catalog().values():
        assert nine_case_check(f, "A", "A", plan) == criterion_check(f, PQPair(1.0, 1.0), plan)


@pytest.mark.parametrize("span", [(0.5, 4.0), (0.1, 10.0)])
@pytest.mark.parametrize("name", sorted(builtin_catalog()))
def test_concordance(name, span):
    f = builtin_catalog()[name]
    plan = iv(*span)
    for m in LETTERS:
        for n in LETTERS:
            d = definitional_check(f, m, n, plan).outcome
            c = nine_case_check(f, m, n, plan).outcome
            assert d is c, (name, m, n, d, c)


@pytest.mark.parametrize("name", ["square", "cube", "sqrt", "reciprocal"])
@pytest.mark.parametrize("m, n", [("G", "G"), ("A", "A"), ("H", "G"), ("G", "A")])
def test_scale_robustness(name, m, n):
    f = builtin_catalog()[name]
    base = iv(0.5, 4.0, n=1000)
    want = nine_case_check(f, m, n, base).outcome
    for k in (-2, -1, 1, 2):
        plan = base.scaled(10.0**k)
        assert nine_case_check(f, m, n, plan).outcome is want
        assert definitional_check(f, m, n, plan).outcome is want


def _remargin(lhs, rhs):
    return (rhs - lhs) / (1 + abs(lhs) + abs(rhs))


@pytest.mark.parametrize("f, m, n", [("x^3 - 3*x^2 + 10", "A", "A"), ("x^2", "H", "G"), ("ln(1 + x)", "A", "G"), ("exp(-x)", "G", "H")])
def test_definitional_witnesses_are_valid(f, m, n):
    fs = P(f)
    M, N = MeanKind.parse(m), MeanKind.parse(n)
    v = definitional_check(fs, M, N, iv(0.1, 5))
    if v.outcome is Outcome.NEITHER:
        assert {w.violates for w in v.witnesses} == {"convex", "concave"}
    for w in v.witnesses:
        x, y = w.points
        lhs = fs(evaluate(M, (x, y)))
        rhs = evaluate(N, (fs(x), fs(y)))
        margin = _remargin(lhs, rhs)
        if w.violates == "convex":
            assert margin < -EQUALITY_TOL / 2
        else:
            assert margin > EQUALITY_TOL / 2


def test_neither_has_both_witnesses():
    v = definitional_check(P("x^3 - 3*x^2 + 10"), "A", "A", iv(0.1, 5))
    assert v.outcome is Outcome.NEITHER
    assert {w.violates for w in v.witnesses} == {"convex", "concave"}


def test_monotone_classify_examples():
    plan = iv(1, 20, n=500)
    assert monotone_classify(lambda t: t, plan).trend is Monotonicity.INCREASING
    assert monotone_classify(lambda t: 3.0 + 0 * t, plan).trend is Monotonicity.CONSTANT
    r = monotone_classify(np.sin, plan)
    assert r.trend is Monotonicity.NEITHER
    for w in r.witnesses:
        a, b = np.sin(w.points[0]), np.sin(w.points[1])
        assert w.points[0] < w.points[1]
        if w.violates == "increasing":
            assert _remargin(a, b) < -EQUALITY_TOL / 2
        else:
            assert _remargin(b, a) < -EQUALITY_TOL / 2


def test_first_inversion_is_reported():
    xs = np.arange(6.0)
    r = classify_values(xs, [0, 1, 2, 1.5, 3, 0.5])
    up = [w for w in r.witnesses if w.violates == "increasing"][0]
    assert up.points == (2.0, 3.0)


def test_non_finite_sample_raises():
    with pytest.raises(ValueError):
        classify_values([0, 1, 2], [0, math.nan, 1])


def test_log_convexity_examples():
    plan = iv(0.1, 5)
    assert log_convexity_check(FunctionSpec.builtin("exp"), plan).outcome is Outcome.BOTH
    assert log_convexity_check(P("exp(x^2)"), plan).outcome is Outcome.CONVEX
    assert log_convexity_check(P("sqrt(x)"), plan).outcome is Outcome.CONCAVE


def test_positivity_preconditions():
    with pytest.raises(PreconditionError):
        definitional_check(P("ln(x)"), "A", "G", iv(0.1, 5))
    with pytest.raises(PreconditionError):
        criterion_check(P("ln(x)"), PQPair(1, 0), iv(0.1, 5))
    # A-valued checks do not need f > 0
    assert definitional_check(P("ln(x)"), "A", "A", iv(0.1, 5)).outcome is Outcome.CONCAVE
    assert criterion_check(P("ln(x)"), PQPair(1, 1), iv(0.1, 5)).outcome is Outcome.CONCAVE


def test_inconclusive_when_derivative_fails():
    def df(t):
        return np.where((t > 2) & (t < 3), np.nan, 2 * t)

    f = FunctionSpec.from_callable(lambda t: t * t, deriv=df)
    v = criterion_check(f, PQPair(1, 1), iv(1, 4, n=200))
    assert v.outcome is Outcome.INCONCLUSIVE


def test_letter_mean_and_deterministic():
    assert str(letter_mean("G")) == "G"
    plan = iv(0.3, 7, seed=123)
    a = definitional_check(P("x^3 + x"), "A", "H", plan)
    b = definitional_check(P("x^3 + x"), "A", "H", plan)
    assert a == b
