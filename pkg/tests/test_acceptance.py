"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` and look for the "acceptance
criteria" section at the end of the report.
"""
import io
import json
import math
import os
import time

import numpy as np
import pytest

import oracle
from acceptance_log import record
from mnconvex.cli import run
from mnconvex.convexity import Outcome, builtin_catalog, definitional_check, nine_case_check
from mnconvex.expr import FunctionSpec
from mnconvex.inequalities import (
    alzer_monotone,
    alzer_sandwich,
    chebyshev_check,
    ebanks_check,
    identric_sandwich,
    jensen_check,
    mean_chain,
)
from mnconvex.means import IDENTRIC, LOGARITHMIC, alzer, alzer_limit_form, evaluate, power
from mnconvex.sampling import IntervalSpec, random_pairs

SEED = 42
P = FunctionSpec.parse


def test_criterion_01_mean_chain():
    plan = IntervalSpec(1e-6, 1e6, samples=100_000, seed=SEED)
    t0 = time.perf_counter()
    report = mean_chain(plan, tol=1e-12)
    elapsed = time.perf_counter() - t0
    n = report.inequalities[0].pairs_tested
    ok = report.failures == 0 and elapsed < 5.0 and n >= 100_000
    record(1, "mean chain L <= I <= A", ok, f"{report.failures} violations over {n} pairs in {elapsed:.2f} s")
    assert ok


def test_criterion_02_alzer_monotone():
    xs, ys = random_pairs(IntervalSpec(1e-2, 1e2, samples=1000, seed=SEED))
    grid = np.linspace(-5, 5, 101)
    assert 0.0 in grid and -1.0 in grid
    t0 = time.perf_counter()
    report = alzer_monotone((xs, ys), list(grid))
    elapsed = time.perf_counter() - t0
    ok = report.failures == 0 and elapsed < 10.0
    record(2, "J_p increasing in p", ok, f"{report.failures} adjacent inversions over {xs.size} pairs in {elapsed:.2f} s")
    assert ok


def test_criterion_03_ebanks():
    plan = IntervalSpec(1e-2, 1e2, samples=10_000, seed=SEED)
    fails = {}
    for f in ("x^2", "exp(x)", "x^3 + x", "x*exp(x)"):
        r = ebanks_check(P(f), plan, tol=1e-9, rel_tol=1e-10)
        main = r.inequality("P_f(x,y) <= R_f(x,y)")
        fails[f] = (main.failures, main.inconclusive, main.pairs_tested)
    fx = ebanks_check(P("x^2"), (1, 4)).functionals
    fixture = abs(fx.P - 5) <= 1e-12 and abs(fx.R - 7) <= 1e-12
    ok = fixture and all(v[0] == 0 and v[1] == 0 for v in fails.values())
    detail = "; ".join(f"{f}: {v[0]} failures/{v[1]} inconclusive of {v[2]}" for f, v in fails.items())
    record(3, "Ebanks P_f <= R_f", ok, f"{detail}; fixture P={fx.P!r} R={fx.R!r}")
    assert ok


def test_criterion_04_identric_lower():
    plan = IntervalSpec(0.1, 5.0, samples=10_000, seed=SEED)
    fails = {}
    for f in ("exp(x)", "exp(x^2)"):
        r = identric_sandwich(P(f), plan, "lower")
        fails[f] = r.inequality("I(f(x),f(y)) >= f(I(x,y))").failures
    w = identric_sandwich(P("exp(x)"), (1, 2), "lower").inequality("I(f(x),f(y)) >= f(I(x,y))").worst_witness
    e = oracle.mp.e
    lhs_o = oracle.mean("I", None, float(e), float(e * e))
    rhs_o = oracle.mp.exp(oracle.mean("I", None, 1, 2))
    fixture = round(w.lhs, 4) == round(float(lhs_o), 4) and round(w.rhs, 4) == round(float(rhs_o), 4)
    ok = fixture and not any(fails.values())
    record(4, "identric lower profile", ok, f"failures {fails}; fixture lhs={w.lhs:.4f} rhs={w.rhs:.4f}")
    assert ok


def test_criterion_05_counterexamples():
    up = identric_sandwich(P("exp(x)"), (1, 2), "upper")
    (ineq,) = up.inequalities
    gap = ineq.worst_witness.lhs - ineq.worst_witness.rhs
    first = up.error is None and ineq.failures == 1 and abs(gap - 0.3834) <= 1e-3
    al = alzer_sandwich(P("x^2"), 1.0, (1, 3)).inequality("J_p(f(x),f(y)) <= f(A(x,y))")
    second = al.failures == 1 and (al.worst_witness.lhs, al.worst_witness.rhs) == (5.0, 4.0)
    ok = first and second
    record(
        5,
        "counterexamples reproduced",
        ok,
        f"identric upper lhs-rhs={gap:.4f}; Alzer upper {al.worst_witness.lhs!r} > {al.worst_witness.rhs!r}",
    )
    assert ok


def test_criterion_06_alzer_proof_chain():
    plan = IntervalSpec(1e-2, 1e2, samples=1000, seed=SEED)
    bad = []
    for f in ("x^2", "exp(x)"):
        for p in (-2.0, -0.5, 0.0, 0.5, 1.0):
            r = alzer_sandwich(P(f), p, plan)
            steps = [i for i in r.inequalities if i.proved and i.description != "J_p(f(x),f(y)) >= f(J_p(x,y))"]
            n = sum(i.failures for i in steps)
            if n:
                aux = [q.name for q in r.preconditions if q.satisfied is not True]
                bad.append(f"{f} p={p:g}: {n} step failures (unmet: {', '.join(aux)})")
    ok = not bad
    record(6, "Alzer proof chain, all listed (p, f)", ok, "no failures" if ok else "; ".join(bad))
    assert ok, bad


def _poly(rng, increasing):
    c = rng.uniform(0, 2, rng.integers(1, 5))
    sign = 1.0 if increasing else -1.0

    def f(t):
        t = np.asarray(t, dtype=float)
        return sign * sum(ci * t ** (k + 1) for k, ci in enumerate(c)) + rng_const

    rng_const = float(rng.uniform(-1, 1))
    return f


def test_criterion_07_chebyshev_jensen():
    one = lambda t: np.ones_like(np.asarray(t, dtype=float))
    ident = lambda t: t
    fixtures = []
    r = chebyshev_check(ident, ident, one, 0, 1).inequalities[0].worst_witness
    fixtures += [abs(r.lhs - 0.25), abs(r.rhs - 1 / 3)]
    r = chebyshev_check(ident, lambda t: -t, one, 0, 1).inequalities[0].worst_witness
    fixtures += [abs(r.lhs + 0.25), abs(r.rhs + 1 / 3)]
    r = jensen_check(P("x^2"), ident, 0, 1).inequalities[0].worst_witness
    fixtures += [abs(r.lhs - 0.25), abs(r.rhs - 1 / 3)]
    r = jensen_check(P("sqrt(x)"), ident, 0, 1).inequalities[0].worst_witness
    fixtures += [abs(r.lhs - math.sqrt(0.5)), abs(r.rhs - 2 / 3)]
    fixture_ok = max(fixtures) <= 1e-10

    rng = np.random.default_rng(SEED)
    violations = 0
    for _ in range(1000):
        a = float(rng.uniform(0, 1))
        b = a + float(rng.uniform(0.1, 3))
        f = _poly(rng, bool(rng.integers(2)))
        g = _poly(rng, bool(rng.integers(2)))
        wc = rng.uniform(0.1, 2, 3)
        w = lambda t, wc=wc: wc[0] + wc[1] * np.asarray(t) + wc[2] * np.asarray(t) ** 2
        rep = chebyshev_check(f, g, w, a, b)
        violations += rep.failures
    for _ in range(1000):
        a = float(rng.uniform(0.1, 1))
        b = a + float(rng.uniform(0.1, 3))
        k = int(rng.integers(2, 5))
        coef = rng.uniform(0.1, 2, k)
        f = FunctionSpec.from_callable(lambda t, c=coef: sum(ci * np.asarray(t) ** (i + 2) for i, ci in enumerate(c)), "poly")
        phi_c = rng.uniform(0.1, 2, 2)
        phi = lambda t, c=phi_c: c[0] + c[1] * np.asarray(t) ** 2
        violations += jensen_check(f, phi, a, b).failures
    ok = fixture_ok and violations == 0
    record(7, "Chebyshev and Jensen", ok, f"fixture max error {max(fixtures):.1e}; {violations} violations in 2000 random instances")
    assert ok


def test_criterion_08_stability_oracle():
    worst = 0.0
    kinds = [LOGARITHMIC, IDENTRIC] + [alzer(p) for p in (-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0)]
    for kind in kinds:
        for k in range(1, 15):
            for m in (1e-3, 1.0, 7.0, 1e3):
                x, y = m, m * (1 + 10.0**-k)
                err = oracle.rel_err(evaluate(kind, (x, y)), oracle.mean(kind.family, kind.param, x, y))
                worst = max(worst, err)
    limit_worst = 0.0
    for pair in [(1.0, 2.0), (0.1, 30.0), (5.0, 5.0 * (1 + 1e-9))]:
        L = oracle.mean("L", None, *pair)
        g2l = oracle.mean("G", None, *pair) ** 2 / L
        for eps in (1e-12, -1e-12):
            limit_worst = max(limit_worst, oracle.rel_err(alzer_limit_form(eps, pair), L))
            limit_worst = max(limit_worst, oracle.rel_err(alzer_limit_form(-1 + eps, pair), g2l))
    ok = worst <= 1e-12 and limit_worst <= 1e-9
    record(8, "near-diagonal and singular-p accuracy", ok, f"worst rel error {worst:.1e}; limit error {limit_worst:.1e}")
    assert ok


def test_criterion_09_concordance():
    catalog = builtin_catalog()
    plan = IntervalSpec(0.5, 4.0, samples=2000, seed=SEED)
    disagreements = []
    for name, f in catalog.items():
        for m in "AGH":
            for n in "AGH":
                d = definitional_check(f, m, n, plan).outcome
                c = nine_case_check(f, m, n, plan).outcome
                if d is not c:
                    disagreements.append(f"{name} {m}{n}: {d.value} vs {c.value}")
    exact = [definitional_check(catalog["exp"], "A", "G", plan).outcome, nine_case_check(catalog["exp"], "A", "G", plan).outcome]
    for name in ("square", "cube", "sqrt", "reciprocal"):
        exact += [definitional_check(catalog[name], "G", "G", plan).outcome, nine_case_check(catalog[name], "G", "G", plan).outcome]
    both = all(o is Outcome.BOTH for o in exact)
    ok = len(catalog) >= 8 and not disagreements and both
    record(9, "definition/criterion concordance", ok, f"{len(catalog)} functions x 9 pairs, {len(disagreements)} disagreements, exact families BothHold={both}")
    assert ok, disagreements


def test_criterion_10_cli_golden(monkeypatch):
    golden = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")
    with open(os.path.join(golden, "cases.json"), encoding="utf-8") as fh:
        cases = json.load(fh)
    monkeypatch.chdir(golden)
    mismatched = []
    for case in cases:
        out, err = io.StringIO(), io.StringIO()
        code = run(case["argv"], out, err)
        with open(case["name"] + ".out", encoding="utf-8", newline="") as fh:
            if fh.read() != out.getvalue() or code != case["exit"]:
                mismatched.append(case["name"])
    ok = len(cases) >= 12 and not mismatched
    record(10, "CLI golden corpus", ok, f"{len(cases) - len(mismatched)}/{len(cases)} invocations match")
    assert ok, mismatched
