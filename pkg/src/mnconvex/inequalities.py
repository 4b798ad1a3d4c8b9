"""Numerical audits of mean inequalities over sampled pairs.

Each auditor checks every inequality on its own: the stated bound, and
where a proof gives one, each intermediate step.  Preconditions are
validated numerically on the span of the sampled pairs and recorded next to
the outcomes; an unmet or inconclusive precondition never stops the test.

A sample's margin is ``(larger side - smaller side)`` as claimed, divided by
``1 + |lhs| + |rhs|``.  Margins within ``tol`` are ties and pass.  A margin
outside the tie band but within ten times the normalised quadrature error
estimate is counted as inconclusive rather than as a pass or a failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from mnconvex.convexity import (
    EQUALITY_TOL,
    Monotonicity,
    Outcome,
    PQPair,
    Verdict,
    Witness,
    _trend_verdict,
    classify_values,
    criterion_check,
)
from mnconvex.expr import ExprError, FunctionSpec
from mnconvex.means import (
    ARITHMETIC,
    EBANKS,
    IDENTRIC,
    LOGARITHMIC,
    alzer,
    evaluate,
    evaluate_many,
)
from mnconvex.quadrature import (
    DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL,
    QuadratureError,
    QuadResult,
    integrate,
)
from mnconvex.sampling import IntervalSpec, grid, sample_pairs

__all__ = [
    "Precondition",
    "InequalityResult",
    "EbanksFunctionals",
    "CheckReport",
    "ebanks_check",
    "identric_sandwich",
    "alzer_sandwich",
    "chebyshev_check",
    "jensen_check",
    "mean_chain",
    "alzer_monotone",
    "ll_al_check",
    "audit_all",
    "default_catalog",
    "SUITES",
]

PRECONDITION_GRID = 201
QUAD_GUARD = 10.0
#: pairs with |ln(x/y)| below this are exempt from strictness checks
STRICT_SEPARATION = 1e-4


@dataclass(frozen=True)
class Precondition:
    name: str
    satisfied: bool | None  # None: could not be decided
    verdict: Verdict | None = None
    detail: str | None = None


@dataclass(frozen=True)
class InequalityResult:
    description: str
    pairs_tested: int
    failures: int
    min_margin: float | None
    worst_witness: Witness | None
    inconclusive: int = 0
    proved: bool = True


@dataclass(frozen=True)
class EbanksFunctionals:
    P: float
    R: float
    inner_mean: float
    quad: QuadResult


@dataclass
class CheckReport:
    name: str
    preconditions: list = field(default_factory=list)
    inequalities: list = field(default_factory=list)
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    functionals: EbanksFunctionals | None = None
    error: str | None = None

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.inequalities)

    @property
    def proof_failures(self) -> int:
        return sum(r.failures for r in self.inequalities if r.proved)

    @property
    def inconclusive(self) -> int:
        return sum(r.inconclusive for r in self.inequalities)

    @property
    def preconditions_met(self) -> bool | None:
        states = [p.satisfied for p in self.preconditions]
        if any(s is False for s in states):
            return False
        if any(s is None for s in states):
            return None
        return True

    def inequality(self, description: str) -> InequalityResult:
        for r in self.inequalities:
            if r.description == description:
                return r
        raise KeyError(description)


# -- helpers --------------------------------------------------------------------

def _pairs(pairs, seed=None):
    """Normalise ``pairs`` to ``(xs, ys, precondition interval, seed)``."""
    if isinstance(pairs, IntervalSpec):
        xs, ys = sample_pairs(pairs)
        return xs, ys, pairs, pairs.seed
    if len(pairs) == 2 and np.ndim(pairs[0]) == 0:
        xs = np.array([float(pairs[0])])
        ys = np.array([float(pairs[1])])
    else:
        xs = np.asarray(pairs[0], dtype=np.float64).ravel()
        ys = np.asarray(pairs[1], dtype=np.float64).ravel()
    if xs.shape != ys.shape:
        raise ValueError("pair arrays differ in length")
    if xs.size and (not np.all(np.isfinite(xs) & np.isfinite(ys)) or min(xs.min(), ys.min()) <= 0):
        raise ValueError("pairs must be finite and positive")
    lo = float(min(xs.min(), ys.min()))
    hi = float(max(xs.max(), ys.max()))
    if hi <= lo:
        lo, hi = lo * (1 - 1e-3), hi * (1 + 1e-3)
    return xs, ys, IntervalSpec(lo, hi, samples=PRECONDITION_GRID), seed


def _tally(
    description,
    lhs,
    rhs,
    xs,
    ys,
    relation="<=",
    tol=EQUALITY_TOL,
    qerr=None,
    scale=None,
    proved=True,
    strict_mask=None,
) -> InequalityResult:
    lhs = np.asarray(lhs, dtype=np.float64)
    rhs = np.asarray(rhs, dtype=np.float64)
    norm = (1.0 + np.abs(lhs) + np.abs(rhs)) if scale is None else np.asarray(scale, dtype=np.float64)
    diff = rhs - lhs if relation == "<=" else lhs - rhs
    margin = diff / norm
    tie = np.abs(margin) <= tol
    if strict_mask is not None:
        # off the diagonal a strict inequality admits no ties
        tie &= ~strict_mask
    if qerr is None:
        noisy = np.zeros(margin.shape, dtype=bool)
    else:
        noisy = ~tie & (np.abs(margin) <= QUAD_GUARD * np.asarray(qerr) / norm)
    decided = ~noisy
    fail = decided & ~tie & (margin < 0)
    if strict_mask is not None:
        fail |= decided & strict_mask & (margin <= 0)
    n_fail = int(fail.sum())
    worst = None
    min_margin = None
    if decided.any():
        idx = np.flatnonzero(decided)
        i = int(idx[np.argmin(margin[idx])])
        min_margin = float(margin[i])
        worst = Witness((float(xs[i]), float(ys[i])), float(lhs[i]), float(rhs[i]), min_margin, description)
    return InequalityResult(description, int(margin.size), n_fail, min_margin, worst, int(noisy.sum()), proved)


def _fvals(f, x):
    return np.asarray(f(np.asarray(x, dtype=np.float64)), dtype=np.float64)


def _monotone_pre(name, g, iv, want, tol):
    xs = grid(iv)
    try:
        vals = np.asarray(g(xs), dtype=np.float64)
        mono = classify_values(xs, vals, tol)
    except (ExprError, ArithmeticError, ValueError) as exc:
        return Precondition(name, None, Verdict(Outcome.INCONCLUSIVE, samples_used=int(xs.size), note=str(exc)))
    verdict = _trend_verdict(mono, int(xs.size))
    ok = {
        "strictly increasing": mono.trend is Monotonicity.INCREASING,
        "strictly decreasing": mono.trend is Monotonicity.DECREASING,
        "increasing": mono.trend in (Monotonicity.INCREASING, Monotonicity.CONSTANT),
        "decreasing": mono.trend in (Monotonicity.DECREASING, Monotonicity.CONSTANT),
    }[want]
    return Precondition(name, ok, verdict)


def _criterion_pre(name, f, pq, iv, want, tol):
    try:
        verdict = criterion_check(f, pq, iv, tol)
    except (ExprError, ArithmeticError, ValueError) as exc:
        return Precondition(name, None, Verdict(Outcome.INCONCLUSIVE, note=str(exc)))
    if verdict.outcome is Outcome.INCONCLUSIVE:
        return Precondition(name, None, verdict)
    return Precondition(name, verdict.convex if want == "convex" else verdict.concave, verdict)


def _convex_pre(f, iv, want, tol):
    return _criterion_pre(f"f {want}", f, PQPair(1.0, 1.0), iv, want, tol)


def _log_convex_pre(f, iv, want, tol):
    return _criterion_pre(f"f log-{want}", f, PQPair(1.0, 0.0), iv, want, tol)


def _quad_means(f, xs, ys, rel_tol, abs_tol):
    """Integral averages of ``f`` over each pair and their error estimates."""
    R = np.empty(xs.size)
    err = np.zeros(xs.size)
    results = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        if x == y:
            R[i] = float(f(np.array([x]))[0])
            results.append(None)
            continue
        lo, hi = (x, y) if x < y else (y, x)
        r = integrate(f, lo, hi, rel_tol, abs_tol)
        R[i] = r.value / (hi - lo)
        err[i] = r.error_estimate / (hi - lo)
        results.append(r)
    return R, err, results


def _tolerances(tol, rel_tol=None, abs_tol=None):
    out = {"equality": tol}
    if rel_tol is not None:
        out["quad_rel"] = rel_tol
        out["quad_abs"] = abs_tol
    return out


def _name(f):
    return getattr(f, "name", getattr(f, "__name__", "f"))


# -- auditors ---------------------------------------------------------------------

def ebanks_check(
    f,
    pairs,
    tol: float = EQUALITY_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    seed=None,
) -> CheckReport:
    """Audit ``P_f(x, y) <= R_f(x, y)`` for strictly increasing convex ``f``.

    ``P_f`` is ``f`` at the mean ``(xy)^(1/4) ((x+y)/2)^(1/2)`` and ``R_f`` the
    integral average of ``f`` between ``x`` and ``y``.  For a single pair the
    report carries the two functionals.
    """
    xs, ys, iv, seed = _pairs(pairs, seed)
    inner = evaluate_many(EBANKS, xs, ys)
    P = _fvals(f, inner)
    R, rerr, quads = _quad_means(f, xs, ys, rel_tol, abs_tol)
    pre = [
        _monotone_pre("f strictly increasing", f, iv, "strictly increasing", tol),
        _convex_pre(f, iv, "convex", tol),
    ]
    ineq = [
        _tally("P_f(x,y) <= R_f(x,y)", P, R, xs, ys, "<=", tol, qerr=rerr),
        _tally("R_f(x,y) >= f(A(x,y))", R, _fvals(f, evaluate_many(ARITHMETIC, xs, ys)), xs, ys, ">=", tol, qerr=rerr),
        _tally("f(A(x,y)) >= P_f(x,y)", _fvals(f, evaluate_many(ARITHMETIC, xs, ys)), P, xs, ys, ">=", tol),
    ]
    report = CheckReport("ebanks", pre, ineq, seed, _tolerances(tol, rel_tol, abs_tol), {"f": _name(f)})
    if xs.size == 1:
        quad = quads[0] if quads[0] is not None else QuadResult(0.0, 0.0, 0)
        report.functionals = EbanksFunctionals(float(P[0]), float(R[0]), float(inner[0]), quad)
    return report


def identric_sandwich(
    f,
    pairs,
    profile: str = "lower",
    tol: float = EQUALITY_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    seed=None,
) -> CheckReport:
    """Audit one side of the identric sandwich.

    ``lower``: ``I(f(x), f(y)) >= f(I(x, y))`` with preconditions increasing,
    convex and log-convex, plus the proof's intermediate steps.
    ``upper``: ``I(f(x), f(y)) <= f(A(x, y))`` with preconditions increasing,
    concave and log-concave.
    """
    if profile not in ("lower", "upper"):
        raise ValueError("identric profile must be 'lower' or 'upper'")
    xs, ys, iv, seed = _pairs(pairs, seed)
    fx, fy = _fvals(f, xs), _fvals(f, ys)
    if np.any(fx <= 0) or np.any(fy <= 0):
        raise ValueError("identric sandwich needs f > 0 on the sampled pairs")
    lhs = evaluate_many(IDENTRIC, fx, fy)
    f_a = _fvals(f, evaluate_many(ARITHMETIC, xs, ys))
    shape = "convex" if profile == "lower" else "concave"
    pre = [
        _monotone_pre("f increasing", f, iv, "increasing", tol),
        _convex_pre(f, iv, shape, tol),
        _log_convex_pre(f, iv, shape, tol),
    ]
    tols = _tolerances(tol)
    if profile == "upper":
        ineq = [_tally("I(f(x),f(y)) <= f(A(x,y))", lhs, f_a, xs, ys, "<=", tol, proved=False)]
        return CheckReport("identric", pre, ineq, seed, tols, {"f": _name(f), "profile": profile})

    f_i = _fvals(f, evaluate_many(IDENTRIC, xs, ys))

    def log_f(t):
        return np.log(f(t))

    mean_log, lerr, _ = _quad_means(log_f, xs, ys, rel_tol, abs_tol)
    log_lhs = np.log(lhs)
    ineq = [
        _tally("I(f(x),f(y)) >= f(I(x,y))", lhs, f_i, xs, ys, ">=", tol),
        _tally("ln I(f(x),f(y)) >= mean of ln f over [x,y]", log_lhs, mean_log, xs, ys, ">=", tol, qerr=lerr),
        _tally("mean of ln f over [x,y] >= ln f(A(x,y))", mean_log, np.log(f_a), xs, ys, ">=", tol, qerr=lerr),
        _tally("f(A(x,y)) >= f(I(x,y))", f_a, f_i, xs, ys, ">=", tol),
    ]
    tols = _tolerances(tol, rel_tol, abs_tol)
    return CheckReport("identric", pre, ineq, seed, tols, {"f": _name(f), "profile": profile})


def alzer_sandwich(
    f,
    p: float,
    pairs,
    part: str = "one",
    tol: float = EQUALITY_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    seed=None,
) -> CheckReport:
    """Audit the Alzer-mean sandwich for ``f``.

    Part ``one`` (p <= 1) assumes f strictly increasing and convex, part
    ``two`` (p > 1) strictly decreasing and convex.  The auxiliary
    monotonicity hypothesis is validated in both readings: for
    ``f^(p-1) * f`` and for ``f^(p-1) * f'``, the quantity the proof
    integrates.  Part one also audits the proof chain
    ``J_p(f) >= R_f >= f(A) >= f(J_p)`` step by step.
    """
    if part not in ("one", "two"):
        raise ValueError("alzer part must be 'one' or 'two'")
    p = float(p)
    if part == "one" and p > 1:
        raise ValueError("part one needs p <= 1")
    if part == "two" and p <= 1:
        raise ValueError("part two needs p > 1")
    xs, ys, iv, seed = _pairs(pairs, seed)
    fx, fy = _fvals(f, xs), _fvals(f, ys)
    if np.any(fx <= 0) or np.any(fy <= 0):
        raise ValueError("alzer sandwich needs f > 0 on the sampled pairs")
    J = alzer(p)
    lhs = evaluate_many(J, fx, fy)
    f_j = _fvals(f, evaluate_many(J, xs, ys))
    f_a = _fvals(f, evaluate_many(ARITHMETIC, xs, ys))

    def aux_stated(t):
        return np.power(f(t), p - 1.0) * f(t)

    def aux_proof(t):
        ft = f(t)
        return np.power(ft, p - 1.0) * _derivative(f, t)

    trend = "increasing" if part == "one" else "decreasing"
    pre = [
        _monotone_pre(f"f strictly {trend}", f, iv, f"strictly {trend}", tol),
        _convex_pre(f, iv, "convex", tol),
        _monotone_pre(f"f^(p-1)*f {trend} (as stated)", aux_stated, iv, trend, tol),
        _monotone_pre(f"f^(p-1)*f' {trend} (as used in the proof)", aux_proof, iv, trend, tol),
    ]
    ineq = [
        _tally("J_p(f(x),f(y)) >= f(J_p(x,y))", lhs, f_j, xs, ys, ">=", tol, proved=part == "one"),
        _tally("J_p(f(x),f(y)) <= f(A(x,y))", lhs, f_a, xs, ys, "<=", tol, proved=False),
    ]
    tols = _tolerances(tol)
    if part == "one":
        R, rerr, _ = _quad_means(f, xs, ys, rel_tol, abs_tol)
        ineq += [
            _tally("J_p(f(x),f(y)) >= R_f(x,y)", lhs, R, xs, ys, ">=", tol, qerr=rerr),
            _tally("R_f(x,y) >= f(A(x,y))", R, f_a, xs, ys, ">=", tol, qerr=rerr),
            _tally("f(A(x,y)) >= f(J_p(x,y))", f_a, f_j, xs, ys, ">=", tol),
        ]
        tols = _tolerances(tol, rel_tol, abs_tol)
    return CheckReport("alzer", pre, ineq, seed, tols, {"f": _name(f), "p": p, "part": part})


def _derivative(f, t):
    if isinstance(f, FunctionSpec):
        return f.derivative(t)
    from mnconvex.expr import richardson_derivative

    return richardson_derivative(f, t)


def _on_grid(func, xs):
    try:
        v = np.asarray(func(xs), dtype=np.float64)
        if v.shape == xs.shape:
            return v
    except TypeError:
        pass
    return np.array([func(float(t)) for t in xs], dtype=np.float64)


def chebyshev_check(
    f: Callable,
    g: Callable,
    w: Callable,
    a: float,
    b: float,
    tol: float = EQUALITY_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> CheckReport:
    """Chebyshev's integral inequality for weight ``w`` on [a, b].

    Co-monotone ``f``, ``g``: ``int wf * int wg <= int w * int wfg``;
    oppositely monotone: the reverse.  The margin is normalised by
    ``(int w)^2 * max|f| * max|g|``.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("need a < b")
    xs = np.linspace(a, b, PRECONDITION_GRID)
    fv, gv, wv = _on_grid(f, xs), _on_grid(g, xs), _on_grid(w, xs)
    mf, mg = classify_values(xs, fv, tol), classify_values(xs, gv, tol)
    up = {Monotonicity.INCREASING, Monotonicity.CONSTANT}
    down = {Monotonicity.DECREASING, Monotonicity.CONSTANT}
    same = (mf.trend in up and mg.trend in up) or (mf.trend in down and mg.trend in down)
    opposite = (mf.trend in up and mg.trend in down) or (mf.trend in down and mg.trend in up)
    pre = [
        Precondition("f monotone", mf.trend is not Monotonicity.NEITHER, _trend_verdict(mf, xs.size)),
        Precondition("g monotone", mg.trend is not Monotonicity.NEITHER, _trend_verdict(mg, xs.size)),
        Precondition("w positive", bool(np.all(wv > 0)), detail=f"min w on grid = {float(wv.min())!r}"),
    ]

    def quad(h):
        return integrate(h, a, b, rel_tol, abs_tol)

    qw = quad(w)
    qwf = quad(lambda t: _on_grid(w, t) * _on_grid(f, t))
    qwg = quad(lambda t: _on_grid(w, t) * _on_grid(g, t))
    qwfg = quad(lambda t: _on_grid(w, t) * _on_grid(f, t) * _on_grid(g, t))
    lhs = qwf.value * qwg.value
    rhs = qw.value * qwfg.value
    qerr = (
        abs(qwf.value) * qwg.error_estimate
        + abs(qwg.value) * qwf.error_estimate
        + abs(qw.value) * qwfg.error_estimate
        + abs(qwfg.value) * qw.error_estimate
    )
    sf = float(np.max(np.abs(fv))) or 1.0
    sg = float(np.max(np.abs(gv))) or 1.0
    scale = qw.value**2 * sf * sg
    if not scale > 0:
        scale = 1.0
    relation = ">=" if (opposite and not same) else "<="
    desc = "int wf * int wg " + relation + " int w * int wfg"
    ineq = [
        _tally(desc, [lhs], [rhs], [a], [b], relation, tol, qerr=[qerr], scale=[scale]),
    ]
    params = {"a": a, "b": b, "f": _name(f), "g": _name(g), "w": _name(w)}
    report = CheckReport("chebyshev", pre, ineq, None, _tolerances(tol, rel_tol, abs_tol), params)
    report.params["integrals"] = {"w": qw.value, "wf": qwf.value, "wg": qwg.value, "wfg": qwfg.value}
    return report


def jensen_check(
    f,
    phi: Callable,
    a: float,
    b: float,
    tol: float = EQUALITY_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> CheckReport:
    """Integral Jensen: ``f(avg phi) <= avg f(phi)`` for convex ``f``.

    The direction follows the convexity verdict of ``f`` on the range of
    ``phi``; concave ``f`` reverses it and affine ``f`` must give equality.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("need a < b")
    ts = np.linspace(a, b, PRECONDITION_GRID)
    pv = _on_grid(phi, ts)
    lo, hi = float(pv.min()), float(pv.max())
    verdict = None
    if hi > lo:
        from mnconvex.convexity import _derivative_robust

        zs = np.linspace(lo, hi, PRECONDITION_GRID + 2)[1:-1]
        try:
            fp = _derivative_robust(f, zs)
            ok = np.isfinite(fp)
            if ok.sum() < 0.99 * zs.size:
                verdict = Verdict(Outcome.INCONCLUSIVE, samples_used=int(zs.size), note="derivative failed")
            else:
                verdict = _trend_verdict(classify_values(zs[ok], fp[ok], tol), int(ok.sum()))
        except (ExprError, ArithmeticError, ValueError) as exc:
            verdict = Verdict(Outcome.INCONCLUSIVE, note=str(exc))
    else:
        verdict = Verdict(Outcome.BOTH, note="phi is constant")
    if verdict.outcome is Outcome.INCONCLUSIVE:
        pre = [Precondition("f convex or concave on the range of phi", None, verdict)]
    else:
        pre = [Precondition("f convex or concave on the range of phi", verdict.convex or verdict.concave, verdict)]

    qphi = integrate(phi, a, b, rel_tol, abs_tol)
    qfphi = integrate(lambda t: _on_grid(f, _on_grid(phi, t)), a, b, rel_tol, abs_tol)
    width = b - a
    m_phi = qphi.value / width
    f_mean = float(_on_grid(f, np.array([m_phi]))[0])
    mean_f = qfphi.value / width
    try:
        slope = abs(float(_derivative(f, m_phi)))
    except (ExprError, ArithmeticError, ValueError):
        slope = 0.0
    qerr = slope * qphi.error_estimate / width + qfphi.error_estimate / width
    relation = ">=" if verdict.outcome is Outcome.CONCAVE else "<="
    desc = "f(avg phi) " + relation + " avg f(phi)"
    ineq = [_tally(desc, [f_mean], [mean_f], [a], [b], relation, tol, qerr=[qerr])]
    params = {"a": a, "b": b, "f": _name(f), "phi": _name(phi)}
    return CheckReport("jensen", pre, ineq, None, _tolerances(tol, rel_tol, abs_tol), params)


def _separated(xs, ys):
    return np.abs(np.log(xs) - np.log(ys)) >= STRICT_SEPARATION


def mean_chain(pairs, tol: float = EQUALITY_TOL, seed=None) -> CheckReport:
    """``L <= I <= A``, strict for well separated pairs."""
    xs, ys, _, seed = _pairs(pairs, seed)
    L = evaluate_many(LOGARITHMIC, xs, ys)
    I = evaluate_many(IDENTRIC, xs, ys)
    A = evaluate_many(ARITHMETIC, xs, ys)
    sep = _separated(xs, ys)
    ineq = [
        _tally("L(x,y) <= I(x,y)", L, I, xs, ys, "<=", tol, strict_mask=sep),
        _tally("I(x,y) <= A(x,y)", I, A, xs, ys, "<=", tol, strict_mask=sep),
    ]
    return CheckReport("chain", [], ineq, seed, _tolerances(tol))


def default_p_grid() -> list[float]:
    return [(i - 50) / 10 for i in range(101)]


def alzer_monotone(pairs, p_grid: Sequence[float] | None = None, tol: float = EQUALITY_TOL, seed=None) -> CheckReport:
    """``p -> J_p(x, y)`` increasing across adjacent grid values.

    The grid may contain 0 and -1, where the continuous extensions
    ``L`` and ``G^2/L`` are used.  Strictness is required for well
    separated pairs.
    """
    xs, ys, _, seed = _pairs(pairs, seed)
    ps = sorted(set(float(p) for p in (default_p_grid() if p_grid is None else p_grid)))
    if len(ps) < 2:
        raise ValueError("p grid needs at least two values")
    values = [evaluate_many(alzer(p), xs, ys) for p in ps]
    lo = np.concatenate(values[:-1])
    hi = np.concatenate(values[1:])
    n = len(ps) - 1
    X = np.tile(xs, n)
    Y = np.tile(ys, n)
    sep = np.tile(_separated(xs, ys), n)
    ineq = [_tally("J_p1(x,y) < J_p2(x,y) for adjacent p1 < p2", lo, hi, X, Y, "<=", tol, strict_mask=sep)]
    return CheckReport("alzer-mono", [], ineq, seed, _tolerances(tol), {"p_grid": ps})


def ll_al_check(f, pairs, tol: float = EQUALITY_TOL, profile: str | None = None, seed=None) -> CheckReport:
    """LL- and AL-convexity of an increasing log-convex ``f``.

    Convex profile: ``f(L(x,y)) <= L(f(x),f(y))`` and
    ``f(A(x,y)) <= L(f(x),f(y))``; the concave profile reverses both.  By
    default the profile follows the log-convexity verdict (log-affine
    functions count as log-convex).
    """
    xs, ys, iv, seed = _pairs(pairs, seed)
    fx, fy = _fvals(f, xs), _fvals(f, ys)
    if np.any(fx <= 0) or np.any(fy <= 0):
        raise ValueError("LL/AL check needs f > 0 on the sampled pairs")
    log_pre = _log_convex_pre(f, iv, "convex", tol)
    if profile is None:
        v = log_pre.verdict
        profile = "concave" if (v is not None and v.outcome is Outcome.CONCAVE) else "convex"
    if profile not in ("convex", "concave"):
        raise ValueError("profile must be 'convex' or 'concave'")
    if profile == "concave":
        log_pre = _log_convex_pre(f, iv, "concave", tol)
    pre = [_monotone_pre("f increasing", f, iv, "increasing", tol), log_pre]
    rhs = evaluate_many(LOGARITHMIC, fx, fy)
    f_l = _fvals(f, evaluate_many(LOGARITHMIC, xs, ys))
    f_a = _fvals(f, evaluate_many(ARITHMETIC, xs, ys))
    rel = "<=" if profile == "convex" else ">="
    proved = profile == "convex"
    ineq = [
        _tally(f"f(L(x,y)) {rel} L(f(x),f(y))", f_l, rhs, xs, ys, rel, tol, proved=proved),
        _tally(f"f(A(x,y)) {rel} L(f(x),f(y))", f_a, rhs, xs, ys, rel, tol, proved=proved),
    ]
    return CheckReport("ll-al", pre, ineq, seed, _tolerances(tol), {"f": _name(f), "profile": profile})


# -- batch driver --------------------------------------------------------------------

SUITES = ("ebanks", "identric", "alzer", "chebyshev", "jensen", "chain", "alzer-mono", "ll-al")


def _plan_for(plan: IntervalSpec, params: dict) -> IntervalSpec:
    if "lo" in params or "hi" in params or "samples" in params:
        return IntervalSpec(
            params.get("lo", plan.lo),
            params.get("hi", plan.hi),
            params.get("samples", plan.samples),
            plan.sampling,
            plan.seed,
        )
    return plan


def _identity(t):
    return t


def _one(t):
    return np.ones_like(np.asarray(t, dtype=np.float64))


def run_suite(theorem: str, f, params: dict, plan: IntervalSpec) -> CheckReport:
    params = dict(params or {})
    pl = _plan_for(plan, params)
    tol = params.get("tol", EQUALITY_TOL)
    if theorem == "ebanks":
        return ebanks_check(f, pl, tol)
    if theorem == "identric":
        return identric_sandwich(f, pl, params.get("profile", "lower"), tol)
    if theorem == "alzer":
        p = params.get("p", 1.0)
        part = params.get("part", "one" if p <= 1 else "two")
        return alzer_sandwich(f, p, pl, part, tol)
    if theorem == "chebyshev":
        g = params.get("g", f)
        w = params.get("w", _one)
        return chebyshev_check(f, g, w, params.get("a", pl.lo), params.get("b", pl.hi), tol)
    if theorem == "jensen":
        phi = params.get("phi", _identity)
        return jensen_check(f, phi, params.get("a", pl.lo), params.get("b", pl.hi), tol)
    if theorem == "chain":
        return mean_chain(pl, tol)
    if theorem == "alzer-mono":
        return alzer_monotone(pl, params.get("p_grid"), tol)
    if theorem == "ll-al":
        return ll_al_check(f, pl, tol, params.get("profile"))
    raise ValueError(f"unknown theorem id {theorem!r}; choose from {', '.join(SUITES)}")


def audit_all(catalog, plan: IntervalSpec) -> list[CheckReport]:
    """Run every ``(theorem id, f, params)`` entry over ``plan``.

    Failures inside one entry are recorded on its report rather than raised.
    Reports come back in catalog order.
    """
    reports = []
    for theorem, f, params in catalog:
        try:
            reports.append(run_suite(theorem, f, params, plan))
        except (ExprError, ArithmeticError, ValueError, QuadratureError) as exc:
            reports.append(
                CheckReport(
                    str(theorem),
                    seed=plan.seed,
                    params={"f": _name(f) if f is not None else None, **_plain(params)},
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return reports


def _plain(params):
    return {k: v for k, v in (params or {}).items() if isinstance(v, (int, float, str, bool, list))}


def default_catalog() -> list:
    """Cases whose hypotheses hold, so every proved inequality must pass."""
    sq = FunctionSpec.parse("x^2")
    ex = FunctionSpec.parse("exp(x)")
    entries = [
        ("ebanks", sq, {}),
        ("ebanks", ex, {"hi": 20.0}),
        ("ebanks", FunctionSpec.parse("x^3 + x"), {}),
        ("ebanks", FunctionSpec.parse("x*exp(x)"), {"hi": 20.0}),
        ("identric", ex, {"lo": 0.1, "hi": 5.0}),
        ("identric", FunctionSpec.parse("exp(x^2)"), {"lo": 0.1, "hi": 5.0}),
        ("alzer", sq, {"p": 0.5}),
        ("alzer", sq, {"p": 1.0}),
        ("alzer", ex, {"p": 0.0, "hi": 20.0}),
        ("alzer", ex, {"p": 0.5, "hi": 20.0}),
        ("alzer", ex, {"p": 1.0, "hi": 20.0}),
        ("chebyshev", sq, {"a": 0.5, "b": 3.0}),
        ("jensen", sq, {"a": 0.5, "b": 3.0}),
        ("chain", None, {}),
        ("alzer-mono", None, {}),
        ("ll-al", ex, {"hi": 20.0}),
    ]
    return entries
