"""``mnconvex`` command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes:

    0   every inequality held / a verdict was reached
    1   at least one counterexample
    2   a precondition is unmet or a verdict is inconclusive
    64  usage error
    65  input or parse error
    70  numeric failure
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from mnconvex import expr as _expr
from mnconvex.convexity import (
    EQUALITY_TOL,
    Outcome,
    PQPair,
    PreconditionError,
    criterion_check,
    definitional_check,
    nine_case_check,
)
from mnconvex.expr import ExprDomainError, ExprError, FunctionSpec
from mnconvex.inequalities import SUITES, audit_all, default_catalog, run_suite
from mnconvex.means import MeanDomainError, MeanKind, PositivePair, evaluate
from mnconvex.quadrature import QuadratureError
from mnconvex.report import csv_summary, dumps, format_float, reports_to_json, verdict_to_dict
from mnconvex.sampling import IntervalSpec

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_UNMET = 2
EXIT_USAGE = 64
EXIT_INPUT = 65
EXIT_NUMERIC = 70


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _real(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer: {text!r}") from None
    return v & ((1 << 64) - 1)


def _count(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError("need at least 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mnconvex", description="Bivariate means, MN-convexity checks and inequality audits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    mean = sub.add_parser("mean", help="evaluate means")
    msub = mean.add_subparsers(dest="mean_command", required=True, parser_class=_Parser)
    ev = msub.add_parser("eval", help="one mean at one pair")
    ev.add_argument("--kind", required=True, help="A, G, H, L, I, E, J:<p> or M:<t>")
    ev.add_argument("--x", required=True, type=_real)
    ev.add_argument("--y", required=True, type=_real)
    ev.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    tb = msub.add_parser("table", help="several means at several pairs")
    tb.add_argument("--kinds", required=True, help="comma-separated mean kinds")
    tb.add_argument("--pairs", required=True, help="file with one 'x y' per line, or inline 'x y; x y'")
    tb.add_argument("--format", choices=("plain", "json", "csv"), default="csv")

    cv = sub.add_parser("convexity", help="MN-convexity verdicts")
    cv.add_argument("--f", required=True, help="expression in x")
    cv.add_argument("--m", required=True, help="argument-side mean")
    cv.add_argument("--n", required=True, help="value-side mean")
    cv.add_argument("--pq", help="criterion exponents p,q (default from the letters)")
    _plan_args(cv, samples_flag="--samples")
    cv.add_argument("--format", choices=("plain", "json"), default="json")

    vf = sub.add_parser("verify", help="audit inequality suites")
    vf.add_argument("--suite", required=True, choices=SUITES + ("all",))
    vf.add_argument("--f", default="x^2", help="expression in x (default x^2)")
    vf.add_argument("--p", type=_real, default=None, help="Alzer parameter")
    vf.add_argument("--profile", choices=("lower", "upper", "one", "two", "convex", "concave"))
    vf.add_argument("--g", help="second function for chebyshev (default: f)")
    vf.add_argument("--w", default="1", help="weight for chebyshev (default 1)")
    vf.add_argument("--phi", default="x", help="inner function for jensen (default x)")
    vf.add_argument("--a", type=_real, help="left end for chebyshev/jensen (default --lo)")
    vf.add_argument("--b", type=_real, help="right end for chebyshev/jensen (default --hi)")
    _plan_args(vf, samples_flag="--trials")
    vf.add_argument("--format", choices=("plain", "json", "csv"), default="json")
    return p


def _plan_args(p, samples_flag):
    p.add_argument("--lo", type=_real, default=1e-2)
    p.add_argument("--hi", type=_real, default=1e2)
    p.add_argument(samples_flag, dest="samples", type=_count, default=10_000)
    p.add_argument("--sampling", choices=("log-uniform", "uniform"), default="log-uniform")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--tol", type=_real, default=EQUALITY_TOL)


def _plan(args) -> IntervalSpec:
    try:
        return IntervalSpec(args.lo, args.hi, args.samples, args.sampling, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_f(text: str, flag: str = "--f") -> FunctionSpec:
    try:
        return FunctionSpec.parse(text)
    except ExprError as exc:
        raise InputError(_caret(flag, text, exc)) from None


def _caret(flag, text, exc):
    msg = f"{flag}: {exc}"
    offset = getattr(exc, "offset", None)
    if offset is None:
        return msg
    col = len(text.encode("utf-8")[:offset].decode("utf-8", "replace"))
    return f"{msg}\n  {text}\n  {' ' * col}^"


def _raw(text: str, flag: str):
    """A parsed expression without the positive-domain guard (for [a, b] with a <= 0)."""
    try:
        node = _expr.parse(text)
    except ExprError as exc:
        raise InputError(_caret(flag, text, exc)) from None

    def f(t):
        return _expr.evaluate(node, t)

    f.__name__ = text.strip()
    return f


def _kind(text: str) -> MeanKind:
    try:
        return MeanKind.parse(text)
    except ValueError as exc:
        raise InputError(f"bad mean kind: {exc}") from None


# -- subcommands ----------------------------------------------------------------------

def _mean_eval(args, out):
    kind = _kind(args.kind)
    try:
        pair = PositivePair.of(args.x, args.y)
    except MeanDomainError as exc:
        raise InputError(str(exc)) from None
    value = evaluate(kind, pair)
    if args.format == "json":
        out.write(dumps({"kind": str(kind), "x": pair.x, "y": pair.y, "value": value}) + "\n")
    elif args.format == "csv":
        out.write(f"kind,x,y,value\n{kind},{format_float(pair.x)},{format_float(pair.y)},{format_float(value)}\n")
    else:
        out.write(format_float(value) + "\n")
    return EXIT_OK


def _read_pairs(spec: str):
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = spec.split(";")
    pairs = []
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"--pairs entry {n}: expected 'x y', got {line!r}")
        try:
            pairs.append(PositivePair.of(float(parts[0]), float(parts[1])))
        except (ValueError, MeanDomainError) as exc:
            raise InputError(f"--pairs entry {n}: {exc}") from None
    if not pairs:
        raise InputError("--pairs holds no pairs")
    return pairs


def _mean_table(args, out):
    kinds = [_kind(k) for k in args.kinds.split(",") if k.strip()]
    if not kinds:
        raise InputError("--kinds is empty")
    pairs = _read_pairs(args.pairs)
    rows = [[evaluate(k, pr) for k in kinds] for pr in pairs]
    names = [str(k) for k in kinds]
    if args.format == "json":
        out.write(dumps([{"x": pr.x, "y": pr.y, **dict(zip(names, r))} for pr, r in zip(pairs, rows)]) + "\n")
    elif args.format == "csv":
        out.write(",".join(["x", "y"] + names) + "\n")
        for pr, r in zip(pairs, rows):
            out.write(",".join(format_float(v) for v in (pr.x, pr.y, *r)) + "\n")
    else:
        for pr, r in zip(pairs, rows):
            cells = "  ".join(f"{n}={format_float(v)}" for n, v in zip(names, r))
            out.write(f"({format_float(pr.x)}, {format_float(pr.y)})  {cells}\n")
    return EXIT_OK


def _pq(text):
    try:
        p, q = (float(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"--pq wants 'p,q', got {text!r}") from None
    return PQPair(p, q)


def _convexity(args, out):
    f = _parse_f(args.f)
    m, n = _kind(args.m), _kind(args.n)
    plan = _plan(args)
    try:
        definitional = definitional_check(f, m, n, plan, args.tol)
    except PreconditionError as exc:
        print(f"precondition unmet: {exc}", file=sys.stderr)
        return EXIT_UNMET
    criterion = None
    try:
        if args.pq:
            criterion = criterion_check(f, _pq(args.pq), plan, args.tol)
        else:
            criterion = nine_case_check(f, m, n, plan, args.tol)
    except PreconditionError as exc:
        print(f"criterion skipped: {exc}", file=sys.stderr)
    except ValueError as exc:
        if args.pq:
            raise
        print(f"criterion skipped: {exc}", file=sys.stderr)
    if args.format == "json":
        doc = {
            "f": f.name,
            "m": str(m),
            "n": str(n),
            "lo": plan.lo,
            "hi": plan.hi,
            "samples": plan.samples,
            "sampling": plan.sampling,
            "seed": plan.seed,
            "tol": args.tol,
            "definitional": verdict_to_dict(definitional),
            "criterion": verdict_to_dict(criterion),
        }
        out.write(dumps(doc) + "\n")
    else:
        out.write(f"definitional: {definitional.outcome.value}\n")
        out.write(f"criterion: {criterion.outcome.value if criterion else 'skipped'}\n")
        for w in definitional.witnesses:
            pts = ", ".join(format_float(t) for t in w.points)
            out.write(f"  not {w.violates} at ({pts}): lhs={format_float(w.lhs)} rhs={format_float(w.rhs)}\n")
    undecided = Outcome.INCONCLUSIVE in (definitional.outcome, criterion.outcome if criterion else None)
    disagree = criterion is not None and criterion.outcome is not definitional.outcome
    return EXIT_UNMET if undecided or disagree else EXIT_OK


def _verify(args, out):
    plan = _plan(args)
    if args.suite == "all":
        reports = audit_all(default_catalog(), plan)
    else:
        f = _parse_f(args.f)
        params = {"tol": args.tol}
        if args.p is not None:
            params["p"] = args.p
        if args.profile:
            key = "part" if args.suite == "alzer" else "profile"
            params[key] = args.profile
        if args.suite in ("chebyshev", "jensen"):
            f = _raw(args.f, "--f")
            params["a"] = args.lo if args.a is None else args.a
            params["b"] = args.hi if args.b is None else args.b
            params["g"] = _raw(args.g, "--g") if args.g else f
            params["w"] = _raw(args.w, "--w")
            params["phi"] = _raw(args.phi, "--phi")
        reports = [run_suite(args.suite, f, params, plan)]
    if args.format == "json":
        out.write(reports_to_json(reports))
    elif args.format == "csv":
        out.write(csv_summary(reports))
    else:
        out.write(_plain(reports))
    return _verify_status(reports)


def _plain(reports) -> str:
    lines = []
    for r in reports:
        head = r.name + "".join(f" {k}={v}" for k, v in r.params.items() if not isinstance(v, (dict, list)))
        lines.append(head)
        if r.error:
            lines.append(f"  error: {r.error}")
        for p in r.preconditions:
            state = {True: "met", False: "UNMET", None: "inconclusive"}[p.satisfied]
            lines.append(f"  precondition {p.name}: {state}")
        for i in r.inequalities:
            tag = "proved" if i.proved else "stated"
            mm = "n/a" if i.min_margin is None else format_float(i.min_margin)
            lines.append(
                f"  [{tag}] {i.description}: {i.failures} failures, {i.inconclusive} inconclusive"
                f" of {i.pairs_tested}; min margin {mm}"
            )
            if i.failures and i.worst_witness:
                w = i.worst_witness
                pts = ", ".join(format_float(t) for t in w.points)
                lines.append(f"    worst at ({pts}): lhs={format_float(w.lhs)} rhs={format_float(w.rhs)}")
    return "\n".join(lines) + "\n"


def _verify_status(reports) -> int:
    if any(r.error for r in reports):
        return EXIT_NUMERIC
    if any(r.failures for r in reports):
        return EXIT_COUNTEREXAMPLE
    if any(r.inconclusive or r.preconditions_met is not True for r in reports):
        return EXIT_UNMET
    return EXIT_OK


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    old = sys.stderr
    sys.stderr = err
    try:
        if args.command == "mean":
            return _mean_eval(args, out) if args.mean_command == "eval" else _mean_table(args, out)
        if args.command == "convexity":
            return _convexity(args, out)
        return _verify(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (QuadratureError, ExprDomainError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=err)
        return EXIT_NUMERIC
    except (ExprError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    finally:
        sys.stderr = old


def main(argv=None) -> int:
    with np.errstate(all="ignore"):
        return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
