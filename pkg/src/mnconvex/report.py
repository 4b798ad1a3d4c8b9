"""JSON and CSV serialization of reports and verdicts.

Floats are written with 17 significant digits (``%.17g``), which is
bit-faithful for IEEE doubles.  Non-finite floats become ``null`` and read
back as NaN.
"""
from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum

from mnconvex.convexity import Outcome, Verdict, Witness
from mnconvex.inequalities import CheckReport, EbanksFunctionals, InequalityResult, Precondition
from mnconvex.quadrature import QuadResult

__all__ = [
    "format_float",
    "dumps",
    "report_to_dict",
    "report_from_dict",
    "verdict_to_dict",
    "verdict_from_dict",
    "reports_to_json",
    "reports_from_json",
    "verdict_to_json",
    "csv_summary",
    "CSV_HEADER",
]


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def dumps(obj, indent: int = 2) -> str:
    """``json.dumps`` with 17-digit floats and stable key order."""
    out: list[str] = []
    _emit(obj, out, indent, 0)
    return "".join(out)


def _emit(obj, out, indent, level):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None or isinstance(obj, bool) or isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, Enum):
        out.append(json.dumps(obj.value, ensure_ascii=False))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj) if math.isfinite(obj) else "null")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            out.append(("," if i else "") + pad + json.dumps(str(k), ensure_ascii=False) + ": ")
            _emit(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[")
        for i, v in enumerate(obj):
            out.append(("," if i else "") + pad)
            _emit(v, out, indent, level + 1)
        out.append(end + "]")
    elif hasattr(obj, "item"):  # numpy scalar
        _emit(obj.item(), out, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _f(v):
    return math.nan if v is None else float(v)


def _opt_f(v):
    return None if v is None else float(v)


def witness_to_dict(w: Witness | None):
    if w is None:
        return None
    return {
        "points": [float(p) for p in w.points],
        "lhs": w.lhs,
        "rhs": w.rhs,
        "margin": w.margin,
        "violates": w.violates,
    }


def witness_from_dict(d):
    if d is None:
        return None
    return Witness(tuple(_f(p) for p in d["points"]), _f(d["lhs"]), _f(d["rhs"]), _f(d["margin"]), d["violates"])


def verdict_to_dict(v: Verdict | None):
    if v is None:
        return None
    return {
        "outcome": v.outcome.value,
        "witnesses": [witness_to_dict(w) for w in v.witnesses],
        "min_margin": v.min_margin,
        "samples_used": v.samples_used,
        "trend": v.trend,
        "note": v.note,
    }


def verdict_from_dict(d):
    if d is None:
        return None
    return Verdict(
        Outcome(d["outcome"]),
        tuple(witness_from_dict(w) for w in d["witnesses"]),
        _f(d["min_margin"]),
        int(d["samples_used"]),
        d.get("trend"),
        d.get("note"),
    )


def _quad_to_dict(q: QuadResult):
    return {"value": q.value, "error_estimate": q.error_estimate, "evaluations": q.evaluations}


def report_to_dict(r: CheckReport) -> dict:
    return {
        "name": r.name,
        "preconditions": [
            {"name": p.name, "satisfied": p.satisfied, "verdict": verdict_to_dict(p.verdict), "detail": p.detail}
            for p in r.preconditions
        ],
        "inequalities": [
            {
                "description": i.description,
                "proved": i.proved,
                "pairs_tested": i.pairs_tested,
                "failures": i.failures,
                "inconclusive": i.inconclusive,
                "min_margin": i.min_margin,
                "worst_witness": witness_to_dict(i.worst_witness),
            }
            for i in r.inequalities
        ],
        "seed": r.seed,
        "tolerances": dict(r.tolerances),
        "params": dict(r.params),
        "functionals": None
        if r.functionals is None
        else {
            "P": r.functionals.P,
            "R": r.functionals.R,
            "inner_mean": r.functionals.inner_mean,
            "quad": _quad_to_dict(r.functionals.quad),
        },
        "error": r.error,
    }


def report_from_dict(d: dict) -> CheckReport:
    fn = d.get("functionals")
    functionals = None
    if fn is not None:
        q = fn["quad"]
        functionals = EbanksFunctionals(
            _f(fn["P"]),
            _f(fn["R"]),
            _f(fn["inner_mean"]),
            QuadResult(_f(q["value"]), _f(q["error_estimate"]), int(q["evaluations"])),
        )
    return CheckReport(
        d["name"],
        [Precondition(p["name"], p["satisfied"], verdict_from_dict(p["verdict"]), p.get("detail")) for p in d["preconditions"]],
        [
            InequalityResult(
                i["description"],
                int(i["pairs_tested"]),
                int(i["failures"]),
                _opt_f(i["min_margin"]),
                witness_from_dict(i["worst_witness"]),
                int(i["inconclusive"]),
                bool(i["proved"]),
            )
            for i in d["inequalities"]
        ],
        d.get("seed"),
        dict(d.get("tolerances", {})),
        dict(d.get("params", {})),
        functionals,
        d.get("error"),
    )


def reports_to_json(reports) -> str:
    return dumps([report_to_dict(r) for r in reports]) + "\n"


def reports_from_json(text: str) -> list[CheckReport]:
    return [report_from_dict(d) for d in json.loads(text)]


def verdict_to_json(v: Verdict, extra: dict | None = None) -> str:
    d = verdict_to_dict(v)
    if extra:
        d = {**extra, **d}
    return dumps(d) + "\n"


CSV_HEADER = (
    "report",
    "description",
    "proved",
    "pairs_tested",
    "failures",
    "inconclusive",
    "min_margin",
    "worst_x",
    "worst_y",
    "worst_lhs",
    "worst_rhs",
)


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v) if math.isfinite(v) else ""
    return str(v)


def csv_summary(reports) -> str:
    """One row per inequality, with a header row."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        for i in r.inequalities:
            ww = i.worst_witness
            pts = list(ww.points) if ww is not None else [None, None]
            w.writerow(
                _cell(v)
                for v in (
                    r.name,
                    i.description,
                    i.proved,
                    i.pairs_tested,
                    i.failures,
                    i.inconclusive,
                    i.min_margin,
                    pts[0],
                    pts[1],
                    ww.lhs if ww else None,
                    ww.rhs if ww else None,
                )
            )
    return buf.getvalue()
