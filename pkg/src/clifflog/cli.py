"""``clifflog`` command line.

Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
3 domain error (no logarithm, singular division, ...).  The report goes to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import functions as fn
from .checks import SUITES, residual, run_suite
from .core import Multivector, Signature, format_mv, gp, max_abs_diff, scale
from .errors import BasisOutOfDimension, CliffordError, LexError, NoLogarithm, NoSquareRoot, ParseError
from .parser import Call, Evaluation, eval_ast, parse, tokenize
from .sampling import uniform
from .series import SeriesConfig, exp_series, log_series, spectral_radius

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
_USAGE_ERRORS = (LexError, ParseError, BasisOutOfDimension)
BENCH_SEED = 0


@dataclass
class CliReport:
    command: str
    algebra: str
    input: str
    result: dict | None = None
    sector: dict | None = None
    residual: float | None = None
    timing: dict | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "algebra": self.algebra,
            "input": self.input,
            "result": self.result,
            "sector": self.sector,
            "residual": self.residual,
            "timing": self.timing,
        }
        out.update(self.extra)
        return out


# --------------------------------------------------------------------------
# JSON with 17 significant digits

def _json_value(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return "null"
        text = "%.17g" % v
        return text if any(c in text for c in ".en") else text + ".0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {_json_value(x)}"
                               for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def to_json(report: CliReport) -> str:
    return _json_value(report.as_dict())


# --------------------------------------------------------------------------
# payload helpers

def _coeffs(x: Multivector | None):
    return None if x is None else [float(c) for c in x.coeffs]


def _sector(x: Multivector) -> dict:
    sc = fn.classify_log(x)
    return {
        "tag": sc.tag.value,
        "qsq": sc.norms.qsq,
        "det": sc.norms.det,
        "seminormQ": sc.norms.seminormQ,
        "seminormB": sc.norms.seminormB,
    }


def _mv_payload(kind: str, x: Multivector | None, family=None, axis=None) -> dict:
    return {"kind": kind, "coeffs": _coeffs(x), "family": family, "axis": _coeffs(axis)}


class _DomainFailure(Exception):
    def __init__(self, message: str, report: CliReport):
        super().__init__(message)
        self.report = report


def _call_argument(ast, sig: Signature) -> tuple[Multivector | None, Evaluation | None]:
    """Value of the single argument when the whole expression is a call."""
    if isinstance(ast, Call):
        inner = eval_ast(ast.args[0], sig)
        v = inner.value
        if isinstance(v, Multivector):
            return v, inner
        return None, inner
    return None, None


def _as_value(ev: Evaluation) -> Multivector:
    v = ev.value
    if isinstance(v, Multivector):
        return v
    if isinstance(v, fn.LogResult):
        if v.principal is None:
            raise NoLogarithm(v.family or f"logarithm is {v.kind.value}")
        return v.principal
    if not v.isolated:
        raise NoSquareRoot("no real square root")
    return v.isolated[0]


# --------------------------------------------------------------------------
# commands

def cmd_eval(sig: Signature, expr: str, k: int = 0, f1: float = 0.0, f2: float = 0.0) -> CliReport:
    ast = parse(tokenize(expr))
    ev = eval_ast(ast, sig)
    arg, _ = _call_argument(ast, sig)
    rep = CliReport("eval", sig.tag, expr)
    value = ev.value
    notes = list(ev.notes)

    if isinstance(value, Multivector):
        rep.result = _mv_payload("Multivector", value)
        rep.sector = _sector(arg if arg is not None else value)
        if isinstance(ast, Call) and ast.name == "exp" and arg is not None:
            back = fn.log(value)
            if back.principal is not None:
                # exp is many-to-one; compare exp(log(exp A)) with exp A instead
                rep.residual = residual(fn.exp(back.principal), value)
    elif isinstance(value, fn.LogResult):
        rep.sector = _sector(arg)
        r = value
        if r.kind is fn.LogKind.NO_SOLUTION:
            rep.result = _mv_payload(r.kind.value, None, r.family)
            raise _DomainFailure(r.family, rep)
        if r.kind is fn.LogKind.ASYMPTOTIC:
            finite, direction = r.epsilon_form
            eps = 1e-8
            approx = fn.log_asymptotic_eval(r, eps)
            rep.result = _mv_payload(r.kind.value, finite, r.family, direction)
            rep.residual = residual(fn.exp(approx), arg)
            notes.append(f"residual measured with log(0+) replaced by log({eps:g})")
            rep.extra["epsilon_form"] = {"finite": _coeffs(finite), "direction": _coeffs(direction)}
        else:
            chosen = fn.log_eval(r, k, f1, f2)
            axis = fn.free_axis(sig, f1, f2) if r.free_axis else r.axis
            rep.result = _mv_payload(r.kind.value, chosen, r.family, axis)
            rep.residual = residual(fn.exp(chosen), arg)
            rep.extra["principal"] = _coeffs(r.principal)
            rep.extra["branch"] = {"k": k, "f1": f1, "f2": f2}
    else:
        rep.sector = _sector(arg)
        roots = value.isolated
        rep.result = _mv_payload("Roots", roots[0] if roots else None,
                                 "; ".join(f.describe() for f in value.families) or None)
        rep.extra["roots"] = [_coeffs(r) for r in roots]
        if roots:
            rep.residual = max(residual(gp(r, r), arg) for r in roots)
        if not roots and not value.families:
            raise _DomainFailure("no real square root", rep)
    rep.extra["notes"] = notes
    return rep


def cmd_classify(sig: Signature, expr: str) -> CliReport:
    ev = eval_ast(parse(tokenize(expr)), sig)
    x = _as_value(ev)
    rep = CliReport("classify", sig.tag, expr)
    rep.result = _mv_payload("Classification", x)
    rep.sector = _sector(x)
    return rep


def cmd_roots(sig: Signature, expr: str) -> CliReport:
    ev = eval_ast(parse(tokenize(expr)), sig)
    x = _as_value(ev)
    res = fn.sqrt_all(x)
    rep = CliReport("roots", sig.tag, expr)
    rep.sector = _sector(x)
    rep.result = _mv_payload("Roots", res.isolated[0] if res.isolated else None,
                             "; ".join(f.describe() for f in res.families) or None)
    rows = [{"coeffs": _coeffs(r), "residual": residual(gp(r, r), x)} for r in res.isolated]
    rep.extra["roots"] = rows
    rep.extra["families"] = [{"form": f.describe(), "domain": f.domain} for f in res.families]
    rep.residual = max((row["residual"] for row in rows), default=None)
    return rep


def cmd_check(sig: Signature, suite: str, samples: int, seed: int, tol: float | None) -> CliReport:
    sr = run_suite(suite, sig, samples, seed, tol)
    rep = CliReport("check", sig.tag, suite)
    rep.result = {"kind": "Passed" if sr.passed else "Failed", "coeffs": None, "family": None, "axis": None}
    rep.residual = max(sr.max_residual.values(), default=0.0)
    rep.extra["report"] = sr.as_dict()
    return rep


def _bench_inputs(sig: Signature, op: str, samples: int, rng: np.random.Generator) -> list[Multivector]:
    if op == "exp":
        return [uniform(sig, rng, bound=1.0) for _ in range(samples)]
    out = []
    while len(out) < samples:
        x = uniform(sig, rng, bound=1.5)
        if fn.classify_log(x).tag.has_finite_log:
            out.append(x)
    return out


def _closed(op: str):
    if op == "exp":
        return fn.exp
    if op == "log":
        return lambda x: fn.log(x).principal
    return lambda x: fn.sqrt_explog(x)[0]


def _series(op: str, cfg: SeriesConfig):
    if op == "exp":
        return lambda x: exp_series(x, cfg)
    if op == "log":
        return lambda x: log_series(x, cfg)
    return lambda x: exp_series(scale(log_series(x, cfg), 0.5), cfg)


def _time_per_op(f, xs: list[Multivector]) -> tuple[float, list[Multivector]]:
    t0 = time.perf_counter_ns()
    out = [f(x) for x in xs]
    elapsed = time.perf_counter_ns() - t0
    return (elapsed / len(xs) if xs else 0.0), out


def cmd_bench(sig: Signature, op: str, samples: int, terms: int, seed: int, timing: bool = True) -> CliReport:
    cfg = SeriesConfig(terms=terms)
    xs = _bench_inputs(sig, op, samples, np.random.default_rng(seed))
    in_domain = xs if op == "exp" else [x for x in xs if spectral_radius(x - 1.0) < 1.0]
    skipped = len(xs) - len(in_domain)

    ns_closed, _ = _time_per_op(_closed(op), xs)
    ref = [_closed(op)(x) for x in in_domain]
    ns_series, approx = _time_per_op(_series(op, cfg), in_domain)
    err = max((max_abs_diff(a, b) for a, b in zip(approx, ref)), default=0.0)

    def ns(v: float):
        return round(v, 1) if timing else 0.0

    rows = [
        {"impl": "closed", "terms": 0, "ns_per_op": ns(ns_closed), "max_abs_err": 0.0},
        {"impl": "series", "terms": terms, "ns_per_op": ns(ns_series), "max_abs_err": err},
    ]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["impl", "terms", "ns_per_op", "max_abs_err"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "max_abs_err": "%.17g" % row["max_abs_err"]})

    rep = CliReport("bench", sig.tag, op)
    rep.result = {"kind": "Benchmark", "coeffs": None, "family": None, "axis": None}
    rep.residual = err
    rep.timing = {"rows": rows, "samples": len(xs), "series_samples": len(in_domain),
                  "skipped": skipped, "seed": seed}
    rep.extra["csv"] = buf.getvalue()
    return rep


# --------------------------------------------------------------------------
# text rendering

def _render_text(rep: CliReport) -> str:
    lines: list[str] = []
    res = rep.result or {}
    if rep.command == "bench":
        return rep.extra["csv"] + f"# samples={rep.timing['samples']} series_samples={rep.timing['series_samples']} skipped={rep.timing['skipped']}\n"
    if rep.command == "check":
        r = rep.extra["report"]
        lines.append(f"{r['suite']} on {rep.algebra}: {'PASS' if r['passed'] else 'FAIL'} "
                     f"({r['samples']} samples, seed {r['seed']}, tol {r['tol']:g})")
        for key, c in r["counts"].items():
            lines.append(f"  {key}: {c['passed']}/{c['total']}")
        for key, v in r["max_residual"].items():
            lines.append(f"  max residual {key}: {v:.3e}")
        for f in r["failures"]:
            lines.append(f"  counterexample {f['check']} #{f['index']} seed {f['seed']}: "
                         f"coeffs {f['coeffs']} residual {f['residual']:.3e}")
        return "\n".join(lines) + "\n"
    if rep.sector:
        s = rep.sector
        if rep.command == "classify":
            lines.append(s["tag"])
            lines.append(f"qsq = {s['qsq']!r}")
            lines.append(f"det = {s['det']!r}")
            lines.append(f"seminormQ = {s['seminormQ']!r}")
            lines.append(f"seminormB = {s['seminormB']!r}")
            return "\n".join(lines) + "\n"
        lines.append(f"sector: {s['tag']} (qsq = {s['qsq']!r}, det = {s['det']!r})")
    if rep.command == "roots":
        for row in rep.extra["roots"]:
            lines.append(f"root: {format_mv(Multivector(Signature.from_tag(rep.algebra), *row['coeffs']))}"
                         f"   |r^2 - B| = {row['residual']:.3e}")
        if not rep.extra["roots"]:
            lines.append("no isolated real roots")
        for fam in rep.extra["families"]:
            lines.append(f"family: {fam['form']}   domain: {fam['domain']}")
        return "\n".join(lines) + "\n"
    sig = Signature.from_tag(rep.algebra)
    if res.get("coeffs") is not None:
        lines.append(f"{res['kind']}: {format_mv(Multivector(sig, *res['coeffs']))}")
    elif res:
        lines.append(res["kind"])
    if res.get("family"):
        lines.append(f"family: {res['family']}")
    for c in rep.extra.get("roots", [])[1:]:
        lines.append(f"also: {format_mv(Multivector(sig, *c))}")
    if rep.residual is not None:
        lines.append(f"residual: {rep.residual:.3e}")
    for note in rep.extra.get("notes", []):
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# argument parsing

def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


def _algebra(text: str) -> Signature:
    try:
        return Signature.from_tag(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _default_seed() -> int | None:
    raw = os.environ.get("CLIFFLOG_SEED")
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"clifflog: CLIFFLOG_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clifflog", description=(
        "Closed-form exp, log and sqrt of multivectors in the low-dimensional "
        "Clifford algebras cl01, cl10, cl02, cl11 and cl20."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--algebra", type=_algebra, required=True,
                        help="one of cl01, cl10, cl02, cl11, cl20")
        sp.add_argument("--json", action="store_true", help="print a JSON report instead of text")

    e = sub.add_parser("eval", help="evaluate an expression")
    common(e)
    e.add_argument("expr")
    e.add_argument("--k", type=int, default=0, help="winding number for multi-valued logs")
    e.add_argument("--f1", type=_finite_float, default=0.0, help="first free-axis parameter")
    e.add_argument("--f2", type=_finite_float, default=0.0, help="second free-axis parameter")

    c = sub.add_parser("classify", help="report the logarithm sector")
    common(c)
    c.add_argument("expr")

    r = sub.add_parser("roots", help="list all real square roots")
    common(r)
    r.add_argument("expr")

    k = sub.add_parser("check", help="run a randomized property suite")
    common(k)
    k.add_argument("suite", choices=SUITES)
    k.add_argument("--samples", type=_positive_int, default=1000)
    k.add_argument("--seed", type=int, default=None, help="defaults to $CLIFFLOG_SEED, then 0")
    k.add_argument("--tol", type=_finite_float, default=None, help="override the suite tolerance")

    b = sub.add_parser("bench", help="time closed forms against truncated series")
    common(b)
    b.add_argument("--op", choices=("exp", "log", "sqrt"), required=True)
    b.add_argument("--samples", type=_positive_int, default=10000)
    b.add_argument("--terms", type=_positive_int, default=20)
    b.add_argument("--seed", type=int, default=None, help=f"defaults to $CLIFFLOG_SEED, then {BENCH_SEED}")
    b.add_argument("--no-timing", action="store_true",
                   help="write 0 in the ns_per_op column so the output is byte-reproducible")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    sig: Signature = args.algebra
    seed = getattr(args, "seed", None)
    if seed is None and args.command in ("check", "bench"):
        try:
            env = _default_seed()
        except SystemExit as exc:
            print(exc, file=stderr)
            return EXIT_USAGE
        seed = env if env is not None else (BENCH_SEED if args.command == "bench" else 0)

    code = EXIT_OK
    try:
        if args.command == "eval":
            rep = cmd_eval(sig, args.expr, args.k, args.f1, args.f2)
        elif args.command == "classify":
            rep = cmd_classify(sig, args.expr)
        elif args.command == "roots":
            rep = cmd_roots(sig, args.expr)
        elif args.command == "check":
            rep = cmd_check(sig, args.suite, args.samples, seed, args.tol)
            if rep.result["kind"] != "Passed":
                code = EXIT_CHECK
        else:
            rep = cmd_bench(sig, args.op, args.samples, args.terms, seed, timing=not args.no_timing)
    except _USAGE_ERRORS as err:
        print(f"clifflog: parse error: {err}", file=stderr)
        return EXIT_USAGE
    except _DomainFailure as err:
        print(f"clifflog: {err}", file=stderr)
        if args.json:
            print(to_json(err.report), file=stdout)
        return EXIT_DOMAIN
    except CliffordError as err:
        print(f"clifflog: {err}", file=stderr)
        return EXIT_DOMAIN

    stdout.write(to_json(rep) + "\n" if args.json else _render_text(rep))
    return code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
