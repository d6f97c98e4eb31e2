"""Randomized property suites behind ``clifflog check`` and the acceptance tests.

Every residual is the largest coefficient difference divided by
``max(1, largest coefficient of the reference)``, so for the default
sampling box it is an absolute error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import functions as fn
from .core import (
    Involution,
    Multivector,
    Signature,
    add,
    det,
    gp,
    inverse,
    involute,
    max_abs_diff,
    mv,
    scale,
)
from .errors import SingularMultivector
from .sampling import stratified, uniform
from .series import SeriesConfig, exp_series, log_series, spectral_radius

SUITES = ("roundtrip", "involution", "product", "sqrt", "series")

DEFAULT_TOL = {
    "roundtrip": 1e-10,
    "involution": 1e-10,
    "product": 1e-10,
    "sqrt": 1e-10,
    "series": 1e-12,
}


def residual(value: Multivector, reference: Multivector) -> float:
    return max_abs_diff(value, reference) / max(1.0, reference.scale_magnitude())


@dataclass
class SuiteReport:
    suite: str
    algebra: str
    samples: int
    seed: int
    tol: float
    counts: dict[str, list[int]] = field(default_factory=dict)
    max_residual: dict[str, float] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, check: str, group: str, res: float, tol: float, index: int, x: Multivector) -> bool:
        key = f"{check}/{group}"
        ok = res <= tol
        tally = self.counts.setdefault(key, [0, 0])
        tally[1] += 1
        if ok:
            tally[0] += 1
        if res > self.max_residual.get(check, -1.0):
            self.max_residual[check] = res
        if not ok and len(self.failures) < 20:
            self.failures.append({
                "check": check, "group": group, "index": index, "seed": self.seed,
                "coeffs": list(x.coeffs), "residual": res, "tol": tol,
            })
        return ok

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "counts": {k: {"passed": v[0], "total": v[1]} for k, v in sorted(self.counts.items())},
            "max_residual": dict(sorted(self.max_residual.items())),
            "failures": self.failures,
        }


def _roundtrip(rep: SuiteReport, sig: Signature, rng: np.random.Generator, core_only: bool = False) -> None:
    tol = rep.tol
    branch_tol = 10 * tol
    for i, (sector, x) in enumerate(stratified(sig, rep.samples, rng, finite_only=True)):
        group = sector.value
        r = fn.log(x)
        rep.record("exp_log", group, residual(fn.exp(r.principal), x), tol, i, x)
        if core_only:
            if r.kind is fn.LogKind.WINDING and not r.free_axis:
                worst = max(residual(fn.exp(fn.log_eval(r, k)), x) for k in range(-3, 4))
                rep.record("branch", group, worst, branch_tol, i, x)
            continue
        if r.kind is fn.LogKind.WINDING:
            f1, f2 = (rng.uniform(-5, 5, 2) if r.free_axis else (0.0, 0.0))
            worst = max(residual(fn.exp(fn.log_eval(r, k, f1, f2)), x) for k in range(-3, 4))
            rep.record("branch", group, worst, branch_tol, i, x)
        elif r.kind is fn.LogKind.FREE_FAMILY:
            f1, f2 = rng.uniform(-5, 5, 2)
            worst = max(residual(fn.exp(fn.log_eval(r, k, f1, f2)), x) for k in range(-2, 3))
            rep.record("free_family", group, worst, branch_tol, i, x)
        try:
            inv = inverse(x)
        except SingularMultivector:
            continue
        rep.record("exp_neg_log", group, residual(fn.exp(scale(r.principal, -1.0)), inv), tol, i, x)


def _involution(rep: SuiteReport, sig: Signature, rng: np.random.Generator) -> None:
    for i in range(rep.samples):
        x = uniform(sig, rng)
        ex = fn.exp(x)
        for kind in Involution:
            res = residual(fn.exp(involute(x, kind)), involute(ex, kind))
            rep.record("exp_involute", kind.value, res, rep.tol, i, x)


def _product(rep: SuiteReport, sig: Signature, rng: np.random.Generator) -> None:
    tol = rep.tol
    for i in range(rep.samples):
        a = uniform(sig, rng)
        b = uniform(sig, rng)
        direct = gp(fn.exp(a), fn.exp(b))
        rep.record("exp_product", "random", residual(fn.exp_product(a, b), direct), tol, i, a)

        # b sharing a's 'vector' direction commutes with a
        c = add(mv(sig, float(rng.uniform(-3, 3))),
                scale(Multivector(sig, 0.0, a.a1, a.a2, a.a12), float(rng.uniform(-1, 1))))
        comm = max_abs_diff(gp(a, c), gp(c, a))
        if comm <= 1e-12:
            res = residual(fn.exp(add(a, c)), gp(fn.exp(a), fn.exp(c)))
            rep.record("commuting_sum", "collinear", res, 10 * tol, i, a)

        da, db = det(a), det(b)
        norm = max(1e-300, (a.scale_magnitude() * b.scale_magnitude()) ** 2)
        rep.record("det_multiplicative", "random", abs(det(gp(a, b)) - da * db) / norm, tol, i, a)


def _in_sqrt_domain(x: Multivector) -> bool:
    if x.sig is Signature.CL01:
        return not x.is_zero()
    if x.sig is Signature.CL10:
        return x.a0 > abs(x.a1)
    d = det(x)
    return d >= 0 and x.a0 + math.sqrt(d) > 0


def expected_root_count(x: Multivector) -> int | None:
    """Number of distinct isolated roots the closed formulas promise, where definite."""
    sig = x.sig
    if sig is Signature.CL10 and x.a0 > abs(x.a1) and x.a1 != 0:
        return 4
    if sig in (Signature.CL11, Signature.CL20):
        d = det(x)
        q = x.a0 * x.a0 - d
        if d > 0 and q > 0 and x.a0 > 0:
            return 4
        if d > 0 and q < 0:
            return 2
    if sig in (Signature.CL01, Signature.CL02) and (x.a1, x.a2, x.a12) != (0, 0, 0):
        return 2
    return None


def _sqrt(rep: SuiteReport, sig: Signature, rng: np.random.Generator) -> None:
    tol = rep.tol
    for i in range(rep.samples):
        x = uniform(sig, rng)
        while not _in_sqrt_domain(x):
            x = uniform(sig, rng)
        res = fn.sqrt_all(x)
        worst = max(residual(gp(r, r), x) for r in res.isolated) if res.isolated else math.inf
        rep.record("root_squared", "isolated", worst, tol, i, x)
        want = expected_root_count(x)
        if want is not None:
            rep.record("root_count", f"expect{want}", 0.0 if len(res.isolated) == want else math.inf, tol, i, x)
        if fn.classify_log(x).tag.has_finite_log:
            p, m = fn.sqrt_explog(x)
            # relative to the root size: near the NoSolution boundary roots grow like 1/sqrt(b0 + sqrt(det))
            miss = max(min(residual(r, c) for c in res.isolated) for r in (p, m))
            rep.record("explog_in_isolated", "finite_log", miss, 1e-9, i, x)
    # parametric families of sqrt(+1) and sqrt(-1)
    for target in (1.0, -1.0):
        fams = fn.sqrt_all(mv(sig, target)).families
        for fam in fams:
            one = mv(sig, target)
            for j in range(100):
                c1, c2 = rng.uniform(-3, 3, 2)
                while not fam.in_domain(c1, c2):
                    c1, c2 = rng.uniform(-3, 3, 2)
                worst = max(residual(gp(r, r), one) for r in
                            (fam.at(c1, c2, s_in, s_out) for s_in in (1, -1) for s_out in (1, -1)))
                rep.record("family_squared", f"sqrt({target:+g})", worst, tol, j, one)


def _series(rep: SuiteReport, sig: Signature, rng: np.random.Generator) -> None:
    tol = rep.tol
    exp_cfg = SeriesConfig(terms=30)
    log_cfg = SeriesConfig(terms=60)
    for i in range(rep.samples):
        x = uniform(sig, rng, bound=1.0)
        rep.record("exp_series", "unit_box", residual(exp_series(x, exp_cfg), fn.exp(x)), tol, i, x)
        dx = uniform(sig, rng, bound=0.3)
        while spectral_radius(dx) > 0.3:
            dx = uniform(sig, rng, bound=0.3)
        y = add(mv(sig, 1.0), dx)
        ref = fn.log(y).principal
        rep.record("log_series", "radius<=0.3", residual(log_series(y, log_cfg), ref), max(tol, 1e-10), i, y)


_RUNNERS = {
    "roundtrip": _roundtrip,
    "involution": _involution,
    "product": _product,
    "sqrt": _sqrt,
    "series": _series,
}


def roundtrip_core(sig: Signature, samples: int, seed: int, tol: float = 1e-10) -> SuiteReport:
    """exp(log x) = x on every sample plus the k in -3..3 windings of trig-sector samples."""
    rep = SuiteReport("roundtrip", sig.tag, samples, seed, tol)
    _roundtrip(rep, sig, _rng(seed, sig), core_only=True)
    return rep


def _rng(seed: int, sig: Signature) -> np.random.Generator:
    return np.random.default_rng([seed, list(Signature).index(sig)])


def run_suite(suite: str, sig: Signature, samples: int, seed: int, tol: float | None = None) -> SuiteReport:
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rep = SuiteReport(suite, sig.tag, samples, seed, DEFAULT_TOL[suite] if tol is None else tol)
    _RUNNERS[suite](rep, sig, _rng(seed, sig))
    return rep


# --------------------------------------------------------------------------
# vectorized exponential for exhaustive grids

def exp_arrays(sig: Signature, a0, a1, a2, a12):
    """Closed-form exp applied elementwise to coefficient arrays."""
    a0, a1, a2, a12 = (np.asarray(v, dtype=float) for v in (a0, a1, a2, a12))
    q = sig.sq1 * a1 * a1 + sig.sq2 * a2 * a2 + sig.sq12 * a12 * a12
    t = np.sqrt(np.abs(q))
    safe_t = np.where(t == 0, 1.0, t)
    c = np.where(q < 0, np.cos(t), np.cosh(t))
    s = np.where(t == 0, 1.0, np.where(q < 0, np.sin(t), np.sinh(t)) / safe_t)
    g = np.exp(a0)
    return g * c, g * s * a1, g * s * a2, g * s * a12


def grid_min_distance(sig: Signature, targets: list[Multivector],
                      lo: float = -10.0, hi: float = 10.0, step: float = 0.25) -> list[float]:
    """Smallest max-coefficient distance between exp(grid point) and each target."""
    axis = np.arange(lo, hi + step / 2, step)
    best = [math.inf] * len(targets)
    if sig.n == 1:
        g0, g1 = np.meshgrid(axis, axis, indexing="ij")
        e0, e1, _, _ = exp_arrays(sig, g0, g1, 0.0, 0.0)
        for j, t in enumerate(targets):
            best[j] = float(np.min(np.maximum(np.abs(e0 - t.a0), np.abs(e1 - t.a1))))
        return best
    g1, g2, g12 = np.meshgrid(axis, axis, axis, indexing="ij")
    with np.errstate(over="ignore", invalid="ignore"):
        c0, u1, u2, u12 = exp_arrays(sig, 0.0, g1, g2, g12)
        for a0 in axis:
            f = math.exp(a0)
            e0, e1, e2, e12 = f * c0, f * u1, f * u2, f * u12
            for j, t in enumerate(targets):
                d = np.maximum(np.maximum(np.abs(e0 - t.a0), np.abs(e1 - t.a1)),
                               np.maximum(np.abs(e2 - t.a2), np.abs(e12 - t.a12)))
                m = float(np.nanmin(d))
                if m < best[j]:
                    best[j] = m
    return best
