"""Closed-form exponential, logarithm and square roots in Cl(0,1), Cl(1,0), Cl(0,2), Cl(1,1), Cl(2,0).

All formulas work through the split ``B = b0 + B'`` where ``B' = b1 e1 + b2 e2 + b12 e12``
squares to a real number.  The sign of that square selects trigonometric,
hyperbolic or nilpotent behaviour.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .core import (
    Multivector,
    NormReport,
    Signature,
    add,
    commutator,
    det,
    gp,
    max_abs_diff,
    mv,
    norms,
    qvec_square,
    scale,
)
from .errors import (
    DomainViolation,
    NoLogarithm,
    SignatureMismatch,
    UnsupportedKind,
    UnsupportedSignature,
    ZeroArgument,
)

TWO_PI = 2.0 * math.pi

# classification bands, relative to the largest coefficient
QSQ_REL_TOL = 1e-10
DET_REL_TOL = 1e-10
VEC_REL_TOL = 1e-12


class Sector(enum.Enum):
    TRIG = "TrigSector"
    HYPERBOLIC = "HyperbolicSector"
    LIGHT_CONE = "LightCone"
    NULL_QVECTOR = "NullQVector"
    NEGATIVE_SCALAR = "NegativeScalarAxis"
    POSITIVE_SCALAR = "PositiveScalarAxis"
    NO_SOLUTION = "NoSolution"
    ZERO = "ZeroMV"

    @property
    def has_finite_log(self) -> bool:
        return self in _FINITE_LOG


_FINITE_LOG = frozenset({
    Sector.TRIG, Sector.HYPERBOLIC, Sector.NULL_QVECTOR,
    Sector.NEGATIVE_SCALAR, Sector.POSITIVE_SCALAR,
})


@dataclass(frozen=True)
class SectorClass:
    tag: Sector
    norms: NormReport


class LogKind(enum.Enum):
    PRINCIPAL = "Principal"
    WINDING = "Winding"
    FREE_FAMILY = "FreeFamily"
    ASYMPTOTIC = "Asymptotic"
    NO_SOLUTION = "NoSolution"


@dataclass(frozen=True)
class LogResult:
    """Principal logarithm plus the structure of the other solutions.

    ``axis`` is the unit 'vector' added in multiples of 2*pi for a winding
    result.  When ``free_axis`` is set the axis is itself arbitrary and
    :func:`log_eval` builds it from ``(f1, f2)``.  ``epsilon_form`` holds
    ``(finite, direction)`` with ``log B = finite + log(0+) * direction``.
    """

    kind: LogKind
    sector: SectorClass
    sig: Signature
    principal: Multivector | None = None
    axis: Multivector | None = None
    free_axis: bool = False
    scalar_log: float | None = None
    epsilon_form: tuple[Multivector, Multivector] | None = None
    family: str | None = None


@dataclass(frozen=True)
class RootFamily:
    """Continuum ``outer * sqrt(magnitude) * (c1*E1 + c2*E2 + inner*sqrt(R)*E3)``.

    ``R = const + k1*c1**2 + k2*c2**2`` must be non-negative.  E1, E2, E3 are
    e1, e2, e12 in that order.
    """

    sig: Signature
    target: int
    magnitude: float
    const: float
    k1: float
    k2: float

    def radicand(self, c1: float, c2: float) -> float:
        return self.const + self.k1 * c1 * c1 + self.k2 * c2 * c2

    def in_domain(self, c1: float, c2: float) -> bool:
        return math.isfinite(c1) and math.isfinite(c2) and self.radicand(c1, c2) >= 0.0

    def at(self, c1: float, c2: float, inner: int = 1, outer: int = 1) -> Multivector:
        if not self.in_domain(c1, c2):
            raise DomainViolation(f"({c1}, {c2}) lies outside the family domain {self.domain}")
        f = outer * math.sqrt(self.magnitude)
        r = inner * math.sqrt(self.radicand(c1, c2))
        return mv(self.sig, 0.0, f * c1, f * c2, f * r)

    @property
    def domain(self) -> str:
        return f"{_poly(self.const, self.k1, self.k2)} >= 0"

    def describe(self) -> str:
        pre = "" if self.magnitude == 1.0 else f"{math.sqrt(self.magnitude)!r}*"
        return f"±{pre}(c1*e1 + c2*e2 ± sqrt({_poly(self.const, self.k1, self.k2)})*e12)"


def _poly(const: float, k1: float, k2: float) -> str:
    def term(k: float, name: str) -> str:
        return (" + " if k > 0 else " - ") + name
    return f"{const:g}" + term(k1, "c1^2") + term(k2, "c2^2")


@dataclass(frozen=True)
class SqrtResult:
    isolated: list[Multivector]
    families: list[RootFamily] = field(default_factory=list)


# --------------------------------------------------------------------------
# exponential

def _cos_sinc(q: float) -> tuple[float, float]:
    """(C, S) with exp(V) = C + S*V for any 'vector' V with V*V = q."""
    if q < 0.0:
        t = math.sqrt(-q)
        return math.cos(t), math.sin(t) / t
    if q > 0.0:
        t = math.sqrt(q)
        return math.cosh(t), math.sinh(t) / t
    return 1.0, 1.0


def exp(x: Multivector) -> Multivector:
    """Closed-form exponential.

    Trigonometric when B'^2 < 0, hyperbolic when B'^2 > 0 and ``e^b0 (1 + B')``
    when B'^2 = 0.  Both closed forms meet the nilpotent one continuously, so
    the branch is chosen by the exact sign.
    """
    c, s = _cos_sinc(qvec_square(x))
    g = math.exp(x.a0)
    gs = g * s
    return Multivector(x.sig, g * c, gs * x.a1, gs * x.a2, gs * x.a12)


def exp_product(a: Multivector, b: Multivector) -> Multivector:
    """exp(a) exp(b) expanded through the scalar part and commutator of the 'vectors'.

    e^{a0+b0} (Ca Cb + Sa Sb <A'B'>_0 + Sa Cb A' + Ca Sb B' + Sa Sb [A',B']/2).
    Covers trigonometric, hyperbolic and mixed pairs alike.
    """
    if a.sig is not b.sig:
        raise SignatureMismatch(f"cannot combine {a.sig} with {b.sig}")
    sig = a.sig
    ca, sa = _cos_sinc(qvec_square(a))
    cb, sb = _cos_sinc(qvec_square(b))
    av = Multivector(sig, 0.0, a.a1, a.a2, a.a12)
    bv = Multivector(sig, 0.0, b.a1, b.a2, b.a12)
    # symmetric part of A'B' is a pure scalar
    inner = (sig.sq1 * a.a1 * b.a1 + sig.sq2 * a.a2 * b.a2 + sig.sq12 * a.a12 * b.a12)
    comm = commutator(av, bv)
    g = math.exp(a.a0 + b.a0)
    out = Multivector(sig, ca * cb + sa * sb * inner)
    out = add(out, scale(av, sa * cb))
    out = add(out, scale(bv, ca * sb))
    out = add(out, scale(comm, 0.5 * sa * sb))
    return scale(out, g)


# --------------------------------------------------------------------------
# logarithm

def _vector_is_zero(x: Multivector, s: float) -> bool:
    return max(abs(x.a1), abs(x.a2), abs(x.a12)) <= VEC_REL_TOL * s


def classify_log(x: Multivector) -> SectorClass:
    """Place ``x`` in one row of the logarithm-existence ledger."""
    nr = norms(x)
    if x.is_zero():
        return SectorClass(Sector.ZERO, nr)
    s = x.scale_magnitude()
    b0 = x.a0
    sig = x.sig
    if _vector_is_zero(x, s):
        if b0 > 0:
            return SectorClass(Sector.POSITIVE_SCALAR, nr)
        if sig is Signature.CL10:
            return SectorClass(Sector.NO_SOLUTION, nr)
        return SectorClass(Sector.NEGATIVE_SCALAR, nr)
    if sig is Signature.CL01 or sig is Signature.CL02:
        return SectorClass(Sector.TRIG, nr)
    qtol = QSQ_REL_TOL * s * s
    dtol = DET_REL_TOL * s * s
    if sig is not Signature.CL10:
        if nr.qsq < -qtol:
            return SectorClass(Sector.TRIG, nr)
        if nr.qsq <= qtol:
            return SectorClass(Sector.NULL_QVECTOR if b0 > 0 else Sector.NO_SOLUTION, nr)
    if b0 > 0 and abs(nr.det) <= dtol:
        return SectorClass(Sector.LIGHT_CONE, nr)
    if b0 > 0 and nr.det > 0:
        return SectorClass(Sector.HYPERBOLIC, nr)
    return SectorClass(Sector.NO_SOLUTION, nr)


def _log_vector_factor(qsq: float, b0: float, d: float) -> float:
    """c such that the principal log is 0.5*log|det| + c*B'."""
    if qsq < 0.0:
        x = math.sqrt(-qsq)
        return math.atan2(x, b0) / x
    if qsq > 0.0:
        x = math.sqrt(qsq)
        # artanh(x/b0) = 0.5*log1p(2x/(b0-x)), with b0-x = det/(b0+x)
        return 0.5 * math.log1p(2.0 * x * (b0 + x) / d) / x
    return 1.0 / b0


def free_axis(sig: Signature, f1: float = 0.0, f2: float = 0.0) -> Multivector:
    """Unit 'vector' squaring to -1 selected by two free parameters.

    Cl(1,1) and Cl(2,0) use :func:`unit_free_mv`.  Cl(0,2) reads ``(f1, f2)``
    as polar and azimuthal angles on the unit sphere, so (0, 0) gives e12.
    Cl(0,1) has the single choice e1.
    """
    if not (math.isfinite(f1) and math.isfinite(f2)):
        raise DomainViolation(f"free parameters must be finite, got ({f1}, {f2})")
    if sig is Signature.CL01:
        return mv(sig, 0.0, 1.0)
    if sig is Signature.CL02:
        st = math.sin(f1)
        return mv(sig, 0.0, st * math.cos(f2), st * math.sin(f2), math.cos(f1))
    return unit_free_mv(sig, f1, f2)


def unit_free_mv(sig: Signature, f1: float, f2: float) -> Multivector:
    """Free unit 'vector' F with F*F = -1 in Cl(1,1) or Cl(2,0).

    Cl(1,1): f1 e1 + f2 e12 + sqrt(1 + f1^2 + f2^2) e2 (``f2`` plays f12).
    Cl(2,0): f1 e1 + f2 e2 - sqrt(1 + f1^2 + f2^2) e12.
    """
    r = math.sqrt(1.0 + f1 * f1 + f2 * f2)
    if sig is Signature.CL11:
        return mv(sig, 0.0, f1, r, f2)
    if sig is Signature.CL20:
        return mv(sig, 0.0, f1, f2, -r)
    raise UnsupportedSignature(f"free unit 'vector' is defined for Cl(1,1) and Cl(2,0), not {sig}")


def _free_axis_text(sig: Signature) -> str:
    return {
        Signature.CL01: "e1",
        Signature.CL02: "sin(f1)cos(f2)*e1 + sin(f1)sin(f2)*e2 + cos(f1)*e12",
        Signature.CL11: "f1*e1 + sqrt(1+f1^2+f2^2)*e2 + f2*e12",
        Signature.CL20: "f1*e1 + f2*e2 - sqrt(1+f1^2+f2^2)*e12",
    }[sig]


def log(x: Multivector) -> LogResult:
    """Logarithm with its multiplicity structure; see :class:`LogKind`."""
    sc = classify_log(x)
    tag = sc.tag
    sig = x.sig
    nr = sc.norms
    b0 = x.a0
    if tag is Sector.ZERO:
        raise ZeroArgument("logarithm of zero is undefined")
    if tag is Sector.NO_SOLUTION:
        return LogResult(LogKind.NO_SOLUTION, sc, sig, family=_no_solution_reason(x, sc))

    vec = Multivector(sig, 0.0, x.a1, x.a2, x.a12)
    if tag is Sector.POSITIVE_SCALAR:
        principal = mv(sig, math.log(b0))
        if sig is Signature.CL10:
            return LogResult(LogKind.PRINCIPAL, sc, sig, principal, scalar_log=principal.a0)
        return LogResult(
            LogKind.WINDING, sc, sig, principal, axis=free_axis(sig), free_axis=True,
            scalar_log=principal.a0,
            family=f"{principal.a0!r} + 2*pi*k*F, F = {_free_axis_text(sig)}",
        )
    if tag is Sector.NEGATIVE_SCALAR:
        a = math.log(-b0)
        axis = free_axis(sig)
        principal = add(mv(sig, a), scale(axis, math.pi))
        return LogResult(
            LogKind.FREE_FAMILY, sc, sig, principal, axis=axis, free_axis=True, scalar_log=a,
            family=f"{a!r} + pi*(2k+1)*F, F = {_free_axis_text(sig)}",
        )
    if tag is Sector.LIGHT_CONE:
        x_norm = nr.seminormQ
        unit = scale(vec, 1.0 / x_norm)
        one = mv(sig, 1.0)
        up = add(one, unit)
        direction = scale(add(one, scale(unit, -1.0)), 0.5)
        if sig is Signature.CL10:
            finite = scale(up, 0.5 * math.log(2.0 * b0))
        else:
            finite = add(mv(sig, math.log(b0)), scale(up, 0.5 * math.log(2.0)))
        return LogResult(
            LogKind.ASYMPTOTIC, sc, sig, epsilon_form=(finite, direction),
            family=f"({finite}) + log(0+)*({direction})",
        )

    half_log_det = 0.5 * math.log(abs(nr.det))
    c = _log_vector_factor(nr.qsq, b0, nr.det)
    principal = Multivector(sig, half_log_det, c * x.a1, c * x.a2, c * x.a12)
    if tag is Sector.TRIG:
        axis = scale(vec, 1.0 / nr.seminormQ)
        return LogResult(
            LogKind.WINDING, sc, sig, principal, axis=axis, scalar_log=half_log_det,
            family=f"({principal}) + 2*pi*k*({axis})",
        )
    return LogResult(LogKind.PRINCIPAL, sc, sig, principal, scalar_log=half_log_det)


def _no_solution_reason(x: Multivector, sc: SectorClass) -> str:
    nr = sc.norms
    if x.sig is Signature.CL10:
        return "no solution: b0≤|b1| off the asymptote b0=|b1|>0"
    if nr.qsq > 0 and x.a0 > 0:
        return "no solution: B′²>0 and det≤0"
    if nr.qsq > 0:
        return "no solution: B′²>0 and b0≤0"
    return "no solution: B′²=0, B′≠0 and b0≤0"


def log_eval(r: LogResult, k: int = 0, f1: float = 0.0, f2: float = 0.0) -> Multivector:
    """Pick one member of the solution set: winding number ``k`` and free-axis parameters."""
    if r.kind is LogKind.PRINCIPAL:
        return r.principal
    if r.kind is LogKind.WINDING:
        axis = free_axis(r.sig, f1, f2) if r.free_axis else r.axis
        return add(r.principal, scale(axis, TWO_PI * k))
    if r.kind is LogKind.FREE_FAMILY:
        axis = free_axis(r.sig, f1, f2)
        return add(mv(r.sig, r.scalar_log), scale(axis, math.pi * (2 * k + 1)))
    raise UnsupportedKind(f"{r.kind.value} logarithm has no finite member")


def log_asymptotic_eval(r: LogResult, eps: float) -> Multivector:
    """Substitute log(eps) for log(0+)."""
    if r.kind is not LogKind.ASYMPTOTIC:
        raise UnsupportedKind(f"expected an Asymptotic logarithm, got {r.kind.value}")
    if not eps > 0:
        raise DomainViolation(f"eps must be positive, got {eps}")
    finite, direction = r.epsilon_form
    return add(finite, scale(direction, math.log(eps)))


# --------------------------------------------------------------------------
# square roots

def _accept(root: Multivector, x: Multivector, scale_ref: float) -> bool:
    rs = root.scale_magnitude()
    tol = 1e-9 * max(1.0, scale_ref, rs * rs)
    return max_abs_diff(gp(root, root), x) <= tol


def _dedupe(roots: list[Multivector]) -> list[Multivector]:
    out: list[Multivector] = []
    for r in roots:
        tol = 1e-12 * max(1.0, r.scale_magnitude())
        if all(max_abs_diff(r, o) > tol for o in out):
            out.append(r)
    return out


def _pm(roots: list[Multivector]) -> list[Multivector]:
    out = []
    for r in roots:
        out.append(r)
        out.append(scale(r, -1.0))
    return out


_R2 = 1.0 / math.sqrt(2.0)

# unit square roots as (a1, a2, a12) triples; negatives are added by _pm
_UNIT_ROOTS = {
    (Signature.CL01, 1): [(0, 0, 0, "one")],
    (Signature.CL01, -1): [(1, 0, 0)],
    (Signature.CL10, 1): [(0, 0, 0, "one"), (1, 0, 0)],
    (Signature.CL10, -1): [],
    (Signature.CL02, 1): [(0, 0, 0, "one")],
    (Signature.CL02, -1): [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (_R2, _R2, 0), (_R2, -_R2, 0), (_R2, 0, _R2), (_R2, 0, -_R2), (0, _R2, _R2), (0, _R2, -_R2),
    ],
    (Signature.CL11, 1): [(0, 0, 0, "one"), (1, 0, 0), (_R2, 0, _R2), (_R2, 0, -_R2)],
    (Signature.CL11, -1): [(0, 1, 0)],
    (Signature.CL20, 1): [(0, 0, 0, "one"), (1, 0, 0), (0, 1, 0), (_R2, _R2, 0), (_R2, -_R2, 0)],
    (Signature.CL20, -1): [(0, 0, 1)],
}

# (const, k1, k2) of the radicand in the e12 slot
_UNIT_FAMILIES = {
    (Signature.CL11, 1): (1.0, -1.0, 1.0),
    (Signature.CL20, 1): (-1.0, 1.0, 1.0),
    (Signature.CL02, -1): (1.0, -1.0, -1.0),
    (Signature.CL11, -1): (-1.0, -1.0, 1.0),
    (Signature.CL20, -1): (1.0, 1.0, 1.0),
}


def _scalar_roots(sig: Signature, value: float) -> SqrtResult:
    sign = 1 if value > 0 else -1
    m = abs(value)
    f = math.sqrt(m)
    isolated = []
    for entry in _UNIT_ROOTS[(sig, sign)]:
        if len(entry) == 4:
            isolated.append(mv(sig, f))
        else:
            isolated.append(mv(sig, 0.0, f * entry[0], f * entry[1], f * entry[2]))
    families = []
    if (sig, sign) in _UNIT_FAMILIES:
        const, k1, k2 = _UNIT_FAMILIES[(sig, sign)]
        families.append(RootFamily(sig, sign, m, const, k1, k2))
    return SqrtResult(_pm(isolated), families)


def sqrt_all(x: Multivector) -> SqrtResult:
    """All real square roots: isolated ones plus parametric families for scalars."""
    sig = x.sig
    if x.is_zero():
        return SqrtResult([x])
    s = x.scale_magnitude()
    if _vector_is_zero(x, s):
        return _scalar_roots(sig, x.a0)

    b0 = x.a0
    candidates: list[Multivector] = []
    if sig is Signature.CL01:
        r = math.hypot(b0, x.a1)
        # b0 + r without cancellation when b0 < 0
        plus = b0 + r if b0 >= 0 else x.a1 * x.a1 / (r - b0)
        den = math.sqrt(2.0 * plus)
        candidates.append(Multivector(sig, plus / den, x.a1 / den))
    elif sig is Signature.CL10:
        d = det(x)
        if b0 > 0 and d >= -DET_REL_TOL * s * s:
            sd = math.sqrt(max(d, 0.0))
            for base in (b0 + sd, x.a1 * x.a1 / (b0 + sd)):
                # second base is b0 - sqrt(det), computed without cancellation
                if base > 0:
                    den = math.sqrt(2.0 * base)
                    candidates.append(Multivector(sig, base / den, x.a1 / den))
    else:
        nr = norms(x)
        d = nr.det
        if d >= -DET_REL_TOL * s * s:
            sd = math.sqrt(max(d, 0.0))
            # b0 + sqrt(det) = -B'^2 / (b0 - sqrt(det)) avoids cancellation for b0 < 0
            plus = b0 + sd if b0 >= 0 else -nr.qsq / (sd - b0) if sd - b0 > 0 else 0.0
            bases = [plus]
            if plus > 0:
                # b0 - sqrt(det) = B'^2 / (b0 + sqrt(det)); the extra pair of the split algebras
                bases.append(nr.qsq / plus)
            for base in bases:
                if base > 0:
                    den = math.sqrt(2.0 * base)
                    candidates.append(Multivector(sig, base / den, x.a1 / den, x.a2 / den, x.a12 / den))
    roots = [r for r in _pm(candidates) if _accept(r, x, s)]
    return SqrtResult(_dedupe(roots))


def sqrt_explog(x: Multivector) -> tuple[Multivector, Multivector]:
    """The pair ±exp(log(x)/2) built from the principal logarithm."""
    r = log(x) if not x.is_zero() else None
    if r is None or r.principal is None:
        tag = classify_log(x).tag.value
        raise NoLogarithm(f"{x} has no finite logarithm ({tag})")
    root = exp(scale(r.principal, 0.5))
    return root, scale(root, -1.0)
