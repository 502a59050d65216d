"""Structural classification of normal Toeplitz specs.

Every normal Toeplitz matrix (diagonal aside) satisfies at least one of

    type I :  [a_{-1}..a_{-N}] = alpha0 * [conj(a_1)..conj(a_N)], |alpha0| = 1
    type II:  [a_{-1}..a_{-N}] = beta0  * [a_N..a_1],             |beta0|  = 1

and a real normal matrix is symmetric, skew-symmetric, circulant or
skew-circulant (the alpha0/beta0 = +-1 specializations).  Two independent
routes produce the witnesses: the direct route ratios the coefficient
vectors, the proof route reconstructs alpha0 and beta0 from one sample of
the trig polynomials s and t where t does not vanish.  A normal spec that
matches neither condition is a theorem violation and raises, it is never
papered over.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import normality
from .polyid import eval_at_point, trig_coeffs
from .scalar import ScalarPolicy, abs_sq, as_complex, rational_unit_circle
from .toeplitz import ToeplitzSpec

__all__ = [
    "ANY",
    "ClassificationResult",
    "ProofTrace",
    "RealClassificationResult",
    "RealLabel",
    "TheoremViolation",
    "Verdict",
    "classification_to_json",
    "classify_complex",
    "classify_real",
    "classify_via_proof",
    "extract_unit_ratio",
]


class Verdict(Enum):
    NOT_NORMAL = "NotNormal"
    DEGENERATE = "Degenerate"
    CLASSIFIED = "Classified"


class RealLabel(Enum):
    SYMMETRIC = "Symmetric"
    SKEW_SYMMETRIC = "SkewSymmetric"
    CIRCULANT = "Circulant"
    SKEW_CIRCULANT = "SkewCirculant"


_LABEL_ORDER = (
    RealLabel.SYMMETRIC,
    RealLabel.SKEW_SYMMETRIC,
    RealLabel.CIRCULANT,
    RealLabel.SKEW_CIRCULANT,
)


class TheoremViolation(RuntimeError):
    """A spec passed the normality check yet matched no structure condition.

    Mathematically impossible in exact arithmetic; in approximate mode it
    can only appear at loose tolerances, so the near-miss deviations per
    condition are carried along for inspection.
    """

    def __init__(self, message, spec=None, report=None, deviations=None):
        super().__init__(message)
        self.spec = spec
        self.report = report
        self.deviations = dict(deviations or {})


class _AnyUnitWitness:
    """Sentinel: every unit-modulus scalar works (all-zero vectors)."""

    __slots__ = ()

    def __repr__(self):
        return "<any unit witness>"


ANY = _AnyUnitWitness()


@dataclass(frozen=True, eq=False)
class ClassificationResult:
    verdict: Verdict
    type_I: object = None
    type_II: object = None
    degenerate: bool = False
    normality: object = None


@dataclass(frozen=True, eq=False)
class RealClassificationResult:
    verdict: Verdict
    labels: frozenset
    degenerate: bool = False
    normality: object = None


@dataclass(frozen=True, eq=False)
class ProofTrace:
    """Where the proof route sampled and what it derived there."""

    x0: object = None
    point: object = None
    s_at_x0: object = None
    t_at_x0: object = None
    alpha: object = None
    beta: object = None
    alpha0: object = None
    beta0: object = None


def _vector_scale(*vectors) -> float:
    return float(max((abs(x) for v in vectors for x in v), default=0.0))


def extract_unit_ratio(numer, denom, policy: ScalarPolicy):
    """Unit-modulus c with numer[k] = c * denom[k] for all k, if one exists.

    Returns the sentinel :data:`ANY` when both vectors are entirely zero,
    and None when no unit-modulus ratio fits.  c is computed at the first
    policy-nonzero denominator entry and then verified everywhere,
    including the zero-denominator indices (which force numer zero there).
    """
    numer, denom = tuple(numer), tuple(denom)
    if len(numer) != len(denom) or not numer:
        raise ValueError("vectors must have equal, nonzero length")
    scale = 0.0 if policy.is_exact else _vector_scale(numer, denom)
    pivot = None
    for k, d in enumerate(denom):
        if not policy.is_zero(d, scale):
            pivot = k
            break
    if pivot is None:
        if all(policy.is_zero(x, scale) for x in numer):
            return ANY
        return None
    c = numer[pivot] / denom[pivot]
    if not policy.is_unit_modulus(c):
        return None
    for x, d in zip(numer, denom):
        if not policy.is_zero(x - c * d, scale):
            return None
    return c


def _is_degenerate(spec: ToeplitzSpec, policy: ScalarPolicy) -> bool:
    """All off-diagonal values zero (at scale 0, i.e. the absolute floor)."""
    return all(policy.is_zero(x) for x in spec.lower + spec.upper)


def _max_dev(target, source, factor) -> float:
    return max(
        abs(as_complex(t) - as_complex(factor) * as_complex(s))
        for t, s in zip(target, source)
    )


def _condition_holds(target, source, factor, policy, scale) -> bool:
    return all(policy.is_zero(t - factor * s, scale) for t, s in zip(target, source))


def _conj_vec(v) -> tuple:
    return tuple(z.conjugate() for z in v)


def classify_complex(spec: ToeplitzSpec, policy: ScalarPolicy) -> ClassificationResult:
    """Direct-route classification: ratio the coefficient vectors.

    Both witnesses are always tested and reported; a normal non-degenerate
    spec matching neither raises :class:`TheoremViolation`.
    """
    report = normality.check(spec, policy)
    if not report.is_normal_fast:
        return ClassificationResult(Verdict.NOT_NORMAL, normality=report)
    if _is_degenerate(spec, policy):
        return ClassificationResult(Verdict.DEGENERATE, degenerate=True, normality=report)
    up, lo = spec.upper, spec.lower
    w1 = extract_unit_ratio(up, _conj_vec(lo), policy)
    w2 = extract_unit_ratio(up, tuple(reversed(lo)), policy)
    alpha0 = None if w1 is ANY or w1 is None else w1
    beta0 = None if w2 is ANY or w2 is None else w2
    if alpha0 is None and beta0 is None:
        raise TheoremViolation(
            "normal spec matched neither structure condition",
            spec=spec,
            report=report,
            deviations=_near_miss(spec),
        )
    return ClassificationResult(
        Verdict.CLASSIFIED, type_I=alpha0, type_II=beta0, normality=report
    )


def _near_miss(spec: ToeplitzSpec) -> dict:
    """Best-effort float deviations of both conditions, for diagnostics."""
    up = [as_complex(z) for z in spec.upper]
    lo = [as_complex(z) for z in spec.lower]
    out = {}
    for name, src in (("type_I", [z.conjugate() for z in lo]), ("type_II", lo[::-1])):
        pivot = next((k for k, d in enumerate(src) if d != 0), None)
        if pivot is None:
            out[name] = None
            continue
        c = up[pivot] / src[pivot]
        c = c / abs(c) if abs(c) else c
        out[name] = _max_dev(up, src, c)
    return out


def _sample_points(spec: ToeplitzSpec):
    """M = 4(N+1) unit-circle samples: angles in Approx, rational in Exact.

    t has at most 2N circle zeros (w^N t(w) is a degree-2N polynomial), so
    with M > 2N distinct points the scan must find t nonzero unless t is
    identically zero.  Exact mode uses stereographic rational points, the
    only unit scalars available in the field.
    """
    m = 4 * (spec.n + 1)
    if spec.is_exact:
        pts = []
        for j in range(m):
            w = rational_unit_circle(Fraction(2 * j - m, 8))
            pts.append((math.atan2(float(w.imag), float(w.real)), w))
        return pts
    return [(2 * math.pi * j / m, cmath.exp(2j * math.pi * j / m)) for j in range(m)]


def classify_via_proof(spec: ToeplitzSpec, policy: ScalarPolicy):
    """Constructive route: derive both witnesses from one good sample of t.

    Scans the sample grid for x0 maximizing |t|; at that point
    alpha = s(x0)/t(x0) and beta = t(x0)/conj(t(x0)) yield the candidates
    alpha0 = alpha*beta and beta0 = conj(alpha) * w0^{N+1}, which are then
    verified coefficient-wise.  Returns (result, trace).  Callers are
    expected to have checked normality; a failing spec is returned as
    NotNormal with an empty trace.
    """
    report = normality.check(spec, policy)
    if not report.is_normal_fast:
        return ClassificationResult(Verdict.NOT_NORMAL, normality=report), ProofTrace()
    s, t = trig_coeffs(spec)
    best = None
    best_mag = None
    for x, w in _sample_points(spec):
        tv = eval_at_point(t, w)
        mag = abs_sq(tv)
        if best_mag is None or mag > best_mag:
            best, best_mag = (x, w, tv), mag
    x0, w0, t0 = best
    t_scale = 0.0 if spec.is_exact else spec.n * spec.max_abs()
    if policy.is_zero(t0, t_scale):
        # t vanishes on more points than its degree allows, so t = 0, and
        # normality forces s = 0 with it: everything off-diagonal is zero.
        return (
            ClassificationResult(Verdict.DEGENERATE, degenerate=True, normality=report),
            ProofTrace(),
        )
    s0 = eval_at_point(s, w0)
    alpha = s0 / t0
    beta = t0 / t0.conjugate()
    alpha0 = alpha * beta
    beta0 = alpha.conjugate() * w0 ** (spec.n + 1)
    trace = ProofTrace(
        x0=x0, point=w0, s_at_x0=s0, t_at_x0=t0,
        alpha=alpha, beta=beta, alpha0=alpha0, beta0=beta0,
    )
    up, lo = spec.upper, spec.lower
    scale = 0.0 if spec.is_exact else _vector_scale(up, lo)
    ok1 = _condition_holds(up, _conj_vec(lo), alpha0, policy, scale)
    ok2 = _condition_holds(up, tuple(reversed(lo)), beta0, policy, scale)
    if not ok1 and not ok2:
        raise TheoremViolation(
            "derived witnesses verify neither structure condition",
            spec=spec,
            report=report,
            deviations={
                "type_I": _max_dev(up, _conj_vec(lo), alpha0),
                "type_II": _max_dev(up, tuple(reversed(lo)), beta0),
            },
        )
    result = ClassificationResult(
        Verdict.CLASSIFIED,
        type_I=alpha0 if ok1 else None,
        type_II=beta0 if ok2 else None,
        normality=report,
    )
    return result, trace


def classify_real(spec: ToeplitzSpec, policy: ScalarPolicy) -> RealClassificationResult:
    """Label a real spec with every +-1 specialization that holds.

    Symmetric / SkewSymmetric are alpha0 = +1 / -1; Circulant /
    SkewCirculant are beta0 = +1 / -1.  A normal non-degenerate real spec
    earning no label raises :class:`TheoremViolation`.
    """
    if not spec.is_real:
        raise ValueError("real classification requires real entries")
    report = normality.check(spec, policy)
    if not report.is_normal_fast:
        return RealClassificationResult(Verdict.NOT_NORMAL, frozenset(), normality=report)
    if _is_degenerate(spec, policy):
        return RealClassificationResult(
            Verdict.DEGENERATE, frozenset(), degenerate=True, normality=report
        )
    up, lo = spec.upper, spec.lower
    rlo = tuple(reversed(lo))
    scale = 0.0 if spec.is_exact else _vector_scale(up, lo)
    one = Fraction(1) if spec.is_exact else 1.0
    tests = {
        RealLabel.SYMMETRIC: (lo, one),
        RealLabel.SKEW_SYMMETRIC: (lo, -one),
        RealLabel.CIRCULANT: (rlo, one),
        RealLabel.SKEW_CIRCULANT: (rlo, -one),
    }
    labels = frozenset(
        label
        for label, (src, factor) in tests.items()
        if _condition_holds(up, src, factor, policy, scale)
    )
    if not labels:
        raise TheoremViolation(
            "normal real spec earned no structure label",
            spec=spec,
            report=report,
            deviations={
                label.value: _max_dev(up, src, factor)
                for label, (src, factor) in tests.items()
            },
        )
    return RealClassificationResult(Verdict.CLASSIFIED, labels, normality=report)


def _scalar_or_null(z):
    from .scalar import scalar_to_json

    return None if z is None else scalar_to_json(z)


def trace_to_json(trace: ProofTrace):
    if trace is None or trace.point is None:
        return None
    return {
        "x0": trace.x0,
        "point": _scalar_or_null(trace.point),
        "s_at_x0": _scalar_or_null(trace.s_at_x0),
        "t_at_x0": _scalar_or_null(trace.t_at_x0),
        "alpha": _scalar_or_null(trace.alpha),
        "beta": _scalar_or_null(trace.beta),
        "alpha0": _scalar_or_null(trace.alpha0),
        "beta0": _scalar_or_null(trace.beta0),
    }


def classification_to_json(
    result: ClassificationResult,
    real_result: RealClassificationResult | None = None,
    trace: ProofTrace | None = None,
) -> dict:
    real_labels = None
    if real_result is not None:
        real_labels = [l.value for l in _LABEL_ORDER if l in real_result.labels]
    return {
        "verdict": result.verdict.value,
        "type_I": _scalar_or_null(result.type_I),
        "type_II": _scalar_or_null(result.type_II),
        "real_labels": real_labels,
        "degenerate": result.degenerate,
        "trace": trace_to_json(trace),
    }
