"""Element-wise normality test and its agreement with the dense oracle.

A Toeplitz matrix is normal iff every residual

    r(m, n) = a_m*conj(a_n) - conj(a_{-m})*a_{-n}
              + conj(a_{N+1-m})*a_{N+1-n} - a_{-(N+1-m)}*conj(a_{-(N+1-n)})

vanishes for 1 <= m, n <= N.  That is an O(N^2) test; the dense commutator
from :mod:`toepnorm.toeplitz` is the independent O(N^3) ground truth, and
:func:`check` always runs both and records whether they agree.  The residual
table is Hermitian (r(m, n) = conj(r(n, m))), so failures always come in
conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalar import ScalarPolicy, abs_sq
from .toeplitz import ToeplitzSpec, commutator_norm

__all__ = [
    "NormalityReport",
    "check",
    "fast_max_residual",
    "report_to_json",
    "residual",
    "residual_table",
]


def residual(spec: ToeplitzSpec, m: int, n: int):
    """Single residual r(m, n); indices must satisfy 1 <= m, n <= N."""
    N = spec.n
    if not (1 <= m <= N and 1 <= n <= N):
        raise ValueError(f"residual indices must lie in 1..{N}, got ({m}, {n})")
    e = spec.entry
    return (
        e(m) * e(n).conjugate()
        - e(-m).conjugate() * e(-n)
        + e(N + 1 - m).conjugate() * e(N + 1 - n)
        - e(-(N + 1 - m)) * e(-(N + 1 - n)).conjugate()
    )


def _table_exact(spec: ToeplitzSpec) -> list:
    N = spec.n
    lo, up = spec.lower, spec.upper
    loc = tuple(z.conjugate() for z in lo)
    upc = tuple(z.conjugate() for z in up)
    rows = []
    for m in range(1, N + 1):
        a, b = lo[m - 1], upc[m - 1]
        c, d = loc[N - m], up[N - m]
        rows.append(
            [
                a * loc[n - 1] - b * up[n - 1] + c * lo[N - n] - d * upc[N - n]
                for n in range(1, N + 1)
            ]
        )
    return rows


def _table_np(spec: ToeplitzSpec) -> np.ndarray:
    lo = np.asarray(spec.lower, dtype=complex)
    up = np.asarray(spec.upper, dtype=complex)
    rlo = lo[::-1]
    rup = up[::-1]
    return (
        np.outer(lo, lo.conj())
        - np.outer(up.conj(), up)
        + np.outer(rlo.conj(), rlo)
        - np.outer(rup, rup.conj())
    )


def residual_table(spec: ToeplitzSpec):
    """Full N x N residual table; nested lists in exact mode, ndarray else."""
    if spec.is_exact:
        return _table_exact(spec)
    return _table_np(spec)


def fast_max_residual(spec: ToeplitzSpec):
    """Max-only residual scan: (magnitude, (m, n)) without keeping the table.

    Exact mode reports the squared magnitude (in-field); approximate mode the
    plain magnitude.  Ties resolve to the first pair in row-major order.
    """
    if spec.is_exact:
        best = Fraction(0)
        pair = (1, 1)
        N = spec.n
        lo, up = spec.lower, spec.upper
        loc = tuple(z.conjugate() for z in lo)
        upc = tuple(z.conjugate() for z in up)
        for m in range(1, N + 1):
            a, b = lo[m - 1], upc[m - 1]
            c, d = loc[N - m], up[N - m]
            for n in range(1, N + 1):
                r = a * loc[n - 1] - b * up[n - 1] + c * lo[N - n] - d * upc[N - n]
                s = abs_sq(r)
                if s > best:
                    best, pair = s, (m, n)
        return best, pair
    mags = np.abs(_table_np(spec))
    flat = int(np.argmax(mags))
    m, n = divmod(flat, spec.n)
    return float(mags.flat[flat]), (m + 1, n + 1)


@dataclass(frozen=True, eq=False)
class NormalityReport:
    """Outcome of the dual normality check.

    ``max_residual`` and ``oracle_norm`` are exact rationals flagged as
    squared in exact mode, plain floats otherwise.  ``agrees`` records
    whether the element-wise verdict matched the dense-commutator verdict;
    a disagreement is surfaced, never reconciled.
    """

    residuals: object
    max_residual: object
    worst_pair: tuple
    is_normal_fast: bool
    oracle_norm: object
    squared: bool
    agrees: bool
    exact: bool


def check(spec: ToeplitzSpec, policy: ScalarPolicy) -> NormalityReport:
    """Run the element-wise test and the dense oracle, report both verdicts.

    The Approx zero test for both paths uses scale S = N * (max|a_k|)^2,
    the natural magnitude of one residual.
    """
    if policy.is_exact != spec.is_exact:
        raise ValueError("policy mode must match the spec's arithmetic domain")
    table = residual_table(spec)
    if spec.is_exact:
        best = Fraction(0)
        pair = (1, 1)
        for m, row in enumerate(table, start=1):
            for n, r in enumerate(row, start=1):
                s = abs_sq(r)
                if s > best:
                    best, pair = s, (m, n)
        fast_ok = best == 0
        oracle = commutator_norm(spec)
        oracle_ok = oracle.value == 0
        return NormalityReport(
            residuals=table,
            max_residual=best,
            worst_pair=pair,
            is_normal_fast=fast_ok,
            oracle_norm=oracle.value,
            squared=True,
            agrees=fast_ok == oracle_ok,
            exact=True,
        )
    mags = np.abs(table)
    flat = int(np.argmax(mags))
    m, n = divmod(flat, spec.n)
    best = float(mags.flat[flat])
    scale = spec.n * spec.max_abs() ** 2
    thresh = policy.threshold(scale)
    fast_ok = best <= thresh
    oracle = commutator_norm(spec)
    oracle_ok = oracle.value <= thresh
    return NormalityReport(
        residuals=table,
        max_residual=best,
        worst_pair=(m + 1, n + 1),
        is_normal_fast=fast_ok,
        oracle_norm=oracle.value,
        squared=False,
        agrees=fast_ok == oracle_ok,
        exact=False,
    )


def _real_to_json(value, exact: bool):
    return str(value) if exact else float(value)


def report_to_json(report: NormalityReport) -> dict:
    return {
        "normal": report.is_normal_fast,
        "max_residual": _real_to_json(report.max_residual, report.exact),
        "worst_pair": list(report.worst_pair),
        "oracle_norm": _real_to_json(report.oracle_norm, report.exact),
        "squared": report.squared,
        "agrees": report.agrees,
        "exact": report.exact,
    }
