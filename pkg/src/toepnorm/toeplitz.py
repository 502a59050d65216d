"""Toeplitz matrix data model, dense form, and the commutator ground truth.

A matrix of order N+1 is described by its 2N+1 diagonal values a_k,
k = -N..N, with M[i][j] = a_{i-j}.  The principal diagonal a_0 is stored
and surfaces in :func:`materialize`, but every analysis treats it as zero:
shifting by a multiple of the identity changes neither the commutator
T*T^H - T^H*T nor any structural property, so a_0 is forced to zero before
the dense products are formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

from .scalar import (
    GaussianRational,
    SpecFormatError,
    abs_sq,
    as_complex,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "OracleNorm",
    "ToeplitzSpec",
    "commutator",
    "commutator_norm",
    "from_diagonals",
    "materialize",
    "spec_from_json",
    "spec_to_json",
]


@dataclass(frozen=True)
class ToeplitzSpec:
    """Diagonal description of one Toeplitz matrix.

    ``diag`` holds the 2n+1 values in ascending index order a_{-n}..a_n and
    is canonical: all entries are Fraction (exact real), GaussianRational
    (exact complex) or complex (approximate).  Build instances through
    :func:`from_diagonals`, which performs that normalization.
    """

    n: int
    diag: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix order must be at least 2 (n >= 1)")
        if len(self.diag) != 2 * self.n + 1:
            raise ValueError("diag must hold exactly 2n+1 entries")

    def entry(self, k):
        """The diagonal value a_k, -n <= k <= n."""
        if not -self.n <= k <= self.n:
            raise ValueError(f"diagonal index {k} out of range for n={self.n}")
        return self.diag[k + self.n]

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def a0(self):
        return self.diag[self.n]

    @property
    def lower(self) -> tuple:
        """(a_1, ..., a_n): first column below the principal diagonal."""
        return self.diag[self.n + 1 :]

    @property
    def upper(self) -> tuple:
        """(a_{-1}, ..., a_{-n}): first row right of the principal diagonal."""
        return self.diag[self.n - 1 :: -1]

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.diag[0], complex)

    @property
    def is_real(self) -> bool:
        if self.is_exact:
            return isinstance(self.diag[0], Fraction)
        return all(z.imag == 0.0 for z in self.diag)

    def max_abs(self) -> float:
        """max |a_k| over k != 0, as a float (the natural Approx scale)."""
        return float(max(abs(self.diag[k]) for k in range(2 * self.n + 1) if k != self.n))

    def as_approx(self) -> "ToeplitzSpec":
        """The same matrix with every entry converted to complex."""
        return ToeplitzSpec(self.n, tuple(as_complex(z) for z in self.diag))


_SCALAR_TYPES = (int, Fraction, GaussianRational, float, complex)


def from_diagonals(entries: Sequence) -> ToeplitzSpec:
    """Build a spec from the 2N+1 diagonal values in ascending index order.

    The entry domain is normalized: any float or complex forces the whole
    matrix into the approximate domain; otherwise entries stay exact, as
    Fraction when every imaginary part is zero and GaussianRational else.
    """
    entries = tuple(entries)
    if len(entries) < 3 or len(entries) % 2 == 0:
        raise SpecFormatError(
            f"need an odd number of diagonals, at least 3, got {len(entries)}"
        )
    for e in entries:
        if isinstance(e, bool) or not isinstance(e, _SCALAR_TYPES):
            raise SpecFormatError(f"not a scalar entry: {e!r}")
    if any(isinstance(e, (float, complex)) for e in entries):
        diag = tuple(as_complex(e) for e in entries)
    elif all(e.imag == 0 for e in entries):
        diag = tuple(Fraction(e.real) for e in entries)
    else:
        diag = tuple(
            e if isinstance(e, GaussianRational) else GaussianRational(e)
            for e in entries
        )
    return ToeplitzSpec((len(entries) - 1) // 2, diag)


def materialize(spec: ToeplitzSpec) -> list:
    """Dense (N+1)x(N+1) matrix with M[i][j] = a_{i-j} (stored a_0 included)."""
    n = spec.n
    return [[spec.diag[i - j + n] for j in range(spec.dim)] for i in range(spec.dim)]


def _forced_diag(spec: ToeplitzSpec) -> list:
    """Diagonal values with a_0 replaced by the domain's zero."""
    d = list(spec.diag)
    if isinstance(d[0], complex):
        zero = 0j
    elif isinstance(d[0], Fraction):
        zero = Fraction(0)
    else:
        zero = GaussianRational(0)
    d[spec.n] = zero
    return d


def _dense_np(spec: ToeplitzSpec) -> np.ndarray:
    d = np.asarray(_forced_diag(spec), dtype=complex)
    i = np.arange(spec.dim)
    return d[np.subtract.outer(i, i) + spec.n]


def _commutator_np(spec: ToeplitzSpec) -> np.ndarray:
    t = _dense_np(spec)
    th = t.conj().T
    return t @ th - th @ t


def _int_diag(spec: ToeplitzSpec):
    """Diagonal as Gaussian-integer pairs after clearing denominators.

    Returns (re, im, L) with a_0 forced to zero and every value multiplied
    by L, the lcm of all denominators.  The commutator is bilinear in the
    entries, so dividing its integer form by L^2 recovers the exact result
    while the O(N^3) loops run on plain ints.
    """
    dens = [1]
    for k, e in enumerate(spec.diag):
        if k == spec.n:
            continue
        dens.append(e.real.denominator)
        dens.append(e.imag.denominator)
    lcm = math.lcm(*dens)
    re, im = [], []
    for k, e in enumerate(spec.diag):
        if k == spec.n:
            re.append(0)
            im.append(0)
        else:
            re.append(int(e.real * lcm))
            im.append(int(e.imag * lcm))
    return re, im, lcm


def _commutator_int(spec: ToeplitzSpec):
    """Integer commutator grid (re, im, L^2) for the exact domain."""
    dre, dim_, lcm = _int_diag(spec)
    n, dim = spec.n, spec.dim
    out_re = []
    out_im = []
    for i in range(dim):
        row_re = []
        row_im = []
        for j in range(dim):
            acc_re = 0
            acc_im = 0
            for k in range(dim):
                xr, xi = dre[i - k + n], dim_[i - k + n]
                yr, yi = dre[j - k + n], dim_[j - k + n]
                acc_re += xr * yr + xi * yi
                acc_im += xi * yr - xr * yi
                ur, ui = dre[k - i + n], dim_[k - i + n]
                vr, vi = dre[k - j + n], dim_[k - j + n]
                acc_re -= ur * vr + ui * vi
                acc_im -= ur * vi - ui * vr
            row_re.append(acc_re)
            row_im.append(acc_im)
        out_re.append(row_re)
        out_im.append(row_im)
    return out_re, out_im, lcm * lcm


def _commutator_exact(spec: ToeplitzSpec) -> list:
    out_re, out_im, den = _commutator_int(spec)
    if spec.is_real:
        return [[Fraction(r, den) for r in row] for row in out_re]
    return [
        [
            GaussianRational(Fraction(r, den), Fraction(i, den))
            for r, i in zip(row_re, row_im)
        ]
        for row_re, row_im in zip(out_re, out_im)
    ]


def commutator(spec: ToeplitzSpec) -> list:
    """Dense T*T^H - T^H*T with a_0 forced to zero.

    This is the ground-truth normality oracle: it never shares code with the
    element-wise residual check in :mod:`toepnorm.normality`.
    """
    if spec.is_exact:
        return _commutator_exact(spec)
    return _commutator_np(spec).tolist()


class OracleNorm(NamedTuple):
    """Frobenius norm of the commutator; exact mode reports the square."""

    value: object
    squared: bool


def commutator_norm(spec: ToeplitzSpec) -> OracleNorm:
    """Frobenius norm of :func:`commutator`.

    Exact mode returns the exact rational norm *squared* (flagged), since
    the square root generally leaves the field.
    """
    if spec.is_exact:
        out_re, out_im, den = _commutator_int(spec)
        total = 0
        for row_re, row_im in zip(out_re, out_im):
            for r, i in zip(row_re, row_im):
                total += r * r + i * i
        return OracleNorm(Fraction(total, den * den), True)
    return OracleNorm(float(np.linalg.norm(_commutator_np(spec))), False)


def spec_to_json(spec: ToeplitzSpec) -> dict:
    return {"n": spec.n, "diag": [scalar_to_json(z) for z in spec.diag]}


def spec_from_json(obj) -> ToeplitzSpec:
    """Decode {"n": N, "diag": [...]} with uniformly encoded entries."""
    if not isinstance(obj, dict) or set(obj) != {"n", "diag"}:
        raise SpecFormatError("spec must be an object with keys n and diag")
    n, diag = obj["n"], obj["diag"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecFormatError(f"n must be a positive integer, got {n!r}")
    if not isinstance(diag, list) or len(diag) != 2 * n + 1:
        raise SpecFormatError(f"diag must list exactly {2 * n + 1} scalars")
    entries = [scalar_from_json(e) for e in diag]
    kinds = {isinstance(e, complex) for e in entries}
    if len(kinds) > 1:
        raise SpecFormatError("diag mixes exact and floating entries")
    return from_diagonals(entries)
