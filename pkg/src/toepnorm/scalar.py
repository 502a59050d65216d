"""Scalar domains and the comparison policy shared by every other module.

Two domains are supported and never mixed inside one matrix:

* exact -- Gaussian rationals (:class:`GaussianRational`), with plain
  ``int`` / ``fractions.Fraction`` values serving as the real subdomain.
  Arithmetic is closed and zero tests are literal equality.
* approximate -- built-in ``complex`` (``float`` for reals), compared
  under a relative tolerance with an absolute floor.

Algorithms elsewhere rely only on the tiny protocol all these types share:
``+ - * /``, ``conjugate()`` and the ``real`` / ``imag`` attributes.  That
keeps one arithmetic kernel for both domains, and for real and complex data.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "Mode",
    "ScalarPolicy",
    "SpecFormatError",
    "abs_sq",
    "as_complex",
    "is_unit_modulus",
    "rational_unit_circle",
    "scalar_from_json",
    "scalar_to_json",
]


class SpecFormatError(ValueError):
    """An input document or sequence does not match the expected layout."""


_HASH_IMAG = sys.hash_info.imag


def _coerce(value):
    """Lift an exact value to GaussianRational; refuse floats and complex."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, Rational) and not isinstance(value, bool):
        return GaussianRational(value)
    return None


class GaussianRational:
    """Complex number with exact rational real and imaginary parts.

    Construction accepts anything ``fractions.Fraction`` accepts, so
    ``GaussianRational(3, 4) / 5`` and ``GaussianRational("3/5", "4/5")``
    denote the same value.  Instances are immutable and hashable; mixing
    with ``float`` or ``complex`` operands is refused rather than silently
    degrading to floating point.
    """

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        object.__setattr__(self, "real", Fraction(real))
        object.__setattr__(self, "imag", Fraction(imag))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.real, -self.imag)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.real - self.real, o.imag - self.imag)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.real * o.real - self.imag * o.imag,
            self.real * o.imag + self.imag * o.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d = o.real * o.real + o.imag * o.imag
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.real * o.real + self.imag * o.imag) / d,
            (self.imag * o.real - self.real * o.imag) / d,
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            return NotImplemented
        if exponent < 0:
            return (GaussianRational(1) / self) ** (-exponent)
        result = GaussianRational(1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.imag == 0 and self.real == other
        return NotImplemented

    def __hash__(self):
        # Same combination CPython uses for complex, so a real-valued
        # GaussianRational hashes like the equal int/Fraction.
        return hash(self.real) + _HASH_IMAG * hash(self.imag)

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __abs__(self) -> float:
        return math.hypot(float(self.real), float(self.imag))

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"GaussianRational({str(self.real)!r}, {str(self.imag)!r})"

    def __str__(self):
        if self.imag == 0:
            return str(self.real)
        sign = "+" if self.imag >= 0 else "-"
        return f"{self.real}{sign}{abs(self.imag)}i"


def abs_sq(z):
    """Modulus squared z*conj(z), staying inside the scalar's own domain."""
    return z.real * z.real + z.imag * z.imag


def as_complex(z) -> complex:
    """Convert any supported scalar to built-in complex."""
    return complex(z)


def rational_unit_circle(u) -> GaussianRational:
    """Exact point ((1-u^2) + 2u*i) / (1+u^2) on the unit circle.

    The map is injective in u, so distinct rational parameters give distinct
    unit-modulus Gaussian rationals.
    """
    u = Fraction(u)
    d = 1 + u * u
    return GaussianRational((1 - u * u) / d, 2 * u / d)


class Mode(Enum):
    EXACT = "exact"
    APPROX = "approx"


@dataclass(frozen=True)
class ScalarPolicy:
    """How zero tests and unit-modulus tests are decided.

    In Exact mode every comparison is literal equality and the epsilons are
    ignored.  In Approx mode a quantity r measured at scale S counts as zero
    iff ``|r| <= max(eps_rel * S, eps_abs_floor)``.
    """

    mode: Mode
    eps_rel: float = 1e-10
    eps_abs_floor: float = 1e-12

    def __post_init__(self):
        if self.eps_rel < 0 or self.eps_abs_floor < 0:
            raise ValueError("tolerances must be nonnegative")

    @classmethod
    def exact(cls) -> "ScalarPolicy":
        return cls(Mode.EXACT)

    @classmethod
    def approx(cls, eps_rel: float = 1e-10, eps_abs_floor: float = 1e-12) -> "ScalarPolicy":
        return cls(Mode.APPROX, eps_rel, eps_abs_floor)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    def threshold(self, scale) -> float:
        if self.is_exact:
            return 0
        return max(self.eps_rel * scale, self.eps_abs_floor)

    def is_zero(self, z, scale=0.0) -> bool:
        if self.is_exact:
            return z == 0
        return abs(z) <= self.threshold(scale)

    def equal(self, a, b, scale=0.0) -> bool:
        return self.is_zero(a - b, scale)

    def is_unit_modulus(self, z) -> bool:
        if self.is_exact:
            return abs_sq(z) == 1
        return abs(abs_sq(z) - 1.0) <= max(self.eps_rel, self.eps_abs_floor)


def is_unit_modulus(z, policy: ScalarPolicy) -> bool:
    """True when |z| = 1 under the policy (exact equality in Exact mode)."""
    return policy.is_unit_modulus(z)


def scalar_to_json(z):
    """Encode a scalar: fraction strings for exact values, numbers otherwise."""
    if isinstance(z, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(z, GaussianRational):
        return {"re": str(z.real), "im": str(z.imag)}
    if isinstance(z, Rational):
        return {"re": str(Fraction(z)), "im": "0"}
    if isinstance(z, (float, complex)):
        z = complex(z)
        return {"re": z.real, "im": z.imag}
    raise TypeError(f"not a scalar: {z!r}")


def _json_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def scalar_from_json(obj):
    """Decode a scalar object; strings mean exact, numbers mean approximate."""
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise SpecFormatError(f"scalar must be an object with keys re/im, got {obj!r}")
    re, im = obj["re"], obj["im"]
    if isinstance(re, str) and isinstance(im, str):
        try:
            return GaussianRational(Fraction(re), Fraction(im))
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFormatError(f"bad fraction string in scalar: {obj!r}") from exc
    if _json_number(re) and _json_number(im):
        return complex(re, im)
    raise SpecFormatError(f"scalar parts must be both strings or both numbers: {obj!r}")
