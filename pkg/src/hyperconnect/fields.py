"""Coefficient fields.

Two backends:

* exact: arbitrary-precision rationals (``fractions.Fraction``).  Arithmetic
  never rounds, values are always in canonical reduced form (denominator
  positive, gcd 1), so equality is structural.
* numeric: complex double.  NaN and infinity are rejected at construction;
  comparison only happens through an explicit mixed tolerance
  ``|x - y| <= atol + rtol * max(|x|, |y|)``.

A ``FieldTag`` names the field a value or series lives in and carries the
numeric tolerances.  Values themselves are plain ``Fraction``/``complex``
objects; all operations on them are pure, so they are safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, FieldError

ExactScalar = Fraction
NumericScalar = complex

DEFAULT_ATOL = 1e-10
DEFAULT_RTOL = 1e-10


@dataclass(frozen=True)
class FieldTag:
    """Field marker: kind 'exact' carries no tolerance, 'numeric' carries one."""

    kind: str
    atol: float | None = None
    rtol: float | None = None

    def __post_init__(self):
        if self.kind == "exact":
            if self.atol is not None or self.rtol is not None:
                raise FieldError("exact field carries no tolerance")
        elif self.kind == "numeric":
            if self.atol is None or self.rtol is None:
                raise FieldError("numeric field needs atol and rtol")
            if not (self.atol > 0.0) or self.rtol < 0.0:
                raise FieldError("numeric tolerance must be positive")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def of(self, value):
        """Coerce ``value`` into this field, validating invariants."""
        return as_exact(value) if self.is_exact else as_numeric(value)

    def zero(self):
        return Fraction(0) if self.is_exact else complex(0.0)

    def one(self):
        return Fraction(1) if self.is_exact else complex(1.0)

    def eq(self, a, b) -> bool:
        if self.is_exact:
            return a == b
        a, b = complex(a), complex(b)
        return abs(a - b) <= self.atol + self.rtol * max(abs(a), abs(b))

    def serialize(self, value):
        """Exact scalars as the canonical string 'p/q' ('p' when q = 1),
        numeric scalars as [re, im]."""
        if self.is_exact:
            return str(as_exact(value))
        v = as_numeric(value)
        return [v.real, v.imag]

    def deserialize(self, payload):
        if self.is_exact:
            return parse_rational(payload)
        if isinstance(payload, (list, tuple)) and len(payload) == 2:
            return as_numeric(complex(payload[0], payload[1]))
        return as_numeric(payload)


EXACT = FieldTag("exact")


def numeric(atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL) -> FieldTag:
    return FieldTag("numeric", atol, rtol)


NUMERIC = numeric()


def is_exact_value(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def as_exact(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        if isinstance(value, str):
            return parse_rational(value)
        raise FieldError(
            f"exact field holds rationals, not {type(value).__name__};"
            " write the value as a ratio like '3/10'"
        )
    return Fraction(value)


def as_numeric(value) -> complex:
    if isinstance(value, bool):
        raise FieldError("bool is not a scalar")
    if isinstance(value, Fraction):
        value = value.numerator / value.denominator
    v = complex(value)
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise DomainError(f"numeric scalar must be finite, got {value!r}")
    return v


def parse_rational(text) -> Fraction:
    """Parse 'p/q' or 'p'.  Decimals are refused: silently reading '0.4' as
    2/5 would fake exactness, so the caller must spell the ratio out."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    s = str(text).strip()
    if any(ch in s for ch in ".eE") and not s.lstrip("+-").isdigit():
        raise DomainError(
            f"exact values use rational literals like '2/5', got {text!r}"
        )
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational literal {text!r}") from exc


def is_integer_valued(value) -> bool:
    if isinstance(value, int) and not isinstance(value, bool):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    if isinstance(value, float):
        return value == int(value)
    if isinstance(value, complex):
        return value.imag == 0.0 and value.real == int(value.real)
    return False


def is_nonpositive_integer(value) -> bool:
    """True when value is in {0, -1, -2, ...} exactly."""
    if not is_integer_valued(value):
        return False
    if isinstance(value, complex):
        return value.real <= 0
    return value <= 0


def as_index(value, name: str = "index") -> int:
    if not is_integer_valued(value):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    n = int(value.real) if isinstance(value, complex) else int(value)
    return n
