"""Truncated formal power series in one symbol t.

A TruncatedSeries holds coefficients c_0..c_N of one field.  Every identity in
this package is ultimately a statement that two such series agree
coefficientwise, exactly on the exact field or within the field tolerance on
the numeric one.  Mixed-order arithmetic truncates to the smaller order, which
is what "equal up to order N" means; multiplication is the Cauchy product
truncated at the result order.

Values are immutable and operations pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError, FieldError, PoleError
from .fields import EXACT, NUMERIC, FieldTag


class TruncatedSeries:
    __slots__ = ("field", "coefficients")

    def __init__(self, field: FieldTag, coefficients):
        object.__setattr__(self, "field", field)
        object.__setattr__(
            self, "coefficients", tuple(field.of(c) for c in coefficients)
        )
        if not self.coefficients:
            raise DomainError("a series needs at least the constant coefficient")

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def zero(cls, order: int, field: FieldTag = EXACT) -> "TruncatedSeries":
        return cls(field, [field.zero()] * (order + 1))

    @classmethod
    def one(cls, order: int, field: FieldTag = EXACT) -> "TruncatedSeries":
        return cls(field, [field.one()] + [field.zero()] * order)

    @classmethod
    def constant(cls, value, order: int, field: FieldTag = EXACT) -> "TruncatedSeries":
        return cls(field, [field.of(value)] + [field.zero()] * order)

    def coefficient(self, j: int):
        return self.coefficients[j]

    # -- arithmetic ---------------------------------------------------------

    def _check_field(self, other: "TruncatedSeries"):
        if self.field != other.field:
            raise FieldError(
                f"field mismatch: {self.field.kind} vs {other.field.kind}"
            )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_field(other)
        n = min(self.order, other.order)
        return TruncatedSeries(
            self.field,
            [self.coefficients[i] + other.coefficients[i] for i in range(n + 1)],
        )

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_field(other)
        n = min(self.order, other.order)
        return TruncatedSeries(
            self.field,
            [self.coefficients[i] - other.coefficients[i] for i in range(n + 1)],
        )

    def __neg__(self):
        return TruncatedSeries(self.field, [-c for c in self.coefficients])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check_field(other)
        n = min(self.order, other.order)
        zero = self.field.zero()
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coefficients[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coefficients[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(self.field, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar) -> "TruncatedSeries":
        s = self.field.of(scalar)
        return TruncatedSeries(self.field, [c * s for c in self.coefficients])

    def truncate_to(self, m: int) -> "TruncatedSeries":
        """[f]_m: keep c_0..c_m.  m may not exceed the stored order."""
        if m > self.order:
            raise DomainError(f"cannot truncate order {self.order} series to {m}")
        if m < 0:
            raise DomainError("truncation order must be >= 0")
        return TruncatedSeries(self.field, self.coefficients[: m + 1])

    def padded_to(self, order: int) -> "TruncatedSeries":
        """Zero-extend: exact for polynomials and truncated tails."""
        if order < self.order:
            raise DomainError("padded_to cannot shrink; use truncate_to")
        zero = self.field.zero()
        return TruncatedSeries(
            self.field, self.coefficients + (zero,) * (order - self.order)
        )

    def shifted(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k; order grows by k."""
        if k < 0:
            raise DomainError("shift must be >= 0")
        zero = self.field.zero()
        return TruncatedSeries(self.field, (zero,) * k + self.coefficients)

    def evaluate(self, t0):
        """Polynomial value sum c_j t0^j by Horner."""
        t0 = self.field.of(t0)
        acc = self.field.zero()
        for c in reversed(self.coefficients):
            acc = acc * t0 + c
        return acc

    # -- comparison ---------------------------------------------------------

    def equals(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise equality up to the shared order, per the field."""
        self._check_field(other)
        n = min(self.order, other.order)
        return all(
            self.field.eq(self.coefficients[i], other.coefficients[i])
            for i in range(n + 1)
        )

    def first_mismatch(self, other: "TruncatedSeries"):
        self._check_field(other)
        n = min(self.order, other.order)
        for i in range(n + 1):
            if not self.field.eq(self.coefficients[i], other.coefficients[i]):
                return i
        return None

    def max_deviation(self, other: "TruncatedSeries") -> float:
        self._check_field(other)
        n = min(self.order, other.order)
        return max(
            abs(complex(self.coefficients[i]) - complex(other.coefficients[i]))
            for i in range(n + 1)
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.field == other.field and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.field, self.coefficients))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coefficients[:5])
        tail = ", ..." if self.order > 4 else ""
        return f"TruncatedSeries(order={self.order}, [{shown}{tail}])"

    # -- serialization ------------------------------------------------------

    def as_json(self) -> dict:
        return {
            "order": self.order,
            "field": self.field.kind,
            "coefficients": [self.field.serialize(c) for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "TruncatedSeries":
        field = EXACT if payload["field"] == "exact" else NUMERIC
        return cls(field, [field.deserialize(c) for c in payload["coefficients"]])


@dataclass(frozen=True)
class CoefficientStream:
    """Series coefficients given by a_0 and the term ratio a_{k+1}/a_k.

    Once a coefficient is exactly zero the stream has terminated: rising
    factorials that reach zero stay zero, so the remaining coefficients are
    zero without ever evaluating a ratio past the termination point (where a
    denominator pole may sit).
    """

    first: object
    ratio: Callable[[int], object]

    def coefficients(self, order: int, field: FieldTag):
        out = [field.of(self.first)]
        for k in range(order):
            current = out[-1]
            if current == 0:
                out.extend([field.zero()] * (order - k))
                break
            try:
                step = self.ratio(k)
            except ZeroDivisionError:
                raise PoleError(f"term ratio has a pole at index {k}") from None
            out.append(field.of(current * step))
        return out

    def series(self, order: int, field: FieldTag) -> TruncatedSeries:
        return TruncatedSeries(field, self.coefficients(order, field))

    def scaled_argument(self, lam) -> "CoefficientStream":
        """Stream of a_k lam^k: the same function evaluated at lam*t."""
        return CoefficientStream(self.first, lambda k: self.ratio(k) * lam)


def geometric_stream() -> CoefficientStream:
    return CoefficientStream(Fraction(1), lambda k: Fraction(1))


def binomial_power(kappa, a, order: int, field: FieldTag = EXACT) -> TruncatedSeries:
    """(1 - kappa t)^(-a) with coefficient pochhammer(a, n) kappa^n / n!.

    Built by the recurrence c_{n+1} = c_n kappa (a+n)/(n+1); exact inputs stay
    exact and nothing overflows in the numeric field.
    """
    kappa = field.of(kappa)
    a = field.of(a)
    coeffs = [field.one()]
    for n in range(order):
        coeffs.append(coeffs[-1] * kappa * (a + n) / (n + 1))
    return TruncatedSeries(field, coeffs)


def exp_series(kappa, order: int, field: FieldTag = EXACT) -> TruncatedSeries:
    """exp(kappa t): coefficient kappa^n / n!."""
    kappa = field.of(kappa)
    coeffs = [field.one()]
    for n in range(order):
        coeffs.append(coeffs[-1] * kappa / (n + 1))
    return TruncatedSeries(field, coeffs)


def linear_factor_product(kappas, order: int, field: FieldTag = EXACT) -> TruncatedSeries:
    """prod_j (1 - kappa_j t), exact polynomial when there are <= order factors."""
    result = TruncatedSeries.one(order, field)
    for kappa in kappas:
        factor = TruncatedSeries(
            field,
            [field.one(), -field.of(kappa)] + [field.zero()] * max(0, order - 1),
        )
        result = result * factor.truncate_to(order)
    return result


def q_binomial_series(a, kappa, q, order: int, field: FieldTag = EXACT) -> TruncatedSeries:
    """Series with coefficient kappa^n (a;q)_n / (q;q)_n.

    This is the expansion of (a kappa t; q)_inf / (kappa t; q)_inf by the
    q-binomial theorem.
    """
    a = field.of(a)
    kappa = field.of(kappa)
    q = field.of(q)
    if q == 0:
        raise DomainError("q_binomial_series needs q != 0")
    coeffs = [field.one()]
    num = field.one()
    den = field.one()
    qn = field.one()
    kn = field.one()
    for n in range(order):
        num = num * (field.one() - a * qn)
        qn = qn * q
        den_factor = field.one() - qn
        if den_factor == 0:
            raise PoleError(f"(q;q)_{n + 1} vanishes for q = {q}")
        den = den * den_factor
        kn = kn * kappa
        coeffs.append(kn * num / den)
    return TruncatedSeries(field, coeffs)


def mobius_argument(lam, order: int, field: FieldTag = EXACT) -> TruncatedSeries:
    """lam * t / (1 - t) = lam (t + t^2 + ...), zero constant term."""
    lam = field.of(lam)
    return TruncatedSeries(field, [field.zero()] + [lam] * order)


def compose(outer: CoefficientStream, inner: TruncatedSeries, order: int) -> TruncatedSeries:
    """sum_k a_k inner(t)^k truncated at ``order``.

    Horner accumulation in the inner series: order-many multiplications,
    which is plenty at the orders used here.  The inner constant term must
    vanish, otherwise every outer coefficient would contribute at t^0.
    """
    field = inner.field
    if inner.coefficients[0] != 0:
        raise DomainError("compose needs inner series with zero constant term")
    coeffs = outer.coefficients(order, field)
    inner = inner.truncate_to(min(order, inner.order)).padded_to(order)
    result = TruncatedSeries.constant(coeffs[order], order, field)
    for k in range(order - 1, -1, -1):
        result = result * inner + TruncatedSeries.constant(coeffs[k], order, field)
    return result


def q_exp_lower(kappa, q, order: int, field: FieldTag = NUMERIC) -> TruncatedSeries:
    """(kappa t; q)_inf as a series: coefficient (-kappa)^n q^{n(n-1)/2}/(q;q)_n."""
    kappa = field.of(kappa)
    q = field.of(q)
    coeffs = [field.one()]
    c = field.one()
    qpow = field.one()  # q^{n-1} entering at step n
    qn = field.one()
    for n in range(order):
        qn = qn * q
        denom = field.one() - qn
        if denom == 0:
            raise PoleError(f"(q;q)_{n + 1} vanishes for q = {q}")
        c = c * (-kappa) * qpow / denom
        qpow = qpow * q
        coeffs.append(c)
    return TruncatedSeries(field, coeffs)


def q_exp_upper(kappa, q, order: int, field: FieldTag = NUMERIC) -> TruncatedSeries:
    """1 / (kappa t; q)_inf as a series: coefficient kappa^n / (q;q)_n."""
    return q_binomial_series(field.zero(), kappa, q, order, field)
