"""Generalized, basic, and multivariable hypergeometric evaluation.

Scalar evaluation comes in two modes.  Terminating mode requires a numerator
parameter in {0, -1, -2, ...} (or q^{-m} for basic series) and sums the finite
series exactly, with eager pole detection: a term whose numerator product is
already zero contributes nothing, but a nonzero term over a vanishing
denominator factor is reported as a pole instead of being divided through.
Truncated mode sums until the absolute term drops below tol * |partial sum|
for five consecutive terms (guarding against alternating-term false
convergence) or the term cap is hit.

Everything can also be lifted to a series in t: single-variable functions
accept arguments shaped lam*t or lam*t/(1-t); the two- and three-variable
kinds accept lam*t arguments and extract the t^M coefficient as the finite
sum over multi-indices of total degree M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import ConvergenceError, DomainError, PoleError
from .fields import (
    EXACT,
    FieldTag,
    as_index,
    is_exact_value,
    is_nonpositive_integer,
)
from .pochhammer import pochhammer
from .series import CoefficientStream, TruncatedSeries, compose, mobius_argument


@dataclass(frozen=True)
class HyperSpec:
    """Parameter lists of rFs (ordinary) or r-phi-s (basic, q set)."""

    numerator: tuple
    denominator: tuple
    q: object = None

    @property
    def is_basic(self) -> bool:
        return self.q is not None

    def __post_init__(self):
        if self.q is not None and not (0 < abs(complex(self.q)) < 1):
            raise DomainError("basic series need 0 < |q| < 1")


def pfq(numerator, denominator) -> HyperSpec:
    return HyperSpec(tuple(numerator), tuple(denominator))


def rphis(numerator, denominator, q) -> HyperSpec:
    return HyperSpec(tuple(numerator), tuple(denominator), q)


class Terminating(NamedTuple):
    """Sum the finite series exactly; valid on either field."""


class Truncated(NamedTuple):
    max_terms: int = 512
    tol: float = 1e-15


TERMINATING = Terminating()

_CONSECUTIVE_SMALL = 5


class TailReport(NamedTuple):
    terms: int
    last_term: float
    converged: bool


def _terminating_degree(spec: HyperSpec):
    """Smallest m with some numerator parameter forcing term m+1 to vanish."""
    best = None
    if spec.is_basic:
        for a in spec.numerator:
            m = _q_terminating_index(a, spec.q)
            if m is not None and (best is None or m < best):
                best = m
    else:
        for a in spec.numerator:
            if is_nonpositive_integer(a):
                m = -as_index(a.real if isinstance(a, complex) else a)
                if best is None or m < best:
                    best = m
    return best


def _q_terminating_index(a, q):
    """m >= 0 with a = q^{-m}, or None."""
    if is_exact_value(a) and is_exact_value(q):
        value = Fraction(a)
        step = Fraction(q)
        m = 0
        while value > 1:
            value = value * step
            m += 1
            if m > 4096:
                return None
        return m if value == 1 else None
    a = complex(a)
    q = complex(q)
    if a == 0:
        return None
    m = round(math.log(abs(a)) / -math.log(abs(q)))
    if m < 0:
        return None
    if abs(a * q**m - 1.0) < 1e-12:
        return m
    return None


def _pfq_term_ratio(spec: HyperSpec, z, k: int):
    """Multiplier taking term k to term k+1.

    A vanishing numerator product zeroes the term (and everything after it)
    before any division happens; a nonzero term over a vanishing denominator
    factor is a genuine pole and is raised eagerly.
    """
    num = 1
    for a in spec.numerator:
        num = num * (a + k)
    if num == 0:
        return 0
    den = 1
    for b in spec.denominator:
        den = den * (b + k)
    if den == 0:
        raise PoleError(
            f"denominator parameter pole at term {k + 1}: "
            f"one of {spec.denominator} lies in -N0"
        )
    return num * z / (den * (k + 1))


def _rphis_term_ratio(spec: HyperSpec, z, k: int):
    q = spec.q
    qk = q**k
    num = 1
    for a in spec.numerator:
        num = num * (1 - a * qk)
    if num == 0:
        return 0
    den = 1 - q ** (k + 1)
    for b in spec.denominator:
        den = den * (1 - b * qk)
    if den == 0:
        raise PoleError(f"basic-series denominator pole at term {k + 1}")
    extra = 1
    exponent = 1 + len(spec.denominator) - len(spec.numerator)
    if exponent:
        base = -qk
        extra = base**exponent if exponent > 0 else 1 / base ** (-exponent)
    return num * z * extra / den


def _all_exact(spec: HyperSpec, z) -> bool:
    exact = all(is_exact_value(p) for p in spec.numerator + spec.denominator)
    exact = exact and is_exact_value(z)
    return exact and (not spec.is_basic or is_exact_value(spec.q))


def _sum_terminating(spec: HyperSpec, z, degree: int):
    ratio = _rphis_term_ratio if spec.is_basic else _pfq_term_ratio
    term = Fraction(1) if _all_exact(spec, z) else complex(1.0)
    total = term
    for k in range(degree):
        term = term * ratio(spec, z, k)
        if term == 0:
            break
        total = total + term
    return total


def _sum_truncated(spec: HyperSpec, z, mode: Truncated):
    ratio = _rphis_term_ratio if spec.is_basic else _pfq_term_ratio
    term = complex(1.0)
    total = complex(1.0)
    z = complex(z)
    small_streak = 0
    shrinking = False
    last_abs = 1.0
    k = 0
    while k < mode.max_terms:
        term = term * complex(ratio(spec, z, k))
        k += 1
        if term == 0:
            return total, TailReport(k + 1, 0.0, True)
        if abs(term) < last_abs:
            shrinking = True
        last_abs = abs(term)
        total = total + term
        if abs(term) <= mode.tol * abs(total):
            small_streak += 1
            if small_streak >= _CONSECUTIVE_SMALL:
                return total, TailReport(k + 1, abs(term), True)
        else:
            small_streak = 0
    if not shrinking:
        raise ConvergenceError(
            f"terms still growing after {mode.max_terms} terms;"
            f" last |term| = {last_abs:.3e}"
        )
    return total, TailReport(k + 1, last_abs, False)


def pfq_eval(spec: HyperSpec, z, mode=TERMINATING):
    """Scalar value of the generalized hypergeometric series at z."""
    if spec.is_basic:
        raise DomainError("use rphis_eval for basic series")
    if isinstance(mode, Terminating):
        degree = _terminating_degree(spec)
        if degree is None:
            raise DomainError(
                "terminating mode needs a numerator parameter in {0, -1, -2, ...}"
            )
        return _sum_terminating(spec, z, degree)
    value, _ = _sum_truncated(spec, z, mode)
    return value


def pfq_eval_with_tail(spec: HyperSpec, z, mode: Truncated):
    """As pfq_eval in truncated mode, also reporting the bound used."""
    if spec.is_basic:
        raise DomainError("use rphis_eval for basic series")
    return _sum_truncated(spec, z, mode)


def rphis_eval(spec: HyperSpec, z, mode=TERMINATING):
    """Scalar value of the basic hypergeometric series at z.

    Includes the ((-1)^k q^binom(k,2))^(1+s-r) factor, so the value matches
    the series exactly as displayed for any r, s.
    """
    if not spec.is_basic:
        raise DomainError("rphis_eval needs a basic spec; use pfq_eval")
    if isinstance(mode, Terminating):
        degree = _terminating_degree(spec)
        if degree is None:
            raise DomainError("terminating mode needs a numerator parameter q^-m")
        return _sum_terminating(spec, z, degree)
    value, _ = _sum_truncated(spec, z, mode)
    return value


# -- multivariable kinds ----------------------------------------------------

APPELL_F1 = "appell_f1"
HUMBERT_PHI2 = "humbert_phi2"
LAURICELLA_FD3 = "lauricella_fd3"
HUMBERT_PHI2_3 = "humbert_phi2_3"

_KIND_ARITY = {APPELL_F1: 2, HUMBERT_PHI2: 2, LAURICELLA_FD3: 3, HUMBERT_PHI2_3: 3}
_KIND_PARAMS = {APPELL_F1: 4, HUMBERT_PHI2: 3, LAURICELLA_FD3: 5, HUMBERT_PHI2_3: 4}


@dataclass(frozen=True)
class MultiVarSpec:
    """One of the double/triple series.

    appell_f1(a, b, b'; c):        (a)_{m+n} (b)_m (b')_n / (c)_{m+n}
    humbert_phi2(b, b'; c):        (b)_m (b')_n / (c)_{m+n}
    lauricella_fd3(a, b1,b2,b3; c):(a)_{m+n+p} (b1)_m (b2)_n (b3)_p / (c)_{m+n+p}
    humbert_phi2_3(b1,b2,b3; c):   (b1)_m (b2)_n (b3)_p / (c)_{m+n+p}

    each term divided by the factorials of the indices and multiplied by the
    matching powers of the arguments.
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in _KIND_ARITY:
            raise DomainError(f"unknown multivariable kind {self.kind!r}")
        if len(self.params) != _KIND_PARAMS[self.kind]:
            raise DomainError(
                f"{self.kind} takes {_KIND_PARAMS[self.kind]} parameters,"
                f" got {len(self.params)}"
            )

    @property
    def arity(self) -> int:
        return _KIND_ARITY[self.kind]

    @property
    def joint_numerator(self):
        """Parameter appearing as (a)_{|index|}, or None."""
        if self.kind in (APPELL_F1, LAURICELLA_FD3):
            return self.params[0]
        return None

    @property
    def separate_numerators(self) -> tuple:
        if self.kind == APPELL_F1:
            return self.params[1:3]
        if self.kind == HUMBERT_PHI2:
            return self.params[0:2]
        if self.kind == LAURICELLA_FD3:
            return self.params[1:4]
        return self.params[0:3]

    @property
    def joint_denominator(self):
        return self.params[-1]


def _simplex(total: int, arity: int):
    if arity == 2:
        for m in range(total + 1):
            yield (m, total - m)
    else:
        for m in range(total + 1):
            for n in range(total - m + 1):
                yield (m, n, total - m - n)


def _shell_value(spec: MultiVarSpec, args, total: int, joint_ratio_cache):
    """Sum over the simplex |index| = total.

    (a)_M / (c)_M depends on the shell only, the per-index rising factorials
    are built incrementally inside the loop.
    """
    joint = joint_ratio_cache[total]
    seps = spec.separate_numerators
    shell = 0
    for index in _simplex(total, spec.arity):
        term = joint
        skip = False
        for b, m, x in zip(seps, index, args):
            if m:
                factor = pochhammer(b, m)
                if factor == 0:
                    skip = True
                    break
                term = term * factor * x**m / math.factorial(m)
        if not skip:
            shell = shell + term
    return shell


def _joint_ratios(spec: MultiVarSpec, max_total: int, field_one):
    """joint[M] = (a)_M / (c)_M (or 1/(c)_M), with eager pole detection."""
    c = spec.joint_denominator
    a = spec.joint_numerator
    out = [field_one]
    value = field_one
    for m in range(max_total):
        num = 1 if a is None else a + m
        den = c + m
        if num == 0:
            out.extend([0 * field_one] * (max_total - m))
            break
        if den == 0:
            raise PoleError(f"joint denominator parameter {c} hits a pole at shell {m + 1}")
        value = value * num / den
        out.append(value)
    return out


def multivar_eval(spec: MultiVarSpec, args: Sequence, mode=None):
    """Scalar value of the double/triple series at the given arguments.

    Terminates exactly when the joint numerator is a nonpositive integer;
    otherwise sums total-degree shells under the truncated-mode stopping rule.
    """
    if len(args) != spec.arity:
        raise DomainError(f"{spec.kind} takes {spec.arity} arguments")
    a = spec.joint_numerator
    exact = all(is_exact_value(p) for p in spec.params) and all(
        is_exact_value(x) for x in args
    )
    one = Fraction(1) if exact else complex(1.0)
    if a is not None and is_nonpositive_integer(a):
        degree = -as_index(a.real if isinstance(a, complex) else a)
        joint = _joint_ratios(spec, degree, one)
        total = 0 * one
        for m in range(degree + 1):
            total = total + _shell_value(spec, args, m, joint)
        return total
    mode = mode or Truncated()
    joint = _joint_ratios(spec, mode.max_terms, complex(1.0))
    args = [complex(x) for x in args]
    total = complex(0.0)
    streak = 0
    shell = complex(0.0)
    for m in range(mode.max_terms + 1):
        shell = _shell_value(spec, args, m, joint)
        total = total + shell
        if m and abs(shell) <= mode.tol * abs(total):
            streak += 1
            if streak >= _CONSECUTIVE_SMALL:
                return total
        else:
            streak = 0
    raise ConvergenceError(
        f"no {_CONSECUTIVE_SMALL}-shell convergence streak within degree"
        f" {mode.max_terms}; last |shell| = {abs(shell):.3e}"
    )


# -- series in t ------------------------------------------------------------


@dataclass(frozen=True)
class ArgShape:
    """Argument of a hypergeometric factor as a function of t."""

    scale: object
    over_one_minus_t: bool = False


def linear_arg(scale) -> ArgShape:
    return ArgShape(scale, False)


def mobius_arg(scale) -> ArgShape:
    return ArgShape(scale, True)


def pfq_stream(spec: HyperSpec) -> CoefficientStream:
    """Coefficient stream a_k = prod (a_i)_k / (prod (b_j)_k k!) of z^k."""
    if spec.is_basic:
        raise DomainError("basic series are not supported as t-streams")

    def ratio(k: int):
        num = 1
        for a in spec.numerator:
            num = num * (a + k)
        if num == 0:
            return 0
        den = 1
        for b in spec.denominator:
            den = den * (b + k)
        if den == 0:
            raise PoleError(
                f"denominator parameter pole at coefficient {k + 1}"
            )
        return num / (den * (k + 1))

    return CoefficientStream(Fraction(1), ratio)


def hyper_series_in_t(spec, shapes, order: int, field: FieldTag = EXACT) -> TruncatedSeries:
    """Lift a hypergeometric function to a TruncatedSeries in t.

    Single-variable specs take one ArgShape (lam*t or lam*t/(1-t), the latter
    through composition).  Multivariable specs take one lam*t shape per
    argument; the t^M coefficient is the exact finite sum over the simplex of
    total degree M.
    """
    if isinstance(shapes, ArgShape):
        shapes = [shapes]
    if isinstance(spec, HyperSpec):
        if len(shapes) != 1:
            raise DomainError("single-variable series takes one argument shape")
        shape = shapes[0]
        stream = pfq_stream(spec)
        if shape.over_one_minus_t:
            return compose(stream, mobius_argument(shape.scale, order, field), order)
        return stream.scaled_argument(field.of(shape.scale)).series(order, field)
    if isinstance(spec, MultiVarSpec):
        if len(shapes) != spec.arity:
            raise DomainError(f"{spec.kind} takes {spec.arity} argument shapes")
        if any(s.over_one_minus_t for s in shapes):
            raise DomainError(
                "multivariable series support lam*t argument shapes only"
            )
        lams = [field.of(s.scale) for s in shapes]
        joint = _joint_ratios(spec, order, field.one())
        coeffs = [_shell_value(spec, lams, m, joint) for m in range(order + 1)]
        return TruncatedSeries(field, coeffs)
    raise DomainError(f"unsupported spec type {type(spec).__name__}")
