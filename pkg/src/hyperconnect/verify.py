"""Build both sides of every supported identity and compare them.

Generating-function identities are compared as truncated series: the left
side from elementary factors (exponentials, binomial powers, hypergeometric
series in t, compositions for arguments of the form lam*t/(1-t)), the right
side as sum_n coefficient_n(t) P_n t^n with coefficient_n itself a series.
On the exact field a pass means literal coefficient equality.

Orthogonality identities are weighted sums over the lattice x = 0, 1, 2, ...
The finite Krawtchouk sums are exact.  The infinite Meixner sums accumulate
exact rational partial sums up to x_max, with the kernels

    f(x) = 1F1(-x; alpha; z)        g(x) = 2F1(-x, gamma; alpha; w)

produced by the three-term recurrences

    (alpha+x) f(x+1) = (2x+alpha-z) f(x) - x f(x-1)
    (alpha+x) g(x+1) = (2x+alpha-(gamma+x)w) g(x) - x(1-w) g(x-1)

so no cancellation-prone alternating sums are ever formed.  The discarded
tail is bounded by a geometric series with the observed term ratio and added
to the error budget; when the bound alone exceeds the tolerance the verdict
is 'inconclusive', which is deliberately distinct from 'fail'.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from . import connection as conn
from . import families
from .errors import DomainError, HyperconnectError, UnknownIdentityError
from .fields import (
    EXACT,
    FieldTag,
    as_index,
    is_exact_value,
    numeric,
)
from .hyper import (
    APPELL_F1,
    HUMBERT_PHI2,
    HUMBERT_PHI2_3,
    LAURICELLA_FD3,
    MultiVarSpec,
    hyper_series_in_t,
    linear_arg,
    mobius_arg,
    pfq,
)
from .pochhammer import (
    offset_rising_bound_holds,
    pochhammer,
    rising_abs_lower_bound_holds,
    rising_over_factorial_bound_holds,
    shifted_rising_bound_holds,
)
from .series import TruncatedSeries, binomial_power, exp_series


@dataclass(frozen=True)
class IdentityCase:
    """One theorem instance: identity id, parameters, order, comparison field,
    and the tail cap for infinite sums."""

    identity: str
    params: MappingProxyType
    order: int | None = None
    field: FieldTag = EXACT
    x_max: int = 300

    def __post_init__(self):
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    def as_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: _serialize_value(v) for k, v in sorted(self.params.items())},
            "order": self.order,
            "field": self.field.kind,
            "x_max": self.x_max,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "IdentityCase":
        field = EXACT if doc["field"] == "exact" else numeric()
        return cls(
            identity=doc["identity"],
            params={k: _deserialize_value(v) for k, v in doc["params"].items()},
            order=doc.get("order"),
            field=field,
            x_max=doc.get("x_max", 300),
        )


def _serialize_value(v):
    if isinstance(v, (tuple, list)):
        return [_serialize_value(item) for item in v]
    if isinstance(v, str):
        return v
    if is_exact_value(v):
        return str(Fraction(v))
    c = complex(v)
    return [c.real, c.imag]


def _deserialize_value(v):
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            return v  # identity ids and other names pass through
    if isinstance(v, list) and len(v) == 2 and all(isinstance(u, (int, float)) for u in v):
        return complex(v[0], v[1])
    if isinstance(v, list):
        return tuple(_deserialize_value(item) for item in v)
    return Fraction(v)


@dataclass(frozen=True)
class VerificationReport:
    case: IdentityCase
    status: str  # pass | fail | error | inconclusive
    deviation: float | None = None
    first_failing_order: int | None = None
    terms_summed: int | None = None
    tail_bound: float | None = None
    millis: float = 0.0
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_json(self) -> dict:
        return {
            "case": self.case.as_json(),
            "status": self.status,
            "deviation": self.deviation,
            "first_failing_order": self.first_failing_order,
            "terms_summed": self.terms_summed,
            "tail_bound": self.tail_bound,
            "detail": self.detail,
            "millis": self.millis,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "VerificationReport":
        return cls(
            case=IdentityCase.from_json(doc["case"]),
            status=doc["status"],
            deviation=doc.get("deviation"),
            first_failing_order=doc.get("first_failing_order"),
            terms_summed=doc.get("terms_summed"),
            tail_bound=doc.get("tail_bound"),
            millis=doc.get("millis", 0.0),
            detail=doc.get("detail"),
        )


def _meixner(n, x, alpha, c):
    return families.family_eval("meixner", n, x, {"alpha": alpha, "c": c})


def _krawtchouk(n, x, p, cap):
    return families.family_eval("krawtchouk", n, x, {"p": p, "N": cap})


def _fact(n: int) -> int:
    return math.factorial(n)


# -- generalized generating functions: one builder per identity --------------


def _build_meixner_1f1_two_param(p, order, field):
    x, alpha, beta, c, d = p["x"], p["alpha"], p["beta"], p["c"], p["d"]
    lam = (1 - c) / c
    ratio = d * (1 - c) / (c * (1 - d))
    lhs = hyper_series_in_t(pfq((-x,), (alpha,)), linear_arg(lam), order, field)
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = (
            pochhammer(beta, n) / (pochhammer(alpha, n) * _fact(n)) * ratio**n
            * _meixner(n, x, beta, d)
        )
        inner = hyper_series_in_t(
            pfq((beta + n,), (alpha + n,)), linear_arg(-ratio), order - n, field
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _build_meixner_1f1_alpha_shift(p, order, field):
    x, alpha, beta, c = p["x"], p["alpha"], p["beta"], p["c"]
    lam = (1 - c) / c
    lhs = exp_series(1, order, field) * hyper_series_in_t(
        pfq((-x,), (alpha,)), linear_arg(lam), order, field
    )
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = (
            pochhammer(beta, n) / (pochhammer(alpha, n) * _fact(n))
            * _meixner(n, x, beta, c)
        )
        inner = hyper_series_in_t(
            pfq((alpha - beta,), (alpha + n,)), linear_arg(1), order - n, field
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _build_meixner_1f1_c_shift(p, order, field):
    x, alpha, c, d = p["x"], p["alpha"], p["c"], p["d"]
    lam = (1 - c) / c
    lhs = exp_series(1, order, field) * hyper_series_in_t(
        pfq((-x,), (alpha,)), linear_arg(lam), order, field
    )
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = _meixner(n, x, alpha, d) / _fact(n)
        inner = hyper_series_in_t(
            MultiVarSpec(HUMBERT_PHI2, (x, -x, alpha + n)),
            [linear_arg(1 / d), linear_arg(1 / c)],
            order - n, field,
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _build_meixner_1f1_two_param_triple(p, order, field):
    x, alpha, beta, c, d = p["x"], p["alpha"], p["beta"], p["c"], p["d"]
    lam = (1 - c) / c
    lhs = exp_series(1, order, field) * hyper_series_in_t(
        pfq((-x,), (alpha,)), linear_arg(lam), order, field
    )
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = (
            pochhammer(beta, n) / (pochhammer(alpha, n) * _fact(n))
            * _meixner(n, x, beta, d)
        )
        inner = hyper_series_in_t(
            MultiVarSpec(HUMBERT_PHI2_3, (x, -x, alpha - beta, alpha + n)),
            [linear_arg(1 / d), linear_arg(1 / c), linear_arg(1)],
            order - n, field,
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _meixner_2f1_lhs(x, alpha, gamma, c, order, field):
    lam = (1 - c) / c
    return binomial_power(1, gamma, order, field) * hyper_series_in_t(
        pfq((gamma, -x), (alpha,)), mobius_arg(lam), order, field
    )


def _build_meixner_2f1_alpha_shift(p, order, field):
    x, alpha, beta, c, gamma = p["x"], p["alpha"], p["beta"], p["c"], p["gamma"]
    lhs = _meixner_2f1_lhs(x, alpha, gamma, c, order, field)
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = (
            pochhammer(gamma, n) * pochhammer(beta, n)
            / (pochhammer(alpha, n) * _fact(n)) * _meixner(n, x, beta, c)
        )
        inner = hyper_series_in_t(
            pfq((gamma + n, alpha - beta), (alpha + n,)), linear_arg(1),
            order - n, field,
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _build_meixner_2f1_two_param(p, order, field):
    x, alpha, beta, c, d, gamma = (
        p["x"], p["alpha"], p["beta"], p["c"], p["d"], p["gamma"],
    )
    ratio = d * (1 - c) / (c * (1 - d))
    lhs = _meixner_2f1_lhs(x, alpha, gamma, c, order, field)
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = (
            pochhammer(gamma, n) * pochhammer(beta, n)
            / (pochhammer(alpha, n) * _fact(n)) * ratio**n
            * _meixner(n, x, beta, d)
        )
        inner = binomial_power(1, gamma + n, order - n, field) * hyper_series_in_t(
            pfq((gamma + n, beta + n), (alpha + n,)), mobius_arg(-ratio),
            order - n, field,
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _build_meixner_2f1_c_shift(p, order, field):
    x, alpha, c, d, gamma = p["x"], p["alpha"], p["c"], p["d"], p["gamma"]
    lhs = _meixner_2f1_lhs(x, alpha, gamma, c, order, field)
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = pochhammer(gamma, n) / _fact(n) * _meixner(n, x, alpha, d)
        inner = hyper_series_in_t(
            MultiVarSpec(APPELL_F1, (gamma + n, x, -x, alpha + n)),
            [linear_arg(1 / d), linear_arg(1 / c)],
            order - n, field,
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


def _build_meixner_2f1_two_param_triple(p, order, field):
    x, alpha, beta, c, d, gamma = (
        p["x"], p["alpha"], p["beta"], p["c"], p["d"], p["gamma"],
    )
    lhs = _meixner_2f1_lhs(x, alpha, gamma, c, order, field)
    rhs = TruncatedSeries.zero(order, field)
    for n in range(order + 1):
        coeff = (
            pochhammer(beta, n) * pochhammer(gamma, n)
            / (pochhammer(alpha, n) * _fact(n)) * _meixner(n, x, beta, d)
        )
        inner = hyper_series_in_t(
            MultiVarSpec(LAURICELLA_FD3, (gamma + n, x, -x, alpha - beta, alpha + n)),
            [linear_arg(1 / d), linear_arg(1 / c), linear_arg(1)],
            order - n, field,
        )
        rhs = rhs + inner.scale(coeff).shifted(n)
    return lhs, rhs


# Krawtchouk sides carry the degree-N truncation brackets exactly as
# displayed: inner pieces are built at order N-n, then shifted by t^n.


def _kraw_1f1_lhs(x, p_, cap, order, field):
    work = min(order, cap)
    lhs = exp_series(1, work, field) * hyper_series_in_t(
        pfq((-x,), (Fraction(-cap),)), linear_arg(-1 / p_), work, field
    )
    return lhs.padded_to(order)


def _kraw_2f1_lhs(x, p_, cap, gamma, order, field):
    work = min(order, cap)
    lhs = binomial_power(1, gamma, work, field) * hyper_series_in_t(
        pfq((gamma, -x), (Fraction(-cap),)), mobius_arg(-1 / p_), work, field
    )
    return lhs.padded_to(order)


def _bracketed_terms(order, cap, inner_builder):
    """Terms [inner_n]_{cap-n} t^n for n = 0..min(cap, order), padded to order."""
    for n in range(min(cap, order) + 1):
        inner_order = min(cap - n, order - n)
        yield n, inner_builder(n, inner_order).padded_to(order - n).shifted(n)


def _build_krawtchouk_1f1_two_param(p, order, field):
    x, pp, qq = p["x"], p["p"], p["q"]
    cap, big = as_index(p["N"], "N"), as_index(p["M"], "M")
    _check_kraw_sizes(cap, big)
    lhs = _kraw_1f1_lhs(x, pp, cap, order, field)

    def inner(n, inner_order):
        return exp_series(1, inner_order, field) * hyper_series_in_t(
            pfq((Fraction(n - big),), (Fraction(n - cap),)),
            linear_arg(-qq / pp), inner_order, field,
        )

    rhs = TruncatedSeries.zero(order, field)
    for n, term in _bracketed_terms(order, cap, inner):
        coeff = (
            pochhammer(Fraction(-big), n) / (pochhammer(Fraction(-cap), n) * _fact(n))
            * (qq / pp) ** n * _krawtchouk(n, x, qq, big)
        )
        rhs = rhs + term.scale(coeff)
    return lhs, rhs


def _build_krawtchouk_1f1_degree_shift(p, order, field):
    x, pp = p["x"], p["p"]
    cap, big = as_index(p["N"], "N"), as_index(p["M"], "M")
    _check_kraw_sizes(cap, big)
    lhs = _kraw_1f1_lhs(x, pp, cap, order, field)

    def inner(n, inner_order):
        return hyper_series_in_t(
            pfq((Fraction(big - cap),), (Fraction(n - cap),)),
            linear_arg(1), inner_order, field,
        )

    rhs = TruncatedSeries.zero(order, field)
    for n, term in _bracketed_terms(order, cap, inner):
        coeff = (
            pochhammer(Fraction(-big), n) / (pochhammer(Fraction(-cap), n) * _fact(n))
            * _krawtchouk(n, x, pp, big)
        )
        rhs = rhs + term.scale(coeff)
    return lhs, rhs


def _build_krawtchouk_1f1_prob_shift(p, order, field):
    x, pp, qq = p["x"], p["p"], p["q"]
    cap = as_index(p["N"], "N")
    lhs = _kraw_1f1_lhs(x, pp, cap, order, field)

    def inner(n, inner_order):
        return exp_series(1 - qq / pp, inner_order, field)

    rhs = TruncatedSeries.zero(order, field)
    for n, term in _bracketed_terms(order, cap, inner):
        coeff = (qq / pp) ** n / _fact(n) * _krawtchouk(n, x, qq, cap)
        rhs = rhs + term.scale(coeff)
    return lhs, rhs


def _build_krawtchouk_2f1_two_param(p, order, field):
    x, pp, qq, gamma = p["x"], p["p"], p["q"], p["gamma"]
    cap, big = as_index(p["N"], "N"), as_index(p["M"], "M")
    _check_kraw_sizes(cap, big)
    lhs = _kraw_2f1_lhs(x, pp, cap, gamma, order, field)

    def inner(n, inner_order):
        return binomial_power(1, gamma + n, inner_order, field) * hyper_series_in_t(
            pfq((gamma + n, Fraction(n - big)), (Fraction(n - cap),)),
            mobius_arg(-qq / pp), inner_order, field,
        )

    rhs = TruncatedSeries.zero(order, field)
    for n, term in _bracketed_terms(order, cap, inner):
        coeff = (
            (qq / pp) ** n * pochhammer(Fraction(-big), n) * pochhammer(gamma, n)
            / (pochhammer(Fraction(-cap), n) * _fact(n)) * _krawtchouk(n, x, qq, big)
        )
        rhs = rhs + term.scale(coeff)
    return lhs, rhs


def _build_krawtchouk_2f1_degree_shift(p, order, field):
    x, pp, gamma = p["x"], p["p"], p["gamma"]
    cap, big = as_index(p["N"], "N"), as_index(p["M"], "M")
    _check_kraw_sizes(cap, big)
    lhs = _kraw_2f1_lhs(x, pp, cap, gamma, order, field)

    def inner(n, inner_order):
        return hyper_series_in_t(
            pfq((gamma + n, Fraction(big - cap)), (Fraction(n - cap),)),
            linear_arg(1), inner_order, field,
        )

    rhs = TruncatedSeries.zero(order, field)
    for n, term in _bracketed_terms(order, cap, inner):
        coeff = (
            pochhammer(Fraction(-big), n) * pochhammer(gamma, n)
            / (pochhammer(Fraction(-cap), n) * _fact(n))
            * _krawtchouk(n, x, pp, big)
        )
        rhs = rhs + term.scale(coeff)
    return lhs, rhs


def _build_krawtchouk_2f1_prob_shift(p, order, field):
    x, pp, qq, gamma = p["x"], p["p"], p["q"], p["gamma"]
    cap = as_index(p["N"], "N")
    lhs = _kraw_2f1_lhs(x, pp, cap, gamma, order, field)

    def inner(n, inner_order):
        return binomial_power(1 - qq / pp, gamma + n, inner_order, field)

    rhs = TruncatedSeries.zero(order, field)
    for n, term in _bracketed_terms(order, cap, inner):
        coeff = (
            pochhammer(gamma, n) / _fact(n) * (qq / pp) ** n
            * _krawtchouk(n, x, qq, cap)
        )
        rhs = rhs + term.scale(coeff)
    return lhs, rhs


def _check_kraw_sizes(cap, big):
    if cap > big:
        raise DomainError(f"need N <= M, got N = {cap}, M = {big}")


GF_IDENTITIES = {
    "meixner_1f1_two_param": (_build_meixner_1f1_two_param,
                              ("x", "alpha", "beta", "c", "d")),
    "meixner_1f1_alpha_shift": (_build_meixner_1f1_alpha_shift,
                                ("x", "alpha", "beta", "c")),
    "meixner_1f1_c_shift": (_build_meixner_1f1_c_shift,
                            ("x", "alpha", "c", "d")),
    "meixner_1f1_two_param_triple": (_build_meixner_1f1_two_param_triple,
                                     ("x", "alpha", "beta", "c", "d")),
    "meixner_2f1_alpha_shift": (_build_meixner_2f1_alpha_shift,
                                ("x", "alpha", "beta", "c", "gamma")),
    "meixner_2f1_two_param": (_build_meixner_2f1_two_param,
                              ("x", "alpha", "beta", "c", "d", "gamma")),
    "meixner_2f1_c_shift": (_build_meixner_2f1_c_shift,
                            ("x", "alpha", "c", "d", "gamma")),
    "meixner_2f1_two_param_triple": (_build_meixner_2f1_two_param_triple,
                                     ("x", "alpha", "beta", "c", "d", "gamma")),
    "krawtchouk_1f1_two_param": (_build_krawtchouk_1f1_two_param,
                                 ("x", "p", "q", "N", "M")),
    "krawtchouk_1f1_degree_shift": (_build_krawtchouk_1f1_degree_shift,
                                    ("x", "p", "N", "M")),
    "krawtchouk_1f1_prob_shift": (_build_krawtchouk_1f1_prob_shift,
                                  ("x", "p", "q", "N")),
    "krawtchouk_2f1_two_param": (_build_krawtchouk_2f1_two_param,
                                 ("x", "p", "q", "N", "M", "gamma")),
    "krawtchouk_2f1_degree_shift": (_build_krawtchouk_2f1_degree_shift,
                                    ("x", "p", "N", "M", "gamma")),
    "krawtchouk_2f1_prob_shift": (_build_krawtchouk_2f1_prob_shift,
                                  ("x", "p", "q", "N", "gamma")),
}


def identity_ids() -> tuple:
    return tuple(GF_IDENTITIES)


def build_sides(case: IdentityCase):
    """(lhs, rhs) series for a generating-function identity case."""
    try:
        builder, names = GF_IDENTITIES[case.identity]
    except KeyError:
        raise UnknownIdentityError(
            f"unknown identity {case.identity!r}; known: {', '.join(GF_IDENTITIES)}"
        ) from None
    missing = set(names) - set(case.params)
    if missing:
        raise DomainError(f"{case.identity} needs parameter(s) {sorted(missing)}")
    unknown = set(case.params) - set(names)
    if unknown:
        raise DomainError(
            f"{case.identity} does not take parameter(s) {sorted(unknown)};"
            f" expected {sorted(names)}"
        )
    if case.order is None:
        raise DomainError("generating-function cases need an order")
    params = {k: case.field.of(v) for k, v in case.params.items() if k in names}
    if "N" in names:
        params["N"] = case.params["N"]
    if "M" in names:
        params["M"] = case.params["M"]
    return builder(params, case.order, case.field)


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, (time.perf_counter() - start) * 1000.0


def verify_gf_identity(case: IdentityCase) -> VerificationReport:
    def run():
        lhs, rhs = build_sides(case)
        mismatch = lhs.first_mismatch(rhs)
        deviation = lhs.max_deviation(rhs)
        if mismatch is None:
            return VerificationReport(case, "pass", deviation=deviation)
        return VerificationReport(
            case, "fail", deviation=deviation, first_failing_order=mismatch
        )

    return _guard(case, run)


def _guard(case, run) -> VerificationReport:
    start = time.perf_counter()
    try:
        report = run()
    except HyperconnectError as exc:
        report = VerificationReport(case, "error", detail=f"{type(exc).__name__}: {exc}")
    millis = (time.perf_counter() - start) * 1000.0
    return VerificationReport(**{**report.__dict__, "millis": millis})


# -- connection-relation verification ----------------------------------------

_DEFAULT_X_SAMPLES = (Fraction(0), Fraction(1), Fraction(5, 2), Fraction(4),
                      Fraction(-3, 7))


def verify_connection_relation(relation_id: str, params, n_max: int,
                               x_samples=_DEFAULT_X_SAMPLES,
                               field: FieldTag = EXACT) -> VerificationReport:
    """Reconstruction check: the table applied to target values gives back
    the source polynomial at every sample argument and every degree."""
    case = IdentityCase(
        relation_id,
        {**dict(params), "n_max": n_max, "x_samples": tuple(x_samples)},
        order=n_max, field=field,
    )

    def run():
        spec = conn.get_relation(relation_id)
        table = conn.connection_table(relation_id, params, n_max, field)
        source, target = spec.source(params), spec.target(params)
        worst = 0.0
        for n in range(n_max + 1):
            for x in x_samples:
                wanted = families.family_eval(spec.family, n, x, source)
                got = sum(
                    (table.coefficient(n, k, x if spec.x_dependent else None)
                     * families.family_eval(spec.family, k, x, target))
                    for k in range(n + 1)
                )
                worst = max(worst, abs(complex(wanted) - complex(got)))
                if not field.eq(field.of(wanted), field.of(got)):
                    return VerificationReport(
                        case, "fail", deviation=worst, first_failing_order=n,
                        detail=f"reconstruction breaks at n = {n}, x = {x}",
                    )
        return VerificationReport(case, "pass", deviation=worst)

    return _guard(case, run)


# -- orthogonality sums -------------------------------------------------------


def _confluent_kernel_values(alpha, z, count: int):
    """1F1(-x; alpha; z) for x = 0..count-1, exact, by the recurrence."""
    values = [Fraction(1)]
    if count > 1:
        values.append(1 - z / alpha)
    for x in range(1, count - 1):
        values.append(
            ((2 * x + alpha - z) * values[x] - x * values[x - 1]) / (alpha + x)
        )
    return values


def _gauss_kernel_values(gamma, alpha, w, count: int):
    """2F1(-x, gamma; alpha; w) for x = 0..count-1, exact, by the recurrence."""
    values = [Fraction(1)]
    if count > 1:
        values.append(1 - gamma * w / alpha)
    for x in range(1, count - 1):
        values.append(
            ((2 * x + alpha - (gamma + x) * w) * values[x]
             - x * (1 - w) * values[x - 1]) / (alpha + x)
        )
    return values


def _meixner_on_lattice(n: int, beta, d, count: int):
    """M_n(x; beta, d) for x = 0..count-1 (terminating sums, exact)."""
    z = 1 - 1 / d
    out = []
    for x in range(count):
        term = Fraction(1)
        total = Fraction(1)
        for k in range(n):
            term = term * Fraction((k - n) * (k - x)) * z / ((beta + k) * (k + 1))
            if term == 0:
                break
            total += term
        out.append(total)
    return out


def _weights(beta, d, count: int):
    """(beta)_x d^x / x! for x = 0..count-1."""
    out = [Fraction(1)]
    for x in range(count - 1):
        out.append(out[-1] * (beta + x) * d / (x + 1))
    return out


def _pfq_scalar_exact(nums, dens, z, rel_cut=1e-30, max_terms=4000):
    """Infinite-series value at a rational point: exact partial sums cut when
    the relative term size is far below any tolerance in play."""
    term = Fraction(1)
    total = Fraction(1)
    for k in range(max_terms):
        num = Fraction(1)
        for a in nums:
            num *= a + k
        if num == 0:
            return total
        den = Fraction(1)
        for b in dens:
            den *= b + k
        term = term * num * z / (den * (k + 1))
        total += term
        if abs(float(term)) < rel_cut * max(1.0, abs(float(total))):
            return total
    raise DomainError("closed-form series did not settle; argument too large")


def _tail_bound(terms):
    """Geometric bound on the discarded tail from the observed term decay."""
    tail_abs = [abs(float(t)) for t in terms[-4:]]
    if all(t == 0.0 for t in tail_abs):
        return 0.0
    ratios = [
        tail_abs[i + 1] / tail_abs[i]
        for i in range(len(tail_abs) - 1)
        if tail_abs[i] > 0.0
    ]
    if not ratios:
        return None
    r = max(ratios)
    if r >= 1.0:
        return None
    return tail_abs[-1] * r / (1.0 - r)


def _orth_report(case, lhs_terms, rhs_value) -> VerificationReport:
    lhs = sum(lhs_terms, Fraction(0))
    deviation = abs(float(lhs) - float(rhs_value))
    bound = _tail_bound(lhs_terms)
    tol = case.field.atol + case.field.rtol * abs(float(rhs_value))
    if bound is None or bound > tol:
        status = "inconclusive"
    elif deviation + bound <= tol:
        status = "pass"
    else:
        status = "fail"
    return VerificationReport(
        case, status, deviation=deviation,
        terms_summed=len(lhs_terms),
        tail_bound=bound if bound is not None else float("inf"),
    )


def _orth_meixner_moments(case: IdentityCase) -> VerificationReport:
    p = case.params
    alpha, c = p["alpha"], p["c"]
    n, m = as_index(p["n"], "n"), as_index(p["m"], "m")
    _require_orth(alpha > 0 and 0 < c < 1, "needs alpha > 0 and c in (0,1)")
    count = case.x_max + 1
    mn = _meixner_on_lattice(n, alpha, c, count)
    mm = mn if m == n else _meixner_on_lattice(m, alpha, c, count)
    w = _weights(alpha, c, count)
    terms = [mn[x] * mm[x] * w[x] for x in range(count)]
    if m == n:
        rhs = _fact(n) / (c**n * (1 - c) ** alpha * pochhammer(alpha, n))
    else:
        rhs = Fraction(0)
    return _orth_report(case, terms, rhs)


def _require_orth(cond: bool, message: str):
    if not cond:
        raise DomainError(message)


def _orth_meixner_1f1_same_c(case: IdentityCase) -> VerificationReport:
    p = case.params
    alpha, beta, c, t = p["alpha"], p["beta"], p["c"], p["t"]
    n = as_index(p["n"], "n")
    _require_orth(alpha > 0 and beta > 0 and 0 < c < 1,
                  "needs alpha, beta > 0 and c in (0,1)")
    count = case.x_max + 1
    kernel = _confluent_kernel_values(alpha, t * (1 - c) / c, count)
    mn = _meixner_on_lattice(n, beta, c, count)
    w = _weights(beta, c, count)
    terms = [kernel[x] * mn[x] * w[x] for x in range(count)]
    hyp = _pfq_scalar_exact((alpha - beta,), (alpha + n,), t)
    rhs = (
        float(t**n / (pochhammer(alpha, n) * c**n)) * math.exp(-float(t))
        * float(1 - c) ** -float(beta) * float(hyp)
    )
    return _orth_report(case, terms, rhs)


def _orth_meixner_1f1_two_param(case: IdentityCase) -> VerificationReport:
    p = case.params
    alpha, beta, c, d, t = p["alpha"], p["beta"], p["c"], p["d"], p["t"]
    n = as_index(p["n"], "n")
    _require_orth(alpha > 0 and beta > 0 and 0 < c < 1 and 0 < d < 1,
                  "needs alpha, beta > 0 and c, d in (0,1)")
    count = case.x_max + 1
    kernel = _confluent_kernel_values(alpha, t * (1 - c) / c, count)
    mn = _meixner_on_lattice(n, beta, d, count)
    w = _weights(beta, d, count)
    terms = [kernel[x] * mn[x] * w[x] for x in range(count)]
    ratio = d * (1 - c) / (c * (1 - d))
    hyp = _pfq_scalar_exact((beta + n,), (alpha + n,), -ratio * t)
    rhs = (
        float(t**n * (1 - c) ** n / (c**n * (1 - d) ** n * pochhammer(alpha, n)))
        * float(1 - d) ** -float(beta) * float(hyp)
    )
    return _orth_report(case, terms, rhs)


def _orth_meixner_2f1_same_c(case: IdentityCase) -> VerificationReport:
    p = case.params
    alpha, beta, gamma, c, t = p["alpha"], p["beta"], p["gamma"], p["c"], p["t"]
    n = as_index(p["n"], "n")
    _require_orth(alpha > 0 and beta > 0 and 0 < c < 1, "needs alpha, beta > 0, c in (0,1)")
    _require_orth(abs(t) < 1 and abs(t * (1 - c)) < abs(c * (1 - t)),
                  "needs |t| < 1 and |t(1-c)| < |c(1-t)|")
    count = case.x_max + 1
    w_arg = t * (1 - c) / (c * (1 - t))
    kernel = _gauss_kernel_values(gamma, alpha, w_arg, count)
    mn = _meixner_on_lattice(n, beta, c, count)
    w = _weights(beta, c, count)
    terms = [kernel[x] * mn[x] * w[x] for x in range(count)]
    hyp = _pfq_scalar_exact((alpha - beta, gamma + n), (alpha + n,), t)
    rhs = (
        float(1 - t) ** float(gamma)
        * float(pochhammer(gamma, n) * t**n / (pochhammer(alpha, n) * c**n))
        * float(1 - c) ** -float(beta) * float(hyp)
    )
    return _orth_report(case, terms, rhs)


def _orth_meixner_2f1_two_param(case: IdentityCase) -> VerificationReport:
    p = case.params
    alpha, beta, gamma, c, d, t = (
        p["alpha"], p["beta"], p["gamma"], p["c"], p["d"], p["t"],
    )
    n = as_index(p["n"], "n")
    _require_orth(alpha > 0 and beta > 0 and 0 < c < 1 and 0 < d < 1,
                  "needs alpha, beta > 0 and c, d in (0,1)")
    _require_orth(abs(t) < min(1, abs(c * d / (c + d))),
                  "needs |t| < min(1, |cd/(c+d)|)")
    count = case.x_max + 1
    w_arg = t * (1 - c) / (c * (1 - t))
    kernel = _gauss_kernel_values(gamma, alpha, w_arg, count)
    mn = _meixner_on_lattice(n, beta, d, count)
    w = _weights(beta, d, count)
    terms = [kernel[x] * mn[x] * w[x] for x in range(count)]
    ratio = d * (1 - c) / (c * (1 - d))
    hyp = _pfq_scalar_exact((gamma + n, beta + n), (alpha + n,), -ratio * t / (1 - t))
    rhs = (
        float(pochhammer(gamma, n) / ((1 - d) ** n * pochhammer(alpha, n)) * w_arg**n)
        * float(1 - d) ** -float(beta) * float(hyp)
    )
    return _orth_report(case, terms, rhs)


def _orth_krawtchouk(case: IdentityCase, with_gamma: bool) -> VerificationReport:
    p = case.params
    pp, qq, t = p["p"], p["q"], p["t"]
    cap, big = as_index(p["N"], "N"), as_index(p["M"], "M")
    n = as_index(p["n"], "n")
    _check_kraw_sizes(cap, big)
    _require_orth(n <= cap, "needs n <= N")
    gamma = p["gamma"] if with_gamma else None
    lhs = Fraction(0)
    for x in range(big + 1):
        if with_gamma:
            bracket = _kraw_2f1_lhs(Fraction(x), pp, cap, gamma, cap, EXACT)
        else:
            bracket = _kraw_1f1_lhs(Fraction(x), pp, cap, cap, EXACT)
        weight = (
            Fraction(math.comb(big, x)) * qq**x * (1 - qq) ** (big - x)
        )
        lhs += weight * bracket.evaluate(t) * _krawtchouk(n, Fraction(x), qq, big)
    inner_order = cap - n
    if with_gamma:
        inner = binomial_power(1, gamma + n, inner_order, EXACT) * hyper_series_in_t(
            pfq((gamma + n, Fraction(n - big)), (Fraction(n - cap),)),
            mobius_arg(-qq / pp), inner_order, EXACT,
        )
        prefactor = pochhammer(gamma, n) / pochhammer(Fraction(-cap), n)
    else:
        inner = exp_series(1, inner_order, EXACT) * hyper_series_in_t(
            pfq((Fraction(n - big),), (Fraction(n - cap),)),
            linear_arg(-qq / pp), inner_order, EXACT,
        )
        prefactor = 1 / pochhammer(Fraction(-cap), n)
    rhs = (t * (qq - 1) / pp) ** n * prefactor * inner.evaluate(t)
    if case.field.is_exact:
        status = "pass" if lhs == rhs else "fail"
        deviation = abs(float(lhs - rhs))
        return VerificationReport(
            case, status, deviation=deviation,
            terms_summed=big + 1, tail_bound=0.0,
        )
    deviation = abs(float(lhs) - float(rhs))
    tol = case.field.atol + case.field.rtol * abs(float(rhs))
    return VerificationReport(
        case, "pass" if deviation <= tol else "fail",
        deviation=deviation, terms_summed=big + 1, tail_bound=0.0,
    )


ORTHOGONALITY_IDS = {
    "meixner_orthogonality": (_orth_meixner_moments, ("alpha", "c", "n", "m")),
    "meixner_sum_1f1_same_c": (_orth_meixner_1f1_same_c,
                               ("alpha", "beta", "c", "t", "n")),
    "meixner_sum_1f1_two_param": (_orth_meixner_1f1_two_param,
                                  ("alpha", "beta", "c", "d", "t", "n")),
    "meixner_sum_2f1_same_c": (_orth_meixner_2f1_same_c,
                               ("alpha", "beta", "gamma", "c", "t", "n")),
    "meixner_sum_2f1_two_param": (_orth_meixner_2f1_two_param,
                                  ("alpha", "beta", "gamma", "c", "d", "t", "n")),
    "krawtchouk_sum_1f1": (lambda case: _orth_krawtchouk(case, False),
                           ("p", "q", "N", "M", "t", "n")),
    "krawtchouk_sum_2f1": (lambda case: _orth_krawtchouk(case, True),
                           ("p", "q", "N", "M", "t", "n", "gamma")),
}


def verify_orthogonality_sum(case: IdentityCase) -> VerificationReport:
    try:
        handler, names = ORTHOGONALITY_IDS[case.identity]
    except KeyError:
        raise UnknownIdentityError(
            f"unknown orthogonality id {case.identity!r}"
        ) from None

    def run():
        missing = set(names) - set(case.params)
        unknown = set(case.params) - set(names)
        if missing:
            raise DomainError(f"{case.identity} needs parameter(s) {sorted(missing)}")
        if unknown:
            raise DomainError(
                f"{case.identity} does not take parameter(s) {sorted(unknown)}"
            )
        return handler(case)

    return _guard(case, run)


# -- invariance of plain generating functions under degenerate relations -----

_PLAIN_GFS = {
    # id -> (family, builder(params, order, field), normalization c_n)
    "meixner_product_gf": (
        "meixner",
        lambda p, order, field: binomial_power(1 / p["c"], -p["x"], order, field)
        * binomial_power(1, p["x"] + p["alpha"], order, field),
        lambda p, n: pochhammer(p["alpha"], n) / _fact(n),
    ),
    "meixner_exp_gf": (
        "meixner",
        lambda p, order, field: exp_series(1, order, field) * hyper_series_in_t(
            pfq((-p["x"],), (p["alpha"],)), linear_arg((1 - p["c"]) / p["c"]),
            order, field,
        ),
        lambda p, n: Fraction(1, _fact(n)),
    ),
    "meixner_gauss_gf": (
        "meixner",
        lambda p, order, field: _meixner_2f1_lhs(
            p["x"], p["alpha"], p["gamma"], p["c"], order, field
        ),
        lambda p, n: pochhammer(p["gamma"], n) / _fact(n),
    ),
    "krawtchouk_exp_gf": (
        "krawtchouk",
        lambda p, order, field: _kraw_1f1_lhs(
            p["x"], p["p"], as_index(p["N"], "N"), order, field
        ),
        lambda p, n: Fraction(1, _fact(n)),
    ),
    "krawtchouk_gauss_gf": (
        "krawtchouk",
        lambda p, order, field: _kraw_2f1_lhs(
            p["x"], p["p"], as_index(p["N"], "N"), p["gamma"], order, field
        ),
        lambda p, n: pochhammer(p["gamma"], n) / _fact(n),
    ),
}


def verify_gf_invariance(case: IdentityCase) -> VerificationReport:
    """Re-expand a generating function through a (degenerate) connection table
    and demand the truncated series is literally unchanged."""
    gf_id = case.params["generating_function"]
    relation_id = case.params["relation"]

    def run():
        family, build, normalization = _PLAIN_GFS[gf_id]
        spec = conn.get_relation(relation_id)
        if spec.family != family:
            raise DomainError(f"{relation_id} does not apply to {family}")
        params = {k: v for k, v in case.params.items()
                  if k not in ("generating_function", "relation")}
        order = case.order
        source = spec.source(params)
        x = params["x"]
        n_cap = order
        if family == "krawtchouk":
            n_cap = min(order, as_index(params["N"], "N"))
        original = build({**source, **params}, order, case.field)
        table = conn.connection_table(relation_id, params, n_cap, case.field)
        rebuilt = TruncatedSeries.zero(order, case.field)
        target = spec.target(params)
        for k in range(n_cap + 1):
            poly = families.family_eval(family, k, x, target)
            coeff_series = [case.field.zero()] * (order + 1)
            for n in range(k, n_cap + 1):
                c_n = normalization({**source, **params}, n)
                coeff_series[n] = case.field.of(
                    c_n * table.coefficient(n, k, x if spec.x_dependent else None)
                )
            rebuilt = rebuilt + TruncatedSeries(case.field, coeff_series).scale(poly)
        mismatch = original.first_mismatch(rebuilt)
        deviation = original.max_deviation(rebuilt)
        if mismatch is None:
            return VerificationReport(case, "pass", deviation=deviation)
        return VerificationReport(case, "fail", deviation=deviation,
                                  first_failing_order=mismatch)

    return _guard(case, run)


# -- specialization chains ----------------------------------------------------


def _chain_sides(case, general_id, general_params, special_id, special_params,
                 lhs_factor=None):
    """Compare the degenerate two-parameter identity with the one-parameter
    identity it collapses to, side by side; lhs_factor multiplies both general
    sides (the exp(t) that the collapsed form keeps on its left)."""
    field, order = case.field, case.order
    general_params = {k: general_params[k] for k in GF_IDENTITIES[general_id][1]}
    special_params = {k: special_params[k] for k in GF_IDENTITIES[special_id][1]}
    general = IdentityCase(general_id, general_params, order=order, field=field)
    special = IdentityCase(special_id, special_params, order=order, field=field)
    g_lhs, g_rhs = build_sides(general)
    s_lhs, s_rhs = build_sides(special)
    if lhs_factor is not None:
        factor = lhs_factor(order, field)
        g_lhs, g_rhs = factor * g_lhs, factor * g_rhs
    mismatch = None
    deviation = 0.0
    for left, right in ((g_lhs, s_lhs), (g_rhs, s_rhs)):
        m = left.first_mismatch(right)
        deviation = max(deviation, left.max_deviation(right))
        if m is not None:
            mismatch = m if mismatch is None else min(mismatch, m)
    if mismatch is None:
        return VerificationReport(case, "pass", deviation=deviation)
    return VerificationReport(case, "fail", deviation=deviation,
                              first_failing_order=mismatch)


def _chain_meixner_1f1(case):
    p = dict(case.params)
    general = {**p, "d": p["c"]}
    special = {k: p[k] for k in ("x", "alpha", "beta", "c")}
    return _chain_sides(
        case, "meixner_1f1_two_param", general, "meixner_1f1_alpha_shift", special,
        lhs_factor=lambda order, field: exp_series(1, order, field),
    )


def _chain_meixner_2f1(case):
    p = dict(case.params)
    general = {**p, "d": p["c"]}
    special = {k: p[k] for k in ("x", "alpha", "beta", "c", "gamma")}
    return _chain_sides(case, "meixner_2f1_two_param", general,
                        "meixner_2f1_alpha_shift", special)


def _chain_kraw(case, general_id, special_id, degenerate):
    p = dict(case.params)
    general = {**p, **degenerate(p)}
    _, names = GF_IDENTITIES[special_id]
    special = {k: p[k] for k in names if k in p}
    if "M" in names and "M" not in special:
        special["M"] = p["N"]
    return _chain_sides(case, general_id, general, special_id, special)


SPECIALIZATION_CHAINS = {
    "chain_meixner_1f1_c_equals_d": _chain_meixner_1f1,
    "chain_meixner_2f1_d_equals_c": _chain_meixner_2f1,
    "chain_krawtchouk_1f1_p_equals_q": lambda case: _chain_kraw(
        case, "krawtchouk_1f1_two_param", "krawtchouk_1f1_degree_shift",
        lambda p: {"q": p["p"]},
    ),
    "chain_krawtchouk_1f1_M_equals_N": lambda case: _chain_kraw(
        case, "krawtchouk_1f1_two_param", "krawtchouk_1f1_prob_shift",
        lambda p: {"M": p["N"]},
    ),
    "chain_krawtchouk_2f1_p_equals_q": lambda case: _chain_kraw(
        case, "krawtchouk_2f1_two_param", "krawtchouk_2f1_degree_shift",
        lambda p: {"q": p["p"]},
    ),
    "chain_krawtchouk_2f1_M_equals_N": lambda case: _chain_kraw(
        case, "krawtchouk_2f1_two_param", "krawtchouk_2f1_prob_shift",
        lambda p: {"M": p["N"]},
    ),
}


# -- table agreement and bound-grid checks ------------------------------------


def _tables_agree(case, left, right, x=None):
    worst = 0.0
    for n in range(left.n_max + 1):
        for k in range(n + 1):
            a = left.coefficient(n, k, x if left.x_dependent else None)
            b = right.coefficient(n, k, x if right.x_dependent else None)
            worst = max(worst, abs(complex(a) - complex(b)))
            if not case.field.eq(case.field.of(a), case.field.of(b)):
                return VerificationReport(
                    case, "fail", deviation=worst, first_failing_order=n,
                    detail=f"tables disagree at n = {n}, k = {k}",
                )
    return VerificationReport(case, "pass", deviation=worst)


def _check_power_collect_meixner(case):
    p = dict(case.params)
    n_max = as_index(p["n_max"], "n_max")
    collected = conn.power_collect(
        "meixner",
        {"alpha": p["alpha"], "c": p["c"]},
        {"alpha": p["beta"], "c": p["c"]},
        n_max,
    )
    if collected.x_dependent:
        return VerificationReport(case, "fail",
                                  detail="power collection produced x-dependent output")
    closed = conn.connection_table("meixner_alpha_to_beta", p, n_max)
    return _tables_agree(case, collected, closed)


def _check_oracle_meixner_alpha(case):
    p = dict(case.params)
    n_max = as_index(p["n_max"], "n_max")
    solved = conn.connect_linear_solve(
        "meixner",
        {"alpha": p["alpha"], "c": p["c"]},
        {"alpha": p["beta"], "c": p["c"]},
        n_max,
    )
    closed = conn.connection_table("meixner_alpha_to_beta", p, n_max)
    return _tables_agree(case, solved, closed)


def _check_oracle_meixner_two_param(case):
    p = dict(case.params)
    n_max = as_index(p["n_max"], "n_max")
    solved = conn.connect_linear_solve(
        "meixner",
        {"alpha": p["alpha"], "c": p["c"]},
        {"alpha": p["beta"], "c": p["d"]},
        n_max,
    )
    closed = conn.connection_table("meixner_alpha_c_to_beta_d", p, n_max)
    return _tables_agree(case, solved, closed)


def _check_oracle_krawtchouk(case):
    p = dict(case.params)
    n_max = as_index(p["n_max"], "n_max")
    solved = conn.connect_linear_solve(
        "krawtchouk",
        {"p": p["p"], "N": p["N"]},
        {"p": p["q"], "N": p["M"]},
        n_max,
    )
    closed = conn.connection_table("krawtchouk_p_N_to_q_M", p, n_max)
    return _tables_agree(case, solved, closed)


def _check_oracle_al_salam_carlitz(case):
    p = dict(case.params)
    n_max = as_index(p["n_max"], "n_max")
    source = {"a": p["a_from"], "q": p["q"]}
    target = {"a": p["a_to"], "q": p["q"]}
    collected = conn.power_collect("al_salam_carlitz_1", source, target, n_max)
    solved = conn.connect_linear_solve("al_salam_carlitz_1", source, target, n_max)
    return _tables_agree(case, collected, solved)


_BOUND_GRIDS = {
    "pochhammer_bound_abs_lower": lambda: all(
        rising_abs_lower_bound_holds(complex(re, im), j)
        for re in (Fraction(1, 10), Fraction(1, 2), 1, 2, 5)
        for im in (-2, Fraction(-1, 2), 0, 1, 3)
        for j in (1, 2, 3, 7)
    ),
    "pochhammer_bound_over_factorial": lambda: all(
        rising_over_factorial_bound_holds(v, n)
        for v in (0, Fraction(1, 4), Fraction(1, 2), 1, Fraction(3, 2), 2, 3, 5, 7, 10)
        for n in (0, 1, 2, 3, 5, 8, 13, 21, 34, 55)
    ),
    # valid for -1 < w <= 1: for w > 1 the ratio (n+w)_k / (n+1)_k grows
    # without bound in k, so the grid stays inside the provable strip
    "pochhammer_bound_shifted": lambda: all(
        shifted_rising_bound_holds(w, n, k)
        for w in (Fraction(-9, 10), Fraction(-3, 4), Fraction(-1, 2),
                  Fraction(-1, 4), 0, Fraction(1, 4), Fraction(1, 2), 1)
        for n in (0, 1, 2, 5, 9)
        for k in (0, 1, 3, 6)
    ),
    "pochhammer_bound_offset": lambda: all(
        offset_rising_bound_holds(z, n, k)
        for z in (-3, Fraction(-7, 4), 0, Fraction(1, 3), 2)
        for n in (0, 1, 2, 4, 7, 10)
        for k_frac in (0, Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 1)
        for k in (int(n * k_frac),)
    ),
}


def _check_bound_grid(case):
    holds = _BOUND_GRIDS[case.identity]()
    status = "pass" if holds else "fail"
    return VerificationReport(case, status, deviation=0.0 if holds else None)


def _check_catalog_complete(case):
    expected = {
        "continuous_dual_hahn", "dual_hahn", "bessel", "charlier",
        "continuous_dual_q_hahn", "dual_q_hahn", "al_salam_chihara",
        "q_meixner_pollaczek", "big_q_laguerre", "affine_q_krawtchouk",
        "dual_q_krawtchouk", "continuous_big_q_hermite",
        "al_salam_carlitz_1", "al_salam_carlitz_2",
    }
    present = {d.id for d in families.catalog()}
    missing = expected - present
    if missing:
        return VerificationReport(case, "fail",
                                  detail=f"catalog misses {sorted(missing)}")
    empty = [d.id for d in families.catalog() if not d.factors]
    if empty:
        return VerificationReport(case, "fail",
                                  detail=f"empty factor lists: {empty}")
    return VerificationReport(case, "pass", deviation=0.0)


def _check_gf_matches_eval(case):
    p = dict(case.params)
    family = p.pop("family")
    order = case.order
    descriptor = families.get_family(family)
    x = p.pop("x", None)
    params = p
    series = families.gf_expand(descriptor, x, params, order)
    worst = 0.0
    for n in range(order + 1):
        if descriptor.id == "krawtchouk" and n > as_index(params["N"], "N"):
            expected = series.field.zero()
        else:
            c_n = families.normalization_at(descriptor, n, x, params, series.field)
            expected = c_n * families.family_eval(descriptor, n, x, params)
        got = series.coefficient(n)
        worst = max(worst, abs(complex(expected) - complex(got)))
        if not series.field.eq(series.field.of(expected), series.field.of(got)):
            return VerificationReport(case, "fail", deviation=worst,
                                      first_failing_order=n)
    return VerificationReport(case, "pass", deviation=worst)


SPECIAL_CHECKS = {
    "power_collect_matches_closed_form": _check_power_collect_meixner,
    "oracle_meixner_alpha": _check_oracle_meixner_alpha,
    "oracle_meixner_two_param": _check_oracle_meixner_two_param,
    "oracle_krawtchouk": _check_oracle_krawtchouk,
    "oracle_al_salam_carlitz_1": _check_oracle_al_salam_carlitz,
    "catalog_complete": _check_catalog_complete,
    "gf_matches_eval": _check_gf_matches_eval,
    **{name: _check_bound_grid for name in _BOUND_GRIDS},
}


# -- dispatch and batches -----------------------------------------------------


def verify_case(case: IdentityCase) -> VerificationReport:
    """Route a case to its verifier by identity id."""
    if case.identity in GF_IDENTITIES:
        return verify_gf_identity(case)
    if case.identity in ORTHOGONALITY_IDS:
        return verify_orthogonality_sum(case)
    if case.identity in SPECIALIZATION_CHAINS:
        return _guard(case, lambda: SPECIALIZATION_CHAINS[case.identity](case))
    if case.identity == "gf_invariance":
        return verify_gf_invariance(case)
    if case.identity in SPECIAL_CHECKS:
        return _guard(case, lambda: SPECIAL_CHECKS[case.identity](case))
    try:
        spec = conn.get_relation(case.identity)
    except UnknownIdentityError:
        return VerificationReport(
            case, "error", detail=f"unknown identity {case.identity!r}"
        )
    params = {k: v for k, v in case.params.items()
              if k not in ("n_max", "x_samples")}
    unknown = set(params) - set(spec.names)
    if unknown:
        return VerificationReport(
            case, "error",
            detail=f"{case.identity} does not take parameter(s) {sorted(unknown)}",
        )
    n_max = as_index(case.params.get("n_max", case.order or 8), "n_max")
    x_samples = case.params.get("x_samples", _DEFAULT_X_SAMPLES)
    return verify_connection_relation(case.identity, params, n_max, x_samples,
                                      case.field)


def _thread_count() -> int:
    raw = os.environ.get("HYPERCONNECT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    if value == 0:
        return os.cpu_count() or 1
    return max(1, value)


def batch_verify(cases, threads: int | None = None):
    """Verify every case, isolating per-case errors; input order preserved."""
    cases = list(cases)
    workers = _thread_count() if threads is None else max(1, threads)
    if workers == 1 or len(cases) < 2:
        return [verify_case(case) for case in cases]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(verify_case, cases))


def summarize(reports) -> dict:
    counts = {"pass": 0, "fail": 0, "error": 0, "inconclusive": 0}
    for report in reports:
        counts[report.status] = counts.get(report.status, 0) + 1
    counts["total"] = len(reports)
    return counts


# -- the named built-in acceptance suite --------------------------------------

_CANONICAL = {
    "x": Fraction(4), "alpha": Fraction(3, 2), "beta": Fraction(7, 3),
    "c": Fraction(2, 5), "d": Fraction(3, 7), "gamma": Fraction(5, 4),
}
_KRAW_GF = {
    "x": Fraction(5, 2), "p": Fraction(1, 2), "q": Fraction(1, 3),
    "N": 4, "M": 6, "gamma": Fraction(5, 4),
}
_KRAW_CONN = {"p": Fraction(1, 2), "q": Fraction(1, 3), "N": 4, "M": 7}


def _restrict(params, names):
    return {k: params[k] for k in names}


def acceptance_suite(order: int = 12) -> list:
    """Every acceptance criterion as a runnable case list."""
    tol10 = numeric(1e-10, 0.0)
    cases = []

    # generalized generating functions, exact to the requested order
    for identity, (_, names) in GF_IDENTITIES.items():
        source = _KRAW_GF if identity.startswith("krawtchouk") else _CANONICAL
        case_order = min(order, as_index(source["N"], "N")) \
            if identity.startswith("krawtchouk") else order
        cases.append(IdentityCase(identity, _restrict(source, names),
                                  order=case_order))

    # specialization chains
    cases.append(IdentityCase("chain_meixner_1f1_c_equals_d",
                              _restrict(_CANONICAL, ("x", "alpha", "beta", "c")),
                              order=order))
    cases.append(IdentityCase("chain_meixner_2f1_d_equals_c",
                              _restrict(_CANONICAL, ("x", "alpha", "beta", "c", "gamma")),
                              order=order))
    for chain in ("chain_krawtchouk_1f1_p_equals_q", "chain_krawtchouk_1f1_M_equals_N",
                  "chain_krawtchouk_2f1_p_equals_q", "chain_krawtchouk_2f1_M_equals_N"):
        cases.append(IdentityCase(chain, _KRAW_GF, order=_KRAW_GF["N"]))

    # connection relations, exact reconstruction on the sample arguments
    meix_conn = _restrict(_CANONICAL, ("alpha", "beta", "c", "d"))
    for relation in ("meixner_alpha_c_to_beta_d", "meixner_same_alpha_c_to_d",
                     "meixner_alpha_to_beta", "meixner_type_c_to_d",
                     "meixner_type_alpha_c"):
        names = conn.get_relation(relation).names
        cases.append(IdentityCase(
            relation,
            {**_restrict(meix_conn, names), "n_max": 8,
             "x_samples": _DEFAULT_X_SAMPLES},
        ))
    for relation in ("krawtchouk_p_N_to_q_M", "krawtchouk_p_to_q_same_N",
                     "krawtchouk_same_p_N_to_M"):
        names = conn.get_relation(relation).names
        cases.append(IdentityCase(
            relation,
            {**_restrict(_KRAW_CONN, names), "n_max": min(8, _KRAW_CONN["N"]),
             "x_samples": _DEFAULT_X_SAMPLES},
        ))

    # invariance of the plain generating functions under degenerate relations
    meixner_inv = [
        ("meixner_product_gf", {}), ("meixner_exp_gf", {}),
        ("meixner_gauss_gf", {"gamma": _CANONICAL["gamma"]}),
    ]
    for gf_id, extra in meixner_inv:
        for relation, degenerate in (
            ("meixner_alpha_to_beta", {"beta": _CANONICAL["alpha"]}),
            ("meixner_type_c_to_d", {"d": _CANONICAL["c"]}),
        ):
            cases.append(IdentityCase("gf_invariance", {
                "generating_function": gf_id, "relation": relation,
                "x": _CANONICAL["x"], "alpha": _CANONICAL["alpha"],
                "c": _CANONICAL["c"], **extra, **degenerate,
            }, order=order))
    kraw_inv = [
        ("krawtchouk_exp_gf", {}),
        ("krawtchouk_gauss_gf", {"gamma": _KRAW_GF["gamma"]}),
    ]
    for gf_id, extra in kraw_inv:
        for relation, degenerate in (
            ("krawtchouk_p_to_q_same_N", {"q": _KRAW_GF["p"]}),
            ("krawtchouk_same_p_N_to_M", {"M": _KRAW_GF["N"]}),
        ):
            cases.append(IdentityCase("gf_invariance", {
                "generating_function": gf_id, "relation": relation,
                "x": _KRAW_GF["x"], "p": _KRAW_GF["p"], "N": _KRAW_GF["N"],
                **extra, **degenerate,
            }, order=_KRAW_GF["N"]))

    # power collection against the closed form, and the linear-solve oracle
    cases.append(IdentityCase(
        "power_collect_matches_closed_form",
        {**_restrict(_CANONICAL, ("alpha", "beta", "c")), "n_max": 10},
    ))
    cases.append(IdentityCase(
        "oracle_meixner_alpha",
        {**_restrict(_CANONICAL, ("alpha", "beta", "c")), "n_max": 10},
    ))
    cases.append(IdentityCase("oracle_meixner_two_param",
                              {**meix_conn, "n_max": 8}))
    cases.append(IdentityCase("oracle_krawtchouk", {**_KRAW_CONN, "n_max": 4}))
    cases.append(IdentityCase(
        "oracle_al_salam_carlitz_1",
        {"a_from": Fraction(1, 4), "a_to": Fraction(1, 5),
         "q": Fraction(1, 3), "n_max": 6},
        field=tol10,
    ))

    # orthogonality
    tol9 = numeric(1e-9, 1e-9)
    for n in range(5):
        for m in range(n + 1):
            cases.append(IdentityCase(
                "meixner_orthogonality",
                {"alpha": Fraction(2), "c": Fraction(1, 2), "n": n, "m": m},
                field=tol9,
            ))
    for n in range(4):
        cases.append(IdentityCase(
            "meixner_sum_1f1_same_c",
            {"alpha": Fraction(2), "beta": Fraction(3), "c": Fraction(1, 2),
             "t": Fraction(1, 4), "n": n},
            field=tol10,
        ))
        cases.append(IdentityCase(
            "meixner_sum_1f1_two_param",
            {"alpha": Fraction(2), "beta": Fraction(3), "c": Fraction(1, 2),
             "d": Fraction(2, 5), "t": Fraction(1, 4), "n": n},
            field=tol10,
        ))
        cases.append(IdentityCase(
            "meixner_sum_2f1_same_c",
            {"alpha": Fraction(2), "beta": Fraction(3), "gamma": Fraction(5, 4),
             "c": Fraction(1, 2), "t": Fraction(1, 4), "n": n},
            field=tol10,
        ))
        cases.append(IdentityCase(
            "meixner_sum_2f1_two_param",
            {"alpha": Fraction(2), "beta": Fraction(3), "gamma": Fraction(5, 4),
             "c": Fraction(1, 2), "d": Fraction(2, 5), "t": Fraction(1, 5), "n": n},
            field=tol10,
        ))
    for n in range(3):
        kraw_orth = {"p": Fraction(1, 2), "q": Fraction(1, 3), "N": 3, "M": 5,
                     "t": Fraction(1, 5), "n": n}
        cases.append(IdentityCase("krawtchouk_sum_1f1", kraw_orth))
        cases.append(IdentityCase("krawtchouk_sum_2f1",
                                  {**kraw_orth, "gamma": Fraction(5, 4)}))

    # rising-factorial bound grids
    for name in _BOUND_GRIDS:
        cases.append(IdentityCase(name, {}))

    # catalog completeness and generating functions against direct evaluation
    cases.append(IdentityCase("catalog_complete", {}))
    cases.append(IdentityCase(
        "gf_matches_eval",
        {"family": "meixner", "x": _CANONICAL["x"],
         "alpha": _CANONICAL["alpha"], "c": _CANONICAL["c"]},
        order=order,
    ))
    cases.append(IdentityCase(
        "gf_matches_eval",
        {"family": "krawtchouk", "x": _KRAW_GF["x"], "p": _KRAW_GF["p"],
         "N": _KRAW_GF["N"]},
        order=6,
    ))
    return cases
