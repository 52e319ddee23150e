"""Pochhammer and q-Pochhammer kernels.

The rising factorial is

    (a)_n = a (a+1) ... (a+n-1),          (a)_0 = 1 (empty product),

computed iteratively in whatever field ``a`` lives in; no gamma function is
ever called, so exact inputs give exact outputs and there is no cancellation
for large ``n``.  The q-shifted factorial is

    (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}),  (a;q)_0 = 1,

with an infinite-product mode for numeric inputs: factors are multiplied
until |a q^j| drops below 1e-17, beyond which they are the identity at
double precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError, FieldError
from .fields import as_index, is_exact_value

#: Sentinel for the infinite q-shifted factorial (a;q)_inf.
INFINITE = math.inf

_INF_FACTOR_CUTOFF = 1e-17


def pochhammer(a, n):
    """Rising factorial (a)_n.  Satisfies (a)_{n+k} = (a)_n (a+n)_k."""
    n = as_index(n, "n")
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    result = Fraction(1) if is_exact_value(a) else complex(1.0)
    for j in range(n):
        result = result * (a + j)
    return result


def neg_int_pochhammer(n, k):
    """(-n)_k for n, k >= 0: equals (-1)^k n!/(n-k)! when k <= n, else 0."""
    n = as_index(n, "n")
    k = as_index(k, "k")
    if n < 0 or k < 0:
        raise DomainError("neg_int_pochhammer needs n, k >= 0")
    if k > n:
        return Fraction(0)
    sign = -1 if k % 2 else 1
    return Fraction(sign * math.factorial(n), math.factorial(n - k))


def q_pochhammer(a, q, n):
    """q-shifted factorial (a;q)_n; pass n=INFINITE for the infinite product.

    The infinite product is numeric only: on exact inputs it cannot
    terminate, so requesting it there is an error rather than an
    approximation in disguise.
    """
    if n is INFINITE or (isinstance(n, float) and math.isinf(n)):
        if is_exact_value(a) or is_exact_value(q):
            raise FieldError(
                "infinite q-Pochhammer products are numeric-only;"
                " convert the operands to the numeric field first"
            )
        q = complex(q)
        a = complex(a)
        if not 0.0 < abs(q) < 1.0:
            raise DomainError("(a;q)_inf needs 0 < |q| < 1")
        result = complex(1.0)
        factor = a
        while abs(factor) >= _INF_FACTOR_CUTOFF:
            result *= 1.0 - factor
            factor *= q
        return result
    n = as_index(n, "n")
    if n < 0:
        raise DomainError("q_pochhammer needs n >= 0 or INFINITE")
    one = Fraction(1) if is_exact_value(a) and is_exact_value(q) else complex(1.0)
    result = one
    power = one
    for _ in range(n):
        result = result * (one - a * power)
        power = power * q
    return result


def binomial_coefficient(n, k):
    """n!/(k!(n-k)!); returns 0 when k > n (documented convention)."""
    n = as_index(n, "n")
    k = as_index(k, "k")
    if n < 0 or k < 0:
        raise DomainError("binomial_coefficient needs n, k >= 0")
    if k > n:
        return 0
    return math.comb(n, k)


# Bound predicates for rising factorials.  Each returns True when the stated
# inequality holds at the given point; preconditions are enforced.

def rising_abs_lower_bound_holds(u, j) -> bool:
    """|(u)_j| >= Re(u) (j-1)!  for Re(u) > 0, j >= 1."""
    j = as_index(j, "j")
    u = complex(u)
    if j < 1:
        raise DomainError("needs j >= 1")
    if not u.real > 0:
        raise DomainError("needs Re(u) > 0")
    return abs(pochhammer(u, j)) >= u.real * math.factorial(j - 1)


def rising_over_factorial_bound_holds(v, n) -> bool:
    """(v)_n / n! <= (1+n)^v  for v >= 0, n >= 0."""
    n = as_index(n, "n")
    v = float(v)
    if v < 0:
        raise DomainError("needs v >= 0")
    lhs = float(pochhammer(Fraction(v).limit_denominator(10**12), n)) / math.factorial(n)
    return lhs <= (1.0 + n) ** v


def shifted_rising_bound_holds(w, n, k) -> bool:
    """(n+w)_k <= max{1, 2^w} (n+k)!/n!  for w > -1, n, k >= 0."""
    n = as_index(n, "n")
    k = as_index(k, "k")
    w = float(w)
    if not w > -1:
        raise DomainError("needs w > -1")
    lhs = float(pochhammer(n + Fraction(w).limit_denominator(10**12), k))
    rhs = max(1.0, 2.0**w) * math.factorial(n + k) / math.factorial(n)
    return lhs <= rhs


def offset_rising_bound_holds(z, n, k) -> bool:
    """(z+k)_{n-k} <= (n!/k!) (1+n)^{|z|}  for real z, 0 <= k <= n."""
    n = as_index(n, "n")
    k = as_index(k, "k")
    if not 0 <= k <= n:
        raise DomainError("needs 0 <= k <= n")
    z = float(z)
    lhs = float(pochhammer(Fraction(z).limit_denominator(10**12) + k, n - k))
    rhs = math.factorial(n) / math.factorial(k) * (1.0 + n) ** abs(z)
    return lhs <= rhs
