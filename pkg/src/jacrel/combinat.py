"""Stirling numbers, the polynomials P_n(u) by three independent routes, the
alternating sums B_d, and the Laurent-expansion identity tying them together.

P_n(u) = sum_{m=1}^{n} (m-1)! S(n,m) u^m, where S(n,m) is the Stirling number
of the second kind.  The three construction routes are:

* ``stirling``: the closed form above;
* ``genfunc``: the coefficient of t^(n-1)/(n-1)! in u*e^t / (1 - u*(e^t - 1));
* ``laurent``: the principal part of (n-1)!/log(1+x)^n read off at u = 1/x.

The Laurent expansion of (n-1)!/log(1+x)^n equals P_n(1/x) in all negative
exponents; its constant term is the Bernoulli value B_n/n (1/2 for n = 1),
which vanishes exactly when n >= 3 is odd.  ``verify_identity4`` certifies
the principal-part equality and reports the non-negative residual tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .rings import (QQ, DensePoly, LaurentSeries, Ring, laurent_pow_inv,
                    log1p_series, series_exp)

P_ROUTES = ("stirling", "genfunc", "laurent")

# Memoized Stirling table.  Writers always store identical values, so
# concurrent use is idempotent (last write wins with the same entry).
_stirling_table: dict[tuple[int, int], int] = {}


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind via the alternating binomial sum.

    S(n,m) = (1/m!) * sum_{k=0}^{m} (-1)^(m-k) C(m,k) k^n.  Out-of-range
    arguments (m > n, or m = 0 < n) return 0 by convention.
    """
    if n < 0 or m < 0:
        raise ValueError("stirling2 arguments must be >= 0")
    if m > n:
        return 0
    if m == n:
        return 1
    if m == 0:
        return 0
    key = (n, m)
    cached = _stirling_table.get(key)
    if cached is not None:
        return cached
    total = sum((-1) ** (m - k) * comb(m, k) * k ** n for k in range(m + 1))
    value, rem = divmod(total, factorial(m))
    if rem:
        raise ArithmeticError("alternating sum not divisible by m!")
    _stirling_table[key] = value
    return value


def inv_log1p_pow(n: int, order: int) -> LaurentSeries:
    """(n-1)!/log(1+x)^n as a Laurent series known strictly below x^order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if order < 1:
        raise ValueError("order must be >= 1")
    base = log1p_series(order + n + 1)
    return laurent_pow_inv(base, n, order) * Fraction(factorial(n - 1))


def _p_stirling(n: int) -> DensePoly:
    coeffs = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        coeffs[m] = Fraction(factorial(m - 1) * stirling2(n, m))
    return DensePoly(QQ, coeffs)


def _p_genfunc(n: int) -> DensePoly:
    upoly = Ring(DensePoly.zero(QQ), DensePoly.one(QQ))
    u = DensePoly.monomial(QQ, 1)
    t = LaurentSeries.monomial(upoly, 1, trunc=n)
    e_t = series_exp(t, n)
    em1 = e_t - LaurentSeries.monomial(upoly, 0, trunc=n)
    w = em1 * u
    # geometric series sum_j (u (e^t - 1))^j; w has t-valuation 1, so the
    # truncation at t^n keeps only finitely many powers
    geom = LaurentSeries.monomial(upoly, 0, trunc=n)
    power = geom
    while True:
        power = (power * w).truncate(n)
        if power.is_zero:
            break
        geom = geom + power
    series = (e_t * geom) * u
    return series.coeff(n - 1) * Fraction(factorial(n - 1))


def _p_laurent(n: int) -> DensePoly:
    expansion = inv_log1p_pow(n, 1)
    coeffs = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        coeffs[m] = expansion.coeff(-m)
    return DensePoly(QQ, coeffs)


def p_poly(n: int, route: str = "stirling") -> DensePoly:
    """The polynomial P_n(u), by any of the three independent routes.

    All routes agree exactly; they are kept separate so each can serve as an
    oracle for the others.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if route == "stirling":
        return _p_stirling(n)
    if route == "genfunc":
        return _p_genfunc(n)
    if route == "laurent":
        return _p_laurent(n)
    raise ValueError(f"unknown route {route!r}; expected one of {P_ROUTES}")


def b_sum(d: int, a: tuple[int, ...]) -> Fraction:
    """The alternating sum over index tuples (i_1..i_r) of positive integers.

    B_d(a_1..a_r) = sum (-1)^(d - i_1 - ... - i_r) C(d, i_1+...+i_r)
    i_1^a_1 ... i_r^a_r, where the binomial kills every tuple with total
    above d, so only i_1 + ... + i_r <= d contributes.
    """
    a = tuple(a)
    if d < 0:
        raise ValueError("d must be >= 0")
    if not a or any(e < 0 for e in a):
        raise ValueError("exponent tuple must be nonempty with entries >= 0")
    r = len(a)
    total = 0

    def walk(pos: int, used: int, prod: int) -> None:
        nonlocal total
        if pos == r:
            total += (-1) ** (d - used) * comb(d, used) * prod
            return
        budget = d - used - (r - pos - 1)
        for i in range(1, budget + 1):
            walk(pos + 1, used + i, prod * i ** a[pos])

    if r <= d:
        walk(0, 0, 1)
    return Fraction(total)


def b_gen(d: int, a: tuple[int, ...]) -> Fraction:
    """Coefficient of u^d in P_{a_1+1}(u)...P_{a_r+1}(u) / (1+u).

    The division is the geometric expansion of 1/(1+u) truncated at u^d.
    Agrees with ``b_sum`` on every input.
    """
    a = tuple(a)
    if d < 0:
        raise ValueError("d must be >= 0")
    if not a or any(e < 0 for e in a):
        raise ValueError("exponent tuple must be nonempty with entries >= 0")
    prod = DensePoly.one(QQ)
    for e in a:
        prod = (prod * p_poly(e + 1)).truncate(d + 1)
    return sum(((-1) ** j * prod.coeff(d - j) for j in range(d + 1)),
               Fraction(0))


@dataclass(frozen=True)
class IdentityReport:
    """Result of checking the Laurent expansion against P_n(1/x).

    ``ok`` certifies that every coefficient at a negative exponent matches,
    i.e. the principal part of (n-1)!/log(1+x)^n is exactly P_n(1/x).
    ``constant`` is the x^0 coefficient of the residual: the Bernoulli value
    B_n/n, which is 0 precisely for odd n >= 3.  ``residual`` lists the
    nonzero residual coefficients at exponents 0..order-1.
    """

    n: int
    order: int
    ok: bool
    constant: Fraction
    residual: tuple[tuple[int, Fraction], ...]

    @property
    def constant_is_zero(self) -> bool:
        return self.constant == 0


def verify_identity4(n: int, order: int) -> IdentityReport:
    """Compare (n-1)!/log(1+x)^n with P_n(1/x) coefficient by coefficient."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if order < 1:
        raise ValueError("order must be >= 1 to decide the principal part")
    expansion = inv_log1p_pow(n, order)
    pn = p_poly(n)
    principal = LaurentSeries(QQ, -n, tuple(reversed(pn.coeffs[1:])))
    residual = expansion - principal
    ok = all(e >= 0 for e, _ in residual.items())
    tail = tuple((e, c) for e, c in residual.items() if e >= 0)
    return IdentityReport(n=n, order=order, ok=ok,
                          constant=residual.coeff(0), residual=tail)
