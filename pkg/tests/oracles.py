"""Independent oracles and random generators shared by the test modules.

Everything here is deliberately naive: enumeration instead of closed forms,
term-by-term expansion instead of library calls, so the production routes
are checked against genuinely independent computations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from jacrel.rings import QQ, DensePoly, LaurentSeries


def set_partitions(collection):
    """Generate all partitions of a list into non-empty blocks."""
    if not collection:
        yield []
        return
    rest, last = collection[:-1], collection[-1]
    for smaller in set_partitions(rest):
        for i, block in enumerate(smaller):
            yield smaller[:i] + [block + [last]] + smaller[i + 1:]
        yield smaller + [[last]]


def stirling_by_enumeration(n: int, m: int) -> int:
    """Count partitions of an n-set into exactly m non-empty blocks."""
    if n == 0:
        return 1 if m == 0 else 0
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == m)


def stirling_row_by_enumeration(n: int) -> dict[int, int]:
    """Counts of all block sizes from one pass over the set partitions."""
    row: dict[int, int] = {}
    if n == 0:
        return {0: 1}
    for p in set_partitions(list(range(n))):
        row[len(p)] = row.get(len(p), 0) + 1
    return row


def exp_poly_coeffs(scale: int, order: int) -> list[Fraction]:
    """Coefficients of e^(scale*t) as a t-polynomial, expanded term by term."""
    out = []
    power = Fraction(1)
    fact = 1
    for i in range(order):
        out.append(power / fact)
        power *= scale
        fact *= i + 1
    return out


def rand_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-60, 60), rng.randint(1, 24))


def rand_poly(rng: random.Random, max_deg: int = 5) -> DensePoly:
    coeffs = [rand_fraction(rng) for _ in range(rng.randint(0, max_deg + 1))]
    return DensePoly(QQ, coeffs)


def rand_laurent(rng: random.Random, min_val: int = -3) -> LaurentSeries:
    val = rng.randint(min_val, 3)
    length = rng.randint(0, 5)
    coeffs = [rand_fraction(rng) for _ in range(length)]
    trunc = val + length + rng.randint(0, 3)
    return LaurentSeries(QQ, val, coeffs, trunc)


def rand_taut(rng: random.Random, g: int):
    from jacrel.tautalg import TautElement
    terms = {}
    for _ in range(rng.randint(0, 4)):
        mono = tuple(sorted((rng.randint(0, g - 1)
                             for _ in range(rng.randint(0, 3))), reverse=True))
        terms[mono] = terms.get(mono, Fraction(0)) + rand_fraction(rng)
    return TautElement(g, terms)


def rand_homogeneous_taut(rng: random.Random, g: int, size: int, weight: int):
    from jacrel.relations import monomials_of_bidegree
    from jacrel.tautalg import TautElement
    basis = monomials_of_bidegree(g, size, weight)
    if not basis:
        return TautElement.zero(g)
    terms = {m: rand_fraction(rng) for m in rng.sample(basis, min(len(basis), 3))}
    return TautElement(g, terms)
