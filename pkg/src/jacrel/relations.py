"""Relation families in the free algebra and their exact comparison.

Three families of homogeneous elements are generated from a linear-system
parameter pair (d, r) on a genus-g curve class:

* ``vdgk6``   - the t-degree-bound family: coefficients of t^n in G(t)^s for
  n > d-r+s, for s = 1..r;
* ``herbaut7`` - the divided-coefficient family: the t-coefficients of the
  u^(d-r+s) coefficient of H(u,t)^s / (1+u);
* ``strong8`` - the strengthened family: coefficients of u^m t^n in H(u,t)^s
  for m > d-r+s.

``compare_ideals`` decides, bidegree by bidegree and by exact rank
computations, whether two families generate the same graded ideal; it also
reports the weaker per-bidegree span comparison of the bare generators and
flags any parameter set where the two notions differ.

``epsilon_series`` and ``verify_implication_chain`` replay the series
bookkeeping connecting the families: the substitution defect
eps(x,t) = H(1/x,t) - G(t/log(1+x)), the binomial expansion of H(1/x,t)^s in
terms of it, the degree bound it yields once the vdgk6 relations are
rewritten to zero, and the Stirling-coefficient nonvanishing that closes the
chain.  Note that eps has x-exponents >= 0 but genuinely nonzero x^0 terms
(Bernoulli values B_n/n for even n = a+2), so the sharpest certifiable bound
is O(t^2) with no negative x-powers, not O(x t^2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .combinat import inv_log1p_pow, p_poly, stirling2
from .linalg import RowSpace
from .rings import (QQ, LaurentSeries, Ring, TruncationError, InvariantViolation,
                    laurent_pow_inv, log1p_series)
from .tautalg import (BivarPoly, Monomial, TautElement, build_g_poly,
                      build_h_poly, mono_key, poly_power, taut_ring)

FAMILY_IDS = ("theorem1", "vdgk6", "herbaut7", "strong8")


@dataclass(frozen=True)
class RelationItem:
    s: int
    t_exp: int
    element: TautElement
    u_exp: int | None = None

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.s, self.t_exp - 2 * self.s)


@dataclass(frozen=True)
class RelationFamily:
    family_id: str
    g: int
    d: int
    r: int
    items: tuple[RelationItem, ...]

    def sorted_items(self) -> tuple[RelationItem, ...]:
        return tuple(sorted(self.items,
                            key=lambda it: (it.s, it.t_exp,
                                            -1 if it.u_exp is None else it.u_exp)))


def _validate_params(g: int, d: int, r: int) -> None:
    if g < 1:
        raise ValueError("g must be >= 1")
    if r < 1:
        raise ValueError("r must be >= 1")
    if d - r + 1 < 0:
        raise ValueError("need d - r + s >= 0 for s = 1..r")


def _compositions(total: int, parts: int, bound: int):
    """Weakly decreasing tuples of the given length, entries in [0, bound]."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for w in range(min(bound, total), -1, -1):
        if total - w <= (parts - 1) * w:
            for rest in _compositions(total - w, parts - 1, w):
                yield (w,) + rest


def _orderings(mono: Monomial) -> int:
    """Number of distinct orderings of a multiset."""
    count = factorial(len(mono))
    for w in set(mono):
        count //= factorial(mono.count(w))
    return count


def gen_theorem1(g: int, d: int, r: int, N: int) -> TautElement:
    """The factorial-weighted composition sum of first degree r and weight N.

    Sums (a_1+1)!...(a_r+1)! C(a_1)*...*C(a_r) over all compositions of N
    into r parts (each part below g), with multiset multiplicity equal to the
    number of distinct orderings.  Only N >= d-2r+1 indexes a relation.
    """
    _validate_params(g, d, r)
    if N < 0:
        raise ValueError("N must be >= 0")
    if N < d - 2 * r + 1:
        raise ValueError(f"N={N} is below the relation threshold d-2r+1={d - 2 * r + 1}")
    terms: dict[Monomial, Fraction] = {}
    for mono in _compositions(N, r, g - 1):
        coeff = _orderings(mono)
        for a in mono:
            coeff *= factorial(a + 1)
        terms[mono] = Fraction(coeff)
    return TautElement(g, terms)


def theorem1_family(g: int, d: int, r: int, N: int) -> RelationFamily:
    element = gen_theorem1(g, d, r, N)
    items = () if element.is_zero else (RelationItem(s=r, t_exp=N + 2 * r,
                                                     element=element),)
    return RelationFamily("theorem1", g, d, r, items)


def _divide_by_one_plus_u(p: BivarPoly) -> BivarPoly:
    """Exact synthetic division by (1+u); a remainder signals a bug upstream."""
    cols: dict[int, dict[int, TautElement]] = {}
    for (ue, te), elt in p.terms.items():
        cols.setdefault(ue, {})[te] = elt
    quotient: dict[tuple[int, int], TautElement] = {}
    carry: dict[int, TautElement] = {}
    for ue in range(p.u_degree, 0, -1):
        col = cols.get(ue, {})
        merged: dict[int, TautElement] = dict(carry)
        for te, elt in col.items():
            merged[te] = merged[te] + elt if te in merged else elt
        carry = {}
        for te, elt in merged.items():
            if not elt.is_zero:
                quotient[(ue - 1, te)] = elt
                carry[te] = -elt
    remainder: dict[int, TautElement] = dict(carry)
    for te, elt in cols.get(0, {}).items():
        remainder[te] = remainder[te] + elt if te in remainder else elt
    for te, elt in remainder.items():
        if not elt.is_zero:
            raise InvariantViolation(
                f"division by (1+u) left a remainder at t^{te}: {elt}")
    return BivarPoly(p.g, quotient, p.t_trunc)


def gen_family(family_id: str, g: int, d: int, r: int) -> RelationFamily:
    """Generate one of the three relation families, deterministically ordered."""
    _validate_params(g, d, r)
    if family_id not in ("vdgk6", "herbaut7", "strong8"):
        raise ValueError(f"unknown family {family_id!r}")
    items: list[RelationItem] = []
    if family_id == "vdgk6":
        base = build_g_poly(g)
        for s in range(1, r + 1):
            power = poly_power(base, s)
            bound = d - r + s
            for n in range(max(2 * s, bound + 1), s * (g + 1) + 1):
                element = power.coeff(0, n)
                if not element.is_zero:
                    items.append(RelationItem(s=s, t_exp=n, element=element))
    else:
        base = build_h_poly(g)
        for s in range(1, r + 1):
            power = poly_power(base, s)
            bound = d - r + s
            if family_id == "strong8":
                for ue, te, element in power.items():
                    if ue > bound:
                        items.append(RelationItem(s=s, t_exp=te, element=element,
                                                  u_exp=ue))
            else:  # herbaut7
                quotient = _divide_by_one_plus_u(power)
                for te, element in sorted(quotient.u_slice(bound).items()):
                    if not element.is_zero:
                        items.append(RelationItem(s=s, t_exp=te, element=element))
    items.sort(key=lambda it: (it.s, it.t_exp, -1 if it.u_exp is None else it.u_exp))
    return RelationFamily(family_id, g, d, r, tuple(items))


# ---------------------------------------------------------------------------
# Graded ideal comparison
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def monomials_of_bidegree(g: int, size: int, weight: int) -> tuple[Monomial, ...]:
    """All monomials of the given bidegree, in canonical order."""
    if size < 0 or weight < 0:
        return ()
    monos = list(_compositions(weight, size, g - 1))
    monos.sort(key=mono_key)
    return tuple(monos)


class GradedSpan:
    """Per-bidegree exact row spaces spanned by homogeneous elements.

    Rows live in the canonical monomial basis of each bidegree.  With
    ``ideal=True`` every generator is multiplied by all monomials of the
    complementary bidegree, so each cell carries the graded piece of the
    generated ideal; with ``ideal=False`` only the generators themselves
    enter, giving the bare per-bidegree span.
    """

    def __init__(self, g: int, i_max: int, j_max: int) -> None:
        self.g = g
        self.i_max = i_max
        self.j_max = j_max
        self.spaces: dict[tuple[int, int], RowSpace] = {}

    @staticmethod
    def _vector(element: TautElement, basis: tuple[Monomial, ...]) -> list[Fraction]:
        return [element.coefficient(m) for m in basis]

    @classmethod
    def from_family(cls, family: RelationFamily, i_max: int, j_max: int,
                    ideal: bool = True) -> "GradedSpan":
        g = family.g
        span = cls(g, i_max, j_max)
        gens: list[tuple[int, int, TautElement]] = []
        for item in family.items:
            if item.element.is_zero:
                continue
            bideg = item.element.bidegree()
            if bideg != item.bidegree:
                raise InvariantViolation(
                    f"item at s={item.s}, t^{item.t_exp} is not homogeneous "
                    f"of the labeled bidegree")
            gens.append((bideg[0], bideg[1], item.element))
        for i in range(1, i_max + 1):
            for j in range(0, j_max + 1):
                basis = monomials_of_bidegree(g, i, j)
                if not basis:
                    continue
                cell = RowSpace(len(basis))
                for s, w, element in gens:
                    if ideal:
                        if s > i or w > j:
                            continue
                        for mono in monomials_of_bidegree(g, i - s, j - w):
                            shifted = element * TautElement.monomial(g, mono)
                            cell.add(cls._vector(shifted, basis))
                    elif (s, w) == (i, j):
                        cell.add(cls._vector(element, basis))
                if cell.rank:
                    span.spaces[(i, j)] = cell
        return span

    def rank(self, i: int, j: int) -> int:
        cell = self.spaces.get((i, j))
        return cell.rank if cell else 0

    def pivot_rows(self, i: int, j: int) -> list[tuple[int, ...]]:
        cell = self.spaces.get((i, j))
        return list(cell.pivots.values()) if cell else []


@dataclass(frozen=True)
class CellComparison:
    i: int
    j: int
    dim: int
    ideal_ranks: tuple[int, int]
    ideal_joint: int
    span_ranks: tuple[int, int]
    span_joint: int

    @property
    def ideal_equal(self) -> bool:
        return self.ideal_ranks[0] == self.ideal_ranks[1] == self.ideal_joint

    @property
    def span_equal(self) -> bool:
        return self.span_ranks[0] == self.span_ranks[1] == self.span_joint


@dataclass(frozen=True)
class IdealComparison:
    family_ids: tuple[str, str]
    g: int
    d: int
    r: int
    i_max: int
    j_max: int
    cells: tuple[CellComparison, ...]

    @property
    def ideal_equal(self) -> bool:
        return all(c.ideal_equal for c in self.cells)

    @property
    def span_equal(self) -> bool:
        return all(c.span_equal for c in self.cells)

    @property
    def notions_differ(self) -> tuple[CellComparison, ...]:
        """Cells where graded-ideal equality and bare-span equality disagree."""
        return tuple(c for c in self.cells if c.ideal_equal != c.span_equal)


def _joint_rank(ncols: int, *row_groups: list[tuple[int, ...]]) -> int:
    space = RowSpace(ncols)
    for rows in row_groups:
        for row in rows:
            space.add(row)
    return space.rank


def compare_ideals(f1: RelationFamily, f2: RelationFamily,
                   bidegree_bound: tuple[int, int] | None = None) -> IdealComparison:
    """Decide per-bidegree whether two families generate the same graded ideal.

    Both the ideal pieces (generators times all complementary monomials) and
    the bare generator spans are compared; equality holds in a cell when each
    family's rank equals the rank of the concatenation.
    """
    if (f1.g, f1.d, f1.r) != (f2.g, f2.d, f2.r):
        raise ValueError("families must share the same (g, d, r)")
    g, d, r = f1.g, f1.d, f1.r
    i_max, j_max = bidegree_bound if bidegree_bound else (r, r * (g - 1))
    ideal1 = GradedSpan.from_family(f1, i_max, j_max, ideal=True)
    ideal2 = GradedSpan.from_family(f2, i_max, j_max, ideal=True)
    span1 = GradedSpan.from_family(f1, i_max, j_max, ideal=False)
    span2 = GradedSpan.from_family(f2, i_max, j_max, ideal=False)
    cells = []
    for i in range(1, i_max + 1):
        for j in range(0, j_max + 1):
            basis = monomials_of_bidegree(g, i, j)
            if not basis:
                continue
            n = len(basis)
            ir = (ideal1.rank(i, j), ideal2.rank(i, j))
            sr = (span1.rank(i, j), span2.rank(i, j))
            if ir == (0, 0) and sr == (0, 0):
                continue
            cells.append(CellComparison(
                i=i, j=j, dim=n,
                ideal_ranks=ir,
                ideal_joint=_joint_rank(n, ideal1.pivot_rows(i, j),
                                        ideal2.pivot_rows(i, j)),
                span_ranks=sr,
                span_joint=_joint_rank(n, span1.pivot_rows(i, j),
                                       span2.pivot_rows(i, j)),
            ))
    return IdealComparison(family_ids=(f1.family_id, f2.family_id),
                           g=g, d=d, r=r, i_max=i_max, j_max=j_max,
                           cells=tuple(cells))


def span_contains(f_sub: RelationFamily, f_sup: RelationFamily) -> bool:
    """True when every item of f_sub lies in the per-bidegree span of f_sup."""
    if (f_sub.g, f_sub.d, f_sub.r) != (f_sup.g, f_sup.d, f_sup.r):
        raise ValueError("families must share the same (g, d, r)")
    g = f_sub.g
    by_cell: dict[tuple[int, int], RowSpace] = {}
    for item in f_sup.items:
        cell = item.bidegree
        basis = monomials_of_bidegree(g, *cell)
        space = by_cell.setdefault(cell, RowSpace(len(basis)))
        space.add([item.element.coefficient(m) for m in basis])
    for item in f_sub.items:
        cell = item.bidegree
        basis = monomials_of_bidegree(g, *cell)
        vec = [item.element.coefficient(m) for m in basis]
        space = by_cell.get(cell)
        if space is None:
            if any(vec):
                return False
        elif not space.contains(vec):
            return False
    return True


# ---------------------------------------------------------------------------
# Series bookkeeping: eps(x,t) and the implication chain
# ---------------------------------------------------------------------------

class XTSeries:
    """Finite sum of t^n times a Laurent series in x with algebra coefficients.

    Parts absent from the map are exactly zero; parts that are present may be
    known only below their own x-truncation order.
    """

    __slots__ = ("ring", "parts", "t_trunc")

    def __init__(self, ring: Ring, parts: dict[int, LaurentSeries] | None = None,
                 t_trunc: int | None = None) -> None:
        clean = {}
        for te, series in (parts or {}).items():
            if t_trunc is not None and te >= t_trunc:
                continue
            if series.is_zero and series.trunc is None:
                continue
            clean[te] = series
        self.ring = ring
        self.parts = clean
        self.t_trunc = t_trunc

    @classmethod
    def one(cls, ring: Ring, t_trunc: int | None = None) -> "XTSeries":
        return cls(ring, {0: LaurentSeries.monomial(ring, 0)}, t_trunc)

    @staticmethod
    def _combine_trunc(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def part(self, t_exp: int) -> LaurentSeries:
        return self.parts.get(t_exp, LaurentSeries.zero(self.ring))

    def __add__(self, other: "XTSeries") -> "XTSeries":
        parts = dict(self.parts)
        for te, series in other.parts.items():
            parts[te] = parts[te] + series if te in parts else series
        return XTSeries(self.ring, parts,
                        self._combine_trunc(self.t_trunc, other.t_trunc))

    def __mul__(self, other) -> "XTSeries":
        if isinstance(other, XTSeries):
            t_trunc = self._combine_trunc(self.t_trunc, other.t_trunc)
            parts: dict[int, LaurentSeries] = {}
            for t1, s1 in self.parts.items():
                for t2, s2 in other.parts.items():
                    te = t1 + t2
                    if t_trunc is not None and te >= t_trunc:
                        continue
                    prod = s1 * s2
                    parts[te] = parts[te] + prod if te in parts else prod
            return XTSeries(self.ring, parts, t_trunc)
        return XTSeries(self.ring, {te: s * other for te, s in self.parts.items()},
                        self.t_trunc)

    def __rmul__(self, other) -> "XTSeries":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "XTSeries":
        if n < 0:
            raise ValueError("power must be >= 0")
        result = XTSeries.one(self.ring, self.t_trunc)
        for _ in range(n):
            result = result * self
        return result

    def agrees_with(self, other: "XTSeries") -> bool:
        for te in set(self.parts) | set(other.parts):
            if self.t_trunc is not None and te >= self.t_trunc:
                continue
            if other.t_trunc is not None and te >= other.t_trunc:
                continue
            if not self.part(te).agrees_with(other.part(te)):
                return False
        return True


def _lift(series: LaurentSeries, element: TautElement, ring: Ring) -> LaurentSeries:
    return series.map_coeffs(lambda c: element * c, ring)


def _principal_part_series(n: int) -> LaurentSeries:
    """P_n(1/x) as an exact Laurent polynomial."""
    pn = p_poly(n)
    return LaurentSeries(QQ, -n, tuple(reversed(pn.coeffs[1:])))


@dataclass(frozen=True)
class EpsilonReport:
    """The substitution defect eps(x,t) = H(1/x,t) - G(t/log(1+x)).

    ``no_negative_x`` certifies that every x-exponent is >= 0 (the principal
    parts cancel); ``strict_xt2`` is the stronger x >= 1 claim, which fails
    whenever some even n = a+2 contributes its Bernoulli constant B_n/n at
    x^0.  ``t_floor`` is the smallest t-exponent present (always >= 2).
    """

    g: int
    x_order: int
    t_order: int
    parts: dict[int, LaurentSeries]
    no_negative_x: bool
    x0_coefficients: dict[int, TautElement]
    t_floor: int

    @property
    def strict_xt2(self) -> bool:
        return self.no_negative_x and not self.x0_coefficients


def epsilon_series(g: int, x_order: int, t_order: int | None = None) -> EpsilonReport:
    """Compute eps(x,t) and certify its exponent bounds.

    The t-support is exact and finite (t-exponents a+2 for 0 <= a < g), so
    the t-side needs no truncation; the x-side is known strictly below
    x_order, which must be >= 1 for the bounds to be decidable.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    if x_order < 1:
        raise TruncationError("x_order must be >= 1 to certify exponent bounds")
    ring = taut_ring(g)
    t_order = t_order if t_order is not None else g + 2
    parts: dict[int, LaurentSeries] = {}
    x0: dict[int, TautElement] = {}
    min_val = None
    for a in range(g):
        n = a + 2
        defect = _principal_part_series(n) - inv_log1p_pow(n, x_order)
        generator = TautElement.generator(g, a)
        lifted = _lift(defect, generator, ring)
        parts[n] = lifted
        if not lifted.is_zero:
            min_val = lifted.valuation if min_val is None else min(min_val, lifted.valuation)
        c0 = lifted.coeff(0)
        if not c0.is_zero:
            x0[n] = c0
    return EpsilonReport(
        g=g, x_order=x_order, t_order=t_order, parts=parts,
        no_negative_x=(min_val is None or min_val >= 0),
        x0_coefficients=x0,
        t_floor=min(parts) if parts else 0,
    )


@lru_cache(maxsize=None)
def _bare_log_inv_pow(n: int, order: int) -> LaurentSeries:
    """log(1+x)^(-n), known strictly below x^order."""
    return laurent_pow_inv(log1p_series(order + n + 1), n, order)


def _g_substituted(g: int, s: int, x_order: int, keep_below: int | None = None) -> XTSeries:
    """G(t/log(1+x))^s, built per t-monomial of G(t)^s.

    With ``keep_below`` set, t-coefficients of G^s at exponents above it are
    rewritten to zero (the vdgk6 vanishing assumption).
    """
    ring = taut_ring(g)
    if s == 0:
        return XTSeries.one(ring)
    power = poly_power(build_g_poly(g), s)
    parts: dict[int, LaurentSeries] = {}
    for n in range(2 * s, s * (g + 1) + 1):
        element = power.coeff(0, n)
        if element.is_zero:
            continue
        if keep_below is not None and n > keep_below:
            continue
        parts[n] = _lift(_bare_log_inv_pow(n, x_order), element, ring)
    return XTSeries(ring, parts)


def _h_substituted(g: int) -> XTSeries:
    """H(1/x, t) as an exact object: Laurent polynomials in x per t-exponent."""
    ring = taut_ring(g)
    parts = {}
    for a in range(g):
        n = a + 2
        parts[n] = _lift(_principal_part_series(n), TautElement.generator(g, a), ring)
    return XTSeries(ring, parts)


@dataclass(frozen=True)
class ScalarCheck:
    s: int
    n: int
    m: int
    value: Fraction
    expected: Fraction

    @property
    def equal(self) -> bool:
        return self.value == self.expected

    @property
    def nonzero(self) -> bool:
        return self.value != 0


@dataclass(frozen=True)
class DegreeBoundCheck:
    s: int
    bound: int
    min_x_exponent: int | None
    certified: bool


@dataclass(frozen=True)
class ChainReport:
    g: int
    d: int
    r: int
    x_order: int
    t_order: int
    identity9_ok: bool
    degree_bounds: tuple[DegreeBoundCheck, ...]
    scalar_checks: tuple[ScalarCheck, ...]

    @property
    def degree_bound_ok(self) -> bool:
        return all(c.certified for c in self.degree_bounds)

    @property
    def scalar_ok(self) -> bool:
        return all(c.equal and c.nonzero for c in self.scalar_checks)

    @property
    def ok(self) -> bool:
        return self.identity9_ok and self.degree_bound_ok and self.scalar_ok


def verify_implication_chain(g: int, d: int, r: int, x_order: int | None = None,
                             t_order: int | None = None) -> ChainReport:
    """Certify the series steps that tie the three families together.

    (a) The binomial identity H(1/x,t)^s = sum_{s'} C(s,s') G(t/log(1+x))^s'
        eps^(s-s') holds exactly on every tracked coefficient, for s = 1..r.
    (b) With the vdgk6 vanishing rewritten into G's powers, the right-hand
        side is certified to contain no x-exponent below -(d-r+s).
    (c) The extraction scalar, the x^-(d-r+s) coefficient of
        x/(1+x) * log(1+x)^-n, equals (d-r+s)!/(n-1)! S(n-1, d-r+s) and is
        nonzero for every n > d-r+s.
    """
    _validate_params(g, d, r)
    if x_order is None:
        x_order = 2 * (g + 2)
    if t_order is None:
        t_order = r * (g + 1) + 1
    if x_order < 1 or t_order < 1:
        raise TruncationError("orders must be >= 1")
    ring = taut_ring(g)
    eps_report = epsilon_series(g, x_order)
    eps = XTSeries(ring, eps_report.parts, t_order)
    h_sub = XTSeries(ring, _h_substituted(g).parts, t_order)

    identity9_ok = True
    degree_checks: list[DegreeBoundCheck] = []
    g_subs = {sp: XTSeries(ring, _g_substituted(g, sp, x_order).parts, t_order)
              for sp in range(0, r + 1)}
    g_subs_rw = {sp: XTSeries(ring, _g_substituted(g, sp, x_order,
                                                   keep_below=d - r + sp).parts, t_order)
                 for sp in range(1, r + 1)}
    eps_pows = {e: eps ** e for e in range(0, r + 1)}

    for s in range(1, r + 1):
        lhs = h_sub ** s
        rhs = None
        rhs_rw = None
        for sp in range(0, s + 1):
            binom = Fraction(comb(s, sp))
            term = (g_subs[sp] * eps_pows[s - sp]) * binom
            rhs = term if rhs is None else rhs + term
            rw_base = g_subs_rw[sp] if sp >= 1 else XTSeries.one(ring, t_order)
            term_rw = (rw_base * eps_pows[s - sp]) * binom
            rhs_rw = term_rw if rhs_rw is None else rhs_rw + term_rw
        if not lhs.agrees_with(rhs):
            identity9_ok = False
        bound = -(d - r + s)
        min_exp = None
        certified = True
        for te, series in rhs_rw.parts.items():
            if series.trunc is not None and series.trunc < bound:
                certified = False
                continue
            for e, _ in series.items():
                min_exp = e if min_exp is None else min(min_exp, e)
        if min_exp is not None and min_exp < bound:
            certified = False
        degree_checks.append(DegreeBoundCheck(s=s, bound=bound,
                                              min_x_exponent=min_exp,
                                              certified=certified))

    scalar_checks: list[ScalarCheck] = []
    # x/(1+x), wide enough that the product window always covers x^-m
    geom_order = max(2, x_order, r * (g + 1) + 2)
    geom = LaurentSeries(QQ, 1, [Fraction((-1) ** i) for i in range(geom_order)],
                         geom_order + 1)
    for s in range(1, r + 1):
        m = d - r + s
        for n in range(m + 1, s * (g + 1) + 1):
            value = (geom * _bare_log_inv_pow(n, x_order)).coeff(-m)
            expected = Fraction(factorial(m), factorial(n - 1)) * stirling2(n - 1, m)
            scalar_checks.append(ScalarCheck(s=s, n=n, m=m, value=value,
                                             expected=expected))

    return ChainReport(g=g, d=d, r=r, x_order=x_order, t_order=t_order,
                       identity9_ok=identity9_ok,
                       degree_bounds=tuple(degree_checks),
                       scalar_checks=tuple(scalar_checks))


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def element_to_jsonable(element: TautElement) -> list[dict]:
    return [{"monomial": list(mono), "coeff": str(coeff)}
            for mono, coeff in element.sorted_terms()]


def element_from_jsonable(g: int, data: list[dict]) -> TautElement:
    terms = {tuple(entry["monomial"]): Fraction(entry["coeff"]) for entry in data}
    return TautElement(g, terms)


def family_to_jsonable(family: RelationFamily) -> dict:
    items = []
    for item in family.sorted_items():
        entry: dict = {"s": item.s, "t_exp": item.t_exp}
        if item.u_exp is not None:
            entry["u_exp"] = item.u_exp
        entry["element"] = element_to_jsonable(item.element)
        items.append(entry)
    return {"family": family.family_id, "g": family.g, "d": family.d,
            "r": family.r, "items": items}


def family_to_json(family: RelationFamily) -> str:
    return json.dumps(family_to_jsonable(family), separators=(",", ":"))


def family_from_jsonable(data: dict) -> RelationFamily:
    g = data["g"]
    items = tuple(
        RelationItem(s=entry["s"], t_exp=entry["t_exp"],
                     element=element_from_jsonable(g, entry["element"]),
                     u_exp=entry.get("u_exp"))
        for entry in data["items"])
    return RelationFamily(data["family"], g, data["d"], data["r"], items)


def family_from_json(text: str) -> RelationFamily:
    return family_from_jsonable(json.loads(text))
