"""The free bigraded commutative Q-algebra on generators C(0)..C(g-1).

The product is the Pontryagin product: monomials are multisets of generator
weights and multiply by multiset union, so the algebra is genuinely free (no
extra vanishing is imposed).  A monomial of s generators with weight sum w
has bidegree (s, w).

On top of the algebra sit bivariate polynomials in t (and optionally u) with
algebra coefficients, carrying the generating polynomials

    G(t) = sum_a (a+1)! C(a) t^(a+2)
    H(u,t) = sum_a P_{a+2}(u) C(a) t^(a+2)

whose powers produce the relation families.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any, Iterator

from .combinat import p_poly
from .rings import Ring

Monomial = tuple[int, ...]


def mono_key(mono: Monomial) -> tuple:
    """Canonical sort key: size first, then weights tuple in descending order."""
    return (len(mono), tuple(-w for w in mono))


def mono_bidegree(mono: Monomial) -> tuple[int, int]:
    return (len(mono), sum(mono))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(sorted(m1 + m2, reverse=True))


class TautElement:
    """Element of the free algebra: a finite Q-linear combination of monomials.

    Monomials are stored as weakly decreasing weight tuples; no zero
    coefficients are kept, and the empty map is the zero element.
    """

    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms: dict[Monomial, Fraction] | None = None) -> None:
        if g < 1:
            raise ValueError("ambient genus parameter must be >= 1")
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if any(w < 0 or w >= g for w in mono):
                raise ValueError(f"generator weight out of range [0, {g - 1}]: {mono}")
            if coeff != 0:
                clean[tuple(sorted(mono, reverse=True))] = Fraction(coeff)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("TautElement is immutable")

    @classmethod
    def zero(cls, g: int) -> "TautElement":
        return cls(g, {})

    @classmethod
    def one(cls, g: int) -> "TautElement":
        return cls(g, {(): Fraction(1)})

    @classmethod
    def generator(cls, g: int, j: int) -> "TautElement":
        if not 0 <= j < g:
            raise ValueError(f"generator index {j} outside [0, {g - 1}]")
        return cls(g, {(j,): Fraction(1)})

    @classmethod
    def monomial(cls, g: int, weights: Monomial, coeff: Fraction = Fraction(1)) -> "TautElement":
        return cls(g, {tuple(weights): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(mono, reverse=True)), Fraction(0))

    def _check_g(self, other: "TautElement") -> None:
        if self.g != other.g:
            raise ValueError(f"mismatched ambient genus: {self.g} vs {other.g}")

    def __add__(self, other: "TautElement") -> "TautElement":
        if not isinstance(other, TautElement):
            return NotImplemented
        self._check_g(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return TautElement(self.g, terms)

    def __sub__(self, other: "TautElement") -> "TautElement":
        if not isinstance(other, TautElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "TautElement":
        return TautElement(self.g, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: Any) -> "TautElement":
        if isinstance(other, TautElement):
            self._check_g(other)
            terms: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    mono = _mono_mul(m1, m2)
                    terms[mono] = terms.get(mono, Fraction(0)) + c1 * c2
            return TautElement(self.g, terms)
        if isinstance(other, (int, Fraction)):
            scalar = Fraction(other)
            return TautElement(self.g, {m: c * scalar for m, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other: Any) -> "TautElement":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "TautElement":
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be integers >= 0")
        result = TautElement.one(self.g)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TautElement):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.g, tuple(sorted(self.terms.items()))))

    def bidegrees(self) -> set[tuple[int, int]]:
        return {mono_bidegree(m) for m in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> tuple[int, int] | None:
        """Bidegree of a homogeneous element; None for zero or mixed elements."""
        degs = self.bidegrees()
        if len(degs) == 1:
            return next(iter(degs))
        return None

    def component(self, s: int, w: int) -> "TautElement":
        """The homogeneous component in bidegree (s, w)."""
        return TautElement(self.g, {m: c for m, c in self.terms.items()
                                    if mono_bidegree(m) == (s, w)})

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def render(self) -> str:
        """Canonical text form, e.g. ``12*C(0)*C(2) + 4*C(1)^2``."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono, coeff in self.sorted_terms():
            body = _render_term(mono, coeff)
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"TautElement(g={self.g}, {self.render()})"


def _render_term(mono: Monomial, coeff: Fraction) -> str:
    factors: list[str] = []
    for w in sorted(set(mono)):
        e = mono.count(w)
        factors.append(f"C({w})" if e == 1 else f"C({w})^{e}")
    body = "*".join(factors)
    if not body:
        return str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"


def taut_ring(g: int) -> Ring:
    """The Ring bundle for algebra-valued series coefficients."""
    return Ring(TautElement.zero(g), TautElement.one(g))


def taut_mul(x: TautElement, y: TautElement) -> TautElement:
    """Pontryagin product: bilinear extension of multiset union on monomials."""
    return x * y


class BivarPoly:
    """Polynomial in t and u with TautElement coefficients.

    Terms are keyed by (u_exp, t_exp).  An optional tracked t-truncation
    caps every operation: terms at t-exponents >= t_trunc are dropped.
    """

    __slots__ = ("g", "terms", "t_trunc")

    def __init__(self, g: int, terms: dict[tuple[int, int], TautElement] | None = None,
                 t_trunc: int | None = None) -> None:
        clean: dict[tuple[int, int], TautElement] = {}
        for (ue, te), elt in (terms or {}).items():
            if ue < 0 or te < 0:
                raise ValueError("u and t exponents must be >= 0")
            if t_trunc is not None and te >= t_trunc:
                continue
            if not elt.is_zero:
                clean[(ue, te)] = elt
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "t_trunc", t_trunc)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("BivarPoly is immutable")

    @classmethod
    def zero(cls, g: int, t_trunc: int | None = None) -> "BivarPoly":
        return cls(g, {}, t_trunc)

    @classmethod
    def one(cls, g: int, t_trunc: int | None = None) -> "BivarPoly":
        return cls(g, {(0, 0): TautElement.one(g)}, t_trunc)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, u_exp: int, t_exp: int) -> TautElement:
        return self.terms.get((u_exp, t_exp), TautElement.zero(self.g))

    def t_coefficient(self, t_exp: int) -> dict[int, TautElement]:
        """The u-polynomial at a fixed t-exponent, as {u_exp: element}."""
        return {ue: elt for (ue, te), elt in self.terms.items() if te == t_exp}

    def u_slice(self, u_exp: int) -> dict[int, TautElement]:
        """The t-polynomial at a fixed u-exponent, as {t_exp: element}."""
        return {te: elt for (ue, te), elt in self.terms.items() if ue == u_exp}

    @property
    def t_degree(self) -> int:
        return max((te for _, te in self.terms), default=-1)

    @property
    def u_degree(self) -> int:
        return max((ue for ue, _ in self.terms), default=-1)

    def items(self) -> Iterator[tuple[int, int, TautElement]]:
        for (ue, te) in sorted(self.terms):
            yield ue, te, self.terms[(ue, te)]

    @staticmethod
    def _combine_trunc(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        if not isinstance(other, BivarPoly):
            return NotImplemented
        if self.g != other.g:
            raise ValueError("mismatched ambient genus")
        terms = dict(self.terms)
        for key, elt in other.terms.items():
            terms[key] = terms[key] + elt if key in terms else elt
        return BivarPoly(self.g, terms, self._combine_trunc(self.t_trunc, other.t_trunc))

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (other * Fraction(-1))

    def __mul__(self, other: Any) -> "BivarPoly":
        if isinstance(other, BivarPoly):
            if self.g != other.g:
                raise ValueError("mismatched ambient genus")
            t_trunc = self._combine_trunc(self.t_trunc, other.t_trunc)
            terms: dict[tuple[int, int], TautElement] = {}
            for (u1, t1), e1 in self.terms.items():
                for (u2, t2), e2 in other.terms.items():
                    te = t1 + t2
                    if t_trunc is not None and te >= t_trunc:
                        continue
                    key = (u1 + u2, te)
                    prod = e1 * e2
                    terms[key] = terms[key] + prod if key in terms else prod
            return BivarPoly(self.g, terms, t_trunc)
        if isinstance(other, (int, Fraction, TautElement)):
            return BivarPoly(self.g, {k: e * other for k, e in self.terms.items()},
                             self.t_trunc)
        return NotImplemented

    def __rmul__(self, other: Any) -> "BivarPoly":
        return self.__mul__(other)

    def truncate_t(self, order: int) -> "BivarPoly":
        return BivarPoly(self.g, self.terms, self._combine_trunc(self.t_trunc, order))

    def eval_u(self, point: Fraction) -> "BivarPoly":
        """Collapse the u-variable by evaluating it at a rational point."""
        terms: dict[tuple[int, int], TautElement] = {}
        for (ue, te), elt in self.terms.items():
            key = (0, te)
            scaled = elt * point ** ue
            terms[key] = terms[key] + scaled if key in terms else scaled
        return BivarPoly(self.g, terms, self.t_trunc)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"u^{u}*t^{t}: {e}" for u, t, e in self.items())
        return f"BivarPoly({body or '0'})"


def build_g_poly(g: int) -> BivarPoly:
    """G(t) = sum_{a=0}^{g-1} (a+1)! C(a) t^(a+2); t-degree g+1."""
    if g < 1:
        raise ValueError("g must be >= 1")
    terms = {(0, a + 2): TautElement.monomial(g, (a,), Fraction(factorial(a + 1)))
             for a in range(g)}
    return BivarPoly(g, terms)


def build_h_poly(g: int) -> BivarPoly:
    """H(u,t) = sum_{a=0}^{g-1} P_{a+2}(u) C(a) t^(a+2)."""
    if g < 1:
        raise ValueError("g must be >= 1")
    terms: dict[tuple[int, int], TautElement] = {}
    for a in range(g):
        pn = p_poly(a + 2)
        for m, c in pn.items():
            terms[(m, a + 2)] = TautElement.monomial(g, (a,), c)
    return BivarPoly(g, terms)


def poly_power(p: BivarPoly, s: int, t_order: int | None = None) -> BivarPoly:
    """Exact s-th power, truncating in t at every step when t_order is given."""
    if s < 1:
        raise ValueError("power must be >= 1")
    base = p if t_order is None else p.truncate_t(t_order)
    result = base
    for _ in range(s - 1):
        result = result * base
    return result
