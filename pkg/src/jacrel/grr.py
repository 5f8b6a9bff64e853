"""Symbolic Chern-character engine over the projective-bundle base.

The working ring is a sparse polynomial ring over Q in

* ``k``      - the twisting power variable,
* ``a1..a_{r-1}``, ``b0..b_{r-1}`` - the unknown coefficients of the relative
  Todd class A(x) + B(x) rho (a0 = 1 is substituted at construction),
* ``FC0..FC_{g-1}`` - the Fourier images of the curve-class generators,
* ``xi``     - the hyperplane class, nilpotent with xi^(r+1) = 0.

The bundle degree d is a plain integer, not a symbol.  The codimension
grading weighs xi by 1 and FC_j by j+1; k, a_j and b_j are degree 0.

The pushforward table sends upstairs monomials l^mu x^nu (rho^eps) downstairs
and rewrites q-pushforwards of powers of the Poincare class into the FC
generators.  From the pushed-forward Chern character, Chern classes follow
through the exponential formula, and the top k-power of the xi^r component
of the first vanishing Chern class reproduces the factorial composition
relations of the relations module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Iterator

from .relations import _compositions, _orderings, gen_theorem1
from .rings import DensePoly, InvariantViolation, Ring, series_exp
from .tautalg import Monomial, TautElement


@dataclass(frozen=True)
class GrrContext:
    """Ambient parameters and the variable layout of the symbolic ring."""

    g: int
    d: int
    r: int

    def __post_init__(self) -> None:
        if self.g < 1 or self.d < 1 or self.r < 1:
            raise ValueError("g, d, r must all be >= 1")

    @property
    def nvars(self) -> int:
        return 2 * self.r + self.g + 1

    @property
    def xi_index(self) -> int:
        return 2 * self.r + self.g

    def a_index(self, j: int) -> int | None:
        """Index of a_j; None for a_0 (fixed to 1)."""
        if not 0 <= j <= self.r - 1:
            raise ValueError(f"a_{j} out of range")
        return None if j == 0 else j

    def b_index(self, j: int) -> int:
        if not 0 <= j <= self.r - 1:
            raise ValueError(f"b_{j} out of range")
        return self.r + j

    def fc_index(self, j: int) -> int:
        if not 0 <= j <= self.g - 1:
            raise ValueError(f"FC_{j} out of range")
        return 2 * self.r + j

    def var_name(self, idx: int) -> str:
        if idx == 0:
            return "k"
        if 1 <= idx <= self.r - 1:
            return f"a{idx}"
        if self.r <= idx <= 2 * self.r - 1:
            return f"b{idx - self.r}"
        if 2 * self.r <= idx < self.xi_index:
            return f"FC{idx - 2 * self.r}"
        return "xi"

    def codim_weights(self) -> tuple[int, ...]:
        w = [0] * self.nvars
        for j in range(self.g):
            w[self.fc_index(j)] = j + 1
        w[self.xi_index] = 1
        return tuple(w)

    def display_order(self) -> list[int]:
        """Variable order used when rendering a monomial."""
        order = list(range(1, self.r))            # a1..a_{r-1}
        order += list(range(self.r, 2 * self.r))  # b0..b_{r-1}
        order.append(0)                           # k
        order += list(range(2 * self.r, 2 * self.r + self.g))  # FC
        order.append(self.xi_index)
        return order


class GrrElement:
    """Sparse polynomial of the symbolic ring, with xi^(r+1) reduced eagerly."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GrrContext, terms: dict[tuple[int, ...], Fraction] | None = None) -> None:
        clean: dict[tuple[int, ...], Fraction] = {}
        xi = ctx.xi_index
        for exp, coeff in (terms or {}).items():
            if len(exp) != ctx.nvars:
                raise ValueError("exponent tuple has the wrong arity")
            if exp[xi] > ctx.r:
                continue
            if coeff != 0:
                clean[exp] = Fraction(coeff)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("GrrElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: GrrContext) -> "GrrElement":
        return cls(ctx, {})

    @classmethod
    def scalar(cls, ctx: GrrContext, value: Fraction | int) -> "GrrElement":
        return cls(ctx, {(0,) * ctx.nvars: Fraction(value)})

    @classmethod
    def one(cls, ctx: GrrContext) -> "GrrElement":
        return cls.scalar(ctx, 1)

    @classmethod
    def variable(cls, ctx: GrrContext, idx: int, exp: int = 1) -> "GrrElement":
        e = [0] * ctx.nvars
        e[idx] = exp
        return cls(ctx, {tuple(e): Fraction(1)})

    @classmethod
    def k_power(cls, ctx: GrrContext, exp: int, coeff: Fraction = Fraction(1)) -> "GrrElement":
        e = [0] * ctx.nvars
        e[0] = exp
        return cls(ctx, {tuple(e): coeff})

    @classmethod
    def a_coeff(cls, ctx: GrrContext, j: int) -> "GrrElement":
        idx = ctx.a_index(j)
        return cls.one(ctx) if idx is None else cls.variable(ctx, idx)

    @classmethod
    def b_coeff(cls, ctx: GrrContext, j: int) -> "GrrElement":
        return cls.variable(ctx, ctx.b_index(j))

    @classmethod
    def fc(cls, ctx: GrrContext, j: int) -> "GrrElement":
        return cls.variable(ctx, ctx.fc_index(j))

    @classmethod
    def xi(cls, ctx: GrrContext, exp: int = 1) -> "GrrElement":
        return cls.variable(ctx, ctx.xi_index, exp)

    # -- ring structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "GrrElement") -> None:
        if self.ctx != other.ctx:
            raise ValueError("mismatched symbolic contexts")

    def __add__(self, other: "GrrElement") -> "GrrElement":
        if not isinstance(other, GrrElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + coeff
        return GrrElement(self.ctx, terms)

    def __sub__(self, other: "GrrElement") -> "GrrElement":
        return self + (-other)

    def __neg__(self) -> "GrrElement":
        return GrrElement(self.ctx, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Any) -> "GrrElement":
        if isinstance(other, GrrElement):
            self._check(other)
            xi = self.ctx.xi_index
            cap = self.ctx.r
            terms: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    if e1[xi] + e2[xi] > cap:
                        continue
                    exp = tuple(x + y for x, y in zip(e1, e2))
                    terms[exp] = terms.get(exp, Fraction(0)) + c1 * c2
            return GrrElement(self.ctx, terms)
        if isinstance(other, (int, Fraction)):
            scalar = Fraction(other)
            return GrrElement(self.ctx, {e: c * scalar for e, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other: Any) -> "GrrElement":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "GrrElement":
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be integers >= 0")
        result = GrrElement.one(self.ctx)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, GrrElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, tuple(sorted(self.terms.items()))))

    # -- structure queries -------------------------------------------------

    def codim_component(self, j: int) -> "GrrElement":
        weights = self.ctx.codim_weights()
        return GrrElement(self.ctx, {
            e: c for e, c in self.terms.items()
            if sum(w * x for w, x in zip(weights, e)) == j})

    @property
    def max_codim(self) -> int:
        weights = self.ctx.codim_weights()
        return max((sum(w * x for w, x in zip(weights, e)) for e in self.terms),
                   default=0)

    def xi_coefficient(self, m: int) -> "GrrElement":
        """The coefficient of xi^m, with the xi variable stripped."""
        xi = self.ctx.xi_index
        terms = {}
        for e, c in self.terms.items():
            if e[xi] == m:
                stripped = list(e)
                stripped[xi] = 0
                terms[tuple(stripped)] = c
        return GrrElement(self.ctx, terms)

    def k_coefficient(self, s: int) -> "GrrElement":
        terms = {}
        for e, c in self.terms.items():
            if e[0] == s:
                stripped = list(e)
                stripped[0] = 0
                terms[tuple(stripped)] = c
        return GrrElement(self.ctx, terms)

    @property
    def k_degree(self) -> int:
        return max((e[0] for e in self.terms), default=0)

    @property
    def min_xi_exponent(self) -> int:
        xi = self.ctx.xi_index
        return min((e[xi] for e in self.terms), default=0)

    def uses_todd_unknowns(self) -> bool:
        """True when some monomial carries an a_j or b_j factor."""
        for e in self.terms:
            if any(e[i] for i in range(1, 2 * self.ctx.r)):
                return True
        return False

    def to_taut(self) -> TautElement:
        """Map FC monomials to algebra monomials; other variables must be absent."""
        g = self.ctx.g
        terms: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if e[0] or e[self.ctx.xi_index] or any(e[i] for i in range(1, 2 * self.ctx.r)):
                raise InvariantViolation(
                    "element still involves k, xi or Todd unknowns; "
                    "only FC monomials map to the free algebra")
            weights: list[int] = []
            for j in range(g):
                weights.extend([j] * e[self.ctx.fc_index(j)])
            mono = tuple(sorted(weights, reverse=True))
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return TautElement(g, terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        order = self.ctx.display_order()
        parts: list[str] = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for idx in order:
                e = exp[idx]
                if e == 0:
                    continue
                name = self.ctx.var_name(idx)
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                term = str(coeff)
            elif coeff == 1:
                term = body
            elif coeff == -1:
                term = "-" + body
            else:
                term = f"{coeff}*{body}"
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append(" - " + term[1:])
            else:
                parts.append(" + " + term)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GrrElement({self.render()})"


def grr_ring(ctx: GrrContext) -> Ring:
    return Ring(GrrElement.zero(ctx), GrrElement.one(ctx))


@dataclass(frozen=True)
class UpstairsTerm:
    """Monomial l^mu x^nu rho^eps with a coefficient free of xi and FC.

    rho^2 = 0 keeps eps binary; x^(r+1) = 0 keeps nu within 0..r.
    """

    ctx: GrrContext
    mu: int
    nu: int
    rho: int
    coeff: GrrElement

    def __post_init__(self) -> None:
        if self.mu < 0:
            raise ValueError("mu must be >= 0")
        if not 0 <= self.nu <= self.ctx.r:
            raise ValueError(f"nu must lie in 0..{self.ctx.r}")
        if self.rho not in (0, 1):
            raise ValueError("rho exponent must be 0 or 1")
        xi = self.ctx.xi_index
        for e in self.coeff.terms:
            if e[xi] or any(e[self.ctx.fc_index(j)] for j in range(self.ctx.g)):
                raise ValueError("upstairs coefficients must be free of xi and FC")


def _q_star_pi_power(ctx: GrrContext, mu: int) -> GrrElement:
    """Rewrite of the q-pushforward of the mu-th Poincare-class power."""
    if mu <= 1:
        return GrrElement.zero(ctx)
    if mu > ctx.g + 1:
        return GrrElement.zero(ctx)
    return GrrElement.fc(ctx, mu - 2) * Fraction(factorial(mu))


def pushforward(term: UpstairsTerm) -> GrrElement:
    """Apply the four-case pushforward table to one upstairs monomial."""
    ctx = term.ctx
    if term.rho == 1:
        if term.mu > 0:
            return GrrElement.zero(ctx)
        return term.coeff * GrrElement.xi(ctx, term.nu + 1)
    if term.mu == 0:
        return term.coeff * GrrElement.scalar(ctx, ctx.d) * (
            GrrElement.xi(ctx, term.nu) if term.nu else GrrElement.one(ctx))
    qpart = _q_star_pi_power(ctx, term.mu)
    if qpart.is_zero:
        return GrrElement.zero(ctx)
    return term.coeff * qpart * GrrElement.xi(ctx, term.nu + 1)


@dataclass(frozen=True)
class ChernData:
    """Graded Chern-character components and, once derived, Chern classes."""

    ctx: GrrContext
    ch: tuple[GrrElement, ...]
    c: tuple[GrrElement, ...] | None = None

    def ch_j(self, j: int) -> GrrElement:
        if 0 <= j < len(self.ch):
            return self.ch[j]
        return GrrElement.zero(self.ctx)

    def c_j(self, n: int) -> GrrElement:
        if self.c is None:
            raise ValueError("Chern classes have not been derived yet")
        if 0 <= n < len(self.c):
            return self.c[n]
        return GrrElement.zero(self.ctx)


def _ch_grr_route(ctx: GrrContext) -> GrrElement:
    """alpha_*(e^(k l) (A(x) + B(x) rho)), term by term through the table.

    The l-exponent stops at g+1: beyond it the q-pushforward rewrite is zero,
    which is the one geometric fact hard-coded into the engine.
    """
    total = GrrElement.zero(ctx)
    for mu in range(ctx.g + 2):
        k_factor = GrrElement.k_power(ctx, mu, Fraction(1, factorial(mu)))
        for j in range(ctx.r):
            a_term = UpstairsTerm(ctx, mu, j, 0, k_factor * GrrElement.a_coeff(ctx, j))
            b_term = UpstairsTerm(ctx, mu, j, 1, k_factor * GrrElement.b_coeff(ctx, j))
            total = total + pushforward(a_term) + pushforward(b_term)
    return total


def _ch_closed_form(ctx: GrrContext) -> GrrElement:
    """d A(xi) + xi B(xi) + (sum_mu k^(mu+2) FC_mu) xi A(xi)."""
    a_of_xi = GrrElement.zero(ctx)
    b_of_xi = GrrElement.zero(ctx)
    for j in range(ctx.r):
        xi_j = GrrElement.xi(ctx, j) if j else GrrElement.one(ctx)
        a_of_xi = a_of_xi + GrrElement.a_coeff(ctx, j) * xi_j
        b_of_xi = b_of_xi + GrrElement.b_coeff(ctx, j) * xi_j
    fourier = GrrElement.zero(ctx)
    for mu in range(ctx.g):
        fourier = fourier + GrrElement.k_power(ctx, mu + 2) * GrrElement.fc(ctx, mu)
    return (GrrElement.scalar(ctx, ctx.d) * a_of_xi
            + GrrElement.xi(ctx) * b_of_xi
            + fourier * GrrElement.xi(ctx) * a_of_xi)


def ch_vk(g: int, d: int, r: int) -> ChernData:
    """The Chern character, computed through the pushforward table and checked
    against the closed form before being split into graded components."""
    ctx = GrrContext(g, d, r)
    computed = _ch_grr_route(ctx)
    closed = _ch_closed_form(ctx)
    if computed != closed:
        raise InvariantViolation("pushforward route disagrees with the closed form")
    pieces = tuple(computed.codim_component(j) for j in range(computed.max_codim + 1))
    return ChernData(ctx=ctx, ch=pieces)


def extract_amj(data: ChernData, m: int, j: int) -> GrrElement:
    """The xi^m coefficient of the codimension-j Chern character piece."""
    if not 1 <= m <= data.ctx.r:
        raise ValueError(f"m must lie in 1..{data.ctx.r}")
    if j < 1:
        raise ValueError("j must be >= 1")
    return data.ch_j(j).xi_coefficient(m)


def chern_classes(data: ChernData, t_order: int) -> ChernData:
    """Chern classes from the exponential formula.

    Builds F(t) = sum_j (-1)^(j-1) (j-1)! ch_j t^j and expands exp(F(t));
    because every ch_j with j >= 1 is divisible by xi, powers of F beyond
    xi's nilpotency vanish and the expansion is finite.  The divisibility is
    checked, not assumed.
    """
    ctx = data.ctx
    for j in range(1, len(data.ch)):
        if data.ch[j].min_xi_exponent < 1 and not data.ch[j].is_zero:
            raise InvariantViolation(f"ch_{j} is not divisible by xi")
    ring = grr_ring(ctx)
    coeffs = [GrrElement.zero(ctx)]
    for j in range(1, min(len(data.ch), t_order)):
        sign = Fraction((-1) ** (j - 1) * factorial(j - 1))
        coeffs.append(data.ch[j] * sign)
    f_poly = DensePoly(ring, coeffs)
    exp_f = series_exp(f_poly, t_order)
    c = tuple(exp_f.coeff(n) for n in range(t_order))
    return ChernData(ctx=ctx, ch=data.ch, c=c)


@dataclass(frozen=True)
class GammaData:
    """The k-power decomposition of the xi^r part of the vanishing coefficient.

    ``gammas[s]`` is the coefficient of k^s, normalized by the sign
    (-1)^(M+1) so that the top entry carries the factorial composition sum
    times (-1)^r / r!.
    """

    ctx: GrrContext
    M: int
    xi_r_part: GrrElement
    gammas: dict[int, GrrElement]

    def gamma(self, s: int) -> GrrElement:
        return self.gammas.get(s, GrrElement.zero(self.ctx))

    @property
    def max_power(self) -> int:
        return max(self.gammas, default=0)

    def items(self) -> Iterator[tuple[int, GrrElement]]:
        for s in sorted(self.gammas):
            yield s, self.gammas[s]


def gamma_extract(g: int, d: int, r: int, M: int) -> GammaData:
    """Split the t^(M+1) Chern-class coefficient at xi^r into k-powers."""
    if M < d:
        raise ValueError("M must be >= d")
    data = chern_classes(ch_vk(g, d, r), M + 2)
    top = data.c_j(M + 1)
    xi_r = top.xi_coefficient(r)
    signed = xi_r * Fraction((-1) ** (M + 1))
    gammas: dict[int, GrrElement] = {}
    for s in range(signed.k_degree + 1):
        piece = signed.k_coefficient(s)
        if not piece.is_zero:
            gammas[s] = piece
    return GammaData(ctx=data.ctx, M=M, xi_r_part=signed, gammas=gammas)


def gamma_top_reference(g: int, d: int, r: int, M: int) -> GrrElement:
    """The predicted top k-power: (-1)^r/r! times the factorial composition sum."""
    ctx = GrrContext(g, d, r)
    N = M - 2 * r + 1
    if N < 0:
        return GrrElement.zero(ctx)
    result = GrrElement.zero(ctx)
    for mono in _compositions(N, r, g - 1):
        coeff = _orderings(mono)
        exp = [0] * ctx.nvars
        for a in mono:
            coeff *= factorial(a + 1)
            exp[ctx.fc_index(a)] += 1
        result = result + GrrElement(ctx, {tuple(exp): Fraction(coeff)})
    return result * Fraction((-1) ** r, factorial(r))


def derive_theorem1(g: int, d: int, r: int, M: int) -> TautElement:
    """Re-derive the factorial composition relation from the engine.

    Takes the top k-power of the extracted data, clears the (-1)^r/r! scalar,
    maps FC monomials to algebra generators, and cross-checks the result
    against the relations module.  Any mismatch raises InvariantViolation.
    """
    if M < d:
        raise ValueError("M must be >= d")
    data = gamma_extract(g, d, r, M)
    top = data.gamma(M + 1)
    if top.uses_todd_unknowns():
        raise InvariantViolation("top k-power still involves Todd unknowns")
    element = (top * Fraction((-1) ** r * factorial(r))).to_taut()
    N = M - 2 * r + 1
    expected = gen_theorem1(g, d, r, N) if N >= 0 else TautElement.zero(g)
    if element != expected:
        raise InvariantViolation(
            f"derived relation disagrees with the composition sum at N={N}")
    return element
