"""
Exact arithmetic kernel.

Rational functions in the formal variable ``s`` are carried as a pair of sympy
``Poly`` objects over ``QQ`` in canonical form (reduced, monic denominator).
Naive motivic zeta functions live in ``MotivicExpression``: finite sums of an
integer Laurent polynomial in ``L`` and ``T`` divided by a multiset of factors
``1 - L^(-a) T^b`` stored as exponent pairs and never expanded.

The Euler specialization substitutes ``T = L^(-s)`` and ``L = exp(h)`` and reads
the ``h^0`` coefficient of the resulting Laurent series in ``h``.
"""

import math
import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from functools import reduce
from tokenize import TokenError
from types import MappingProxyType

from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator
from sympy import (
    QQ,
    ZZ,
    Expr,
    Integer,
    Poly,
    PolynomialError,
    Rational,
    Symbol,
    bernoulli,
    factorial,
    fraction,
    nan,
    oo,
    together,
    zoo,
)
from sympy.polys.polyerrors import CoercionFailed
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.rings import ring

from .exceptions import (
    ArithmeticDomainError,
    DivergentSpecializationError,
    NotExpandableError,
    ParseError,
)

s = Symbol("s")
L = Symbol("L")
T = Symbol("T")

RationalLike = int | Rational


def _to_poly(value) -> Poly:
    if isinstance(value, Poly):
        if value.gens != (s,):
            return Poly(value.as_expr(), s, domain=QQ)
        return value.set_domain(QQ)
    return Poly(value, s, domain=QQ)


class RationalFunction:
    """Univariate rational function in ``s`` over the rationals.

    The constructor normalizes: the fraction is reduced by the polynomial gcd
    and the denominator is made monic, so equality is structural.
    """

    __slots__ = ("den", "num")

    def __init__(self, num=0, den=1):
        num_poly = _to_poly(num)
        den_poly = _to_poly(den)
        if den_poly.is_zero:
            raise ArithmeticDomainError("division by the zero rational function")
        common = num_poly.gcd(den_poly)
        num_poly = num_poly.exquo(common)
        den_poly = den_poly.exquo(common)
        lead = den_poly.LC()
        self.num: Poly = num_poly.quo_ground(lead)
        self.den: Poly = den_poly.monic()

    @classmethod
    def from_expr(cls, expr) -> "RationalFunction":
        num, den = fraction(together(expr))
        try:
            return cls(Poly(num, s, domain=QQ), Poly(den, s, domain=QQ))
        except (PolynomialError, CoercionFailed) as exc:
            raise ArithmeticDomainError(
                f"not a rational function of s: {expr}"
            ) from exc

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike) -> "RationalFunction":
        """The polynomial ``slope*s + intercept``."""
        return cls(Poly([Rational(slope), Rational(intercept)], s, domain=QQ))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int | Rational | Integer):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ArithmeticDomainError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((tuple(self.num.all_coeffs()), tuple(self.den.all_coeffs())))

    def evaluate(self, value: RationalLike) -> Rational:
        point = Rational(value)
        den_value = self.den.eval(point)
        if den_value == 0:
            raise ArithmeticDomainError(f"{self} has a pole at s = {point}")
        return Rational(self.num.eval(point)) / Rational(den_value)

    def substitute_affine(
        self, alpha: RationalLike, beta: RationalLike
    ) -> "RationalFunction":
        alpha = Rational(alpha)
        if alpha == 0:
            raise ArithmeticDomainError("affine substitution needs a nonzero slope")
        inner = Poly([alpha, Rational(beta)], s, domain=QQ)
        return RationalFunction(self.num.compose(inner), self.den.compose(inner))

    def poles(self) -> frozenset[Rational]:
        """Rational roots of the denominator.

        Irreducible factors of degree two or more have no rational roots and are
        skipped with a warning.
        """
        roots = set()
        _, factors = self.den.factor_list()
        for factor, _ in factors:
            if factor.degree() == 1:
                slope, intercept = factor.all_coeffs()
                roots.add(Rational(-intercept, slope))
            else:
                logger.warning(f"skipping non-linear denominator factor {factor}")
        return frozenset(roots)

    def as_expr(self) -> Expr:
        return self.num.as_expr() / self.den.as_expr()

    def __str__(self) -> str:
        return format_rational_function(self)

    def __repr__(self) -> str:
        return f"RationalFunction({format_rational_function(self)})"


ZERO = RationalFunction(0)
ONE = RationalFunction(1)


_OPERATORS = {
    "+": lambda x, y: x + y,
    "-": lambda x, y: x - y,
    "−": lambda x, y: x - y,
    "*": lambda x, y: x * y,
    "×": lambda x, y: x * y,
    "/": lambda x, y: x / y,
    "÷": lambda x, y: x / y,
}


def rf_arith(x: RationalFunction, y: RationalFunction, op: str) -> RationalFunction:
    try:
        apply = _OPERATORS[op]
    except KeyError as exc:
        raise ArithmeticDomainError(f"unknown operator {op!r}") from exc
    return apply(x, y)


def rf_substitute_affine(
    x: RationalFunction, alpha: RationalLike, beta: RationalLike
) -> RationalFunction:
    return x.substitute_affine(alpha, beta)


# Canonical and LaTeX rendering


def _integer_parts(x: RationalFunction) -> tuple[list[int], list[int]]:
    """Integer coefficient lists (highest degree first) with no common content."""
    coeffs = [Rational(c) for c in x.num.all_coeffs() + x.den.all_coeffs()]
    scale = reduce(math.lcm, (int(c.q) for c in coeffs), 1)
    num = [int(Rational(c) * scale) for c in x.num.all_coeffs()]
    den = [int(Rational(c) * scale) for c in x.den.all_coeffs()]
    content = reduce(math.gcd, num + den, 0) or 1
    return [c // content for c in num], [c // content for c in den]


def _format_monomial(coeff: int, degree: int, var: str, latex: bool) -> str:
    if degree == 0:
        return str(abs(coeff))
    power = var if degree == 1 else (f"{var}^{{{degree}}}" if latex else f"{var}^{degree}")
    if abs(coeff) == 1:
        return power
    return f"{abs(coeff)}{power}" if latex else f"{abs(coeff)}*{power}"


def format_polynomial(coeffs: list[int], var: str = "s", latex: bool = False) -> str:
    """Render integer coefficients (highest degree first).

    Terms run by descending degree, except when the leading coefficient is
    negative and the constant term positive: then ascending, as in ``2 - 3*s``.
    """
    degree = len(coeffs) - 1
    terms = [(degree - i, c) for i, c in enumerate(coeffs) if c]
    if not terms:
        return "0"
    if terms[0][1] < 0 and terms[-1][0] == 0 and terms[-1][1] > 0:
        terms.reverse()
    out = []
    for position, (deg, coeff) in enumerate(terms):
        body = _format_monomial(coeff, deg, var, latex)
        if position == 0:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(out)


def _denominator_parts(den: list[int], latex: bool) -> tuple[list[str], bool]:
    den_poly = Poly(den, s, domain=ZZ)
    content, factors = den_poly.factor_list()
    normalized = []
    for factor, mult in factors:
        if factor.LC() < 0:
            factor = -factor
            content = content * (-1) ** mult
        normalized.append((factor, mult))
    rendered = []
    for factor, mult in normalized:
        body = format_polynomial([int(c) for c in factor.all_coeffs()], latex=latex)
        rendered.append((factor.degree(), body, mult))
    rendered.sort(key=lambda item: (item[0], item[1]))
    parts = [] if content == 1 else [str(content)]
    powered = False
    for _, body, mult in rendered:
        if " " in body:
            body = f"({body})"
        if mult > 1:
            powered = True
            body = f"{body}^{{{mult}}}" if latex else f"{body}^{mult}"
        parts.append(body)
    return parts, powered


def format_rational_function(x: RationalFunction, latex: bool = False) -> str:
    num, den = _integer_parts(x)
    num_str = format_polynomial(num, latex=latex)
    if len(den) == 1 and den[0] == 1:
        return num_str
    parts, powered = _denominator_parts(den, latex)
    if latex:
        return f"\\frac{{{num_str}}}{{{''.join(parts)}}}"
    if " " in num_str:
        num_str = f"({num_str})"
    den_str = "*".join(parts)
    if len(parts) > 1 or powered:
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"


def parse_rational_function(text: str, variable: str = "s") -> RationalFunction:
    """Parse integers, the variable, ``+ - * / ^`` and parentheses."""
    allowed = re.compile(rf"^[0-9\s+\-*/^(){re.escape(variable)}]+$")
    if not text or not allowed.match(text):
        raise ParseError(f"invalid rational function expression: {text!r}")
    try:
        expr = parse_expr(
            text,
            local_dict={variable: s},
            transformations=(*standard_transformations, convert_xor),
        )
    except (SyntaxError, TokenError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational function expression: {text!r}") from exc
    if expr.has(zoo, oo, -oo, nan):
        raise ParseError(f"expression is not finite: {text!r}")
    try:
        return RationalFunction.from_expr(expr)
    except ArithmeticDomainError as exc:
        raise ParseError(exc.detail) from exc


# Laurent polynomials in L and T

Exponent = tuple[int, int]


class LaurentPolynomial:
    """Integer Laurent polynomial in ``L`` (any exponent) and ``T`` (exponent >= 0).

    Terms are keyed by ``(l_exponent, t_exponent)``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        self._terms: dict[Exponent, int] = {
            (int(k[0]), int(k[1])): int(v) for k, v in (terms or {}).items() if v
        }

    @classmethod
    def monomial(cls, l_exp: int = 0, t_exp: int = 0, coeff: int = 1):
        return cls({(l_exp, t_exp): coeff})

    @classmethod
    def constant(cls, coeff: int) -> "LaurentPolynomial":
        return cls({(0, 0): coeff})

    @classmethod
    def in_l(cls, pairs: Iterable[tuple[int, int]]) -> "LaurentPolynomial":
        """Build from ``(L-exponent, coefficient)`` pairs."""
        acc: Counter = Counter()
        for exponent, coeff in pairs:
            acc[(exponent, 0)] += coeff
        return cls(acc)

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = Counter(self._terms)
        acc.update(other._terms)
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Counter = Counter()
        for (la, ta), ca in self._terms.items():
            for (lb, tb), cb in other._terms.items():
                acc[(la + lb, ta + tb)] += ca * cb
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPolynomial":
        result = LaurentPolynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def at_one(self) -> int:
        """Value at ``L = T = 1``."""
        return sum(self._terms.values())

    def max_l_exp(self) -> int:
        return max((k[0] for k in self._terms), default=0)

    def truncate(self, min_l: int | None, max_t: int) -> "LaurentPolynomial":
        return LaurentPolynomial(
            {
                k: v
                for k, v in self._terms.items()
                if k[1] <= max_t and (min_l is None or k[0] >= min_l)
            }
        )

    def shift(self, l_exp: int = 0, t_exp: int = 0) -> "LaurentPolynomial":
        return LaurentPolynomial(
            {(k[0] + l_exp, k[1] + t_exp): v for k, v in self._terms.items()}
        )

    def divide_by_l_minus_one(self) -> "LaurentPolynomial | None":
        """Exact quotient by ``L - 1``, or None when it does not divide."""
        by_t: dict[int, dict[int, int]] = {}
        for (l_exp, t_exp), coeff in self._terms.items():
            by_t.setdefault(t_exp, {})[l_exp] = coeff
        quotient: dict[Exponent, int] = {}
        for t_exp, row in by_t.items():
            running = 0
            for l_exp in range(max(row), min(row), -1):
                running += row.get(l_exp, 0)
                if running:
                    quotient[(l_exp - 1, t_exp)] = running
            if running + row[min(row)]:
                return None
        return LaurentPolynomial(quotient)

    def as_expr(self) -> Expr:
        return sum(
            (Integer(c) * L**le * T**te for (le, te), c in self._terms.items()),
            Integer(0),
        )

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])))

    def __str__(self) -> str:
        return _format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({_format_laurent(self)})"


L_MINUS_ONE = LaurentPolynomial({(1, 0): 1, (0, 0): -1})


def _power(symbol: str, exponent: int) -> str:
    return symbol if exponent == 1 else f"{symbol}^{exponent}"


def _monomial_str(l_exp: int, t_exp: int) -> str:
    pieces = []
    if t_exp:
        pieces.append(_power("T", t_exp))
    if l_exp:
        pieces.append(_power("L", l_exp))
    return "*".join(pieces)


def _format_laurent(poly: LaurentPolynomial) -> str:
    out = []
    for position, ((l_exp, t_exp), coeff) in enumerate(poly):
        mono = _monomial_str(l_exp, t_exp)
        if not mono:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{abs(coeff)}*{mono}"
        if position == 0:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(out) or "0"


def _format_numerator(numer: LaurentPolynomial) -> str:
    if numer.is_zero:
        return "0"
    rest = numer
    power = 0
    while not rest.is_zero:
        quotient = rest.divide_by_l_minus_one()
        if quotient is None:
            break
        rest, power = quotient, power + 1
    min_l = min(k[0] for k in rest.terms)
    min_t = min(k[1] for k in rest.terms)
    rest = rest.shift(-min_l, -min_t)
    pieces = []
    sign = ""
    if len(rest.terms) == 1:
        coeff = next(iter(rest.terms.values()))
        sign = "-" if coeff < 0 else ""
        if abs(coeff) != 1:
            pieces.append(str(abs(coeff)))
        rest_str = ""
    else:
        rest_str = f"({_format_laurent(rest)})"
    if power:
        pieces.append(_power("(L - 1)", power))
    mono = _monomial_str(min_l, min_t)
    if mono:
        pieces.append(mono)
    if rest_str:
        pieces.append(rest_str)
    return sign + ("*".join(pieces) or "1")


# Motivic expressions

Factor = tuple[int, int]


class MotivicTerm(BaseModel):
    """``numer / prod(1 - L^(-a) T^b)`` over the stored ``(a, b)`` factors."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    numer: LaurentPolynomial
    factors: tuple[Factor, ...] = ()

    @field_validator("factors")
    @classmethod
    def check_factors(cls, factors: tuple[Factor, ...]) -> tuple[Factor, ...]:
        for a, b in factors:
            if (a, b) == (0, 0):
                raise ArithmeticDomainError("degenerate denominator factor (0, 0)")
            if b < 0:
                raise ArithmeticDomainError(f"negative T-exponent in factor {(a, b)}")
        return tuple(sorted(factors))

    def factor_str(self) -> str:
        counts = Counter(self.factors)
        parts = []
        for (a, b), mult in sorted(counts.items()):
            pieces = (_power("L", -a) if a else "", _power("T", b) if b else "")
            mono = "*".join(p for p in pieces if p)
            parts.append(_power(f"(1 - {mono})", mult))
        return "*".join(parts)

    def __str__(self) -> str:
        numer = _format_numerator(self.numer)
        if not self.factors:
            return numer
        den = self.factor_str()
        if len(self.factors) > 1:
            den = f"({den})"
        return f"{numer}/{den}"


class MotivicExpression:
    """Finite sum of ``MotivicTerm``s; equality is equality in the localized ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[MotivicTerm] = ()):
        self.terms: tuple[MotivicTerm, ...] = tuple(
            term for term in terms if not term.numer.is_zero
        )

    @classmethod
    def term(
        cls, numer: LaurentPolynomial | int, factors: Iterable[Factor] = ()
    ) -> "MotivicExpression":
        if isinstance(numer, int):
            numer = LaurentPolynomial.constant(numer)
        return cls([MotivicTerm(numer=numer, factors=tuple(factors))])

    def __add__(self, other: "MotivicExpression") -> "MotivicExpression":
        return MotivicExpression(self.terms + other.terms)

    def __neg__(self) -> "MotivicExpression":
        return MotivicExpression(
            MotivicTerm(numer=-t.numer, factors=t.factors) for t in self.terms
        )

    def __sub__(self, other: "MotivicExpression") -> "MotivicExpression":
        return self + (-other)

    def __mul__(self, other) -> "MotivicExpression":
        if isinstance(other, int | LaurentPolynomial):
            return MotivicExpression(
                MotivicTerm(numer=t.numer * other, factors=t.factors)
                for t in self.terms
            )
        if isinstance(other, MotivicExpression):
            return MotivicExpression(
                MotivicTerm(numer=x.numer * y.numer, factors=x.factors + y.factors)
                for x in self.terms
                for y in other.terms
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotivicExpression):
            return False
        return motivic_equal(self, other)

    __hash__ = None  # type: ignore[assignment]

    def as_expr(self) -> Expr:
        total = Integer(0)
        for term in self.terms:
            den = Integer(1)
            for a, b in term.factors:
                den *= 1 - L ** (-a) * T**b
            total += term.numer.as_expr() / den
        return total

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms) or "0"

    def __repr__(self) -> str:
        return f"MotivicExpression({self})"


def _factor_poly(a: int, b: int) -> LaurentPolynomial:
    return LaurentPolynomial({(0, 0): 1, (-a, b): -1})


def motivic_equal(x: MotivicExpression, y: MotivicExpression) -> bool:
    """Compare after cross-multiplying onto the least common denominator."""
    common: Counter = Counter()
    for term in x.terms + y.terms:
        for factor, mult in Counter(term.factors).items():
            common[factor] = max(common[factor], mult)

    def lifted(term: MotivicTerm) -> LaurentPolynomial:
        own = Counter(term.factors)
        numer = term.numer
        for factor, mult in common.items():
            for _ in range(mult - own[factor]):
                numer = numer * _factor_poly(*factor)
        return numer

    difference = LaurentPolynomial()
    for term in x.terms:
        difference = difference + lifted(term)
    for term in y.terms:
        difference = difference - lifted(term)
    return difference.is_zero


class TSeries(Mapping[int, LaurentPolynomial]):
    """Truncated expansion: T-degree -> Laurent polynomial in L."""

    def __init__(
        self,
        coefficients: Mapping[int, LaurentPolynomial],
        t_bound: int,
        l_bound: int | None = None,
    ):
        self.t_bound = t_bound
        self.l_bound = l_bound
        self._coefficients = {
            k: v for k, v in coefficients.items() if k <= t_bound and not v.is_zero
        }

    @classmethod
    def from_laurent(
        cls, poly: LaurentPolynomial, t_bound: int, l_bound: int | None = None
    ) -> "TSeries":
        rows: dict[int, Counter] = {}
        for (l_exp, t_exp), coeff in poly.terms.items():
            if l_bound is not None and l_exp < -l_bound:
                continue
            rows.setdefault(t_exp, Counter())[(l_exp, 0)] += coeff
        return cls(
            {t: LaurentPolynomial(row) for t, row in rows.items()}, t_bound, l_bound
        )

    def __getitem__(self, degree: int) -> LaurentPolynomial:
        if degree in self._coefficients:
            return self._coefficients[degree]
        if 0 <= degree <= self.t_bound:
            return LaurentPolynomial()
        raise KeyError(degree)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.t_bound + 1))

    def __len__(self) -> int:
        return self.t_bound + 1

    def __add__(self, other: "TSeries") -> "TSeries":
        t_bound = min(self.t_bound, other.t_bound)
        return TSeries(
            {k: self[k] + other[k] for k in range(t_bound + 1)},
            t_bound,
            self.l_bound,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return False
        return self._coefficients == other._coefficients

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return "\n".join(f"T^{k}: {self[k]}" for k in range(self.t_bound + 1))


def _geometric(
    a: int, b: int, t_bound: int, cutoff: int | None
) -> LaurentPolynomial:
    terms: dict[Exponent, int] = {}
    if b > 0:
        for j in range(t_bound // b + 1):
            if cutoff is not None and -a * j < cutoff:
                break
            terms[(-a * j, b * j)] = 1
        return LaurentPolynomial(terms)
    assert cutoff is not None
    if a > 0:
        j = 0
        while -a * j >= cutoff:
            terms[(-a * j, 0)] = 1
            j += 1
    else:
        j = 1
        while a * j >= cutoff:
            terms[(a * j, 0)] = -1
            j += 1
    return LaurentPolynomial(terms)


def motivic_series(
    x: MotivicExpression, t_bound: int, l_bound: int | None = None
) -> TSeries:
    """Coefficients of ``T^0 .. T^t_bound``.

    With ``l_bound`` the factors without ``T`` are expanded L-adically and every
    coefficient keeps only L-exponents ``>= -l_bound``.
    """
    if t_bound < 0:
        raise ArithmeticDomainError("t_bound must be non-negative")
    total = LaurentPolynomial()
    for term in x.terms:
        if l_bound is None and any(b == 0 for _, b in term.factors):
            raise NotExpandableError(
                f"not T-expandable: factor without T in {term.factor_str()}"
            )
        cutoff = None
        if l_bound is not None:
            slack = max(0, term.numer.max_l_exp()) + sum(
                -a * (t_bound // b) for a, b in term.factors if a < 0 and b > 0
            )
            cutoff = -l_bound - slack
        acc = term.numer.truncate(cutoff, t_bound)
        for a, b in term.factors:
            acc = (acc * _geometric(a, b, t_bound, cutoff)).truncate(cutoff, t_bound)
        total = total + acc
    return TSeries.from_laurent(total, t_bound, l_bound)


# Euler specialization

_RING, _H, _S = ring("h,s", QQ)


def _bernoulli_plus(n: int) -> Rational:
    return Rational(1, 2) if n == 1 else bernoulli(n)


def _truncate(element, order: int):
    return _RING.from_dict({m: c for m, c in element.items() if m[0] <= order})


def _h_coefficients(term: MotivicTerm) -> list[Poly]:
    """Coefficients of ``h^0 .. h^k`` of ``numer * prod(Psi(c_j h))``."""
    order = len(term.factors)
    exp_part = _RING.zero
    for (l_exp, t_exp), coeff in term.numer.terms.items():
        # exp((l - t s) h) up to h^order
        rate = (l_exp - t_exp * _S) * _H
        power = _RING.one
        for n in range(order + 1):
            exp_part += power * QQ(coeff, int(factorial(n)))
            power *= rate
    product = _truncate(exp_part, order)
    for a, b in term.factors:
        step = (a + b * _S) * _H
        psi = _RING.zero
        power = _RING.one
        for n in range(order + 1):
            psi += power * QQ.from_sympy(_bernoulli_plus(n) / factorial(n))
            power *= step
        product = _truncate(product * psi, order)
    rows: list[dict] = [{} for _ in range(order + 1)]
    for (h_exp, s_exp), coeff in product.items():
        rows[h_exp][(s_exp,)] = QQ.to_sympy(coeff)
    return [Poly.from_dict(row or {(0,): 0}, s, domain=QQ) for row in rows]


def euler_specialize(x: MotivicExpression) -> RationalFunction:
    """Topological specialization: ``L -> 1`` of ``x`` at ``T = L^(-s)``."""
    by_order: dict[int, RationalFunction] = {}
    for term in x.terms:
        order = len(term.factors)
        den = Poly(1, s, domain=QQ)
        for a, b in term.factors:
            den = den * Poly([b, a], s, domain=QQ)
        for n, coeff in enumerate(_h_coefficients(term)):
            if coeff.is_zero:
                continue
            key = n - order
            by_order[key] = by_order.get(key, ZERO) + RationalFunction(coeff, den)
    for key, value in sorted(by_order.items()):
        if key < 0 and not value.is_zero:
            raise DivergentSpecializationError(
                f"divergent specialization: h^{key} coefficient {value} is nonzero"
            )
    result = by_order.get(0, ZERO)
    logger.debug(f"euler_specialize over {len(x.terms)} terms -> {result}")
    return result
