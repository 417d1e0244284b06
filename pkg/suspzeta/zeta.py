"""
Zeta functions of a stratum of the suspension and of resolution data.

For a stratum profile (multiplicities N_k, discrepancies nu_k over I, the
exponent Q, p = N_z and nu_z) the naive motivic zeta function of
z^p (z^Q - x^N) splits over the cones sigma+, sigma-, rho plus the arcs rho*
whose order on g exceeds the common order on both monomials.
"""

import math
from functools import reduce
from itertools import product

from loguru import logger
from sympy import Rational

from .arith import divisors
from .cones import (
    cone_gcd_invariant,
    cone_rho,
    cone_sigma_plus,
    classify,
    generating_function,
    sigma_minus_function,
)
from .exceptions import ArithmeticDomainError, HypothesisError
from .models import ResolutionData, Stratum, StratumProfile, StratumZeta, ZetaBundle
from .services import config
from .symbolic import (
    L_MINUS_ONE,
    ONE,
    ZERO,
    LaurentPolynomial,
    MotivicExpression,
    RationalFunction,
    TSeries,
)


def _weights(profile: StratumProfile) -> tuple[list, list]:
    plus = [(nu, n) for n, nu in zip(profile.n, profile.nu, strict=True)]
    plus.append((profile.nuz, profile.p))
    minus = [(nu, 0) for nu in profile.nu]
    minus.append((profile.nuz, profile.q + profile.p))
    return plus, minus


def stratum_naive_motivic(profile: StratumProfile) -> StratumZeta:
    plus, minus = _weights(profile)
    size = profile.size
    e_gcd = profile.e_gcd
    full = L_MINUS_ONE ** (size + 1)
    phi_plus = generating_function(cone_sigma_plus(profile), plus)
    phi_rho = generating_function(cone_rho(profile), plus)
    # e_I (L-1)^(|I|+1) sum_{i>=1} L^-i T^i
    rho_tail = MotivicExpression.term(
        full.shift(-1, 1) * e_gcd, [(1, 1)]
    )
    return StratumZeta(
        sigma_plus=phi_plus * full,
        sigma_minus=sigma_minus_function(profile, minus) * full,
        rho=phi_rho * (L_MINUS_ONE**size * (L_MINUS_ONE - e_gcd)),
        rho_star=phi_rho * rho_tail,
    )


def lattice_series_oracle(
    profile: StratumProfile, t_bound: int, l_bound: int | None = None
) -> StratumZeta:
    """The four parts as truncated series, summed point by point."""
    if profile.size == 0:
        raise HypothesisError("stratum needs a nonempty index set I")
    l_bound = config.l_bound if l_bound is None else l_bound
    size = profile.size
    weights = (*profile.nu, profile.nuz)
    # the largest L-exponent of a contribution is |I| + 1 - <b, nu>
    budget = l_bound + size + 1
    full = L_MINUS_ONE ** (size + 1)
    rho_factor = L_MINUS_ONE**size * (L_MINUS_ONE - profile.e_gcd)
    parts = {name: LaurentPolynomial() for name in ("sigma+", "sigma-", "rho", "rho*")}
    ranges = [range(1, budget // w + 1) for w in weights]
    for point in product(*ranges):
        weight = sum(x * w for x, w in zip(point, weights, strict=True))
        if weight > budget:
            continue
        cone, pairing, z_order = classify(profile, point)
        order = min(pairing, z_order)
        if order > t_bound:
            continue
        if cone != "rho":
            parts[cone] = parts[cone] + full.shift(-weight, order)
            continue
        parts["rho"] = parts["rho"] + rho_factor.shift(-weight, order)
        for i in range(1, t_bound - order + 1):
            parts["rho*"] = parts["rho*"] + (full * profile.e_gcd).shift(
                -weight - i, order + i
            )
    series = {
        name: TSeries.from_laurent(poly, t_bound, l_bound)
        for name, poly in parts.items()
    }
    return StratumZeta(
        sigma_plus=series["sigma+"],
        sigma_minus=series["sigma-"],
        rho=series["rho"],
        rho_star=series["rho*"],
    )


def _r_variable(profile: StratumProfile) -> RationalFunction:
    return RationalFunction.linear(
        Rational(profile.q + profile.p, profile.q), Rational(profile.nuz, profile.q)
    )


def stratum_topological(profile: StratumProfile) -> StratumZeta:
    if profile.size == 0:
        raise HypothesisError("stratum needs a nonempty index set I")
    q = profile.q
    r = _r_variable(profile)
    s = RationalFunction.linear(1, 0)
    product_r = ONE
    for n_k, nu_k in zip(profile.n, profile.nu, strict=True):
        product_r = product_r / (r * n_k + nu_k)
    product_nu = Rational(1, math.prod(profile.nu))
    e_square = profile.e_gcd**2
    rho = product_r * Rational(-e_square, q)
    return StratumZeta(
        sigma_plus=product_r / (s * profile.p + profile.nuz),
        sigma_minus=(product_r * -1 + product_nu) / (r * q),
        rho=rho,
        rho_star=-rho / (s + 1),
    )


def stratum_twisted_topological(profile: StratumProfile, e: int) -> StratumZeta:
    if e < 1:
        raise ArithmeticDomainError(f"twist order must be >= 1, got {e}")
    if profile.p != 0 or profile.nuz != 1:
        raise HypothesisError(
            f"corollary hypothesis violated: needs p = 0 and nu_z = 1, "
            f"got p = {profile.p}, nu_z = {profile.nuz}"
        )
    untwisted = stratum_topological(profile)

    def gate(part: RationalFunction, which) -> RationalFunction:
        return part if cone_gcd_invariant(profile, which) % e == 0 else ZERO

    return StratumZeta(
        sigma_plus=gate(untwisted.sigma_plus, "sigma+"),
        sigma_minus=gate(untwisted.sigma_minus, "sigma-"),
        rho=gate(untwisted.rho, "rho"),
        rho_star=ZERO,
    )


def stratum_profile(
    res: ResolutionData, stratum: Stratum, q: int, p: int = 0, nuz: int = 1
) -> StratumProfile:
    members = res.members(stratum)
    return StratumProfile(
        n=tuple(d.n for d in members),
        nu=tuple(d.nu for d in members),
        q=q,
        p=p,
        nuz=nuz,
        labels=tuple(d.id for d in members),
    )


def resolution_topological(res: ResolutionData, twist: int = 1) -> RationalFunction:
    if twist < 1:
        raise ArithmeticDomainError(f"twist order must be >= 1, got {twist}")
    s = RationalFunction.linear(1, 0)
    total = ZERO
    for stratum in res.strata:
        members = res.members(stratum)
        if any(d.n % twist for d in members):
            continue
        term = RationalFunction(stratum.euler)
        for divisor in members:
            term = term / (s * divisor.n + divisor.nu)
        total = total + term
    return total


def check_z_at_zero(res: ResolutionData) -> bool:
    value = sum(
        (
            Rational(stratum.euler, math.prod(d.nu for d in res.members(stratum)))
            for stratum in res.strata
        ),
        Rational(0),
    )
    if value != 1:
        logger.warning(f"Z(0) = {value} for this resolution data, expected 1")
    return value == 1


def relevant_twists(res: ResolutionData) -> set[int]:
    """Twist orders that can have a nonzero zeta function."""
    return reduce(set.union, (set(divisors(d.n)) for d in res.divisors), {1})


def bundle_from_resolution(res: ResolutionData, twists: set[int]) -> ZetaBundle:
    if 1 not in twists:
        raise HypothesisError("a bundle needs the untwisted entry (twist 1)")
    entries = {e: resolution_topological(res, e) for e in sorted(twists)}
    complete = relevant_twists(res) <= set(twists)
    logger.debug(f"bundle over twists {sorted(twists)}, complete={complete}")
    return ZetaBundle(entries=entries, default_zero=complete)


def resolution_naive_motivic(res: ResolutionData) -> MotivicExpression:
    total = MotivicExpression()
    for stratum in res.strata:
        stratum_class = res.class_of(stratum)
        if stratum_class is None:
            raise HypothesisError(
                f"no class [E_I°] given for stratum {stratum.divisors}"
            )
        numer = stratum_class
        factors = []
        for divisor in res.members(stratum):
            numer = numer * L_MINUS_ONE.shift(-divisor.nu, divisor.n)
            factors.append((divisor.nu, divisor.n))
        total = total + MotivicExpression.term(numer, factors)
    return total
