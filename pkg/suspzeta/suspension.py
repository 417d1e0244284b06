"""
Topological zeta functions of the suspensions F = z^Q - f and G = z^p F.

Bundle entries are zeta functions of ``f`` in ``s``; the formulas evaluate
them at ``t = s + 1/Q`` (for F) or at ``r = ((Q + p) s + nu_z) / Q`` (for G).
"""

import math
from functools import reduce
from operator import add

from loguru import logger
from sympy import Rational

from .arith import divisors, euler_phi, jordan_totient, twist_reduction
from .exceptions import ArithmeticDomainError, HypothesisError
from .models import (
    MatrixIdentity,
    ResolutionData,
    SuspensionMatrix,
    SuspensionParams,
    ZetaBundle,
)
from .symbolic import ONE, ZERO, MotivicExpression, RationalFunction
from .zeta import (
    stratum_naive_motivic,
    stratum_profile,
    stratum_topological,
    stratum_twisted_topological,
)

S = RationalFunction.linear(1, 0)


def _t_variable(q: int) -> RationalFunction:
    return RationalFunction.linear(1, Rational(1, q))


def _at_t(bundle: ZetaBundle, q: int, twist: int, strict: bool = False):
    return bundle.lookup(twist, strict=strict).substitute_affine(1, Rational(1, q))


def _nontrivial_divisors(q: int) -> list[int]:
    return [e for e in divisors(q) if e != 1]


def _twisted_sum(bundle: ZetaBundle, q: int, alpha, beta) -> RationalFunction:
    """sum over 1 != e | Q of J_2(e)/Q * Z^(e)(f) at s -> alpha s + beta."""
    total = ZERO
    for e in _nontrivial_divisors(q):
        entry = bundle.lookup(e).substitute_affine(alpha, beta)
        total = total + entry * Rational(jordan_totient(2, e), q)
    return total


def suspend_G(bundle: ZetaBundle, params: SuspensionParams) -> RationalFunction:
    q, p, nuz = params.q, params.p, params.nuz
    alpha, beta = Rational(q + p, q), Rational(nuz, q)
    r = RationalFunction.linear(alpha, beta)
    damping = S / (S + 1)
    u = S / (r * (S * p + nuz)) - damping / q
    z_at_r = bundle.lookup(1).substitute_affine(alpha, beta)
    return ONE / (r * q) + u * z_at_r - damping * _twisted_sum(bundle, q, alpha, beta)


def suspend_F_untwisted(bundle: ZetaBundle, q: int) -> RationalFunction:
    t = _t_variable(q)
    inner = (
        (S + 1) / (S * t * q)
        + (t + 1) / t * _at_t(bundle, q, 1) * Rational(q - 1, q)
        - _twisted_sum(bundle, q, 1, Rational(1, q))
    )
    return S / (S + 1) * inner


def suspend_F_twisted(bundle: ZetaBundle, q: int, twist: int) -> RationalFunction:
    if twist < 1:
        raise ArithmeticDomainError(f"twist order must be >= 1, got {twist}")
    if twist == 1:
        logger.debug(f"suspend_F_twisted(Q={q}, l=1): untwisted case")
        return suspend_F_untwisted(bundle, q)
    t = _t_variable(q)
    if q % twist == 0:
        logger.debug(f"suspend_F_twisted(Q={q}, l={twist}): l divides Q")
        return (
            ONE / (t * q)
            + _at_t(bundle, q, twist)
            - (t + 1) / (t * q) * _at_t(bundle, q, 1)
            - _twisted_sum(bundle, q, 1, Rational(1, q))
        )
    generator = twist_reduction(q, twist).generator
    logger.debug(
        f"suspend_F_twisted(Q={q}, l={twist}): l does not divide Q, generator {generator}"
    )
    total = _at_t(bundle, q, twist, strict=True)
    for e in divisors(q):
        weight = Rational(jordan_totient(2, e), q)
        total = total - _at_t(bundle, q, math.lcm(e, generator), strict=True) * weight
    return total


def suspension_matrix(q: int) -> SuspensionMatrix:
    """B = Q Id - J over the divisors of Q, 1 first."""
    order = divisors(q)
    jordan = [jordan_totient(2, e) for e in order]
    rows = tuple(
        tuple((q if i == j else 0) - jordan[j] for j in range(len(order)))
        for i in range(len(order))
    )
    return SuspensionMatrix(divisors=tuple(order), b=rows)


def suspension_matrix_identity(bundle: ZetaBundle, q: int) -> MatrixIdentity:
    matrix = suspension_matrix(q)
    t = _t_variable(q)
    order = matrix.divisors
    missing = [e for e in order if e not in bundle.entries and not bundle.default_zero]
    if missing:
        raise HypothesisError(
            f"matrix identity needs bundle entries for every divisor of Q, missing {missing}"
        )
    zeta_F = [(S + 1) / S * suspend_F_untwisted(bundle, q)]
    zeta_F += [suspend_F_twisted(bundle, q, twist) for twist in order[1:]]
    zeta_f = [(t + 1) / t * _at_t(bundle, q, 1)]
    zeta_f += [_at_t(bundle, q, twist) for twist in order[1:]]
    a = [(S + 1) / S] + [ONE] * (len(order) - 1)
    lhs = [value * q for value in zeta_F]
    rhs = [
        a[i] / t
        + reduce(add, (zeta_f[j] * matrix.b[i][j] for j in range(len(order))), ZERO)
        for i in range(len(order))
    ]
    equal = lhs == rhs
    logger.debug(f"matrix identity over divisors {order}: equal={equal}")
    return MatrixIdentity(matrix=matrix, lhs=lhs, rhs=rhs, equal=equal)


def _pole_candidates(
    poles_of_f: set[Rational], q: int, p: int, weight: int
) -> set[Rational]:
    candidates = {Rational(-1), Rational(-weight, q + p)}
    if p > 0:
        candidates.add(Rational(-weight, p))
    candidates |= {(Rational(rho) * q - weight) / (q + p) for rho in poles_of_f}
    return candidates


def pole_bound_G(poles_of_f: set[Rational], params: SuspensionParams) -> set[Rational]:
    """Candidate poles of Z(G) in terms of the dimension d of the space of f.

    A superset, never a claim about actual poles. It bounds Z(G) taken with the
    form z^d dx dz, that is nu_z = d + 1.
    """
    return _pole_candidates(poles_of_f, params.q, params.p, params.d + 1)


def pole_bound_F(poles_of_f: set[Rational], q: int) -> set[Rational]:
    return _pole_candidates(poles_of_f, q, 0, 1)


def legacy_formula(bundle: ZetaBundle, q: int) -> RationalFunction:
    """An earlier proposed suspension formula, correct only for prime Q."""
    t = _t_variable(q)
    damping = S / (S + 1)
    weighted = ZERO
    for e in _nontrivial_divisors(q):
        weighted = weighted + _at_t(bundle, q, e) * Rational((e + 1) * euler_phi(e), q)
    return (
        damping * (t + 1) / t * _at_t(bundle, q, 1) * Rational(q - 1, q)
        - damping * weighted
        + ONE / (t * q)
    )


def fermat_discrepancy(q: int) -> RationalFunction:
    """suspend_F_untwisted minus legacy_formula on the Fermat curve y^Q + z^Q."""
    if q < 2:
        raise ArithmeticDomainError(f"fermat_discrepancy needs Q >= 2, got {q}")
    gap = (q + 1) * (q - 1) - sum((e + 1) * euler_phi(e) for e in _nontrivial_divisors(q))
    return S * Rational((q - 2) * gap, q) / ((S + 1) * (S * q + 3))


def assemble_suspension(
    res: ResolutionData, params: SuspensionParams, twist: int = 1
) -> RationalFunction:
    """Sum over strata of chi(E_I°) times the local stratum contribution.

    Twist 1 gives Z_top(G); a twist l > 1 gives Z^(l)_top(F) and needs p = 0
    and nu_z = 1.
    """
    nuz = params.nuz
    total = ZERO
    for stratum in res.strata:
        profile = stratum_profile(res, stratum, params.q, params.p, nuz)
        if twist == 1:
            local = stratum_topological(profile).total()
        else:
            local = stratum_twisted_topological(profile, twist).total()
        total = total + local * stratum.euler
    logger.debug(f"assembled suspension over {len(res.strata)} strata, twist {twist}")
    return total


def assemble_suspension_motivic(
    res: ResolutionData, params: SuspensionParams
) -> MotivicExpression:
    nuz = params.nuz
    total = MotivicExpression()
    for stratum in res.strata:
        stratum_class = res.class_of(stratum)
        if stratum_class is None:
            raise HypothesisError(
                f"no class [E_I°] given for stratum {stratum.divisors}"
            )
        profile = stratum_profile(res, stratum, params.q, params.p, nuz)
        total = total + stratum_naive_motivic(profile).total() * stratum_class
    return total
