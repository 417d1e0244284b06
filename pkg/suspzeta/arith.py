"""Arithmetic functions, Dirichlet convolution and the twist divisibility sets."""

import math
from collections.abc import Callable
from functools import lru_cache

from loguru import logger
from sympy import factorint

from .exceptions import ArithmeticDomainError
from .models import ArithFnTable, TwistReduction
from .services import config


@lru_cache(maxsize=None)
def _smallest_prime_factors(size: int) -> tuple[int, ...]:
    spf = list(range(size + 1))
    for prime in range(2, math.isqrt(size) + 1):
        if spf[prime] == prime:
            for multiple in range(prime * prime, size + 1, prime):
                if spf[multiple] == multiple:
                    spf[multiple] = prime
    return tuple(spf)


def _sieve_size(n: int) -> int:
    # grow in powers of two so the cache holds few sieves
    return min(config.sieve_bound, max(1024, 1 << n.bit_length()))


@lru_cache(maxsize=4096)
def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{prime: exponent}`` of ``n >= 1``.

    >>> factorize(360)
    {2: 3, 3: 2, 5: 1}
    """
    if n < 1:
        raise ArithmeticDomainError(f"cannot factor {n}")
    if n > config.sieve_bound:
        return {int(p): int(k) for p, k in factorint(n).items()}
    spf = _smallest_prime_factors(_sieve_size(n))
    result: dict[int, int] = {}
    while n > 1:
        prime = spf[n]
        result[prime] = result.get(prime, 0) + 1
        n //= prime
    return result


def moebius(n: int) -> int:
    factors = factorize(n)
    if any(k > 1 for k in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(n: int) -> int:
    """Number of residues modulo ``n`` coprime to ``n``.

    >>> euler_phi(12)
    4
    """
    return jordan_totient(1, n)


def jordan_totient(k: int, n: int) -> int:
    if k < 1:
        raise ArithmeticDomainError(f"Jordan totient needs k >= 1, got {k}")
    result = 1
    for prime, exponent in factorize(n).items():
        result *= prime ** (k * (exponent - 1)) * (prime**k - 1)
    return result


def divisors(n: int) -> list[int]:
    result = [1]
    for prime, exponent in factorize(n).items():
        result = [d * prime**i for d in result for i in range(exponent + 1)]
    return sorted(result)


def arith_table(name: str, fn: Callable[[int], int], size: int) -> ArithFnTable:
    return ArithFnTable(name=name, values=tuple(fn(n) for n in range(1, size + 1)))


def unit_table(size: int) -> ArithFnTable:
    return arith_table("ε", lambda n: 1 if n == 1 else 0, size)


def one_table(size: int) -> ArithFnTable:
    return arith_table("𝟙", lambda n: 1, size)


def power_table(k: int, size: int) -> ArithFnTable:
    return arith_table(f"σ_{k}", lambda n: n**k, size)


def moebius_table(size: int) -> ArithFnTable:
    return arith_table("μ", moebius, size)


def jordan_table(k: int, size: int) -> ArithFnTable:
    return arith_table(f"J_{k}", lambda n: jordan_totient(k, n), size)


def dirichlet_convolve(f: ArithFnTable, g: ArithFnTable) -> ArithFnTable:
    if f.size != g.size:
        raise ArithmeticDomainError(
            f"tables cover different ranges: {f.size} != {g.size}"
        )
    size = f.size
    values = [0] * (size + 1)
    for d in range(1, size + 1):
        f_d = f[d]
        if not f_d:
            continue
        for multiple in range(d, size + 1, d):
            values[multiple] += f_d * g[multiple // d]
    return ArithFnTable(name=f"({f.name} ∗ {g.name})", values=tuple(values[1:]))


def twist_reduction(q: int, twist: int) -> TwistReduction:
    """Generator of ``D(Q, l1) = {M : l1 * gcd(Q, M) | M}``.

    ``m = gcd(Q, l1^v)`` with ``v = ceil(log2 Q)``, which bounds every p-adic
    valuation of ``Q``; the set is the multiples of ``l1 * m``.
    """
    if q < 1 or twist < 1:
        raise ArithmeticDomainError(f"twist_reduction needs Q, l >= 1, got {q}, {twist}")
    l1 = twist // math.gcd(twist, q)
    valuation_bound = max(1, (q - 1).bit_length())
    m = math.gcd(q, pow(l1, valuation_bound, q))
    reduction = TwistReduction(q=q, twist=twist, l1=l1, m=m, generator=l1 * m)
    logger.debug(
        f"twist_reduction(Q={q}, l={twist}): l1={l1}, m={m}, generator={l1 * m}"
    )
    return reduction


def in_twist_set(reduction: TwistReduction, value: int) -> bool:
    return reduction.contains(value)


def twist_set_bruteforce(q: int, twist: int, bound: int) -> list[int]:
    """Members ``M <= bound`` of ``D(Q, l1)`` straight from the definition."""
    l1 = twist // math.gcd(twist, q)
    return [m for m in range(1, bound + 1) if m % (l1 * math.gcd(q, m)) == 0]
