"""
The ``verify`` harness: every shipped fixture and identity, run as independent
checks on worker threads and reported as a pass/fail table.
"""

import asyncio
import random
from collections.abc import Callable

from loguru import logger

from .arith import (
    dirichlet_convolve,
    divisors,
    jordan_table,
    moebius_table,
    one_table,
    power_table,
    twist_reduction,
    twist_set_bruteforce,
)
from .cones import cone_gcd_invariant_bruteforce
from .ingest import load_bundle_fixture, load_resolution_fixture
from .models import CheckResult, StratumProfile, SuspensionParams
from .services import config
from .suspension import (
    assemble_suspension,
    fermat_discrepancy,
    legacy_formula,
    pole_bound_F,
    pole_bound_G,
    suspend_F_twisted,
    suspend_F_untwisted,
    suspend_G,
    suspension_matrix_identity,
)
from .symbolic import ZERO, RationalFunction, euler_specialize, motivic_series
from .zeta import (
    bundle_from_resolution,
    lattice_series_oracle,
    relevant_twists,
    resolution_topological,
    stratum_naive_motivic,
    stratum_topological,
    stratum_twisted_topological,
)

Check = Callable[[], tuple[bool, str]]

S = RationalFunction.linear(1, 0)
FERMAT_RANGE = range(2, 13)
PRIMES = {2, 3, 5, 7, 11}


def _x5y6_table() -> dict[int, RationalFunction]:
    base = S * 15 + 7
    table = {d: ZERO for d in range(2, 31)}
    table.update(
        {
            1: (S * 3 + 7) / (base * (S + 1)),
            3: 6 / base,
            6: 6 / base,
            5: 1 / (base * 2),
            10: -5 / (base * 2),
            15: 7 / (base * 2),
            30: 7 / (base * 2),
        }
    )
    return table


def check_x5y6() -> tuple[bool, str]:
    bundle = load_bundle_fixture("x5y6")
    wrong = [
        d
        for d, expected in _x5y6_table().items()
        if suspend_F_twisted(bundle, 10, d) != expected
    ]
    return not wrong, f"mismatched twists {wrong}" if wrong else "31 twists"


def check_lvp() -> tuple[bool, str]:
    result = suspend_F_twisted(load_bundle_fixture("lvp"), 84, 27)
    return result == 8 / (S * 756 + 317), f"Z^(27)(F) = {result}"


def _fermat_expected(q: int) -> RationalFunction:
    return (S * ((q - 2) * (q - 1) + 1) + 3) / ((S + 1) * (S * q + 3))


def check_fermat() -> tuple[bool, str]:
    failures = []
    for q in FERMAT_RANGE:
        res = load_resolution_fixture(f"fermat_q{q}")
        bundle = bundle_from_resolution(res, relevant_twists(res))
        untwisted = suspend_F_untwisted(bundle, q)
        legacy = legacy_formula(bundle, q)
        if untwisted != _fermat_expected(q):
            failures.append(f"Q={q}: suspension")
        if (legacy == untwisted) != (q in PRIMES):
            failures.append(f"Q={q}: legacy agreement")
        if untwisted - legacy != fermat_discrepancy(q):
            failures.append(f"Q={q}: discrepancy")
    return not failures, "; ".join(failures) or "Q = 2..12"


X5Y6_MATRIX = (
    (9, -3, -24, -72),
    (-1, 7, -24, -72),
    (-1, -3, -14, -72),
    (-1, -3, -24, -62),
)


def check_matrix() -> tuple[bool, str]:
    identity = suspension_matrix_identity(load_bundle_fixture("x5y6"), 10)
    same_matrix = identity.matrix.b == X5Y6_MATRIX
    return identity.equal and same_matrix, f"B = {identity.matrix.b}"


def random_profile(
    rng: random.Random,
    size_max: int = 3,
    n_max: int = 10,
    p_max: int = 3,
    nuz_max: int = 4,
) -> StratumProfile:
    size = rng.randint(1, size_max)
    return StratumProfile(
        n=tuple(rng.randint(1, n_max) for _ in range(size)),
        nu=tuple(rng.randint(1, 4) for _ in range(size)),
        q=rng.randint(1, n_max),
        p=rng.randint(0, p_max),
        nuz=rng.randint(1, nuz_max),
    )


def _profile_failures(profile: StratumProfile) -> list[str]:
    t_bound, l_bound = config.series_bound, config.l_bound
    motivic = stratum_naive_motivic(profile).parts()
    oracle = lattice_series_oracle(profile, t_bound, l_bound).parts()
    closed = stratum_topological(profile).parts()
    failures = []
    for name, part in motivic.items():
        if motivic_series(part, t_bound, l_bound) != oracle[name]:
            failures.append(f"{profile}: series of {name}")
        if euler_specialize(part) != closed[name]:
            failures.append(f"{profile}: specialization of {name}")
    return failures


def _gating_failures(profile: StratumProfile) -> list[str]:
    untwisted = stratum_topological(profile).parts()
    invariants = {
        name: cone_gcd_invariant_bruteforce(profile, name, config.cone_search_box)
        for name in ("sigma+", "sigma-", "rho")
    }
    failures = []
    for e in range(1, 11):
        twisted = stratum_twisted_topological(profile, e)
        if not twisted.rho_star.is_zero:
            failures.append(f"{profile}, e={e}: rho* survives")
        for name, invariant in invariants.items():
            expected = untwisted[name] if invariant % e == 0 else ZERO
            if twisted.parts()[name] != expected:
                failures.append(f"{profile}, e={e}: gate of {name}")
    return failures


def check_strata() -> tuple[bool, str]:
    rng = random.Random(config.random_seed)
    failures = []
    for _ in range(config.random_profiles):
        failures += _profile_failures(random_profile(rng))
    for _ in range(config.random_profiles // 5):
        gated = random_profile(rng, size_max=2, n_max=8, p_max=0, nuz_max=1)
        failures += _gating_failures(gated)
    detail = "; ".join(failures[:3]) or f"{config.random_profiles} profiles"
    return not failures, detail


def check_arithmetic() -> tuple[bool, str]:
    size = 10**4
    failures = []
    ones, mu = one_table(size), moebius_table(size)
    for k in (1, 2, 3):
        jordan, power = jordan_table(k, size), power_table(k, size)
        # k = 1 is the Gauss identity sum_{d | n} phi(d) = n
        if dirichlet_convolve(jordan, ones).values != power.values:
            failures.append(f"J_{k} * 1 = id^{k}")
        if dirichlet_convolve(mu, power).values != jordan.values:
            failures.append(f"mu * id^{k} = J_{k}")
    for q in range(1, 61):
        for twist in range(1, 61):
            reduction = twist_reduction(q, twist)
            members = twist_set_bruteforce(q, twist, 2000)
            if members != list(range(reduction.generator, 2001, reduction.generator)):
                failures.append(f"D(Q={q}, l={twist})")
    return not failures, "; ".join(failures[:3]) or "n <= 10^4, Q, l <= 60"


def _untwisted_outputs() -> list[tuple[str, RationalFunction]]:
    outputs = []
    for name in ("z2_minus_x2", "x5_plus_y6", *(f"fermat_q{q}" for q in FERMAT_RANGE)):
        res = load_resolution_fixture(name)
        outputs.append((name, resolution_topological(res)))
        for q in (2, 3, 5):
            params = SuspensionParams(q=q, p=0, nuz=1)
            outputs.append((f"{name}, Q={q}", assemble_suspension(res, params)))
    bundle = load_bundle_fixture("x5y6")
    outputs.append(("x5y6 bundle", bundle.lookup(1)))
    outputs.append(("x5y6, Q=10", suspend_F_untwisted(bundle, 10)))
    return outputs


def check_value_at_zero() -> tuple[bool, str]:
    wrong = [name for name, value in _untwisted_outputs() if value.evaluate(0) != 1]
    return not wrong, f"Z(0) != 1 for {wrong}" if wrong else "all untwisted outputs"


def check_poles() -> tuple[bool, str]:
    failures = []
    for name in ("x5_plus_y6", *(f"fermat_q{q}" for q in FERMAT_RANGE)):
        res = load_resolution_fixture(name)
        bundle = bundle_from_resolution(res, relevant_twists(res))
        poles_f = set(bundle.lookup(1).poles())
        for q in (2, 3, 4, 10):
            bound = pole_bound_F(poles_f, q)
            for twist in divisors(q):
                if not suspend_F_twisted(bundle, q, twist).poles() <= bound:
                    failures.append(f"{name}: F, Q={q}, l={twist}")
            for p in (1, 2, 3):
                # f lives in two variables
                params = SuspensionParams(q=q, p=p, nuz=3, d=2)
                if not suspend_G(bundle, params).poles() <= pole_bound_G(poles_f, params):
                    failures.append(f"{name}: G, Q={q}, p={p}")
    return not failures, "; ".join(failures[:3]) or "all candidate sets hold"


CHECKS: dict[str, Check] = {
    "example 5-6-10": check_x5y6,
    "example LvP": check_lvp,
    "Fermat family": check_fermat,
    "matrix identity": check_matrix,
    "stratum oracles": check_strata,
    "arithmetic identities": check_arithmetic,
    "Z(0) = 1": check_value_at_zero,
    "pole containment": check_poles,
}


async def run_check(name: str, check: Check, semaphore: asyncio.Semaphore) -> CheckResult:
    async with semaphore:
        logger.info(f"verify: running {name}")
        try:
            passed, detail = await asyncio.to_thread(check)
        except Exception as exc:
            logger.error(f"verify: {name} raised {exc!r}")
            return CheckResult(name=name, passed=False, detail=f"raised {exc!r}")
    logger.info(f"verify: {name} {'passed' if passed else 'FAILED'} ({detail})")
    return CheckResult(name=name, passed=passed, detail=detail)


async def run_checks(checks: dict[str, Check] | None = None) -> list[CheckResult]:
    semaphore = asyncio.Semaphore(config.verify_workers)
    selected = CHECKS if checks is None else checks
    return list(
        await asyncio.gather(
            *(run_check(name, check, semaphore) for name, check in selected.items())
        )
    )


def format_table(results: list[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=5)
    lines = [f"{'check'.ljust(width)} | status | detail"]
    lines.append(f"{'-' * width}-+--------+-------")
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"{result.name.ljust(width)} | {status:<6} | {result.detail}")
    return "\n".join(lines)
