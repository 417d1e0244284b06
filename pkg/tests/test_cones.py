import random
from collections import Counter

import pytest

from suspzeta.cones import (
    classify,
    cone_gcd_invariant,
    cone_gcd_invariant_bruteforce,
    cone_multiplicity,
    cone_multiplicity_closed_form,
    cone_points_bruteforce,
    cone_rho,
    cone_sigma_plus,
    fundamental_domain,
    generating_function,
    open_orthant_function,
    sigma_minus_function,
)
from suspzeta.exceptions import HypothesisError
from suspzeta.models import ConeSpec, StratumProfile
from suspzeta.symbolic import (
    LaurentPolynomial,
    MotivicExpression,
    motivic_equal,
    motivic_series,
)


def profile(n, q, p=0, nu=None, nuz=1):
    return StratumProfile(n=n, nu=nu or (1,) * len(n), q=q, p=p, nuz=nuz)


@pytest.mark.parametrize(
    "n, q, expected",
    [
        ((2,), 2, ((1, 1), (0, 1))),
        ((3,), 2, ((2, 3), (0, 1))),
        ((5, 6), 10, ((2, 0, 1), (0, 5, 3), (0, 0, 1))),
    ],
)
def test_sigma_plus_generators(n, q, expected):
    assert cone_sigma_plus(profile(n, q)).quasi_generators == expected
    assert cone_rho(profile(n, q)).quasi_generators == expected[:-1]


def test_empty_index_set():
    empty = StratumProfile(n=(), nu=(), q=2)
    with pytest.raises(HypothesisError):
        cone_sigma_plus(empty)


def test_generators_must_be_primitive():
    with pytest.raises(ValueError):
        ConeSpec(ambient_dim=2, quasi_generators=((2, 2),))


def test_multiplicities():
    assert cone_multiplicity(cone_sigma_plus(profile((2,), 2))) == 1
    assert cone_multiplicity(cone_sigma_plus(profile((5, 6), 10))) == 10
    assert cone_multiplicity(cone_rho(profile((5, 6), 10))) == 1


def test_fundamental_domain_examples():
    assert fundamental_domain(cone_sigma_plus(profile((1,), 1))).points == ((1, 2),)
    assert fundamental_domain(cone_rho(profile((2,), 4))).points == ((2, 1),)


def test_fundamental_domain_size_matches_multiplicity():
    rng = random.Random(3)
    for _ in range(30):
        size = rng.randint(1, 3)
        sample = profile(
            tuple(rng.randint(1, 8) for _ in range(size)), rng.randint(1, 8)
        )
        for which, c in (("sigma+", cone_sigma_plus(sample)), ("rho", cone_rho(sample))):
            points = fundamental_domain(c).points
            assert len(points) == cone_multiplicity(c)
            assert len(points) == cone_multiplicity_closed_form(sample, which)
            assert len(set(points)) == len(points)


def test_sigma_minus_has_no_multiplicity():
    with pytest.raises(HypothesisError):
        cone_multiplicity_closed_form(profile((2,), 2), "sigma-")


def test_classify():
    sample = profile((2,), 2)
    assert classify(sample, (1, 2)) == ("sigma+", 2, 4)
    assert classify(sample, (2, 1)) == ("sigma-", 4, 2)
    assert classify(sample, (1, 1)) == ("rho", 2, 2)


def test_generating_function_of_rho():
    sample = profile((2,), 2)
    phi = generating_function(cone_rho(sample), [(1, 2), (1, 0)])
    expected = MotivicExpression.term(LaurentPolynomial.monomial(-2, 2), [(2, 2)])
    assert phi == expected


def test_generating_function_counts_interior_points():
    sample = profile((2,), 3)
    weights = [(1, 1), (1, 1)]
    phi = generating_function(cone_sigma_plus(sample), weights)
    counts: Counter = Counter()
    for b_1, b_z in cone_points_bruteforce(sample, "sigma+", 30):
        if b_1 + b_z <= 8:
            counts[(-(b_1 + b_z), b_1 + b_z)] += 1
    assert motivic_series(phi, 8) == motivic_series(
        MotivicExpression.term(LaurentPolynomial(counts)), 8
    )


@pytest.mark.parametrize(
    "n, q, p",
    [((2,), 2, 0), ((3,), 2, 1), ((4, 6), 6, 0), ((2, 3), 4, 2), ((1,), 1, 0), ((6,), 4, 3)],
)
def test_gcd_invariants_match_lattice_search(n, q, p):
    sample = profile(n, q, p)
    for which in ("sigma+", "sigma-", "rho"):
        assert cone_gcd_invariant(sample, which) == cone_gcd_invariant_bruteforce(
            sample, which, 25
        )


@pytest.mark.parametrize("n, q, p", [((2,), 3, 0), ((2,), 2, 1), ((2, 3), 4, 1)])
def test_sigma_minus_is_the_orthant_minus_the_other_cones(n, q, p):
    sample = profile(n, q, p)
    weights = [(k + 1, 1) for k in range(sample.size + 1)]
    phi_minus = sigma_minus_function(sample, weights)
    assert motivic_equal(
        open_orthant_function(weights),
        generating_function(cone_sigma_plus(sample), weights)
        + phi_minus
        + generating_function(cone_rho(sample), weights),
    )
    bound = 6
    counts: Counter = Counter()
    for point in cone_points_bruteforce(sample, "sigma-", bound):
        if sum(point) <= bound:
            l_exp = -sum((k + 1) * x for k, x in enumerate(point))
            counts[(l_exp, sum(point))] += 1
    assert motivic_series(phi_minus, bound) == motivic_series(
        MotivicExpression.term(LaurentPolynomial(counts)), bound
    )
