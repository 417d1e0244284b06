"""
Lattice geometry of the cones sigma+, sigma- and rho of a stratum profile.

Coordinates are the indices of I followed by z. A point b of the positive
orthant is in sigma+ when <b, N> < (Q + p) b_z, in sigma- when the inequality
is reversed and in rho on equality, where <b, N> includes the term p * b_z.
"""

import math
from collections import deque
from collections.abc import Iterator, Sequence
from functools import reduce
from itertools import combinations, product
from typing import Literal

from loguru import logger
from sympy import Matrix

from .exceptions import HypothesisError
from .models import ConeSpec, FundamentalDomain, IntVector, StratumProfile
from .symbolic import LaurentPolynomial, MotivicExpression

ConeName = Literal["sigma+", "sigma-", "rho"]
# x_j -> L^(-a) T^b
Weight = tuple[int, int]


def _require_nonempty(profile: StratumProfile) -> None:
    if profile.size == 0:
        raise HypothesisError("cone operations need a nonempty index set I")


def _unit(dim: int, index: int) -> IntVector:
    return tuple(1 if j == index else 0 for j in range(dim))


def _rho_generators(profile: StratumProfile) -> list[IntVector]:
    dim = profile.size + 1
    generators = []
    for k, (n_k, e_k) in enumerate(zip(profile.n, profile.e, strict=True)):
        vector = [0] * dim
        vector[k] = profile.q // e_k
        vector[-1] = n_k // e_k
        generators.append(tuple(vector))
    return generators


def cone_sigma_plus(profile: StratumProfile) -> ConeSpec:
    _require_nonempty(profile)
    dim = profile.size + 1
    return ConeSpec(
        ambient_dim=dim,
        quasi_generators=(*_rho_generators(profile), _unit(dim, dim - 1)),
    )


def cone_rho(profile: StratumProfile) -> ConeSpec:
    _require_nonempty(profile)
    return ConeSpec(
        ambient_dim=profile.size + 1, quasi_generators=tuple(_rho_generators(profile))
    )


def cone_orthant(profile: StratumProfile) -> ConeSpec:
    _require_nonempty(profile)
    dim = profile.size + 1
    return ConeSpec(
        ambient_dim=dim, quasi_generators=tuple(_unit(dim, j) for j in range(dim))
    )


def _require_simplicial(c: ConeSpec) -> Matrix:
    if not c.simplicial:
        raise HypothesisError("operation needs a simplicial cone")
    generators = Matrix(c.quasi_generators)
    if generators.rank() != c.dim:
        raise HypothesisError("quasi-generators are linearly dependent")
    return generators


def cone_multiplicity(c: ConeSpec) -> int:
    """|det| for full-dimensional cones, gcd of maximal minors otherwise."""
    generators = _require_simplicial(c)
    if c.dim == c.ambient_dim:
        return abs(int(generators.det()))
    minors = (
        int(generators.extract(list(range(c.dim)), list(cols)).det())
        for cols in combinations(range(c.ambient_dim), c.dim)
    )
    return reduce(math.gcd, minors, 0)


def cone_multiplicity_closed_form(profile: StratumProfile, which: ConeName) -> int:
    e_product = math.prod(profile.e)
    if which == "sigma+":
        return profile.q**profile.size // e_product
    if which == "rho":
        return profile.q ** (profile.size - 1) * profile.e_gcd // e_product
    raise HypothesisError("sigma- is not simplicial")


def _span_lattice_basis(generators: Matrix, c: ConeSpec) -> list[IntVector]:
    """Generators of the lattice Z^n intersected with the span of the cone."""
    n = c.ambient_dim
    if c.dim == n:
        return [_unit(n, j) for j in range(n)]
    if c.dim != n - 1:
        raise HypothesisError("only cones of codimension at most one are supported")
    normal = []
    for j in range(n):
        cols = [i for i in range(n) if i != j]
        normal.append((-1) ** j * int(generators.extract(list(range(c.dim)), cols).det()))
    content = reduce(math.gcd, normal, 0)
    normal = [w // content for w in normal]
    basis = []
    for i, j in combinations(range(n), 2):
        w_i, w_j = normal[i], normal[j]
        if w_i == 0 and w_j == 0:
            continue
        g = math.gcd(w_i, w_j)
        vector = [0] * n
        vector[i] = w_j // g
        vector[j] = -w_i // g
        basis.append(tuple(vector))
    return basis


def fundamental_domain(c: ConeSpec) -> FundamentalDomain:
    """Lattice points sum(lambda_i a_i) with every lambda_i in (0, 1].

    Coefficients are tracked as integers modulo |det| of a maximal square
    submatrix; the points form the group of the span lattice modulo the
    sublattice of the generators, walked by breadth-first search.
    """
    generators = _require_simplicial(c)
    rows = list(range(c.dim))
    pivots = next(
        list(cols)
        for cols in combinations(range(c.ambient_dim), c.dim)
        if generators.extract(rows, list(cols)).det() != 0
    )
    square = generators.extract(rows, pivots)
    det = int(square.det())
    modulus = abs(det)
    sign = 1 if det > 0 else -1
    adjugate = square.adjugate()

    def scaled_coordinates(vector: IntVector) -> tuple[int, ...]:
        # lambda * |det| for vector = lambda * A
        row = Matrix([[vector[j] for j in pivots]]) * adjugate * sign
        return tuple(int(x) % modulus for x in row)

    steps = [scaled_coordinates(v) for v in _span_lattice_basis(generators, c)]
    origin = tuple(0 for _ in rows)
    seen = {origin}
    queue = deque([origin])
    while queue:
        current = queue.popleft()
        for step in steps:
            nxt = tuple((a + b) % modulus for a, b in zip(current, step, strict=True))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    points = []
    for residues in seen:
        top = [r or modulus for r in residues]
        total = [
            sum(top[i] * c.quasi_generators[i][j] for i in rows)
            for j in range(c.ambient_dim)
        ]
        points.append(tuple(x // modulus for x in total))
    logger.debug(f"fundamental domain of {c.quasi_generators}: {len(points)} points")
    return FundamentalDomain(points=tuple(sorted(points)))


def _monomial(vector: Sequence[int], weights: Sequence[Weight]) -> tuple[int, int]:
    a = sum(x * w[0] for x, w in zip(vector, weights, strict=True))
    b = sum(x * w[1] for x, w in zip(vector, weights, strict=True))
    return a, b


def generating_function(c: ConeSpec, weights: Sequence[Weight]) -> MotivicExpression:
    """Sum of x^alpha over the interior lattice points, in factored form."""
    if len(weights) != c.ambient_dim:
        raise HypothesisError("one weight per coordinate is required")
    numer = LaurentPolynomial()
    for point in fundamental_domain(c).points:
        a, b = _monomial(point, weights)
        numer = numer + LaurentPolynomial.monomial(-a, b)
    factors = []
    for vector in c.quasi_generators:
        factor = _monomial(vector, weights)
        if factor == (0, 0):
            raise HypothesisError(f"weights send generator {vector} to 1")
        factors.append(factor)
    return MotivicExpression.term(numer, factors)


def open_orthant_function(weights: Sequence[Weight]) -> MotivicExpression:
    """prod x_j / (1 - x_j)."""
    a, b = _monomial([1] * len(weights), weights)
    return MotivicExpression.term(LaurentPolynomial.monomial(-a, b), weights)


def sigma_minus_function(
    profile: StratumProfile, weights: Sequence[Weight]
) -> MotivicExpression:
    return (
        open_orthant_function(weights)
        - generating_function(cone_sigma_plus(profile), weights)
        - generating_function(cone_rho(profile), weights)
    )


def cone_gcd_invariant(profile: StratumProfile, which: ConeName) -> int:
    _require_nonempty(profile)
    if which == "sigma+":
        return math.gcd(profile.n_gcd, profile.p)
    if which == "sigma-":
        return profile.q + profile.p
    return math.lcm(profile.n_gcd, profile.q) * (profile.q + profile.p) // profile.q


def classify(profile: StratumProfile, point: Sequence[int]) -> tuple[ConeName, int, int]:
    """Cone of a positive lattice point, with <b, N> and (Q + p) b_z."""
    *b_i, b_z = point
    pairing = sum(n * x for n, x in zip(profile.n, b_i, strict=True)) + profile.p * b_z
    z_order = (profile.q + profile.p) * b_z
    if pairing < z_order:
        return "sigma+", pairing, z_order
    if pairing > z_order:
        return "sigma-", pairing, z_order
    return "rho", pairing, z_order


def cone_points_bruteforce(
    profile: StratumProfile, which: ConeName, box: int
) -> Iterator[IntVector]:
    _require_nonempty(profile)
    for point in product(range(1, box + 1), repeat=profile.size + 1):
        if classify(profile, point)[0] == which:
            yield point


def cone_gcd_invariant_bruteforce(
    profile: StratumProfile, which: ConeName, box: int
) -> int:
    result = 0
    for point in cone_points_bruteforce(profile, which, box):
        _, pairing, z_order = classify(profile, point)
        result = math.gcd(result, min(pairing, z_order))
    return result
