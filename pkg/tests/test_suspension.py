import pytest
from sympy import Rational

from suspzeta.exceptions import (
    ArithmeticDomainError,
    HypothesisError,
    MissingTwistError,
)
from suspzeta.ingest import load_bundle_fixture, load_resolution_fixture
from suspzeta.models import SuspensionParams, ZetaBundle
from suspzeta.suspension import (
    assemble_suspension,
    assemble_suspension_motivic,
    fermat_discrepancy,
    legacy_formula,
    pole_bound_F,
    pole_bound_G,
    suspend_F_twisted,
    suspend_F_untwisted,
    suspend_G,
    suspension_matrix,
    suspension_matrix_identity,
)
from suspzeta.symbolic import (
    ZERO,
    RationalFunction,
    euler_specialize,
    parse_rational_function,
)
from suspzeta.zeta import bundle_from_resolution, relevant_twists

S = RationalFunction.linear(1, 0)


def resolution_bundle(name: str) -> ZetaBundle:
    res = load_resolution_fixture(name)
    return bundle_from_resolution(res, relevant_twists(res))


def fermat_expected(q: int) -> RationalFunction:
    return (S * ((q - 2) * (q - 1) + 1) + 3) / ((S + 1) * (S * q + 3))


@pytest.mark.parametrize(
    "twist, expected",
    [
        (1, "(3*s + 7)/((15*s + 7)*(s + 1))"),
        (2, "0"),
        (3, "6/(15*s + 7)"),
        (4, "0"),
        (5, "1/(2*(15*s + 7))"),
        (6, "6/(15*s + 7)"),
        (9, "0"),
        (10, "-5/(2*(15*s + 7))"),
        (12, "0"),
        (15, "7/(2*(15*s + 7))"),
        (20, "0"),
        (25, "0"),
        (30, "7/(2*(15*s + 7))"),
    ],
)
def test_x5y6_suspension(twist, expected):
    bundle = load_bundle_fixture("x5y6")
    assert suspend_F_twisted(bundle, 10, twist) == parse_rational_function(expected)


def test_lvp_suspension():
    result = suspend_F_twisted(load_bundle_fixture("lvp"), 84, 27)
    assert str(result) == "8/(756*s + 317)"


def test_missing_twist_in_the_coprime_case():
    bundle = ZetaBundle(entries={1: 1 / (S + 1)})
    with pytest.raises(MissingTwistError) as excinfo:
        suspend_F_twisted(bundle, 10, 3)
    assert excinfo.value.twist == 3


def test_untwisted_entry_is_required():
    with pytest.raises(MissingTwistError):
        suspend_F_untwisted(load_bundle_fixture("lvp"), 10)


def test_twist_order_must_be_positive():
    with pytest.raises(ArithmeticDomainError):
        suspend_F_twisted(load_bundle_fixture("x5y6"), 10, 0)


@pytest.mark.parametrize("q", [1, 2, 3, 5, 6])
def test_smooth_germ_suspends_to_a_smooth_germ(q):
    bundle = ZetaBundle(entries={1: 1 / (S + 1)}, default_zero=True)
    assert suspend_F_untwisted(bundle, q) == 1 / (S + 1)


def test_missing_entries_warn_and_count_as_zero(warnings):
    bundle = ZetaBundle(entries={1: 1 / (S + 1)})
    assert suspend_F_untwisted(bundle, 2) == 1 / (S + 1)
    assert warnings == ["bundle has no entry for twist 2, using zero"]


@pytest.mark.parametrize("q", range(2, 13))
def test_fermat_family(q):
    bundle = resolution_bundle(f"fermat_q{q}")
    untwisted = suspend_F_untwisted(bundle, q)
    assert untwisted == fermat_expected(q)
    assert untwisted.evaluate(0) == 1
    legacy = legacy_formula(bundle, q)
    assert (legacy == untwisted) == (q in {2, 3, 5, 7, 11})
    assert untwisted - legacy == fermat_discrepancy(q)


def test_fermat_discrepancy():
    assert fermat_discrepancy(3) == ZERO
    assert fermat_discrepancy(4) == S / ((S + 1) * (S * 4 + 3))
    with pytest.raises(ArithmeticDomainError):
        fermat_discrepancy(1)


@pytest.mark.parametrize("name", ["x5_plus_y6", "fermat_q6", "z2_minus_x2"])
def test_suspend_G_reduces_to_F(name):
    bundle = resolution_bundle(name)
    for q in (2, 3, 4):
        params = SuspensionParams(q=q, p=0, nuz=1)
        assert suspend_G(bundle, params) == suspend_F_untwisted(bundle, q)


def test_suspend_G_at_zero():
    bundle = load_bundle_fixture("x5y6")
    for p in (0, 1, 3):
        for nuz in (1, 2, 5):
            params = SuspensionParams(q=10, p=p, nuz=nuz)
            # Z(G)(0) = 1/nu_z for the form z^(nu_z - 1) dx dz
            assert suspend_G(bundle, params).evaluate(0) == Rational(1, nuz)


def test_dimension_only_moves_the_pole_candidates():
    bundle = load_bundle_fixture("x5y6")
    plain = suspend_G(bundle, SuspensionParams(q=10))
    assert SuspensionParams(q=10).nuz == 1
    assert plain == suspend_G(bundle, SuspensionParams(q=10, nuz=1))
    assert plain == suspend_G(bundle, SuspensionParams(q=10, d=2))
    assert Rational(-3, 10) in pole_bound_G(set(), SuspensionParams(q=10, nuz=1, d=2))


def test_suspension_matrix():
    x5y6 = suspension_matrix(10)
    assert x5y6.divisors == (1, 2, 5, 10)
    assert x5y6.b == (
        (9, -3, -24, -72),
        (-1, 7, -24, -72),
        (-1, -3, -14, -72),
        (-1, -3, -24, -62),
    )
    assert suspension_matrix(5).b == ((4, -24), (-1, -19))
    assert suspension_matrix(1).b == ((0,),)


def test_matrix_identity():
    assert suspension_matrix_identity(load_bundle_fixture("x5y6"), 10).equal
    for q in range(2, 7):
        assert suspension_matrix_identity(resolution_bundle(f"fermat_q{q}"), q).equal


def test_matrix_identity_needs_every_divisor():
    bundle = ZetaBundle(entries={1: 1 / (S + 1)})
    with pytest.raises(HypothesisError):
        suspension_matrix_identity(bundle, 4)


def test_pole_candidates():
    poles = {Rational(-1), Rational(-11, 30)}
    assert pole_bound_G(poles, SuspensionParams(q=10, p=0, d=2)) == {
        Rational(-1),
        Rational(-3, 10),
        Rational(-13, 10),
        Rational(-2, 3),
    }
    bound_f = pole_bound_F(poles, 10)
    assert bound_f == {
        Rational(-1),
        Rational(-1, 10),
        Rational(-11, 10),
        Rational(-7, 15),
    }
    assert suspend_F_untwisted(load_bundle_fixture("x5y6"), 10).poles() <= bound_f
    assert pole_bound_G(poles, SuspensionParams(q=10, p=2, d=2)) >= {
        Rational(-3, 2),
        Rational(-1, 4),
    }
    assert pole_bound_G(set(), SuspensionParams(q=10, d=2)) == {
        Rational(-1),
        Rational(-3, 10),
    }


@pytest.mark.parametrize("q", [1, 2, 3, 10])
def test_pole_candidates_hold(q):
    bundle = resolution_bundle("x5_plus_y6")
    poles_f = set(bundle.lookup(1).poles())
    for twist in range(1, 2 * q + 1):
        assert suspend_F_twisted(bundle, q, twist).poles() <= pole_bound_F(poles_f, q)


@pytest.mark.parametrize("name", ["x5_plus_y6", "fermat_q4", "z2_minus_x2"])
def test_stratum_assembly_matches_the_closed_formula(name):
    res = load_resolution_fixture(name)
    bundle = bundle_from_resolution(res, relevant_twists(res))
    for q in (2, 3, 4):
        for p in (0, 1, 2):
            for nuz in (1, 2):
                params = SuspensionParams(q=q, p=p, nuz=nuz)
                assert assemble_suspension(res, params) == suspend_G(bundle, params)


def test_twisted_assembly_matches_the_twisted_formula():
    res = load_resolution_fixture("x5_plus_y6")
    bundle = load_bundle_fixture("x5y6")
    params = SuspensionParams(q=10, p=0, nuz=1)
    for twist in range(2, 31):
        expected = suspend_F_twisted(bundle, 10, twist)
        assert assemble_suspension(res, params, twist) == expected, twist


def test_twisted_assembly_of_a_fermat_suspension():
    # y^3 + z^3, suspended with Q = 3, at twist 3
    res = load_resolution_fixture("fermat_q3")
    params = SuspensionParams(q=3, p=0, nuz=1)
    assert assemble_suspension(res, params, 3) == 1 / (S + 1)


def test_motivic_assembly_specializes():
    res = load_resolution_fixture("z2_minus_x2")
    params = SuspensionParams(q=2, p=1, nuz=1)
    motivic = assemble_suspension_motivic(res, params)
    assert euler_specialize(motivic) == assemble_suspension(res, params)


def test_motivic_assembly_needs_classes():
    res = load_resolution_fixture("fermat_q3").model_copy(update={"classes": None})
    with pytest.raises(HypothesisError):
        assemble_suspension_motivic(res, SuspensionParams(q=2))



@pytest.mark.parametrize("q, p", [(2, 1), (3, 2), (10, 3)])
def test_pole_candidates_of_G_hold(q, p):
    bundle = resolution_bundle("x5_plus_y6")
    poles_f = set(bundle.lookup(1).poles())
    # z^2 dx dy dz on the suspension of a plane curve
    params = SuspensionParams(q=q, p=p, nuz=3, d=2)
    assert suspend_G(bundle, params).poles() <= pole_bound_G(poles_f, params)
