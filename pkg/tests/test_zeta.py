import pytest

from suspzeta.exceptions import ArithmeticDomainError, HypothesisError
from suspzeta.ingest import load_bundle_fixture, load_resolution_fixture
from suspzeta.models import StratumProfile
from suspzeta.symbolic import ZERO, RationalFunction, euler_specialize, motivic_series
from suspzeta.zeta import (
    bundle_from_resolution,
    check_z_at_zero,
    lattice_series_oracle,
    relevant_twists,
    resolution_naive_motivic,
    resolution_topological,
    stratum_naive_motivic,
    stratum_profile,
    stratum_topological,
    stratum_twisted_topological,
)

S = RationalFunction.linear(1, 0)

PROFILES = [
    StratumProfile(n=(2,), nu=(1,), q=2),
    StratumProfile(n=(3,), nu=(2,), q=2, p=1),
    StratumProfile(n=(5, 6), nu=(2, 3), q=10),
    StratumProfile(n=(4,), nu=(1,), q=6, p=2, nuz=3),
    StratumProfile(n=(2, 2), nu=(1, 1), q=2),
]


def test_stratum_parts_example():
    zeta = stratum_topological(StratumProfile(n=(2,), nu=(1,), q=2))
    assert zeta.sigma_plus == 1 / (S * 2 + 2)
    assert zeta.sigma_minus == 1 / (S * 2 + 2)
    assert zeta.rho == -2 / (S * 2 + 2)
    assert zeta.rho_star == 2 / ((S + 1) * (S * 2 + 2))
    assert zeta.total() == 1 / ((S + 1) * (S + 1))


def test_empty_stratum_is_rejected():
    with pytest.raises(HypothesisError):
        stratum_topological(StratumProfile(n=(), nu=(), q=2))


@pytest.mark.parametrize("profile", PROFILES, ids=str)
def test_motivic_parts_specialize_to_the_closed_forms(profile):
    motivic = stratum_naive_motivic(profile).parts()
    closed = stratum_topological(profile).parts()
    for name, part in motivic.items():
        assert euler_specialize(part) == closed[name], name


@pytest.mark.parametrize("profile", PROFILES[:4], ids=str)
def test_motivic_parts_match_the_lattice_sum(profile):
    motivic = stratum_naive_motivic(profile).parts()
    oracle = lattice_series_oracle(profile, 6, 3).parts()
    for name, part in motivic.items():
        assert motivic_series(part, 6, 3) == oracle[name], name


def test_series_at_degree_zero_vanish():
    for part in lattice_series_oracle(PROFILES[0], 0, 3).parts().values():
        assert part[0].is_zero


def test_twisted_stratum_gates():
    profile = StratumProfile(n=(2,), nu=(1,), q=2)
    untwisted = stratum_topological(profile)
    twisted = stratum_twisted_topological(profile, 2)
    assert twisted.sigma_plus == untwisted.sigma_plus
    assert twisted.sigma_minus == untwisted.sigma_minus
    assert twisted.rho == untwisted.rho
    assert twisted.rho_star == ZERO
    assert twisted.total() == ZERO
    coprime = stratum_twisted_topological(profile, 7)
    assert all(part.is_zero for part in coprime.parts().values())


def test_twisted_stratum_needs_plain_volume_form():
    with pytest.raises(HypothesisError):
        stratum_twisted_topological(StratumProfile(n=(2,), nu=(1,), q=2, p=1), 2)
    with pytest.raises(HypothesisError):
        stratum_twisted_topological(StratumProfile(n=(2,), nu=(1,), q=2, nuz=2), 2)


def test_resolution_of_a_node():
    res = load_resolution_fixture("z2_minus_x2")
    assert resolution_topological(res) == 1 / ((S + 1) * (S + 1))
    assert resolution_topological(res, 2) == ZERO


def test_twist_order_zero_is_rejected():
    with pytest.raises(ArithmeticDomainError):
        resolution_topological(load_resolution_fixture("z2_minus_x2"), 0)
    with pytest.raises(ArithmeticDomainError):
        stratum_twisted_topological(StratumProfile(n=(2,), nu=(1,), q=2), 0)


@pytest.mark.parametrize("q", [3, 4, 5, 6, 12])
def test_fermat_curves(q):
    res = load_resolution_fixture(f"fermat_q{q}")
    expected = (S * (2 - q) + 2) / ((S * q + 2) * (S + 1))
    assert resolution_topological(res) == expected
    for twist in range(2, q + 2):
        value = resolution_topological(res, twist)
        if q % twist == 0:
            assert value == (2 - q) / (S * q + 2)
        else:
            assert value == ZERO


def test_value_at_zero(warnings):
    res = load_resolution_fixture("x5_plus_y6")
    assert check_z_at_zero(res)
    assert not warnings
    first = res.strata[0].model_copy(update={"euler": 5})
    broken = res.model_copy(update={"strata": [first, *res.strata[1:]]})
    assert not check_z_at_zero(broken)
    assert warnings


def test_resolution_matches_the_shipped_bundle():
    res = load_resolution_fixture("x5_plus_y6")
    bundle = load_bundle_fixture("x5y6")
    for twist in range(1, 31):
        assert resolution_topological(res, twist) == bundle.lookup(twist), twist
    assert resolution_topological(res) == (S * 10 + 11) / ((S * 30 + 11) * (S + 1))


def test_bundle_from_resolution():
    res = load_resolution_fixture("fermat_q4")
    assert relevant_twists(res) == {1, 2, 4}
    complete = bundle_from_resolution(res, {1, 2, 4})
    assert complete.default_zero
    assert complete.lookup(3) == ZERO
    partial = bundle_from_resolution(res, {1, 2})
    assert not partial.default_zero
    with pytest.raises(HypothesisError):
        bundle_from_resolution(res, {2})


def test_stratum_profile_from_resolution():
    res = load_resolution_fixture("z2_minus_x2")
    profile = stratum_profile(res, res.strata[1], q=3)
    assert profile.n == (2, 1)
    assert profile.nu == (2, 1)
    assert profile.labels == ("E", "L1")
    assert profile.q == 3


@pytest.mark.parametrize("name", ["z2_minus_x2", "fermat_q4", "x5_plus_y6"])
def test_motivic_zeta_specializes(name):
    res = load_resolution_fixture(name)
    assert euler_specialize(resolution_naive_motivic(res)) == resolution_topological(res)


def test_motivic_zeta_needs_classes():
    res = load_resolution_fixture("z2_minus_x2").model_copy(update={"classes": None})
    with pytest.raises(HypothesisError):
        resolution_naive_motivic(res)
