"""d-functions, prime functions and periodicity"""

import pytest

from core.d_functions import (FastGrowthD, FastGrowthDParams, HallD, HallDParams, IdentityD,
                              ScriptedPrimeFunction, ShiftedPrimeFunction, SquareIndicatorD,
                              check_separability_criteria, d_function_from_config, fastgrowth_d,
                              hall_d, hall_n, n0, nu, p_prime, period_mod, semi_inverse,
                              three_adic_class)
from core.errors import NOT_FOUND, PreconditionError, SearchBoundExceeded

TRIVIAL_PARAMS = HallDParams()


def test_valuations_and_classes():
    assert nu(2, 40) == 3
    assert nu(3, -27) == 3
    assert three_adic_class(6) == (1, -1)
    assert three_adic_class(-1) == (0, -1)
    with pytest.raises(PreconditionError):
        nu(3, 0)


def test_n0_is_primorial():
    assert [n0(i) for i in range(5)] == [1, 2, 6, 30, 210]


def test_hall_d_illustration_values():
    assert [hall_d(TRIVIAL_PARAMS, i) for i in range(7)] == [0, 1, -1, 4, 1, -1, -4]
    assert hall_d(TRIVIAL_PARAMS, 9) == 216
    assert hall_d(TRIVIAL_PARAMS, 27) == 810000


def test_hall_d_exponent_convention():
    params = HallDParams(exponent_convention="j")
    assert hall_n(params, 2) == 36
    with pytest.raises(PreconditionError):
        HallDParams(exponent_convention="2j")


def test_scripted_prime_function():
    P = ScriptedPrimeFunction.from_mapping({3: 2})
    assert P(3) == 2
    assert [p_prime(P, i) for i in range(5)] == [1, 1, 1, 2, 1]
    assert hall_n(HallDParams(P), 3) == 15 ** 4
    assert P.settled_after == 3
    with pytest.raises(PreconditionError):
        ScriptedPrimeFunction.from_mapping({1: 4})


def test_shifted_prime_function_repeats_are_dropped():
    P = ShiftedPrimeFunction(1)
    # P(0) = P(1) = 2: no divisor at 0, a repeat at 1
    assert [p_prime(P, i) for i in range(4)] == [1, 1, 3, 5]


def test_p_prime_values_are_distinct_divisors(rng):
    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(40):
        indices = rng.choice(12, size=int(rng.integers(1, 6)), replace=False)
        P = ScriptedPrimeFunction.from_mapping({int(i): int(rng.choice(primes)) for i in indices})
        values = [p_prime(P, i) for i in range(12)]
        nontrivial = [v for v in values if v != 1]
        assert len(nontrivial) == len(set(nontrivial))
        for i, v in enumerate(values):
            assert n0(i) % v == 0
    for shift in range(4):
        nontrivial = [v for v in (p_prime(ShiftedPrimeFunction(shift), i) for i in range(12)) if v != 1]
        assert len(nontrivial) == len(set(nontrivial))


def test_semi_inverse():
    assert semi_inverse(lambda m: m, 5) == 5
    assert semi_inverse(FastGrowthDParams("exp_floor").f, 10) == 3
    with pytest.raises(SearchBoundExceeded):
        semi_inverse(lambda m: 0, 1, search_bound=64)


def test_fastgrowth_values():
    params = FastGrowthDParams("identity")
    assert fastgrowth_d(params, 1) == 1
    assert fastgrowth_d(params, 9) == 2
    assert fastgrowth_d(params, -9) == -2
    assert fastgrowth_d(params, 81) == 12


@pytest.mark.parametrize("d", [HallD(), FastGrowthD(), SquareIndicatorD(), IdentityD()])
def test_antisymmetry(d):
    for i in range(-2000, 2001):
        assert d(-i) == -d(i)


def test_period_fastgrowth_mod_two():
    assert period_mod(FastGrowthD(), 2, search_bound=50) == 9


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_fastgrowth_period_is_power_of_three(q):
    assert period_mod(FastGrowthD(), q, search_bound=3 ** q, window=3) == 3 ** q


def test_period_hall_mod_four():
    assert period_mod(HallD(), 4, search_bound=50) == 3


def test_period_constant_zero():
    assert period_mod(lambda i: 0, 5, search_bound=10) == 1


def test_period_not_found_for_square_indicator():
    assert period_mod(SquareIndicatorD(), 2, search_bound=100) is NOT_FOUND


def test_identity_d_has_period_q():
    assert period_mod(IdentityD(), 7, search_bound=50) == 7


def test_separability_criteria_fastgrowth():
    report = check_separability_criteria(FastGrowthD(), [2, 3, 4, 5], 300)
    assert report.all_periodic
    for q, period in report.periods.items():
        assert 3 ** q % period == 0
    assert "conjugacy separable" in report.verdict()


def test_separability_criteria_hall_prime_powers():
    report = check_separability_criteria(HallD(), [2, 3, 4, 5, 7, 8, 9], 800)
    assert report.all_periodic


def test_separability_report_mixed():
    report = check_separability_criteria(SquareIndicatorD(), [2], 50)
    assert not report.all_periodic
    assert "not found" in report.generate_report()
    assert "no tested modulus periodic" in report.verdict()


def test_d_function_config_round_trip():
    for d in [HallD(HallDParams(ScriptedPrimeFunction.from_mapping({3: 2}), "j")),
              FastGrowthD(FastGrowthDParams("double")), IdentityD(), SquareIndicatorD()]:
        assert d_function_from_config(d.to_config()) == d
    with pytest.raises(PreconditionError):
        d_function_from_config({"name": "nope"})
