"""Primes, Z[sqrt 2] and Laurent reductions"""

import math

import pytest

from arithmetic.laurent import (LaurentPoly, check_membership, exempt_collisions,
                                find_reduction_prime, laurent_fold, membership_in_M_plus_Iq,
                                reduction_constant)
from arithmetic.primes import (check_primality, is_split_prime, iter_split_primes,
                               prime_factors, primes_up_to, smaller_sqrt2)
from arithmetic.quadratic import (UNIT, QuadInt, SplitPrimeWitness, chebotarev_ratio,
                                  field_norm, find_small_prime_not_dividing,
                                  find_split_prime_avoiding, multiplicative_order, quad_mul,
                                  quad_pow)
from core.errors import PreconditionError

X_MINUS_INVERSE = LaurentPoly.from_dict({1: 1, -1: -1})


# ==================== PRIMES ====================

def test_primes_up_to():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1).tolist() == []


def test_split_primes():
    assert [p for p in primes_up_to(50).tolist() if is_split_prime(p)] == [7, 17, 23, 31, 41, 47]
    assert smaller_sqrt2(7) == 3
    split = iter_split_primes(3)
    assert [next(split) for _ in range(3)] == [(7, 3), (17, 6), (23, 5)]


def test_split_primes_are_quadratic_residue_primes():
    for p in primes_up_to(10 ** 4).tolist()[1:]:
        assert is_split_prime(p) == (pow(2, (p - 1) // 2, p) == 1)
        if is_split_prime(p):
            s = smaller_sqrt2(p)
            assert (s * s - 2) % p == 0
            assert s <= p - s


def test_primality_and_factors():
    assert check_primality(97) == (True, True)
    assert check_primality(2 ** 89 - 1) == (True, False)
    assert prime_factors(360) == [2, 3, 5]


# ==================== Z[sqrt 2] ====================

def test_quadint_arithmetic():
    assert UNIT ** 2 == QuadInt(3, 2)
    assert UNIT.field_norm() == -1
    assert UNIT * UNIT ** -1 == QuadInt(1, 0)
    assert (QuadInt(1, 1) * 3 - 1) == QuadInt(2, 3)
    with pytest.raises(ZeroDivisionError):
        QuadInt(2, 0).unit_inverse()


def test_quad_helpers():
    assert quad_mul(UNIT, UNIT.galois_conj()) == QuadInt(-1, 0)
    assert quad_pow(UNIT, 3) == QuadInt(7, 5)
    assert field_norm(quad_pow(UNIT, 3)) == -1
    assert field_norm(QuadInt(3, 1)) == 7


def random_quadint(rng, bound=50):
    return QuadInt(int(rng.integers(-bound, bound + 1)), int(rng.integers(-bound, bound + 1)))


def test_field_norm_is_multiplicative(rng):
    for _ in range(500):
        x, y = random_quadint(rng), random_quadint(rng)
        assert field_norm(x * y) == field_norm(x) * field_norm(y)


def test_residue_is_a_ring_homomorphism(rng):
    split = iter_split_primes(3)
    witnesses = [SplitPrimeWitness(*next(split)) for _ in range(6)]
    for _ in range(300):
        x, y = random_quadint(rng), random_quadint(rng)
        for witness in witnesses:
            p = witness.p
            assert witness.residue(x + y) == (witness.residue(x) + witness.residue(y)) % p
            assert witness.residue(x * y) == (witness.residue(x) * witness.residue(y)) % p
            assert witness.residue(UNIT ** 3) == pow(1 + witness.s, 3, p)


def test_split_prime_witness_validation():
    with pytest.raises(PreconditionError):
        SplitPrimeWitness(5, 1)
    with pytest.raises(PreconditionError):
        SplitPrimeWitness(7, 2)
    witness = SplitPrimeWitness(7, 3)
    assert witness.residue(QuadInt(1, 1)) == 4
    assert witness.to_record(QuadInt(1, 1)) == {"p": 7, "s": 3, "residue": 4}


def test_find_split_prime_avoiding():
    witness = find_split_prime_avoiding(QuadInt(7, 0), start=2)
    assert (witness.p, witness.s) == (17, 6)
    with pytest.raises(PreconditionError):
        find_split_prime_avoiding(QuadInt(0, 0))


def test_small_prime_not_dividing():
    assert find_small_prime_not_dividing(30) == 7
    assert find_small_prime_not_dividing(-1) == 2
    with pytest.raises(PreconditionError):
        find_small_prime_not_dividing(0)
    assert chebotarev_ratio(30) == pytest.approx(7 / math.log(30))


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    with pytest.raises(PreconditionError):
        multiplicative_order(14, 7)


# ==================== LAURENT ====================

def test_laurent_fold():
    assert laurent_fold(X_MINUS_INVERSE, 12) == {1: 1, 11: -1}
    assert laurent_fold(LaurentPoly.from_dict({5: 1, -7: 1}), 12) == {5: 2}
    assert laurent_fold(LaurentPoly.from_dict({3: 1, -3: -1}), 6) == {}
    with pytest.raises(PreconditionError):
        laurent_fold(X_MINUS_INVERSE, 0)


def test_antisymmetrized():
    assert LaurentPoly.monomial(1).antisymmetrized() == X_MINUS_INVERSE
    assert not LaurentPoly.monomial(0).antisymmetrized()


def test_membership():
    # every class mod 3 is exempt
    assert membership_in_M_plus_Iq(X_MINUS_INVERSE, {0, 2, -2}, 3)
    assert not membership_in_M_plus_Iq(X_MINUS_INVERSE, {0, 2, -2}, 24)


def test_exempt_collisions():
    assert exempt_collisions({0, 2, -2}, 4) == {2: {2, -2}}
    assert exempt_collisions({0, 2, -2}, 8) == {}


def test_find_reduction_prime():
    q, certificate = find_reduction_prime(X_MINUS_INVERSE, {0, 2, -2}, m0=8, n=2)
    assert q == 3
    assert certificate.L == 24
    assert certificate.surviving_classes == {1: 1, 23: -1}
    assert certificate.within_guaranteed_bound
    assert certificate.to_record()["surviving_classes"] == {"1": 1, "23": -1}


def test_membership_reports_collisions():
    check = check_membership(X_MINUS_INVERSE, {0, 2, -2}, 4)
    assert not check.member
    assert check.collisions == {2: {2, -2}}
    assert not check.distinct_classes
    assert check_membership(X_MINUS_INVERSE, {0, 2, -2}, 24).distinct_classes


def test_reduction_certificate_carries_eps():
    _, certificate = find_reduction_prime(X_MINUS_INVERSE, {0, 2, -2}, m0=8, n=2, eps=0.0)
    assert certificate.valid
    assert certificate.collisions == {}
    assert certificate.constant == pytest.approx(3 / math.sqrt(2))
    record = certificate.to_record()
    assert record["eps"] == 0.0
    assert record["valid"] is True
    _, default = find_reduction_prime(X_MINUS_INVERSE, {0, 2, -2}, m0=8, n=2)
    assert default.constant < certificate.constant


def test_find_reduction_prime_preconditions():
    with pytest.raises(PreconditionError):
        find_reduction_prime(X_MINUS_INVERSE, {0, 2, -2}, m0=4, n=2)
    with pytest.raises(PreconditionError):
        find_reduction_prime(LaurentPoly(), {0}, m0=8, n=2)
    with pytest.raises(PreconditionError):
        find_reduction_prime(LaurentPoly.monomial(2), {0, 2, -2}, m0=8, n=2)
    with pytest.raises(PreconditionError):
        find_reduction_prime(LaurentPoly.monomial(3), {0}, m0=8, n=2)


def test_reduction_constant():
    assert reduction_constant(3, 1) == 3
    assert reduction_constant(10, 100, eps=0.0) == pytest.approx(1.0)
