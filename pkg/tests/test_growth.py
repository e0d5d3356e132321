"""Exp-towers, compositional roots and the d/P/q sequences"""

import math
from fractions import Fraction

import pytest
from mpmath import mpf

from arithmetic.growth import (CompRoot, build_d, build_P, build_q, check_intermediate,
                               check_sequence_lemmas, interleaving_report,
                               compare_with_exp, froot_eval, froot_iterate, q_factor_indices)
from arithmetic.logscale import LogScaleNumber
from core.errors import NotRepresentableError, PreconditionError


@pytest.fixture
def root():
    return CompRoot.equal(10)


# ==================== LOG SCALE ====================

def test_small_values_stay_materialized():
    x = LogScaleNumber.from_value(5)
    assert x.is_materializable
    assert x.materialize() == 5


def test_canonical_lowers_small_towers():
    x = LogScaleNumber.canonical(1, 10)
    assert x.tower_height == 0
    assert float(x.mantissa) == pytest.approx(math.exp(10))


def test_tower_ordering():
    big = LogScaleNumber.from_value(30).exp().exp()
    assert big.tower_height == 1
    assert big > LogScaleNumber.from_value(10 ** 100)
    assert LogScaleNumber.from_value(10 ** 100).tower_height == 1
    assert LogScaleNumber.from_value(3) < 4
    with pytest.raises(NotRepresentableError):
        big.materialize()


def test_log_inverts_exp():
    x = LogScaleNumber.from_value(30)
    assert x.exp().exp().log().log().rel_close(x)


def test_logscale_rejects_bad_values():
    with pytest.raises(PreconditionError):
        LogScaleNumber.from_value(-1)
    with pytest.raises(NotRepresentableError):
        LogScaleNumber.canonical(4, 200)
    with pytest.raises(PreconditionError):
        LogScaleNumber.from_value(0.5).log()


# ==================== ROOTS OF EXP ====================

def test_comp_root_validation():
    with pytest.raises(PreconditionError):
        CompRoot(1)
    with pytest.raises(PreconditionError):
        CompRoot(2, (Fraction(0), Fraction(1, 2)))
    with pytest.raises(PreconditionError):
        CompRoot(2, (Fraction(0), Fraction(1), Fraction(1)))
    r = CompRoot(3, (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)))
    assert CompRoot.from_config(r.to_config()) == r


def test_froot_value(root):
    assert float(froot_eval(root, 30)) == pytest.approx(47.87, abs=0.05)
    with pytest.raises(PreconditionError):
        froot_eval(root, -1)


def test_froot_iterates_to_exp(root):
    assert float(froot_iterate(root, mpf("0.5"), 10)) == pytest.approx(math.exp(0.5), rel=1e-12)


@pytest.mark.slow
def test_froot_iterates_to_exp_on_unit_grid(root):
    for k in range(13):
        x = mpf(k) / 4
        assert float(froot_iterate(root, x, 10)) == pytest.approx(math.exp(k / 4), rel=1e-6)


def test_froot_is_increasing(root):
    points = [mpf(k) / 7 for k in range(50)]
    values = [froot_eval(root, x) for x in points]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v > x for x, v in zip(points, values))


def test_compare_with_exp():
    assert compare_with_exp(3, Fraction(1)) == 1
    assert compare_with_exp(2, Fraction(1)) == -1


# ==================== SEQUENCES ====================

def test_first_primes(root):
    assert build_P(root, 1) == [53]


def test_d_sequence():
    terms = build_d(3)
    assert terms[0].exact == 30
    assert terms[1].exact == 222622144044300
    assert terms[1].largest_prime == 37
    assert terms[2].symbolic
    assert terms[2].to_record()["exact"] is None
    with pytest.raises(PreconditionError):
        build_d(-1)


def test_sequence_lemmas_on_exact_prefix():
    report = check_sequence_lemmas(build_d(2))
    assert report.all_passed, report.generate_report()
    names = [c.name for c in report.checks]
    assert names.count("primorial_ratio") == 1
    assert "primorial(37)" in report.checks[1].detail


def test_q_indices_and_padding():
    assert q_factor_indices(1) == [0, 2, 4, 6, 8, 10, 12, 14, 16]
    q = build_q(0, [53])
    assert q.factors[:3] == [3, 3, 3]
    assert q.factors[3] == "P_1"
    assert q.exact is None


def test_interleaving_identities(root):
    rows = {(row.identity, row.n): row.holds for row in interleaving_report(root, 2)}
    assert rows[("f(d~_n) = P~_5n", 0)]
    assert rows[("f(d~_n) = P~_5n", 1)]
    assert rows[("f(P~_5n-1) = d~_n", 1)]
    # d_1 is a primorial multiple, not e^30
    assert not rows[("f(P~_5n-1) = d_n", 1)]


def test_intermediate_check_on_small_grid(root):
    report = check_intermediate(root, 2, 0.5, grid=[1, 10, 100, 1000])
    assert report.grid_size == 4
    assert report.above_identity
    assert "INTERMEDIATE GROWTH CHECK" in report.generate_report()


@pytest.mark.slow
@pytest.mark.parametrize("degree", [1, 2, 3])
@pytest.mark.parametrize("eps", [0.3, 0.5])
def test_intermediate_crossovers_on_default_grid(root, degree, eps):
    report = check_intermediate(root, degree, eps)
    assert report.above_identity
    assert report.poly_threshold is not None
    assert report.root_threshold is not None
