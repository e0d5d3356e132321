"""Finite-quotient witnesses for Z wr Z and G_Int"""

import pytest

from core.errors import PreconditionError
from core.hall_group import c_power, evaluate_text, identity, multiply, project_to_lamplighter
from core.specs import FREE, TRIVIAL, RelationCenter, SequenceParams
from separation.finite_quotients import CpqCentralModel, gpq_quotient
from separation.witnesses import (CyclicWitness, GintTranscript, HallFiniteWitness,
                                  LamplighterWitness, central_image, central_lift, delta_central,
                                  delta_poly, gint_witness, hallfinite_multiply, lamplighter_witness,
                                  phi_pq, pi_tilde, verify_witness, witness_from_record)


def lamp(text):
    return evaluate_text(text, TRIVIAL)


# ==================== LAMPLIGHTER ====================

def test_lamplighter_witness_for_difference():
    witness = lamplighter_witness(lamp("a_0 a_1^-1"))
    assert witness == LamplighterWitness(7, 3, 1, 3)
    assert witness.order == 21
    assert verify_witness(lamp("a_0 a_1^-1"), witness).nontrivial


def test_lamplighter_witness_for_single_letter():
    witness = lamplighter_witness(lamp("a_0"))
    assert witness == LamplighterWitness(7, 3, 0, 1)
    assert witness.order == 7


def test_t_powers_use_cyclic_witnesses():
    assert lamplighter_witness(lamp("t^3")) == CyclicWitness(2)
    assert lamplighter_witness(lamp("t^2")) == CyclicWitness(3)
    assert lamplighter_witness(lamp("t^6 a_4")) == CyclicWitness(5)


def test_lamplighter_witness_preconditions():
    with pytest.raises(PreconditionError):
        lamplighter_witness(lamp("1"))
    with pytest.raises(PreconditionError):
        lamplighter_witness(evaluate_text("a_0", FREE))


def test_lamplighter_witness_validates_r():
    with pytest.raises(PreconditionError):
        LamplighterWitness(7, 3, 1, 2)
    with pytest.raises(PreconditionError):
        LamplighterWitness(5, 3, 1, 1)


def test_projected_element_keeps_its_witness(gint_spec):
    g = evaluate_text("a_0 a_1^-1 c_6", gint_spec)
    assert lamplighter_witness(project_to_lamplighter(g)) == LamplighterWitness(7, 3, 1, 3)


# ==================== G_Int ====================

def test_gint_witness_relation_index(gint_spec, gint_params):
    transcript = GintTranscript()
    witness = gint_witness(c_power(gint_spec, 6), transcript=transcript)
    assert (witness.p, witness.Q) == (5, 4)
    assert witness.branch == "case1"
    assert witness.basis == (1, 2, 3)
    assert witness.basis_index == 2
    assert witness.order == 8 * 5 ** 11
    assert any("case 1" in step for step in transcript.steps)
    assert not phi_pq(c_power(gint_spec, 6), 5, 4, gint_params).is_identity


def test_gint_witness_free_index(gint_spec):
    witness = gint_witness(c_power(gint_spec, 1))
    assert (witness.p, witness.Q) == (5, 3)
    assert witness.branch == "case2"
    assert witness.basis == (1, 2)
    assert witness.basis_index == 1
    assert witness.order == 2343750


def test_gint_witness_preconditions(gint_spec):
    with pytest.raises(PreconditionError):
        gint_witness(c_power(gint_spec, 6, 35))
    with pytest.raises(PreconditionError):
        gint_witness(evaluate_text("a_0", gint_spec))
    with pytest.raises(PreconditionError):
        gint_witness(c_power(FREE, 1))


def test_gint_witness_case1_fails_loudly():
    spec = RelationCenter(SequenceParams((2,), (4,)))
    with pytest.raises(PreconditionError, match="case 1"):
        gint_witness(c_power(spec, 2))


def test_gint_witness_case2_fails_loudly():
    spec = RelationCenter(SequenceParams((6,), (3,)))
    with pytest.raises(PreconditionError, match="case 2.*above 3"):
        gint_witness(c_power(spec, 1, 3))


def test_gint_witness_branch_is_always_a_main_case(rng):
    for _ in range(30):
        params = SequenceParams.random_toy(rng)
        spec = RelationCenter(params)
        i = int(rng.integers(1, 6))
        sign = int(rng.choice([-1, 1]))
        j = int(rng.integers(0, len(params.d_seq)))
        for g, branch in [(c_power(spec, i, sign), "case2"), (c_power(spec, params.d_seq[j]), "case1")]:
            witness = gint_witness(g)
            assert witness.branch == branch
            assert verify_witness(g, witness).nontrivial


def random_central(rng, params):
    """c_i^e on a free index, or a product of relation indices with nonzero exponents"""
    spec = RelationCenter(params)
    if rng.random() < 0.5:
        i = int(rng.integers(1, 6))
        return c_power(spec, i, int(rng.choice([-2, -1, 1, 2]))), "case2"
    g = identity(spec)
    for j in rng.choice(len(params.d_seq), size=int(rng.integers(1, 3)), replace=False):
        j = int(j)
        g = multiply(g, c_power(spec, params.d_seq[j], int(rng.integers(1, params.q_seq[j]))))
    return g, "case1"


@pytest.mark.slow
def test_gint_witness_on_random_central_elements(rng):
    for _ in range(100):
        params = SequenceParams.random_toy(rng)
        g, branch = random_central(rng, params)
        witness = gint_witness(g)
        assert witness.branch == branch
        assert verify_witness(g, witness).nontrivial
        assert witness.order <= 2 * witness.Q * witness.p ** (4 * witness.Q)


def test_hall_witness_needs_matching_group(gint_spec):
    witness = gint_witness(c_power(gint_spec, 6))
    with pytest.raises(PreconditionError):
        verify_witness(lamp("a_0"), witness)


def test_witness_records_round_trip(gint_spec):
    witnesses = [CyclicWitness(2), LamplighterWitness(7, 3, 1, 3), gint_witness(c_power(gint_spec, 6))]
    for witness in witnesses:
        assert witness_from_record(witness.to_record()) == witness


def test_witness_record_rejects_tampering():
    record = LamplighterWitness(7, 3, 1, 3).to_record()
    record["order"] = 22
    with pytest.raises(PreconditionError):
        witness_from_record(record)
    with pytest.raises(PreconditionError):
        witness_from_record({"kind": "bogus"})


def test_central_maps_commute(gint_spec, gint_params):
    for index, (p, Q) in [(1, (5, 3)), (6, (5, 4))]:
        g = c_power(gint_spec, index)
        model = CpqCentralModel(p, Q, gint_params)
        assert pi_tilde(delta_poly(central_lift(g)), model) == delta_central(central_image(g, model), model)


def test_central_lift_rejects_non_central(gint_spec):
    with pytest.raises(PreconditionError):
        central_lift(evaluate_text("t", gint_spec))


def test_hall_witness_size_bound(gint_params):
    witness = HallFiniteWitness(5, 4, gint_params)
    assert witness.order <= 2 * 4 * 5 ** 16


def test_hallfinite_multiply_matches_phi(gint_spec, gint_params):
    quotient = gpq_quotient(5, 3, gint_params)
    g = evaluate_text("a_1 t a_0^2 c_6", gint_spec)
    h = evaluate_text("t^-1 a_2^-1 c_1^3 a_7", gint_spec)
    product = hallfinite_multiply(quotient, phi_pq(g, 5, 3, gint_params), phi_pq(h, 5, 3, gint_params))
    assert product == phi_pq(multiply(g, h), 5, 3, gint_params)
