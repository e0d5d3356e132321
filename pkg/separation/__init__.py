"""Finite-quotient witnesses, centralizers and conjugacy tests"""

from .finite_quotients import (CpqCentralModel, CyclicCentralModel, FiniteHallQuotient,
                               LamplighterQuotient, build_Cpq_basis, gpq_quotient)
from .witnesses import (CyclicWitness, HallFiniteWitness, LamplighterWitness, gint_witness,
                        lamplighter_witness, phi_pq, verify_witness, witness_from_record)
from .centralizers import WreathElement, centralizer_generators
from .conjugacy import (bounded_conjugacy_search, commutator_with_series, conj_membership_test,
                        separating_parameters)

__all__ = [
    'CpqCentralModel',
    'CyclicCentralModel',
    'FiniteHallQuotient',
    'LamplighterQuotient',
    'build_Cpq_basis',
    'gpq_quotient',
    'CyclicWitness',
    'HallFiniteWitness',
    'LamplighterWitness',
    'gint_witness',
    'lamplighter_witness',
    'phi_pq',
    'verify_witness',
    'witness_from_record',
    'WreathElement',
    'centralizer_generators',
    'bounded_conjugacy_search',
    'commutator_with_series',
    'conj_membership_test',
    'separating_parameters',
]
