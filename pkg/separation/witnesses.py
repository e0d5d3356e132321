#!/usr/bin/env python3
"""
Finite-quotient witnesses for residual finiteness.

Lamplighter-type groups are separated through Z[sqrt 2]: a_i goes to the
residue of u^{ki} (u = 1 + sqrt 2) modulo a split prime, t to the shift.
Central elements of G_Int are separated in G_{p,Q}, where t^{2Q}, a_i^p
and c_i^p die and only the C_{p,Q} basis of the center survives.

Every witness leaving this module has been pushed through verify_witness.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

from core.errors import PreconditionError, TheoryViolation
from core.hall_group import GroupElement, commutator, a_power
from core.specs import FREE, RelationCenter, SequenceParams, TrivialCenter
from core.d_functions import nu
from arithmetic.laurent import (LaurentPoly, exempt_collisions, find_reduction_prime,
                                laurent_fold)
from arithmetic.primes import iter_split_primes, prime_factors
from arithmetic.quadratic import (QuadInt, SplitPrimeWitness, UNIT,
                                  find_small_prime_not_dividing, multiplicative_order)
from .finite_quotients import (CpqCentralModel, FiniteHallElement, FiniteHallQuotient,
                               LamplighterQuotient, gpq_quotient)

logger = logging.getLogger(__name__)

# ==================== WITNESS TYPES ====================

@dataclass(frozen=True)
class CyclicWitness:
    """Z/p through the t-exponent"""
    p: int
    kind = "cyclic"

    @property
    def order(self) -> int:
        return self.p

    def to_record(self) -> dict:
        return {"kind": self.kind, "p": self.p, "order": self.order}


@dataclass(frozen=True)
class LamplighterWitness:
    """Z/p x| Z/r, t acting by the residue of u^k modulo (p, sqrt2 - s)"""
    p: int
    s: int
    k: int
    r: int
    kind = "lamplighter"

    def __post_init__(self):
        SplitPrimeWitness(self.p, self.s)
        if multiplicative_order(self.multiplier, self.p) != self.r:
            raise PreconditionError(f"r = {self.r} is not the order of {self.multiplier} mod {self.p}")

    @property
    def multiplier(self) -> int:
        return pow(1 + self.s, self.k, self.p)

    @property
    def order(self) -> int:
        return self.p * self.r

    def quotient(self) -> LamplighterQuotient:
        return LamplighterQuotient(self.p, self.multiplier, self.r)

    def to_record(self) -> dict:
        return {"kind": self.kind, "p": self.p, "s": self.s, "k": self.k, "r": self.r,
                "order": self.order}


@dataclass(frozen=True)
class HallFiniteWitness:
    """G_{p,Q} for the relations in ``params``; ``branch`` says which search produced it"""
    p: int
    Q: int
    params: SequenceParams
    branch: str = "case1"
    basis_index: Optional[int] = None
    kind = "hall_finite"

    def __post_init__(self):
        if self.order > 2 * self.Q * self.p ** (4 * self.Q):
            raise TheoryViolation(f"|G_{{{self.p},{self.Q}}}| = {self.order} exceeds 2Q p^(4Q)")

    @property
    def basis(self) -> Tuple[int, ...]:
        return CpqCentralModel(self.p, self.Q, self.params).basis

    @property
    def order(self) -> int:
        return 2 * self.Q * self.p ** (2 * self.Q + len(self.basis))

    def quotient(self) -> FiniteHallQuotient:
        return gpq_quotient(self.p, self.Q, self.params)

    def to_record(self) -> dict:
        return {"kind": self.kind, "p": self.p, "q": self.Q, "branch": self.branch,
                "basis": list(self.basis), "basis_index": self.basis_index,
                "order": self.order, "params": self.params.to_config()}


WitnessQuotient = Union[CyclicWitness, LamplighterWitness, HallFiniteWitness]


@dataclass
class WitnessCheck:
    """Outcome of evaluating a witness homomorphism on an element"""
    nontrivial: bool
    order: int
    image: object

    def to_record(self) -> dict:
        image = self.image.to_record() if hasattr(self.image, "to_record") else self.image
        return {"nontrivial": self.nontrivial, "order": self.order, "image": image}


def verify_witness(g: GroupElement, witness: WitnessQuotient) -> WitnessCheck:
    """Evaluate the quotient map on the normal form of g"""
    if isinstance(witness, CyclicWitness):
        image = g.t_exp % witness.p
        return WitnessCheck(image != 0, witness.order, image)
    if isinstance(witness, LamplighterWitness):
        image = witness.quotient().image(g)
        return WitnessCheck(image != (0, 0), witness.order, image)
    if isinstance(witness, HallFiniteWitness):
        if not isinstance(g.spec, RelationCenter) or g.spec.params != witness.params:
            raise PreconditionError("G_{p,Q} witnesses apply to elements of the matching G_Int")
        image = witness.quotient().phi(g)
        return WitnessCheck(not image.is_identity, witness.order, image)
    raise PreconditionError(f"malformed witness {witness!r}")


# ==================== LAMPLIGHTER ====================

def _k_order(n: int) -> List[int]:
    ks = [0]
    for k in range(1, n + 2):
        ks.extend([k, -k])
    return ks


def evaluate_at_unit_power(g: GroupElement, k: int) -> QuadInt:
    """f(u^k) = sum_i v_i u^{ki} for the a-part of g"""
    total = QuadInt(0, 0)
    for i, v in g.a_part:
        total = total + v * UNIT ** (k * i)
    return total


def lamplighter_witness(g: GroupElement) -> WitnessQuotient:
    """Minimal witness under the order (p, then k, then r)"""
    if not isinstance(g.spec, TrivialCenter):
        raise PreconditionError("lamplighter witnesses need an element of Z wr Z")
    if g.is_identity:
        raise PreconditionError("the identity survives in no quotient")

    if g.t_exp:
        witness = CyclicWitness(find_small_prime_not_dividing(g.t_exp))
        _assert_verified(g, witness)
        return witness

    n = g.a_part.radius()
    candidates = [(k, evaluate_at_unit_power(g, k)) for k in _k_order(n)]
    candidates = [(k, value) for k, value in candidates if value]
    if not candidates:
        raise TheoryViolation(f"f(u^k) vanishes for every |k| <= {n + 1} at {g}")

    for p, s in iter_split_primes(3):
        split = SplitPrimeWitness(p, s)
        for k, value in candidates:
            if split.residue(value):
                r = multiplicative_order(pow(1 + s, k, p), p)
                witness = LamplighterWitness(p, s, k, r)
                _assert_verified(g, witness)
                logger.debug(f"{g} separated by {witness.to_record()}")
                return witness


def _assert_verified(g: GroupElement, witness: WitnessQuotient):
    if not verify_witness(g, witness).nontrivial:
        raise TheoryViolation(f"{witness.to_record()} kills {g}")


# ==================== G_{p,Q} MAPS ====================

def phi_pq(x: GroupElement, p: int, Q: int, params: SequenceParams) -> FiniteHallElement:
    return gpq_quotient(p, Q, params).phi(x)


def hallfinite_multiply(quotient: FiniteHallQuotient, g: FiniteHallElement,
                        h: FiniteHallElement) -> FiniteHallElement:
    return quotient.multiply(g, h)


def central_lift(g: GroupElement) -> LaurentPoly:
    """sum_i gamma_i X^i for a central element"""
    if not g.is_central:
        raise PreconditionError(f"{g} is not central")
    return LaurentPoly.from_dict(g.c_part.as_dict())


def delta_poly(f: LaurentPoly) -> LaurentPoly:
    return f.antisymmetrized()


def delta_central(coords: Iterable[int], model: CpqCentralModel) -> Dict[int, int]:
    """c_b -> c_b - c_{-b}, keyed by signed representatives"""
    out = {}
    for b, x in zip(model.basis, coords):
        if x % model.p:
            out[b] = x % model.p
            out[-b] = -x % model.p
    return out


def pi_tilde(f: LaurentPoly, model: CpqCentralModel) -> Dict[int, int]:
    """Fold mod 2Q and mod p, dropping the classes 0, Q and the excluded ones"""
    out = {}
    for r, value in laurent_fold(f, 2 * model.Q).items():
        _, sign = model.fold(r)
        if not sign or value % model.p == 0:
            continue
        key = r if r <= model.Q else r - 2 * model.Q
        out[key] = value % model.p
    return out


def central_image(g: GroupElement, model: CpqCentralModel) -> Tuple[int, ...]:
    coords = model.zero()
    for i, v in g.c_part:
        coords = model.add(coords, model.coordinates(i), v)
    return coords


def property_p_holds(quotient: FiniteHallQuotient, i: int, j: int) -> bool:
    """[a_j, a_i] and [a_j, a_{i+I}] agree after the quotient map"""
    left = commutator(a_power(FREE, j), a_power(FREE, i))
    right = commutator(a_power(FREE, j), a_power(FREE, i + quotient.I))
    return quotient.phi(left) == quotient.phi(right)


# ==================== G_Int WITNESS ====================

@dataclass
class GintTranscript:
    """Decision trail of one gint_witness call"""
    steps: List[str] = field(default_factory=list)

    def log(self, message: str):
        self.steps.append(message)
        logger.debug(message)


def _least_prime_factor(q: int, avoid: int = 0, exceed: int = 0) -> Optional[int]:
    for p in prime_factors(q):
        if p > exceed and (avoid == 0 or avoid % p):
            return p
    return None


def _hall_finite_if_separating(g: GroupElement, p: int, Q: int, params: SequenceParams,
                               branch: str) -> Optional[HallFiniteWitness]:
    model = CpqCentralModel(p, Q, params)
    coords = central_image(g, model)
    if not any(coords):
        return None
    basis_index = model.basis[next(n for n, x in enumerate(coords) if x)]
    return HallFiniteWitness(p, Q, params, branch, basis_index)


def _case1_candidate(g: GroupElement, params: SequenceParams,
                     transcript: GintTranscript) -> Tuple[int, int]:
    """Support inside {d_j}: p | q_k with p not dividing gamma, Q = 2^{nu_2(d_k)+1}"""
    for k, (d, q) in enumerate(zip(params.d_seq, params.q_seq)):
        gamma = g.c_part.get(d)
        if gamma % q == 0:
            continue
        p = _least_prime_factor(q, avoid=gamma)
        Q = 2 ** (nu(2, d) + 1)
        transcript.log(f"case 1: d_{k} = {d}, gamma = {gamma}, q_{k} = {q} -> p = {p}, Q = {Q}")
        if p is None or p == 2:
            raise PreconditionError(
                f"case 1: q_{k} = {q} has no odd prime factor prime to gamma = {gamma}")
        return p, Q
    raise PreconditionError("case 1: every gamma_{d_k} is divisible by q_k")


def _case2_candidate(g: GroupElement, params: SequenceParams,
                     transcript: GintTranscript) -> Tuple[int, int]:
    """Free indices present: reduce delta(f) by a prime, p an odd factor of q_k above |gamma|"""
    f_tilde = delta_poly(central_lift(g))
    n = max(g.c_part.support())
    k = next((j for j, d in enumerate(params.d_seq) if n < d), None)
    if k is None:
        raise PreconditionError(
            f"case 2: params too small, need some d_k > {n}, largest is {params.d_seq[-1]}")

    exempt = {0} | {s * d for d in params.d_seq[:k] for s in (1, -1)}
    m0 = 2 ** (k + 1)
    while exempt_collisions(exempt, m0):
        m0 *= 2
    q, certificate = find_reduction_prime(f_tilde, exempt, m0, n)
    Q = certificate.L // 2
    transcript.log(f"case 2: n = {n}, k = {k}, m0 = {m0}, reduction prime {q}, Q = {Q}")

    best = None
    for r, gamma in sorted(certificate.surviving_classes.items()):
        b = r if r < Q else 2 * Q - r
        p = _least_prime_factor(params.q_seq[k], exceed=abs(gamma))
        if p is not None and p > 2 and (best is None or (p, b) < best):
            best = (p, b)
    if best is None:
        threshold = min(abs(gamma) for gamma in certificate.surviving_classes.values())
        raise PreconditionError(
            f"case 2: q_{k} = {params.q_seq[k]} has no odd prime factor above {threshold}")
    transcript.log(f"surviving class {best[1]} with p = {best[0]}")
    return best[0], Q


def gint_witness(g: GroupElement, params: Optional[SequenceParams] = None,
                 transcript: Optional[GintTranscript] = None) -> HallFiniteWitness:
    """A G_{p,Q} in which the central element g of G_Int survives.

    Raises PreconditionError when the chosen case yields no odd prime or its
    quotient kills g; no other (p, Q) is tried.
    """
    transcript = transcript if transcript is not None else GintTranscript()
    if not isinstance(g.spec, RelationCenter):
        raise PreconditionError("gint_witness needs an element of G_Int")
    params = params or g.spec.params
    if params != g.spec.params:
        raise PreconditionError("params disagree with the element's quotient")
    if not g.is_central:
        raise PreconditionError(f"{g} is not central")
    if g.is_identity:
        raise PreconditionError("g is trivial in G_Int")

    if set(g.c_part.support()) <= set(params.d_seq):
        branch = "case1"
        p, Q = _case1_candidate(g, params, transcript)
    else:
        branch = "case2"
        p, Q = _case2_candidate(g, params, transcript)

    witness = _hall_finite_if_separating(g, p, Q, params, branch)
    if witness is None:
        transcript.log(f"G_{{{p},{Q}}} kills g")
        raise PreconditionError(f"{branch}: G_{{{p},{Q}}} kills {g}")
    transcript.log(f"verified: phi(g) != 0 in G_{{{p},{Q}}}")
    return witness


def witness_from_record(record: dict, params: Optional[SequenceParams] = None) -> WitnessQuotient:
    """Rebuild a witness from its to_record form; construction re-checks its invariants"""
    kind = record.get("kind")
    if kind == CyclicWitness.kind:
        witness = CyclicWitness(int(record["p"]))
    elif kind == LamplighterWitness.kind:
        witness = LamplighterWitness(int(record["p"]), int(record["s"]), int(record["k"]),
                                     int(record["r"]))
    elif kind == HallFiniteWitness.kind:
        params = params or SequenceParams.from_config(record["params"])
        witness = HallFiniteWitness(int(record["p"]), int(record["q"]), params,
                                    record.get("branch", "case1"), record.get("basis_index"))
    else:
        raise PreconditionError(f"unknown witness kind {kind!r}")
    if "order" in record and int(record["order"]) != witness.order:
        raise PreconditionError(f"recorded order {record['order']} != {witness.order}")
    return witness
