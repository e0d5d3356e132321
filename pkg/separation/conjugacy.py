#!/usr/bin/env python3
"""
Conjugacy of g and g*c (c central) in groups of the Hall class.

Conjugators of g_1 project into the centralizer of its image in Z wr Z,
and x -> [x, g_1] is a homomorphism from that preimage Z_2 into the
center, so g_1 ~ g_1 c exactly when c lies in [Z_2, g_1]. The same
reasoning inside a finite quotient gives the structural test used to
certify separating parameters.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from sympy.core.intfunc import igcdex

from core.ball import enumerate_ball
from core.d_functions import (HallD, HallDParams, PrimeFunction, hall_n, n0, nu, p_prime,
                              period_mod)
from core.errors import NOT_FOUND, PreconditionError, TheoryViolation, Verdict, _NotFound
from core.hall_group import (GroupElement, a_power, c_power, commutator, conjugate,
                             cyclic_value, multiply)
from core.specs import CyclicCenter, QuotientSpec
from .centralizers import WreathElement, centralizer_generators
from .finite_quotients import FiniteHallElement, FiniteHallQuotient, cyclic_quotient

logger = logging.getLogger(__name__)

# ==================== BRUTE FORCE ====================

def bounded_conjugacy_search(g1: GroupElement, g2: GroupElement,
                             radius: int) -> Union[GroupElement, _NotFound]:
    """First x (by norm, then canonical key) of norm <= radius with x g1 x^-1 = g2"""
    if g1.spec != g2.spec:
        raise PreconditionError("elements live in different quotients")
    for x in enumerate_ball(g1.spec, radius):
        if conjugate(x, g1) == g2:
            return x
    return NOT_FOUND


def brute_force_conjugate(quotient: FiniteHallQuotient, g: FiniteHallElement,
                          h: FiniteHallElement) -> bool:
    """Exhaustive search for x with x g x^-1 = h; tiny quotients only"""
    return any(quotient.conjugate(x, g) == h for x in quotient.elements())


# ==================== STRUCTURAL TEST ====================

def _lift(quotient: FiniteHallQuotient, x: WreathElement) -> FiniteHallElement:
    return FiniteHallElement(x.n, x.h, quotient.model.zero())


def commutator_subgroup_generators(quotient: FiniteHallQuotient,
                                   g: FiniteHallElement) -> List[Tuple[int, ...]]:
    """Central coordinates of [x, g] over lifted centralizer generators of g's projection"""
    description = centralizer_generators(g.a, g.t, quotient.I, quotient.E)
    values = []
    for generator in description.generators:
        value = quotient.commutator(_lift(quotient, generator), g)
        if value.t or any(value.a):
            raise TheoryViolation(f"[{generator.to_record()}, g] is not central")
        values.append(value.c)
    return values


def _span_contains(generators: List[Tuple[int, ...]], target: Tuple[int, ...],
                   moduli: Tuple[int, ...]) -> bool:
    if not moduli:
        return True
    if len(moduli) == 1:
        gcd = math.gcd(moduli[0], *(v[0] for v in generators))
        return target[0] % gcd == 0
    span = {tuple(0 for _ in moduli)}
    frontier = list(span)
    while frontier:
        fresh = []
        for x in frontier:
            for v in generators:
                y = tuple((a + b) % m for a, b, m in zip(x, v, moduli))
                if y not in span:
                    span.add(y)
                    fresh.append(y)
        frontier = fresh
    return tuple(t % m for t, m in zip(target, moduli)) in span


def structural_conjugate(quotient: FiniteHallQuotient, g: FiniteHallElement,
                         c: FiniteHallElement) -> bool:
    """Is g conjugate to g*c in the quotient (c central)?"""
    if c.t or any(c.a):
        raise PreconditionError("c must be central")
    generators = commutator_subgroup_generators(quotient, g)
    return _span_contains(generators, c.c, quotient.model.moduli)


# ==================== SEPARATING PARAMETERS ====================

@dataclass
class SeparationParameters:
    """Virtually nilpotent quotient separating g_1 from g_1 c: center mod q, indices mod I"""
    status: str
    q: Optional[int] = None
    I: Optional[int] = None
    period: Optional[int] = None
    delta: int = 0
    n_t: int = 0
    commutator_gcd: Optional[int] = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_record(self) -> dict:
        return {"status": self.status, "q": self.q, "I": self.I, "period": self.period,
                "delta": self.delta, "n_t": self.n_t, "commutator_gcd": self.commutator_gcd,
                "reason": self.reason}


def _class_sums(h: Dict[int, int], modulus: int) -> List[int]:
    sums = [0] * modulus
    for i, v in h.items():
        sums[i % modulus] += v
    return sums


def _infinite_shift_solution(R: Dict[int, int], n: int) -> Dict[int, int]:
    """Finitely supported h' with h'_{i-n} - h'_i = R_i on Z (n != 0)"""
    if not R:
        return {}
    lo, hi = min(R) - abs(n), max(R)
    h = {}
    for i in range(lo, hi + 1):
        if n > 0:
            value = sum(R.get(i + j * n, 0) for j in range(1, (hi - i) // n + 1))
        else:
            value = -sum(R.get(i + j * abs(n), 0) for j in range(0, (hi - i) // abs(n) + 1))
        if value:
            h[i] = value
    return h


def centralizer_lift(g1: GroupElement) -> Optional[GroupElement]:
    """x_0 generating the centralizer of g_1's image in Z wr Z modulo the center (n_t != 0)"""
    n = g1.t_exp
    if n == 0:
        return None
    h = g1.a_part.as_dict()
    sigma = _class_sums(h, abs(n))
    for shift in range(1, abs(n) + 1):
        if abs(n) % shift:
            continue
        if sigma == sigma[-shift:] + sigma[:-shift]:
            break
    R: Dict[int, int] = {}
    for i, v in h.items():
        R[i + shift] = R.get(i + shift, 0) + v
        R[i] = R.get(i, 0) - v
    solution = _infinite_shift_solution({i: v for i, v in R.items() if v}, n)
    x0 = GroupElement.build(g1.spec, shift, solution)
    if not commutator(x0, g1).is_central:
        raise TheoryViolation(f"{x0} does not centralize {g1} modulo the center")
    return x0


def _commutator_values(g1: GroupElement, d: Callable[[int], int], window: int) -> List[int]:
    """Values generating [Z_2, g_1] inside the cyclic center"""
    x0 = centralizer_lift(g1)
    if x0 is not None:
        return [cyclic_value(commutator(x0, g1).c_part)]
    if not g1.a_part:
        return []
    h = g1.a_part.as_dict()
    return [sum(v * d(i - j) for j, v in h.items()) for i in range(window)]


def separating_parameters(g1: GroupElement, c: GroupElement,
                          spec: Optional[QuotientSpec] = None,
                          q_search_bound: int = 1000) -> SeparationParameters:
    """q, P and I = P q (4 delta + 2) max(1, |n_t|), verified in the finite quotient"""
    spec = spec or g1.spec
    if not isinstance(spec, CyclicCenter):
        raise PreconditionError("separating parameters need a G_d-type cyclic center")
    if not c.is_central:
        raise PreconditionError("c must be central")
    M = spec.modulus
    c_val = cyclic_value(c.c_part)
    n_t = g1.t_exp
    delta = g1.a_part.radius()

    chosen = None
    for q in range(2, q_search_bound + 1):
        if M is not None and M % q:
            continue
        P = spec.period if (M is not None and spec.period) else period_mod(spec.d, q)
        if P is NOT_FOUND:
            logger.info(f"d has no certified period mod {q}")
            continue
        values = _commutator_values(g1, spec.d, P)
        J = math.gcd(q, *values)
        if c_val % J:
            chosen = (q, P, math.gcd(0, *values))
            break
    if chosen is None:
        return SeparationParameters("unknown", delta=delta, n_t=n_t,
                                    reason=f"c lies in [Z_2, g_1] + qC for every q <= {q_search_bound}")

    q, P, J = chosen
    I = P * q * (4 * delta + 2) * max(1, abs(n_t))
    logger.info(f"separating parameters q={q}, P={P}, I={I} for {g1} and c = c_1^{c_val}")
    quotient = cyclic_quotient(spec.d, q, I)
    g_image = quotient.phi(g1)
    c_image = quotient.c_elem(1, c_val)
    if structural_conjugate(quotient, g_image, c_image):
        return SeparationParameters("unknown", q, I, P, delta, n_t, J,
                                    reason="images are conjugate in the finite quotient")
    return SeparationParameters("certified", q, I, P, delta, n_t, J)


# ==================== SERIES COMMUTATORS ====================

def _check_series_args(n0_: int, i: int, j: int):
    if n0_ <= 0:
        raise PreconditionError("n0 must be positive")
    if i < 0:
        raise PreconditionError("i must be non-negative")
    if j != 0 and nu(3, n0_) > nu(3, j):
        raise PreconditionError(f"nu_3({n0_}) exceeds nu_3({j})")


def series_element(spec: QuotientSpec, n0_: int, i: int) -> GroupElement:
    """a_0 a_{n0} ... a_{(3^i - 1) n0}"""
    return GroupElement.build(spec, 0, {m * n0_: 1 for m in range(3 ** i)})


def commutator_with_series(n0_: int, i: int, j: int, d: Callable[[int], int]) -> int:
    """Exponent of c_1 in [g, a_j]: d(j~ - j), j~ the series index congruent to j mod 3^{i + nu_3(n0)}"""
    _check_series_args(n0_, i, j)
    v = nu(3, n0_)
    modulus = 3 ** (i + v)
    unit = n0_ // 3 ** v
    m = ((j // 3 ** v) * pow(unit, -1, 3 ** i)) % 3 ** i if i else 0
    j_tilde = m * n0_
    if (j_tilde - j) % modulus:
        raise TheoryViolation(f"no series index matches {j} mod {modulus}")
    return d(j_tilde - j)


def commutator_with_series_direct(n0_: int, i: int, j: int, d: Callable[[int], int]) -> int:
    _check_series_args(n0_, i, j)
    spec = CyclicCenter(d)
    return cyclic_value(commutator(series_element(spec, n0_, i), a_power(spec, j)).c_part)


# ==================== CONJUGACY VS MEMBERSHIP ====================

@dataclass
class MembershipResult:
    verdict: Verdict
    i: int
    p: int
    exponent: int
    hit: Optional[int] = None
    conjugator: Optional[GroupElement] = None
    scanned_to: int = 0
    notes: List[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {"verdict": self.verdict.value, "i": self.i, "p": self.p,
                "exponent": self.exponent, "hit": self.hit,
                "conjugator": self.conjugator.render() if self.conjugator else None,
                "scanned_to": self.scanned_to, "notes": self.notes}


def membership_pair(i: int, p: int, params: HallDParams) -> Tuple[GroupElement, GroupElement, int]:
    """g_1 = a_0 ... a_{3^i - 1} and g_2 = g_1 c_1^{n(i)/p^i}"""
    spec = CyclicCenter(HallD(params))
    g1 = series_element(spec, 1, i)
    n_i = hall_n(params, i)
    if n_i % p ** i:
        raise PreconditionError(f"p^i = {p ** i} does not divide n({i}) = {n_i}")
    exponent = n_i // p ** i
    return g1, multiply(g1, c_power(spec, 1, exponent)), exponent


def conj_membership_test(i: int, p: int, P: PrimeFunction, search_bound: int,
                         convention: str = "j+1") -> MembershipResult:
    """Conjugate exactly when P'(j) = p for some j > i"""
    if n0(i) % p:
        raise PreconditionError(f"p = {p} does not divide n_0({i}) = {n0(i)}")
    if p_prime(P, i) == p:
        raise PreconditionError(f"P'({i}) = {p}")
    params = HallDParams(P, convention)
    g1, g2, exponent = membership_pair(i, p, params)
    result = MembershipResult(Verdict.UNKNOWN, i, p, exponent)

    for j in range(i + 1, search_bound + 1):
        result.scanned_to = j
        if p_prime(P, j) != p:
            continue
        result.hit = j
        spec = g1.spec
        u_i = cyclic_value(commutator(a_power(spec, 3 ** i), g1).c_part)
        u_j = cyclic_value(commutator(a_power(spec, 3 ** j), g1).c_part)
        x, y, gcd = (int(v) for v in igcdex(u_i, u_j))
        if exponent % gcd:
            raise TheoryViolation(f"gcd({u_i}, {u_j}) = {gcd} does not divide {exponent}")
        scale = exponent // gcd
        conjugator = GroupElement.build(spec, 0, {3 ** i: x * scale, 3 ** j: y * scale})
        if conjugate(conjugator, g1) != g2:
            raise TheoryViolation(f"{conjugator} fails to conjugate g_1 to g_2")
        result.verdict = Verdict.CONJUGATE
        result.conjugator = conjugator
        result.notes.append(f"P'({j}) = {p}; [a_3^{i}, g1] = {u_i}, [a_3^{j}, g1] = {u_j}")
        return result

    settled = getattr(P, "settled_after", None)
    if settled is not None and search_bound >= settled:
        result.verdict = Verdict.NOT_CONJUGATE
        result.notes.append(f"P' never returns {p} after index {settled}")
    else:
        result.notes.append(f"no hit up to {search_bound}; P' not known to settle")
    return result
