#!/usr/bin/env python3
"""
Integer Laurent polynomials and their reduction modulo X^L - 1.

M + I_L membership: M is the free Z-span of the exempt monomials X^{l_i},
I_L the ideal generated by X^L - 1, so membership only asks whether every
fold class outside the exempt classes cancels.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Set, Tuple

from core.errors import PreconditionError, TheoryViolation
from .primes import iter_odd_primes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported integer coefficients by degree, no zeros stored"""
    coeffs: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((int(i), int(c)) for i, c in coeffs.items() if c != 0)))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dict({degree: coeff})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        total = self.as_dict()
        for i, c in other.coeffs:
            total[i] = total.get(i, 0) + c
        return LaurentPoly.from_dict(total)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((i, -c) for i, c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def radius(self) -> int:
        return max((abs(i) for i, _ in self.coeffs), default=0)

    def antisymmetrized(self) -> "LaurentPoly":
        """f(X) - f(X^-1)"""
        total: Dict[int, int] = {}
        for i, c in self.coeffs:
            total[i] = total.get(i, 0) + c
            total[-i] = total.get(-i, 0) - c
        return LaurentPoly.from_dict(total)


def laurent_fold(f: LaurentPoly, L: int) -> Dict[int, int]:
    """Class r mod L -> sum of coefficients of degrees congruent to r"""
    if L < 1:
        raise PreconditionError("L must be positive")
    folded: Dict[int, int] = {}
    for i, c in f.coeffs:
        r = i % L
        folded[r] = folded.get(r, 0) + c
    return {r: c for r, c in sorted(folded.items()) if c != 0}


def exempt_collisions(exempt: Iterable[int], modulus: int) -> Dict[int, Set[int]]:
    """Classes mod ``modulus`` hit by more than one exempt degree"""
    classes: Dict[int, Set[int]] = {}
    for l in set(exempt):
        classes.setdefault(l % modulus, set()).add(l)
    return {r: ls for r, ls in classes.items() if len(ls) > 1}


@dataclass
class MembershipCheck:
    """Membership verdict plus the exempt classes that merged mod L"""
    member: bool
    L: int
    collisions: Dict[int, Set[int]] = field(default_factory=dict)

    @property
    def distinct_classes(self) -> bool:
        return not self.collisions


def check_membership(f: LaurentPoly, exempt: Iterable[int], L: int) -> MembershipCheck:
    exempt = set(exempt)
    collisions = exempt_collisions(exempt, L)
    if collisions:
        logger.info(f"exempt classes collide mod {L}: {collisions}")
    exempt_classes = {l % L for l in exempt}
    member = all(r in exempt_classes for r in laurent_fold(f, L))
    return MembershipCheck(member, L, collisions)


def membership_in_M_plus_Iq(f: LaurentPoly, exempt: Iterable[int], L: int) -> bool:
    return check_membership(f, exempt, L).member


@dataclass
class ReductionCertificate:
    """Why q works: the populated non-exempt classes of f mod lcm(q, m0)"""
    q: int
    L: int
    m0: int
    surviving_classes: Dict[int, int] = field(default_factory=dict)
    guaranteed_q_bound: int = 0
    n: int = 1
    eps: float = 0.05
    collisions: Dict[int, Set[int]] = field(default_factory=dict)

    @property
    def within_guaranteed_bound(self) -> bool:
        return self.q < self.guaranteed_q_bound

    @property
    def constant(self) -> float:
        """q / n^{1/2 + eps} for this instance"""
        return reduction_constant(self.q, self.n, self.eps)

    @property
    def valid(self) -> bool:
        return bool(self.surviving_classes) and not self.collisions

    def to_record(self) -> dict:
        return {"q": self.q, "L": self.L, "m0": self.m0, "n": self.n, "eps": self.eps,
                "surviving_classes": {str(k): v for k, v in self.surviving_classes.items()},
                "guaranteed_q_bound": self.guaranteed_q_bound,
                "within_guaranteed_bound": self.within_guaranteed_bound,
                "constant": self.constant,
                "collisions": {str(k): sorted(v) for k, v in self.collisions.items()},
                "valid": self.valid}


def odd_prime_sum_threshold(n: int) -> int:
    """Least Q with sum_{odd primes q < Q} (q - 1) > 2n.

    Past this point the cyclotomic factors Phi_q of the candidate primes have
    total degree exceeding the degree of X^n f.
    """
    total = 0
    for q in iter_odd_primes(3):
        total += q - 1
        if total > 2 * n:
            return q + 1


def guaranteed_bound(n: int, exempt: Iterable[int]) -> int:
    """Some prime up to here exceeds twice the largest degree in play (Bertrand),
    and for such q folding mod lcm(q, m0) is injective on the support"""
    span = max([n] + [abs(l) for l in exempt])
    return 4 * span + 4


def find_reduction_prime(f: LaurentPoly, exempt: Iterable[int], m0: int, n: int,
                         eps: float = 0.05) -> Tuple[int, ReductionCertificate]:
    """Smallest odd prime q with f not in M + I_{lcm(q, m0)}.

    The scan normally stops below the odd-prime sum threshold; past it the
    search continues up to the injective-folding bound with a warning, and
    the certificate records that the threshold was missed. Primes whose
    modulus merges exempt classes are rejected. ``eps`` sets the exponent
    of the certificate's constant q / n^{1/2 + eps}.
    """
    exempt = sorted(set(exempt))
    if not f:
        raise PreconditionError("f must be nonzero")
    if f.radius() > n:
        raise PreconditionError(f"support of f leaves [-{n}, {n}]")
    if all(i in exempt for i, _ in f.coeffs):
        raise PreconditionError("f already lies in M")
    collisions = exempt_collisions(exempt, m0)
    if collisions:
        raise PreconditionError(f"exempt degrees collide mod m0={m0}: {collisions}")

    cap = odd_prime_sum_threshold(n)
    hard_limit = max(cap, guaranteed_bound(n, exempt))
    extended = False
    for q in iter_odd_primes(3):
        if q > hard_limit:
            break
        if q >= cap and not extended:
            logger.warning(f"no reduction prime below {cap} for n={n}; extending the scan")
            extended = True
        L = q * m0 // math.gcd(q, m0)
        check = check_membership(f, exempt, L)
        if check.member:
            continue
        if not check.distinct_classes:
            logger.warning(f"rejecting q={q}: exempt classes collide mod {L}")
            continue
        exempt_classes = {l % L for l in exempt}
        surviving = {r: c for r, c in laurent_fold(f, L).items() if r not in exempt_classes}
        logger.debug(f"reduction prime {q} for n={n}, L={L}")
        return q, ReductionCertificate(q, L, m0, surviving, cap, n, eps, check.collisions)
    raise TheoryViolation(f"no odd prime up to {hard_limit} separates f from M (n={n}, m0={m0})")


def reduction_constant(q: int, n: int, eps: float = 0.05) -> float:
    """q / n^{1/2 + eps}, the quantity whose maximum is the fitted constant"""
    return q / (max(n, 1) ** (0.5 + eps))
