#!/usr/bin/env python3
"""
The ring Z[sqrt 2] and small prime-ideal witnesses for its elements.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional

from sympy import n_order

from core.errors import PreconditionError
from .primes import is_split_prime, iter_primes, iter_split_primes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadInt:
    """a + b*sqrt(2) with exact integer components"""
    a: int
    b: int = 0

    @classmethod
    def from_int(cls, x: int) -> QuadInt:
        return cls(x, 0)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}√2"

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def _coerce(self, other) -> Optional[QuadInt]:
        if isinstance(other, QuadInt):
            return other
        if isinstance(other, int):
            return QuadInt(other, 0)
        return None

    def __add__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b)

    def __sub__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QuadInt:
        return (-self) + other

    def __mul__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self.a * other.a + 2 * self.b * other.b,
                       self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def galois_conj(self) -> QuadInt:
        return QuadInt(self.a, -self.b)

    def field_norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def unit_inverse(self) -> QuadInt:
        norm = self.field_norm()
        if norm == 1:
            return self.galois_conj()
        if norm == -1:
            return -self.galois_conj()
        raise ZeroDivisionError(f"{self} is not a unit")

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = QuadInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def residue(self, witness: SplitPrimeWitness) -> int:
        """Image under a + b*sqrt2 -> a + b*s mod p"""
        return (self.a + self.b * witness.s) % witness.p


def quad_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def quad_pow(x: QuadInt, n: int) -> QuadInt:
    return x ** n


def field_norm(x: QuadInt) -> int:
    return x.field_norm()


UNIT = QuadInt(1, 1)  # fundamental unit u = 1 + sqrt 2


@dataclass(frozen=True)
class SplitPrimeWitness:
    """The prime ideal (p, sqrt2 - s) of norm p"""
    p: int
    s: int

    def __post_init__(self):
        if self.p % 2 == 0 or not is_split_prime(self.p):
            raise PreconditionError(f"{self.p} is not an odd split prime")
        if not 1 <= self.s < self.p or (self.s * self.s - 2) % self.p:
            raise PreconditionError(f"{self.s}^2 is not 2 mod {self.p}")

    def residue(self, x: QuadInt) -> int:
        return x.residue(self)

    def to_record(self, x: Optional[QuadInt] = None) -> Dict[str, int]:
        record = {"p": self.p, "s": self.s}
        if x is not None:
            record["residue"] = self.residue(x)
        return record


def find_small_prime_not_dividing(x: int) -> int:
    """Smallest prime p with p not dividing x"""
    if x == 0:
        raise PreconditionError("every prime divides 0")
    for p in iter_primes(2):
        if x % p:
            return p


def find_split_prime_avoiding(x: QuadInt, start: int = 2) -> SplitPrimeWitness:
    """Smallest split prime p >= start with x not in (p, sqrt2 - s), s the smaller root"""
    if not x:
        raise PreconditionError("0 lies in every ideal")
    for p, s in iter_split_primes(max(start, 3)):
        witness = SplitPrimeWitness(p, s)
        if witness.residue(x):
            logger.debug(f"split prime {p} (s={s}) avoids {x}")
            return witness


def multiplicative_order(x: int, p: int) -> int:
    if x % p == 0:
        raise PreconditionError(f"{x} is not a unit mod {p}")
    return int(n_order(x % p, p))


def chebotarev_ratio(x: int) -> float:
    """p / log|x| for the smallest prime not dividing x (|x| >= 2)"""
    return find_small_prime_not_dividing(x) / math.log(abs(x))
