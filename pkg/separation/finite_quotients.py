#!/usr/bin/env python3
"""
Finite quotients of groups in the Hall class.

FiniteHallQuotient(I, E, model) keeps a-indices and t mod I, a-exponents
mod E, and the center as a finite abelian group given by a central model
that sends an integer index x to the coordinates of c_x. Writing an
element as (v, c, k) over representatives [0, I):

    (v, c, k)(w, c', k') = (v + w', c + c' + h_k(w) + B(v, w'), k + k')

with w' = shift_k w (cyclic), B(v, w') = sum_{i > j} v_i w'_j C(i - j) and
h_k(w) = sum_{m >= k > l} w'_m w'_l C(m - l), the correction for moving
wrapped-around letters back in front. The law is a group law as long as C
is antisymmetric, I-periodic and killed by E.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import PreconditionError
from core.hall_group import GroupElement
from core.specs import SequenceParams
from arithmetic.primes import check_primality

logger = logging.getLogger(__name__)

Coords = Tuple[int, ...]

# ==================== CENTRAL MODELS ====================

class CentralModel:
    """Coordinates of c_x in a finite abelian group Z/m_1 x ... x Z/m_r"""
    moduli: Tuple[int, ...] = ()

    def coordinates(self, x: int) -> Coords:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    @property
    def order(self) -> int:
        return int(np.prod([int(m) for m in self.moduli], dtype=object)) if self.moduli else 1

    def zero(self) -> Coords:
        return tuple(0 for _ in self.moduli)

    def add(self, a: Coords, b: Coords, scale: int = 1) -> Coords:
        return tuple((x + scale * y) % m for x, y, m in zip(a, b, self.moduli))

    def check_period(self, I: int, window: int = 3):
        """C must be antisymmetric and I-periodic on a window of indices"""
        for x in range(-window * I, window * I + 1):
            if self.coordinates(x + I) != self.coordinates(x):
                raise PreconditionError(f"{self.describe()} is not {I}-periodic at {x}")
            if self.add(self.coordinates(x), self.coordinates(-x)) != self.zero():
                raise PreconditionError(f"{self.describe()} is not antisymmetric at {x}")


class TrivialCentralModel(CentralModel):
    moduli = ()

    def coordinates(self, x: int) -> Coords:
        return ()

    def describe(self) -> str:
        return "trivial"


class CyclicCentralModel(CentralModel):
    """Center Z/q with c_x = c_1^{d(x)}"""

    def __init__(self, d: Callable[[int], int], q: int):
        if q < 2:
            raise PreconditionError("q must be at least 2")
        self.d = d
        self.q = q
        self.moduli = (q,)

    def coordinates(self, x: int) -> Coords:
        return (self.d(x) % self.q,)

    def describe(self) -> str:
        return f"Z/{self.q} via {getattr(self.d, 'label', 'd')}"


def build_Cpq_basis(p: int, Q: int, params: SequenceParams) -> Tuple[int, ...]:
    """Indices i in [1, Q-1] not congruent to +-d_j mod 2Q for any j with p not dividing q_j"""
    if p % 2 == 0 or not check_primality(p)[0]:
        raise PreconditionError(f"p = {p} must be an odd prime")
    if Q < 2:
        raise PreconditionError("Q must be at least 2")
    excluded = set()
    for d, q in zip(params.d_seq, params.q_seq):
        if q % p:
            excluded.add(d % (2 * Q))
            excluded.add(-d % (2 * Q))
    return tuple(i for i in range(1, Q) if i not in excluded)


class CpqCentralModel(CentralModel):
    """C_{p,Q}: free Z/p-module on the surviving indices of [1, Q-1]"""

    def __init__(self, p: int, Q: int, params: SequenceParams):
        self.p = p
        self.Q = Q
        self.params = params
        self.basis = build_Cpq_basis(p, Q, params)
        self.position = {b: n for n, b in enumerate(self.basis)}
        self.moduli = tuple(p for _ in self.basis)

    def fold(self, x: int) -> Tuple[int, int]:
        """(basis index or 0, sign) for c_x"""
        r = x % (2 * self.Q)
        if r in (0, self.Q):
            return 0, 0
        sign = 1
        if r > self.Q:
            r, sign = 2 * self.Q - r, -1
        if r not in self.position:
            return 0, 0
        return r, sign

    def coordinates(self, x: int) -> Coords:
        r, sign = self.fold(x)
        coords = [0] * len(self.basis)
        if sign:
            coords[self.position[r]] = sign % self.p
        return tuple(coords)

    def describe(self) -> str:
        return f"C_{{{self.p},{self.Q}}} basis {list(self.basis)}"


# ==================== ELEMENTS AND LAW ====================

@dataclass(frozen=True)
class FiniteHallElement:
    """(t mod I, a-vector over Z/E indexed by Z/I, central coordinates)"""
    t: int
    a: Tuple[int, ...]
    c: Coords

    @property
    def is_identity(self) -> bool:
        return self.t == 0 and not any(self.a) and not any(self.c)

    def to_record(self) -> dict:
        return {"t": self.t, "a": {str(i): v for i, v in enumerate(self.a) if v},
                "c": list(self.c)}


class FiniteHallQuotient:
    """The finite group on representatives [0, I) described in the module docstring"""

    def __init__(self, index_modulus: int, exponent_modulus: int,
                 model: Optional[CentralModel] = None, check: bool = True):
        if index_modulus < 1 or exponent_modulus < 1:
            raise PreconditionError("moduli must be positive")
        self.I = index_modulus
        self.E = exponent_modulus
        self.model = model or TrivialCentralModel()
        for m in self.model.moduli:
            if self.E % m:
                raise PreconditionError(f"exponent modulus {self.E} does not kill Z/{m}")
        if check:
            self.model.check_period(self.I)
        self._C = [self.model.coordinates(x) for x in range(self.I)]

    @property
    def order(self) -> int:
        return self.I * self.E ** self.I * self.model.order

    def describe(self) -> str:
        return f"FiniteHallQuotient(I={self.I}, E={self.E}, center {self.model.describe()})"

    # ---- constructors ----

    def identity(self) -> FiniteHallElement:
        return FiniteHallElement(0, tuple([0] * self.I), self.model.zero())

    def t_elem(self, k: int = 1) -> FiniteHallElement:
        return FiniteHallElement(k % self.I, tuple([0] * self.I), self.model.zero())

    def a_elem(self, index: int, exponent: int = 1) -> FiniteHallElement:
        a = [0] * self.I
        a[index % self.I] = exponent % self.E
        return FiniteHallElement(0, tuple(a), self.model.zero())

    def c_elem(self, index: int, exponent: int = 1) -> FiniteHallElement:
        coords = self.model.add(self.model.zero(), self.model.coordinates(index), exponent)
        return FiniteHallElement(0, tuple([0] * self.I), coords)

    def central(self, coords: Sequence[int]) -> FiniteHallElement:
        return FiniteHallElement(0, tuple([0] * self.I),
                                 tuple(int(x) % m for x, m in zip(coords, self.model.moduli)))

    # ---- law ----

    def _shift(self, a: Tuple[int, ...], k: int) -> List[int]:
        return [a[(i - k) % self.I] for i in range(self.I)]

    def _pairing(self, pairs_left: Sequence[Tuple[int, int]],
                 pairs_right: Sequence[Tuple[int, int]], coords: Coords) -> Coords:
        for i, x in pairs_left:
            for j, y in pairs_right:
                if i > j:
                    coords = self.model.add(coords, self._C[i - j], x * y)
        return coords

    def multiply(self, g: FiniteHallElement, h: FiniteHallElement) -> FiniteHallElement:
        shifted = self._shift(h.a, g.t)
        coords = self.model.add(g.c, h.c)

        # h_k: wrapped letters (representatives < k) move in front of the rest
        high = [(m, shifted[m]) for m in range(g.t, self.I) if shifted[m]]
        low = [(l, shifted[l]) for l in range(g.t) if shifted[l]]
        coords = self._pairing(high, low, coords)

        left = [(i, x) for i, x in enumerate(g.a) if x]
        right = [(j, y) for j, y in enumerate(shifted) if y]
        coords = self._pairing(left, right, coords)

        a = tuple((x + y) % self.E for x, y in zip(g.a, shifted))
        return FiniteHallElement((g.t + h.t) % self.I, a, coords)

    def inverse(self, g: FiniteHallElement) -> FiniteHallElement:
        w = tuple((-x) % self.E for x in self._shift(g.a, -g.t))
        partial = self.multiply(g, FiniteHallElement((-g.t) % self.I, w, self.model.zero()))
        return FiniteHallElement((-g.t) % self.I, w, self.model.add(self.model.zero(), partial.c, -1))

    def commutator(self, g: FiniteHallElement, h: FiniteHallElement) -> FiniteHallElement:
        return self.multiply(self.multiply(g, h), self.multiply(self.inverse(g), self.inverse(h)))

    def conjugate(self, x: FiniteHallElement, g: FiniteHallElement) -> FiniteHallElement:
        return self.multiply(self.multiply(x, g), self.inverse(x))

    def power(self, g: FiniteHallElement, n: int) -> FiniteHallElement:
        if n < 0:
            return self.power(self.inverse(g), -n)
        result = self.identity()
        base = g
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def central_order(self, g: FiniteHallElement) -> int:
        """Order of a central element, read off its coordinates"""
        if g.t or any(g.a):
            raise PreconditionError("element is not central")
        return math.lcm(1, *(m // math.gcd(x, m) for x, m in zip(g.c, self.model.moduli)))

    # ---- quotient map ----

    def phi(self, g: GroupElement) -> FiniteHallElement:
        """Image of a normal form: a-letters in ascending order, then center, then t"""
        result = self.identity()
        for i, v in g.a_part:
            result = self.multiply(result, self.a_elem(i, v))
        coords = self.model.zero()
        for i, v in g.c_part:
            coords = self.model.add(coords, self.model.coordinates(i), v)
        result = self.multiply(result, FiniteHallElement(0, tuple([0] * self.I), coords))
        return self.multiply(result, self.t_elem(g.t_exp))

    def elements(self) -> Iterator[FiniteHallElement]:
        """Every element; only for tiny quotients"""
        if self.order > 200000:
            raise PreconditionError(f"refusing to enumerate {self.order} elements")
        for t in range(self.I):
            for a in np.ndindex(*([self.E] * self.I)):
                for c in np.ndindex(*self.model.moduli) if self.model.moduli else [()]:
                    yield FiniteHallElement(t, tuple(int(x) for x in a), tuple(int(x) for x in c))


def gpq_quotient(p: int, Q: int, params: SequenceParams) -> FiniteHallQuotient:
    """G_{p,Q}: t^{2Q} = a_i^p = c_i^p = 1 on top of the relations of params"""
    return FiniteHallQuotient(2 * Q, p, CpqCentralModel(p, Q, params))


def cyclic_quotient(d: Callable[[int], int], q: int, I: int) -> FiniteHallQuotient:
    """Center Z/q via d; d mod q must be periodic with period dividing I"""
    return FiniteHallQuotient(I, q, CyclicCentralModel(d, q))


# ==================== LAMPLIGHTER QUOTIENTS ====================

@dataclass(frozen=True)
class LamplighterQuotient:
    """Z/p x| Z/r with t acting as multiplication by x (x^r = 1 mod p)"""
    p: int
    x: int
    r: int

    def __post_init__(self):
        if pow(self.x, self.r, self.p) != 1 % self.p:
            raise PreconditionError(f"{self.x}^{self.r} is not 1 mod {self.p}")

    @property
    def order(self) -> int:
        return self.p * self.r

    def multiply(self, g: Tuple[int, int], h: Tuple[int, int]) -> Tuple[int, int]:
        A, m = g
        B, n = h
        return ((A + pow(self.x, m, self.p) * B) % self.p, (m + n) % self.r)

    def image(self, g: GroupElement) -> Tuple[int, int]:
        """(sum v_i x^i mod p, k mod r); the center is already dead here"""
        A = 0
        for i, v in g.a_part:
            A = (A + v * pow(self.x, i, self.p)) % self.p
        return A, g.t_exp % self.r
