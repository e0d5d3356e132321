#!/usr/bin/env python3
"""
Centralizers in the wreath products (Z/m) wr (Z/I), m = 0 standing for Z.

x = (h', n') commutes with g = (h, n) exactly when

    (S_n - 1) h' = (S_{n'} - 1) h,        (S_n h')_i = h'_{i-n}

so the centralizer is generated by the coset indicators P_n of <n> in
Z/I (the kernel part) together with one element g' = (h', n') over the
least shift n' for which the equation is solvable.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Set, Tuple

import numpy as np

from core.errors import PreconditionError

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 100000


@dataclass(frozen=True)
class WreathElement:
    """(h, n) with h indexed by Z/I over Z/m and n in Z/I"""
    h: Tuple[int, ...]
    n: int
    m: int = 0

    @property
    def I(self) -> int:
        return len(self.h)

    @classmethod
    def make(cls, h: Iterable[int], n: int, m: int = 0) -> "WreathElement":
        h = tuple(int(x) % m if m else int(x) for x in h)
        if not h:
            raise PreconditionError("the index group Z/I needs I >= 1")
        return cls(h, int(n) % len(h), m)

    def _reduce(self, values: Iterable[int]) -> Tuple[int, ...]:
        return tuple(int(x) % self.m if self.m else int(x) for x in values)

    def shifted_base(self, h: Tuple[int, ...], k: int) -> Tuple[int, ...]:
        return tuple(h[(i - k) % self.I] for i in range(self.I))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if (other.I, other.m) != (self.I, self.m):
            raise PreconditionError("wreath elements from different groups")
        shifted = self.shifted_base(other.h, self.n)
        return WreathElement(self._reduce(x + y for x, y in zip(self.h, shifted)),
                             (self.n + other.n) % self.I, self.m)

    def inverse(self) -> "WreathElement":
        back = self.shifted_base(self.h, -self.n)
        return WreathElement(self._reduce(-x for x in back), (-self.n) % self.I, self.m)

    def commutes_with(self, other: "WreathElement") -> bool:
        return self * other == other * self

    def to_record(self) -> dict:
        return {"h": list(self.h), "n": self.n, "m": self.m}


@dataclass
class CentralizerDescription:
    """Generators P_n and g' of Z(g)"""
    element: WreathElement
    kernel_generators: List[WreathElement]
    top_generator: WreathElement

    @property
    def generators(self) -> List[WreathElement]:
        return self.kernel_generators + [self.top_generator]

    def to_record(self) -> dict:
        return {"element": self.element.to_record(),
                "P_n": [g.to_record() for g in self.kernel_generators],
                "g_prime": self.top_generator.to_record()}


def _cycles(n: int, I: int) -> List[List[int]]:
    """Cosets of <n> in Z/I, each listed along i, i+n, i+2n, ..."""
    step = math.gcd(n, I)
    return [[(start + k * n) % I for k in range(I // step)] for start in range(step)]


def solve_shift_equation(R: Tuple[int, ...], n: int, m: int = 0) -> Optional[Tuple[int, ...]]:
    """h' with h'_{i-n} - h'_i = R_i on Z/I, or None when some cycle sum is nonzero"""
    I = len(R)
    h = [0] * I
    for cycle in _cycles(n, I):
        total = sum(R[i] for i in cycle)
        if (total % m if m else total) != 0:
            return None
        for previous, current in zip(cycle, cycle[1:]):
            h[current] = h[previous] - R[current]
    return tuple(x % m if m else x for x in h)


def centralizer_generators(h: Iterable[int], n: int, I: Optional[int] = None,
                           m: int = 0) -> CentralizerDescription:
    h = tuple(h)
    I = I or len(h)
    if len(h) != I:
        raise PreconditionError(f"base vector has length {len(h)}, expected {I}")
    g = WreathElement.make(h, n, m)

    kernel = []
    for cycle in _cycles(g.n, I):
        indicator = [0] * I
        for i in cycle:
            indicator[i] = 1
        kernel.append(WreathElement.make(indicator, 0, m))

    top = WreathElement.make([0] * I, 0, m)
    for shift in range(1, I + 1):
        if I % shift:
            continue
        moved = g.shifted_base(g.h, shift)
        R = g._reduce(x - y for x, y in zip(moved, g.h))
        solution = solve_shift_equation(R, g.n, m)
        if solution is not None:
            top = WreathElement.make(solution, shift, m)
            break

    description = CentralizerDescription(g, kernel, top)
    for generator in description.generators:
        if not generator.commutes_with(g):
            raise AssertionError(f"{generator.to_record()} does not commute with {g.to_record()}")
    logger.debug(f"centralizer of {g.to_record()}: {len(kernel)} kernel generators, "
                 f"g' shift {top.n}")
    return description


# ==================== BRUTE FORCE ====================

def all_elements(I: int, m: int) -> Iterable[WreathElement]:
    if m == 0:
        raise PreconditionError("cannot enumerate an infinite base")
    if I * m ** I > BRUTE_FORCE_LIMIT:
        raise PreconditionError(f"group of order {I * m ** I} is too large to enumerate")
    for h in np.ndindex(*([m] * I)):
        for n in range(I):
            yield WreathElement(tuple(int(x) for x in h), n, m)


def brute_force_centralizer(g: WreathElement) -> Set[WreathElement]:
    return {x for x in all_elements(g.I, g.m) if x.commutes_with(g)}


def subgroup_closure(generators: Iterable[WreathElement]) -> Set[WreathElement]:
    """Subgroup generated by a finite set in a finite wreath product"""
    generators = list(generators)
    if not generators:
        raise PreconditionError("need at least one generator")
    identity = WreathElement(tuple([0] * generators[0].I), 0, generators[0].m)
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = x * s
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def certify_centralizer(description: CentralizerDescription) -> bool:
    """Exhaustive check that the generators produce exactly Z(g)"""
    g = description.element
    return subgroup_closure(description.generators) == brute_force_centralizer(g)
