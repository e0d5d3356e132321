#!/usr/bin/env python3
"""
Central quotient specifications and the sequence parameters behind G_Int.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import primorial

from .errors import PreconditionError

logger = logging.getLogger(__name__)

# ==================== SEQUENCE PARAMETERS ====================

@dataclass(frozen=True)
class SequenceParams:
    """Sequences (d_i), (q_i), (P_i) driving the relations c_{d_i}^{q_i} = 1.

    Only the materialized prefix takes part in group arithmetic; symbolic
    tails (LogScale descriptors) are carried for reporting.
    """
    d_seq: Tuple[int, ...]
    q_seq: Tuple[int, ...]
    P_seq: Tuple[int, ...] = ()
    symbolic_d: Tuple[object, ...] = field(default=(), compare=False)
    symbolic_q: Tuple[object, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "d_seq", tuple(int(d) for d in self.d_seq))
        object.__setattr__(self, "q_seq", tuple(int(q) for q in self.q_seq))
        object.__setattr__(self, "P_seq", tuple(int(p) for p in self.P_seq))

        if len(self.d_seq) != len(self.q_seq):
            raise PreconditionError(
                f"d_seq and q_seq differ in length ({len(self.d_seq)} vs {len(self.q_seq)})")
        if any(d <= 0 for d in self.d_seq):
            raise PreconditionError("d_seq must be positive")
        if any(b <= a for a, b in zip(self.d_seq, self.d_seq[1:])):
            raise PreconditionError("d_seq must be strictly increasing")
        if any(q <= 1 for q in self.q_seq):
            raise PreconditionError("q_seq entries must exceed 1")

    def relations(self) -> Dict[int, int]:
        """Map central index d_j to its relation order q_j"""
        return dict(zip(self.d_seq, self.q_seq))

    def to_config(self) -> dict:
        return {"d_seq": list(self.d_seq), "q_seq": list(self.q_seq), "P_seq": list(self.P_seq)}

    @classmethod
    def from_config(cls, config: dict) -> "SequenceParams":
        return cls(tuple(config["d_seq"]), tuple(config["q_seq"]), tuple(config.get("P_seq", ())))

    @classmethod
    def random_toy(cls, rng: np.random.Generator, length: int = 3,
                   small_primes: Sequence[int] = (3, 5, 7, 11, 13),
                   large_primes: Sequence[int] = ()) -> "SequenceParams":
        """Toy parameters with the 2-adic shape of the real sequences.

        d_0 = 2*3 and every step multiplies by a primorial, so d_j carries
        exactly j+1 factors of 2. Each q_j is an odd squarefree product of
        small primes, times one of ``large_primes`` when given.
        """
        d_values = [6]
        for _ in range(length - 1):
            bound = int(rng.choice([2, 3, 5]))
            d_values.append(d_values[-1] * int(primorial(bound, nth=False)))

        q_values = []
        for _ in range(length):
            size = int(rng.integers(1, 3))
            chosen = rng.choice(np.array(small_primes), size=size, replace=False)
            q = int(np.prod([int(p) for p in chosen]))
            if large_primes:
                q *= int(rng.choice(np.array(large_primes)))
            q_values.append(q)
        return cls(tuple(d_values), tuple(q_values))


# ==================== QUOTIENT SPECS ====================

@dataclass(frozen=True)
class FreeCenter:
    """G_0 itself: the center is free abelian on c_1, c_2, ..."""
    name = "free"

    def describe(self) -> str:
        return "G_0"


@dataclass(frozen=True)
class CyclicCenter:
    """G_d: c_i = c_1^{d(i)}, optionally with c_1^modulus = 1.

    ``period`` records a known period of d mod ``modulus`` (property (P)).
    """
    d: Callable[[int], int]
    modulus: Optional[int] = None
    period: Optional[int] = None
    name = "cyclic"

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 1:
            raise PreconditionError("modulus must be positive")
        # sampled sanity check of the d-function contract
        if self.d(1) != 1 or self.d(0) != 0:
            raise PreconditionError("d must satisfy d(0) = 0 and d(1) = 1")
        for i in (2, 3, 4, 9, 10):
            if self.d(-i) != -self.d(i):
                raise PreconditionError(f"d is not antisymmetric at {i}")

    def describe(self) -> str:
        label = getattr(self.d, "label", getattr(self.d, "__name__", "d"))
        suffix = f"/<c_1^{self.modulus}>" if self.modulus else ""
        return f"G_d[{label}]{suffix}"


@dataclass(frozen=True)
class RelationCenter:
    """G_Int and toy variants: c_{d_j}^{q_j} = 1"""
    params: SequenceParams
    name = "relation"

    def describe(self) -> str:
        return f"G_Int[d={list(self.params.d_seq)}, q={list(self.params.q_seq)}]"


@dataclass(frozen=True)
class TrivialCenter:
    """The lamplighter-type quotient Z wr Z"""
    name = "trivial"

    def describe(self) -> str:
        return "Z wr Z"


QuotientSpec = Union[FreeCenter, CyclicCenter, RelationCenter, TrivialCenter]

FREE = FreeCenter()
TRIVIAL = TrivialCenter()
