#!/usr/bin/env python3
"""
Computable d-functions for G_d and their periodicity.

Two families are provided, both determined by the 3-adic valuation of i:

* hall_d:       d(i) = +-n(j) for i = +-3^j mod 3^{j+1}, with n built from a
                pluggable prime function P through P' and n_0.
* fastgrowth_d: d(i) = +-lcm{1..f^-1(j)} for the same classes.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from sympy import ilcm, prime, primepi

from .errors import NOT_FOUND, PreconditionError, SearchBoundExceeded, _NotFound
from .settings import get_settings

logger = logging.getLogger(__name__)

# ==================== HELPERS ====================

def nu(p: int, i: int) -> int:
    """p-adic valuation of a nonzero integer"""
    if i == 0:
        raise PreconditionError("valuation of 0 is undefined")
    i = abs(i)
    count = 0
    while i % p == 0:
        i //= p
        count += 1
    return count


def three_adic_class(i: int) -> Tuple[int, int]:
    """(j, sign) with i = sign * 3^j mod 3^{j+1}"""
    j = nu(3, i)
    unit = (i // 3 ** j) % 3
    return j, (1 if unit == 1 else -1)


def nth_prime(i: int) -> int:
    """p_i with p_0 = 2"""
    return int(prime(i + 1))


@lru_cache(maxsize=None)
def n0(i: int) -> int:
    """n_0(i) = prod_{j<i} p_j"""
    if i <= 0:
        return 1
    return n0(i - 1) * nth_prime(i - 1)


# ==================== PRIME FUNCTIONS ====================

class PrimeFunction:
    """A total prime-valued function on the naturals.

    ``settled_after`` is an index beyond which the function provably never
    produces a value P' can use again (None when unknown).
    """
    label = "prime_function"
    settled_after: Optional[int] = None

    def __call__(self, i: int) -> int:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ScriptedPrimeFunction(PrimeFunction):
    """Values from a finite script, a harmless default elsewhere.

    Off-script indices return p_{i + offset}, which never divides n_0(i) and,
    with the offset past every scripted prime, never repeats a scripted value.
    The empty script is the trivial stand-in (P' identically 1).
    """
    script: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, p in self.script:
            if i < 0 or int(primepi(p)) == int(primepi(p - 1)):
                raise PreconditionError(f"script entry ({i}, {p}) is not an index/prime pair")

    @classmethod
    def from_mapping(cls, script: Mapping[int, int]) -> "ScriptedPrimeFunction":
        return cls(tuple(sorted((int(i), int(p)) for i, p in script.items())))

    @property
    def offset(self) -> int:
        if not self.script:
            return 0
        return 1 + max(int(primepi(p)) for _, p in self.script)

    @property
    def label(self) -> str:
        return f"scripted{dict(self.script)}" if self.script else "trivial"

    @property
    def settled_after(self) -> int:
        return max((i for i, _ in self.script), default=0)

    def __call__(self, i: int) -> int:
        for index, p in self.script:
            if index == i:
                return p
        return nth_prime(i + self.offset)

    def to_config(self) -> dict:
        return {"name": "scripted", "script": {str(i): p for i, p in self.script}}


@dataclass(frozen=True)
class ShiftedPrimeFunction(PrimeFunction):
    """P(i) = p_{i - shift} (clamped at p_0): each prime reappears as a divisor of n_0"""
    shift: int = 1

    @property
    def label(self) -> str:
        return f"kth_prime(shift={self.shift})"

    def __call__(self, i: int) -> int:
        return nth_prime(max(i - self.shift, 0))

    def to_config(self) -> dict:
        return {"name": "kth_prime", "shift": self.shift}


TRIVIAL_PRIME_FUNCTION = ScriptedPrimeFunction()


def prime_function_from_config(config: Optional[dict]) -> PrimeFunction:
    if not config or config.get("name", "trivial") == "trivial":
        return TRIVIAL_PRIME_FUNCTION
    if config["name"] == "scripted":
        return ScriptedPrimeFunction.from_mapping({int(k): int(v) for k, v in config["script"].items()})
    if config["name"] == "kth_prime":
        return ShiftedPrimeFunction(int(config.get("shift", 1)))
    raise PreconditionError(f"unknown prime function {config['name']!r}")


# ==================== HALL d ====================

@dataclass(frozen=True)
class HallDParams:
    P: PrimeFunction = TRIVIAL_PRIME_FUNCTION
    exponent_convention: str = "j+1"

    def __post_init__(self):
        if self.exponent_convention not in ("j", "j+1"):
            raise PreconditionError("exponent_convention must be 'j' or 'j+1'")


@lru_cache(maxsize=None)
def _p_prime_prefix(P: PrimeFunction, upto: int) -> Tuple[int, ...]:
    values = []
    seen = set()
    for i in range(upto + 1):
        p = P(i)
        if n0(i) % p != 0 or p in seen:
            values.append(1)
        else:
            values.append(p)
        seen.add(p)
    return tuple(values)


def p_prime(P: PrimeFunction, i: int) -> int:
    """P'(i): P(i) when it divides n_0(i) and no earlier P(j) equals it, else 1"""
    return _p_prime_prefix(P, i)[i]


@lru_cache(maxsize=None)
def hall_n(params: HallDParams, j: int) -> int:
    base = n0(j) // p_prime(params.P, j)
    exponent = j + 1 if params.exponent_convention == "j+1" else j
    return base ** exponent


def hall_d(params: HallDParams, i: int) -> int:
    if i == 0:
        return 0
    j, sign = three_adic_class(i)
    return sign * hall_n(params, j)


# ==================== FAST GROWTH d ====================

GROWTH_FUNCTIONS: Dict[str, Callable[[int], int]] = {
    "identity": lambda m: m,
    "double": lambda m: 2 * m,
    "square": lambda m: m * m,
    "exp_floor": lambda m: int(mpmath.floor(mpmath.exp(m))),
}


def semi_inverse(f: Callable[[int], int], n: int, search_bound: int = 10 ** 6) -> int:
    """Least m >= 0 with f(m) >= n, by galloping then bisection"""
    if f(0) >= n:
        return 0
    hi = 1
    while f(hi) < n:
        hi *= 2
        if hi > search_bound:
            raise SearchBoundExceeded(f"f stays below {n} up to {search_bound}")
    lo = hi // 2
    # invariant: f(lo) < n <= f(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) >= n:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class FastGrowthDParams:
    f_name: str = "identity"

    def __post_init__(self):
        if self.f_name not in GROWTH_FUNCTIONS:
            raise PreconditionError(f"unknown growth function {self.f_name!r}")

    @property
    def f(self) -> Callable[[int], int]:
        return GROWTH_FUNCTIONS[self.f_name]


@lru_cache(maxsize=None)
def _fastgrowth_value(params: FastGrowthDParams, j: int) -> int:
    bound = semi_inverse(params.f, j)
    return int(ilcm(*range(1, bound + 1))) if bound >= 2 else 1


def fastgrowth_d(params: FastGrowthDParams, i: int) -> int:
    if i == 0:
        return 0
    j, sign = three_adic_class(i)
    return sign * _fastgrowth_value(params, j)


# ==================== d HANDLES ====================

@dataclass(frozen=True)
class HallD:
    """Callable handle for hall_d, usable as CyclicCenter.d"""
    params: HallDParams = field(default_factory=HallDParams)

    @property
    def label(self) -> str:
        return f"hall({self.params.P.label}, n^{self.params.exponent_convention})"

    def __call__(self, i: int) -> int:
        return hall_d(self.params, i)

    def to_config(self) -> dict:
        return {"name": "hall", "prime_function": self.params.P.to_config(),
                "exponent_convention": self.params.exponent_convention}


@dataclass(frozen=True)
class FastGrowthD:
    params: FastGrowthDParams = field(default_factory=FastGrowthDParams)

    @property
    def label(self) -> str:
        return f"fastgrowth({self.params.f_name})"

    def __call__(self, i: int) -> int:
        return fastgrowth_d(self.params, i)

    def to_config(self) -> dict:
        return {"name": "fastgrowth", "f": self.params.f_name}


@dataclass(frozen=True)
class IdentityD:
    """d(i) = i, the Heisenberg-like quotient; periodic mod q with period q"""
    label = "identity"

    def __call__(self, i: int) -> int:
        return i

    def to_config(self) -> dict:
        return {"name": "identity"}


@dataclass(frozen=True)
class SquareIndicatorD:
    """d(i) = sign(i) when |i| is a perfect square, else 0; periodic mod no q"""
    label = "square_indicator"

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        root = math.isqrt(abs(i))
        return (1 if i > 0 else -1) if root * root == abs(i) else 0

    def to_config(self) -> dict:
        return {"name": "square_indicator"}


def d_function_from_config(config: dict):
    name = config.get("name")
    if name == "hall":
        P = prime_function_from_config(config.get("prime_function"))
        return HallD(HallDParams(P, config.get("exponent_convention", "j+1")))
    if name == "fastgrowth":
        return FastGrowthD(FastGrowthDParams(config.get("f", "identity")))
    if name == "identity":
        return IdentityD()
    if name == "square_indicator":
        return SquareIndicatorD()
    raise PreconditionError(f"unknown d-function {name!r}")


# ==================== PERIODICITY ====================

def residues(d: Callable[[int], int], q: int, length: int) -> np.ndarray:
    """d(i) mod q for i in [0, length)"""
    return np.fromiter((d(i) % q for i in range(length)), dtype=np.int64, count=length)


def period_mod(d: Callable[[int], int], q: int, search_bound: Optional[int] = None,
               window: Optional[int] = None) -> Union[int, _NotFound]:
    """Least T <= search_bound with d(i+T) = d(i) mod q on a window of length window*T.

    The window is a certificate, not a proof of global periodicity.
    """
    if q < 2:
        raise PreconditionError("q must be at least 2")
    settings = get_settings()
    bound = settings.period_search_bound if search_bound is None else search_bound
    multiplier = settings.period_window if window is None else window
    if multiplier < 3:
        logger.warning(f"period window multiplier {multiplier} is below 3")

    values = residues(d, q, (multiplier + 1) * bound)
    for T in range(1, bound + 1):
        # cheap prefilter on a short prefix
        head = min(T, 64)
        if not np.array_equal(values[T:T + head], values[:head]):
            continue
        span = multiplier * T
        if np.array_equal(values[T:T + span], values[:span]):
            logger.debug(f"period {T} certified mod {q} on window {span}")
            return T
    logger.info(f"no period <= {bound} mod {q}")
    return NOT_FOUND


@dataclass
class SeparabilityReport:
    """Periodicity evidence over a tested range of moduli"""
    periods: Dict[int, Union[int, _NotFound]]
    search_bound: int

    @property
    def all_periodic(self) -> bool:
        return all(p is not NOT_FOUND for p in self.periods.values())

    @property
    def periodic_moduli(self) -> List[int]:
        return [q for q, p in self.periods.items() if p is not NOT_FOUND]

    def verdict(self) -> str:
        if self.all_periodic:
            return "consistent with conjugacy separable (all tested q periodic)"
        if self.periodic_moduli:
            return ("consistent with residually finite, not conjugacy separable "
                    f"(non-periodic for q in {[q for q in self.periods if q not in self.periodic_moduli]})")
        return "no tested modulus periodic: no evidence of residual finiteness"

    def generate_report(self) -> str:
        lines = ["=" * 50, "SEPARABILITY CRITERIA", "=" * 50]
        for q, period in self.periods.items():
            shown = period if period is not NOT_FOUND else f"not found (<= {self.search_bound})"
            lines.append(f"  q = {q:>4}: period {shown}")
        lines.append("")
        lines.append(f"Verdict: {self.verdict()}")
        lines.append("(windowed certificates over the tested range, not a theorem)")
        return "\n".join(lines)


def check_separability_criteria(d: Callable[[int], int], q_list: Sequence[int],
                                bound: int) -> SeparabilityReport:
    periods = {}
    for q in q_list:
        periods[q] = period_mod(d, q, bound)
        logger.info(f"q={q}: period {periods[q]}")
    return SeparabilityReport(periods, bound)
