#!/usr/bin/env python3
"""
Normal-form arithmetic in Hall's group G_0 and its central quotients.

G_0 = <t, a_i, c_i | t a_i t^-1 = a_{i+1}, [a_i, a_j] = c_{i-j}, c_i central>.
An element is stored as (v, c, k) meaning  prod_{i ascending} a_i^{v_i} * c * t^k.
With this order the product is

    (v, c, k)(w, c', k') = (v + shift_k w, c + c' + beta(v, shift_k w), k + k')

where beta(v, w) = sum_{i > j} v_i w_j at central index i - j.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .errors import SpecMismatchError
from .specs import (CyclicCenter, FreeCenter, QuotientSpec, RelationCenter,
                    TrivialCenter, TRIVIAL)
from .words import Token, Word, parse_word

logger = logging.getLogger(__name__)

# ==================== VECTORS ====================

def _normalized(entries: Mapping[int, int]) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((int(i), int(v)) for i, v in entries.items() if v != 0))


@dataclass(frozen=True)
class AVector:
    """Finitely supported exponent vector on the a_i, no zero entries"""
    entries: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, entries: Mapping[int, int]) -> "AVector":
        return cls(_normalized(entries))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def get(self, index: int) -> int:
        for i, v in self.entries:
            if i == index:
                return v
        return 0

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def shifted(self, k: int) -> "AVector":
        if k == 0:
            return self
        return AVector(tuple((i + k, v) for i, v in self.entries))

    def radius(self) -> int:
        return max((abs(i) for i, _ in self.entries), default=0)

    def __bool__(self):
        return bool(self.entries)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.entries)


@dataclass(frozen=True)
class CentralVector:
    """Finitely supported exponents on c_1, c_2, ...; index 0 and negatives never stored"""
    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, _ in self.entries:
            if i <= 0:
                raise ValueError(f"central index {i} is not normalized")

    @classmethod
    def from_raw(cls, entries: Mapping[int, int]) -> "CentralVector":
        """Normalize arbitrary indices: c_0 -> 1, c_{-i} -> c_i^{-1}"""
        return cls(_normalized(normalize_central_indices(entries)))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def get(self, index: int) -> int:
        for i, v in self.entries:
            if i == index:
                return v
        return 0

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def mass(self) -> int:
        return sum(abs(v) for _, v in self.entries)

    def __bool__(self):
        return bool(self.entries)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.entries)


def normalize_central_indices(entries: Mapping[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, v in entries.items():
        if i == 0 or v == 0:
            continue
        if i < 0:
            i, v = -i, -v
        out[i] = out.get(i, 0) + v
    return {i: v for i, v in out.items() if v != 0}


def beta(v: Iterable[Tuple[int, int]], w: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    """Collection correction: sum over i > j of v_i w_j at central index i - j"""
    out: Dict[int, int] = {}
    w_items = list(w)
    for i, vi in v:
        for j, wj in w_items:
            if i > j:
                out[i - j] = out.get(i - j, 0) + vi * wj
    return out


# ==================== CENTRAL REDUCTION ====================

def reduce_central(c: CentralVector, spec: QuotientSpec) -> CentralVector:
    """Bring central data into the normal form of ``spec``.

    Under CyclicCenter the whole center is <c_1>, so the result holds the
    single value sum_i v_i d(i) at index 1.
    """
    if isinstance(spec, FreeCenter):
        return c
    if isinstance(spec, TrivialCenter):
        return CentralVector()
    if isinstance(spec, CyclicCenter):
        value = sum(v * spec.d(i) for i, v in c)
        if spec.modulus is not None:
            value %= spec.modulus
        return CentralVector(((1, value),)) if value else CentralVector()
    if isinstance(spec, RelationCenter):
        relations = spec.params.relations()
        reduced = {}
        for i, v in c:
            if i in relations:
                v %= relations[i]
            reduced[i] = v
        return CentralVector(_normalized(reduced))
    raise TypeError(f"unknown quotient spec {spec!r}")


def cyclic_value(c: CentralVector) -> int:
    """Exponent of c_1 for central data already reduced under a CyclicCenter"""
    return c.get(1)


# ==================== GROUP ELEMENTS ====================

@dataclass(frozen=True)
class GroupElement:
    """Normal form (t_exp, a_part, c_part) of an element under ``spec``"""
    t_exp: int
    a_part: AVector
    c_part: CentralVector
    spec: QuotientSpec

    @classmethod
    def build(cls, spec: QuotientSpec, t_exp: int = 0,
              a_part: Mapping[int, int] = None, c_part: Mapping[int, int] = None) -> "GroupElement":
        """Construct from plain dicts; central indices are normalized and reduced"""
        central = CentralVector.from_raw(c_part or {})
        return cls(int(t_exp), AVector.from_dict(a_part or {}), reduce_central(central, spec), spec)

    @property
    def is_identity(self) -> bool:
        return self.t_exp == 0 and not self.a_part and not self.c_part

    @property
    def is_central(self) -> bool:
        return self.t_exp == 0 and not self.a_part

    def canonical_key(self) -> tuple:
        return (self.t_exp, self.a_part.entries, self.c_part.entries)

    def render(self) -> str:
        """Storage-order rendering; parses back to the same element"""
        parts = []
        for i, v in self.a_part:
            parts.append(Token("a", i, v).render())
        for i, v in self.c_part:
            parts.append(Token("c", i, v).render())
        if self.t_exp:
            parts.append(Token("t", None, self.t_exp).render())
        return " ".join(parts) or "1"

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __str__(self):
        return self.render()


def identity(spec: QuotientSpec) -> GroupElement:
    return GroupElement(0, AVector(), CentralVector(), spec)


def t_power(spec: QuotientSpec, k: int = 1) -> GroupElement:
    return GroupElement(k, AVector(), CentralVector(), spec)


def a_power(spec: QuotientSpec, index: int = 0, exponent: int = 1) -> GroupElement:
    return GroupElement(0, AVector.from_dict({index: exponent}), CentralVector(), spec)


def c_power(spec: QuotientSpec, index: int = 1, exponent: int = 1) -> GroupElement:
    return GroupElement.build(spec, c_part={index: exponent})


def _check_same_spec(g: GroupElement, h: GroupElement):
    if g.spec != h.spec:
        raise SpecMismatchError(f"{g.spec.describe()} vs {h.spec.describe()}")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_same_spec(g, h)
    w = h.a_part.shifted(g.t_exp)

    a_part = g.a_part.as_dict()
    for i, e in w:
        a_part[i] = a_part.get(i, 0) + e

    central = g.c_part.as_dict()
    for i, e in h.c_part:
        central[i] = central.get(i, 0) + e
    for i, e in beta(g.a_part, w).items():
        central[i] = central.get(i, 0) + e

    c_part = reduce_central(CentralVector.from_raw(central), g.spec)
    return GroupElement(g.t_exp + h.t_exp, AVector.from_dict(a_part), c_part, g.spec)


def inverse(g: GroupElement) -> GroupElement:
    """(v, c, k)^-1 = (-shift_{-k} v, -c + beta(v, v), -k)"""
    central = {i: -e for i, e in g.c_part}
    for i, e in beta(g.a_part, g.a_part).items():
        central[i] = central.get(i, 0) + e
    a_part = {i - g.t_exp: -e for i, e in g.a_part}
    c_part = reduce_central(CentralVector.from_raw(central), g.spec)
    return GroupElement(-g.t_exp, AVector.from_dict(a_part), c_part, g.spec)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g h g^-1 h^-1"""
    _check_same_spec(g, h)
    return multiply(multiply(g, h), multiply(inverse(g), inverse(h)))


def conjugate(x: GroupElement, g: GroupElement) -> GroupElement:
    """x g x^-1"""
    return multiply(multiply(x, g), inverse(x))


def power(g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        return power(inverse(g), -n)
    result = identity(g.spec)
    base = g
    while n:
        if n & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        n >>= 1
    return result


def token_element(token: Token, spec: QuotientSpec) -> GroupElement:
    if token.generator == "t":
        return t_power(spec, token.exponent)
    if token.generator == "a":
        return a_power(spec, token.index, token.exponent)
    return c_power(spec, token.index, token.exponent)


def evaluate(word: Word, spec: QuotientSpec) -> GroupElement:
    """Left-to-right product of the word's generator powers"""
    result = identity(spec)
    for token in word.tokens:
        result = multiply(result, token_element(token, spec))
    return result


def evaluate_text(text: str, spec: QuotientSpec) -> GroupElement:
    return evaluate(parse_word(text), spec)


def solve_word_problem(word: Word, spec: QuotientSpec) -> Tuple[bool, GroupElement]:
    """Decide whether ``word`` is trivial; returns the verdict and the normal form"""
    element = evaluate(word, spec)
    logger.debug(f"word {word.render()} reduces to {element.render()}")
    return element.is_identity, element


def project_to_lamplighter(g: GroupElement) -> GroupElement:
    """Kill the whole center: the quotient map onto Z wr Z"""
    return GroupElement(g.t_exp, g.a_part, CentralVector(), TRIVIAL)


def change_spec(g: GroupElement, spec: QuotientSpec) -> GroupElement:
    """Push a G_0 element (or any finer quotient's) into ``spec``"""
    return GroupElement(g.t_exp, g.a_part, reduce_central(g.c_part, spec), spec)
