#!/usr/bin/env python3
"""
Breadth-first search on normal forms over the generators {t, a_0}.
"""

import logging
from typing import Dict, List, Optional, Union

from .errors import NOT_FOUND, PreconditionError, _NotFound
from .hall_group import (GroupElement, a_power, identity, multiply, t_power)
from .settings import get_settings
from .specs import QuotientSpec

logger = logging.getLogger(__name__)


def generators(spec: QuotientSpec) -> List[GroupElement]:
    """S u S^-1 for S = {t, a_0}, in a fixed order"""
    return [t_power(spec, 1), t_power(spec, -1), a_power(spec, 0, 1), a_power(spec, 0, -1)]


def _check_radius(n: int, cap: Optional[int]) -> int:
    limit = get_settings().ball_cap if cap is None else cap
    if n > limit:
        raise PreconditionError(f"radius {n} exceeds ball cap {limit}")
    if n < 0:
        raise PreconditionError("radius must be non-negative")
    return limit


def enumerate_ball(spec: QuotientSpec, n: int, cap: Optional[int] = None) -> Dict[GroupElement, int]:
    """All normal forms of word norm <= n, mapped to their norm.

    Iteration order is by norm, then canonical key, so consumers see a
    deterministic sequence.
    """
    _check_radius(n, cap)
    gens = generators(spec)
    norms = {identity(spec): 0}
    frontier = [identity(spec)]

    for radius in range(1, n + 1):
        layer = {}
        for element in frontier:
            for s in gens:
                candidate = multiply(element, s)
                if candidate not in norms and candidate not in layer:
                    layer[candidate] = radius
        ordered = sorted(layer, key=GroupElement.canonical_key)
        for element in ordered:
            norms[element] = radius
        frontier = ordered
        logger.debug(f"ball radius {radius}: {len(layer)} new elements, {len(norms)} total")

    logger.info(f"Enumerated ball of radius {n} in {spec.describe()}: {len(norms)} elements")
    return norms


def word_norm(g: GroupElement, radius_cap: int) -> Union[int, _NotFound]:
    """Exact geodesic length of g, or NOT_FOUND when it exceeds radius_cap"""
    _check_radius(radius_cap, None)
    spec = g.spec
    start = identity(spec)
    if g == start:
        return 0

    gens = generators(spec)
    seen = {start}
    frontier = [start]
    for radius in range(1, radius_cap + 1):
        next_frontier = []
        for element in frontier:
            for s in gens:
                candidate = multiply(element, s)
                if candidate in seen:
                    continue
                if candidate == g:
                    return radius
                seen.add(candidate)
                next_frontier.append(candidate)
        frontier = next_frontier
    return NOT_FOUND


def ball_by_radius(norms: Dict[GroupElement, int]) -> Dict[int, List[GroupElement]]:
    """Group an enumerate_ball result into layers"""
    layers: Dict[int, List[GroupElement]] = {}
    for element, radius in norms.items():
        layers.setdefault(radius, []).append(element)
    return layers
