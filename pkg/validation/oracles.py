#!/usr/bin/env python3
"""
Brute-force oracles that check the fast code paths independently.

* a letter-by-letter collector for G_0 that only knows the defining
  relations (t a_i = a_{i+1} t and a_i a_j = c_{i-j} a_j a_i),
* the support bounds for balls of G_0,
* a Smith-normal-form computation of the Z/p-rank of C_{p,Q}.
"""

import logging
from itertools import product
from typing import Dict, Iterator, List, Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from core.ball import enumerate_ball
from core.hall_group import evaluate, normalize_central_indices
from core.specs import FREE, SequenceParams
from core.words import Token, Word

logger = logging.getLogger(__name__)

Letter = Tuple[str, int, int]  # (generator, index, +-1)

# ==================== PAIRWISE-SWAP COLLECTOR ====================

def _letters(word: Word) -> List[Letter]:
    letters = []
    for token in word.tokens:
        sign = 1 if token.exponent > 0 else -1
        index = 0 if token.index is None else token.index
        letters.extend([(token.generator, index, sign)] * abs(token.exponent))
    return letters


def collect_word(word: Word) -> Tuple[int, Dict[int, int], Dict[int, int]]:
    """(t exponent, a exponents, c exponents) by moving letters one swap at a time"""
    central: Dict[int, int] = {}
    a_letters: List[Tuple[int, int]] = []
    t_total = 0

    # sweep t-letters to the right: t^e a_i = a_{i+e} t^e
    for gen, index, sign in _letters(word):
        if gen == "t":
            t_total += sign
        elif gen == "a":
            a_letters.append((index + t_total, sign))
        else:
            central[index] = central.get(index, 0) + sign

    # bubble sort by index; each swap of a_i^e a_j^f (i > j) emits c_{i-j}^{ef}
    changed = True
    while changed:
        changed = False
        for k in range(len(a_letters) - 1):
            (i, e), (j, f) = a_letters[k], a_letters[k + 1]
            if i > j:
                central[i - j] = central.get(i - j, 0) + e * f
                a_letters[k], a_letters[k + 1] = (j, f), (i, e)
                changed = True

    a_part: Dict[int, int] = {}
    for i, e in a_letters:
        a_part[i] = a_part.get(i, 0) + e
    a_part = {i: e for i, e in a_part.items() if e}
    return t_total, a_part, normalize_central_indices(central)


def agrees_with_collector(word: Word) -> bool:
    element = evaluate(word, FREE)
    t_exp, a_part, c_part = collect_word(word)
    return (element.t_exp == t_exp and element.a_part.as_dict() == a_part
            and element.c_part.as_dict() == c_part)


GENERATOR_TOKENS = (Token("t", None, 1), Token("t", None, -1), Token("a", 0, 1), Token("a", 0, -1))


def all_words(max_length: int) -> Iterator[Word]:
    """Every word of length <= max_length over {t, a_0} and inverses"""
    yield Word()
    for length in range(1, max_length + 1):
        for tokens in product(GENERATOR_TOKENS, repeat=length):
            yield Word(tokens)


def random_words(rng: np.random.Generator, count: int, max_length: int) -> Iterator[Word]:
    for _ in range(count):
        length = int(rng.integers(0, max_length + 1))
        picks = rng.integers(0, len(GENERATOR_TOKENS), size=length)
        yield Word(tuple(GENERATOR_TOKENS[int(k)] for k in picks))


def collector_mismatches(words: Iterator[Word]) -> List[str]:
    mismatches = [word.render() for word in words if not agrees_with_collector(word)]
    if mismatches:
        logger.warning(f"{len(mismatches)} collector mismatches, first {mismatches[0]}")
    return mismatches


# ==================== SUPPORT BOUNDS ====================

def support_violations(n: int) -> List[str]:
    """Ball elements of G_0 breaking the a-support or central-mass bounds"""
    violations = []
    for element, radius in enumerate_ball(FREE, n).items():
        if element.t_exp == 0 and element.a_part and element.a_part.radius() > radius:
            violations.append(f"a-support of {element} exceeds {radius}")
        if element.is_central and element.c_part:
            if max(element.c_part.support()) > radius:
                violations.append(f"c-support of {element} exceeds {radius}")
            if element.c_part.mass() >= radius * radius:
                violations.append(f"central mass of {element} reaches {radius}^2")
    return violations


# ==================== SMITH NORMAL FORM ====================

def relation_matrix(p: int, Q: int, params: SequenceParams) -> Matrix:
    """Rows are relations among c_0, ..., c_{2Q-1} in G_{p,Q}"""
    width = 2 * Q
    rows = []

    def unit(*entries):
        row = [0] * width
        for column, value in entries:
            row[column % width] += value
        return row

    rows.append(unit((0, 1)))
    for i in range(1, width):
        rows.append(unit((i, 1), (width - i, 1)))
        rows.append(unit((i, p)))
    for d, q in zip(params.d_seq, params.q_seq):
        rows.append(unit((d, q)))
    return Matrix(rows)


def snf_rank_mod_p(p: int, Q: int, params: SequenceParams) -> int:
    """Dimension over Z/p of the center presented by relation_matrix"""
    matrix = relation_matrix(p, Q, params)
    factors = [int(f) for f in invariant_factors(matrix, domain=ZZ)]
    free_rank = max(0, matrix.cols - len(factors))
    return sum(1 for f in factors if f % p == 0) + free_rank
