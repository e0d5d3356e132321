#!/usr/bin/env python3
"""
Word syntax for elements of groups in the Hall class.

Grammar (whitespace separated terms):
    word := term+
    term := gen ('^' int)?
    gen  := 't' | 'a' ('_' int)? | 'c' '_' int

A bare ``a`` means ``a_0``; a lone ``1`` is the identity. Zero exponents are
rejected.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import WordSyntaxError

TERM_PATTERN = re.compile(
    r"(?P<gen>[tac])(?:_(?P<index>-?\d+))?(?:\^(?P<exp>-?\d+))?"
)
SEPARATORS = {"·", "*"}


@dataclass(frozen=True)
class Token:
    """One generator power: t^e, a_i^e or c_i^e"""
    generator: str
    index: Optional[int]
    exponent: int

    def __post_init__(self):
        if self.generator not in ("t", "a", "c"):
            raise ValueError(f"unknown generator {self.generator!r}")
        if self.exponent == 0:
            raise ValueError("zero exponent")
        if self.generator == "t" and self.index is not None:
            raise ValueError("t takes no index")
        if self.generator != "t" and self.index is None:
            raise ValueError(f"{self.generator} needs an index")

    def inverse(self) -> "Token":
        return Token(self.generator, self.index, -self.exponent)

    def render(self) -> str:
        base = "t" if self.generator == "t" else f"{self.generator}_{self.index}"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"


@dataclass(frozen=True)
class Word:
    tokens: Tuple[Token, ...] = ()

    def inverse(self) -> "Word":
        return Word(tuple(tok.inverse() for tok in reversed(self.tokens)))

    def __len__(self):
        # letter length over the generating set
        return sum(abs(tok.exponent) for tok in self.tokens)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.tokens + other.tokens)

    def render(self) -> str:
        return " ".join(tok.render() for tok in self.tokens) or "1"

    @classmethod
    def from_letters(cls, letters: List[Tuple[str, int]]) -> "Word":
        """Build from (generator, exponent) pairs over {t, a_0}"""
        tokens = []
        for gen, exp in letters:
            tokens.append(Token(gen, None if gen == "t" else 0, exp))
        return cls(tuple(tokens))


def parse_word(text: str) -> Word:
    """Tokenize ``text`` into a Word, reporting the position of any fault"""
    tokens: List[Token] = []
    pos = 0
    length = len(text)
    saw_identity = False

    while pos < length:
        ch = text[pos]
        if ch.isspace() or ch in SEPARATORS:
            pos += 1
            continue

        if ch == "1" and (pos + 1 == length or text[pos + 1].isspace()):
            # explicit identity
            saw_identity = True
            pos += 1
            continue

        match = TERM_PATTERN.match(text, pos)
        if match is None:
            raise WordSyntaxError(f"unexpected character {ch!r}", pos)

        end = match.end()
        if end < length and not (text[end].isspace() or text[end] in SEPARATORS):
            raise WordSyntaxError(f"unexpected character {text[end]!r}", end)

        gen = match.group("gen")
        index_text = match.group("index")
        exp_text = match.group("exp")

        if gen == "t" and index_text is not None:
            raise WordSyntaxError("t takes no index", pos)
        if gen == "c" and index_text is None:
            raise WordSyntaxError("c needs an index", pos)
        exponent = int(exp_text) if exp_text is not None else 1
        if exponent == 0:
            raise WordSyntaxError("zero exponent", match.start("exp"))

        if gen == "t":
            index = None
        else:
            index = int(index_text) if index_text is not None else 0
        tokens.append(Token(gen, index, exponent))
        pos = end

    if not tokens and not saw_identity:
        raise WordSyntaxError("empty word", 0)
    return Word(tuple(tokens))
