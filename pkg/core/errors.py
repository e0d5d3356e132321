#!/usr/bin/env python3
"""
Error types and search outcomes shared by every hallgroups module.
"""

from enum import Enum
from typing import Optional


class HallGroupsError(Exception):
    """Base class for all domain errors (CLI exit code 1)"""


class WordSyntaxError(HallGroupsError):
    """Malformed word text; carries the character position of the fault"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SpecMismatchError(HallGroupsError):
    """Operands live in different central quotients"""


class PreconditionError(HallGroupsError):
    """Caller violated an operation's precondition"""


class SearchBoundExceeded(HallGroupsError):
    """A bounded search ran past its configured limit"""


class NotRepresentableError(HallGroupsError):
    """A sequence term is beyond the materialization or symbolic cap"""


class CertificateError(HallGroupsError):
    """A stored or freshly built certificate failed re-verification"""


class TheoryViolation(AssertionError):
    """An outcome the underlying theorem rules out was observed at an instance"""


class _NotFound:
    """Sentinel for searches that finished without a hit"""

    _instance: Optional["_NotFound"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotFound"


NOT_FOUND = _NotFound()


class Verdict(Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not_conjugate"
    UNKNOWN = "unknown"
