"""Core arithmetic of Hall's group G_0 and its central quotients"""

__version__ = "0.1.0"

from .errors import HallGroupsError, NOT_FOUND, PreconditionError, Verdict
from .specs import CyclicCenter, FREE, RelationCenter, SequenceParams, TRIVIAL
from .words import parse_word
from .hall_group import GroupElement, evaluate, evaluate_text, multiply, inverse, commutator
from .ball import enumerate_ball, word_norm
from .d_functions import HallD, FastGrowthD, period_mod

__all__ = [
    'HallGroupsError',
    'NOT_FOUND',
    'PreconditionError',
    'Verdict',
    'CyclicCenter',
    'FREE',
    'RelationCenter',
    'SequenceParams',
    'TRIVIAL',
    'parse_word',
    'GroupElement',
    'evaluate',
    'evaluate_text',
    'multiply',
    'inverse',
    'commutator',
    'enumerate_ball',
    'word_norm',
    'HallD',
    'FastGrowthD',
    'period_mod',
]
