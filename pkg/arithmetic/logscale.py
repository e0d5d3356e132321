#!/usr/bin/env python3
"""
Numbers too large to materialize, stored as exp-towers over a bounded mantissa.

A LogScaleNumber is exp^height(mantissa). In canonical form the mantissa
lies below BAND = 10^band_digits, and above log(BAND) whenever height > 0,
so the pair (height, mantissa) orders values lexicographically.
"""

import logging
from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Union

from mpmath import mp, mpf

from core.errors import NotRepresentableError, PreconditionError
from core.settings import get_settings

logger = logging.getLogger(__name__)

Real = Union[int, float, mpf]


def band(band_digits: Optional[int] = None) -> mpf:
    digits = get_settings().logscale_band_digits if band_digits is None else band_digits
    return mpf(10) ** digits


@total_ordering
@dataclass(frozen=True, eq=False)
class LogScaleNumber:
    """exp^tower_height(mantissa), non-negative"""
    tower_height: int
    mantissa: mpf

    @classmethod
    def canonical(cls, tower_height: int, mantissa: Real,
                  tower_cap: Optional[int] = None) -> "LogScaleNumber":
        settings = get_settings()
        cap = settings.tower_cap if tower_cap is None else tower_cap
        with mp.workdps(settings.dps):
            m = mpf(mantissa)
            if m < 0:
                raise PreconditionError("LogScaleNumber holds non-negative values only")
            upper = band()
            lower = mp.log(upper)
            h = int(tower_height)
            while m >= upper:
                m = mp.log(m)
                h += 1
            while h > 0 and m < lower:
                m = mp.exp(m)
                h -= 1
        if h > cap:
            raise NotRepresentableError(f"tower height {h} exceeds cap {cap}")
        return cls(h, m)

    @classmethod
    def from_value(cls, x: Real) -> "LogScaleNumber":
        return cls.canonical(0, x)

    @property
    def is_materializable(self) -> bool:
        return self.tower_height == 0

    def materialize(self) -> mpf:
        if self.tower_height:
            raise NotRepresentableError(f"{self} is an exp-tower of height {self.tower_height}")
        return self.mantissa

    def log(self) -> "LogScaleNumber":
        """Natural log, for values >= 1"""
        if self.tower_height:
            return LogScaleNumber.canonical(self.tower_height - 1, self.mantissa)
        with mp.workdps(get_settings().dps):
            if self.mantissa < 1:
                raise PreconditionError("log of a value below 1 leaves the non-negative range")
            return LogScaleNumber.canonical(0, mp.log(self.mantissa))

    def exp(self) -> "LogScaleNumber":
        return LogScaleNumber.canonical(self.tower_height + 1, self.mantissa)

    def _key(self):
        return (self.tower_height, self.mantissa)

    def __eq__(self, other):
        if isinstance(other, (int, float, mpf)):
            other = LogScaleNumber.from_value(other)
        if not isinstance(other, LogScaleNumber):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if isinstance(other, (int, float, mpf)):
            other = LogScaleNumber.from_value(other)
        if not isinstance(other, LogScaleNumber):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash((self.tower_height, str(self.mantissa)))

    def rel_close(self, other: "LogScaleNumber", tol: float = 1e-20) -> bool:
        """Same height and mantissas within relative tolerance"""
        if self.tower_height != other.tower_height:
            return False
        scale = max(abs(self.mantissa), abs(other.mantissa), mpf(1))
        return abs(self.mantissa - other.mantissa) <= tol * scale

    def __str__(self):
        text = mp.nstr(self.mantissa, 12)
        for _ in range(self.tower_height):
            text = f"exp({text})"
        return text

    def to_record(self) -> dict:
        return {"tower_height": self.tower_height, "mantissa": mp.nstr(self.mantissa, 30)}
