#!/usr/bin/env python3
"""
Prime tables shared by the witness searches.

Small primes come from a numpy sieve that grows on demand behind a lock;
primality of big integers goes through sympy (deterministic below 2^64,
Baillie-PSW above, which is flagged as probable).
"""

import logging
import threading
from typing import Iterator, List, Tuple

import numpy as np
from sympy import isprime, primefactors, sqrt_mod

logger = logging.getLogger(__name__)

DETERMINISTIC_LIMIT = 2 ** 64

_lock = threading.Lock()
_sieve_limit = 0
_primes = np.array([], dtype=np.int64)


def simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if is_prime[p]:
            is_prime[p * p: limit + 1: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit (cached sieve, grown by doubling)"""
    global _sieve_limit, _primes
    with _lock:
        if limit > _sieve_limit:
            new_limit = max(limit, 2 * _sieve_limit, 1024)
            _primes = simple_sieve(new_limit)
            _sieve_limit = new_limit
            logger.debug(f"prime sieve extended to {new_limit}")
        primes = _primes
    return primes[primes <= limit]


def iter_primes(start: int = 2) -> Iterator[int]:
    """Primes >= start in increasing order, without end"""
    limit = max(1024, 2 * start)
    low = start
    while True:
        for p in primes_up_to(limit):
            if p >= low:
                yield int(p)
        low = limit + 1
        limit *= 2


def iter_odd_primes(start: int = 3) -> Iterator[int]:
    for p in iter_primes(max(start, 3)):
        yield p


def is_split_prime(p: int) -> bool:
    """2 is a square mod the odd prime p, i.e. p = +-1 mod 8"""
    return p % 8 in (1, 7)


def smaller_sqrt2(p: int) -> int:
    """Smaller of the two square roots of 2 mod a split prime p"""
    roots = sqrt_mod(2, p, all_roots=True)
    return int(min(roots))


def iter_split_primes(start: int = 3) -> Iterator[Tuple[int, int]]:
    """(p, s) for split primes p >= start, s^2 = 2 mod p the smaller root"""
    for p in iter_odd_primes(start):
        if is_split_prime(p):
            yield p, smaller_sqrt2(p)


def check_primality(n: int) -> Tuple[bool, bool]:
    """(is_prime, is_proven): proofs only inside the deterministic range"""
    return bool(isprime(n)), n < DETERMINISTIC_LIMIT


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of a positive integer, ascending"""
    return [int(p) for p in primefactors(n)]
