"""Number theory and growth sequences behind the separation witnesses"""

from .quadratic import QuadInt, SplitPrimeWitness, find_small_prime_not_dividing, find_split_prime_avoiding
from .laurent import LaurentPoly, find_reduction_prime, laurent_fold, membership_in_M_plus_Iq
from .logscale import LogScaleNumber
from .growth import CompRoot, build_P, build_d, build_q, froot_eval

__all__ = [
    'QuadInt',
    'SplitPrimeWitness',
    'find_small_prime_not_dividing',
    'find_split_prime_avoiding',
    'LaurentPoly',
    'find_reduction_prime',
    'laurent_fold',
    'membership_in_M_plus_Iq',
    'LogScaleNumber',
    'CompRoot',
    'build_P',
    'build_d',
    'build_q',
    'froot_eval',
]
