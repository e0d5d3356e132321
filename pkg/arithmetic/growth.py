#!/usr/bin/env python3
"""
Compositional roots of exp and the sequences built on them.

A CompRoot of order n with breakpoints 0 = c_0 < ... < c_n = 1 defines f_0 on
[0, 1]: linear from [c_i, c_{i+1}] onto [c_{i+1}, c_{i+2}] for i <= n-2, and
exp(c_0 + (c_1 - c_0)/(c_n - c_{n-1}) * (x - c_{n-1})) on [c_{n-1}, 1].
Everything else is conjugated through exp/log towers:

    f(x) = exp^k(f_0(log^k x))   with log^k x in [0, 1)

so that f^n = exp. The same identity lets f act on LogScaleNumbers without
materializing them, which is how the sequences d~, P~ are tracked past the
first few terms.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from mpmath import iv, mp, mpf
from sympy import factorint, nextprime, primerange, primorial

from core.errors import NotRepresentableError, PreconditionError, TheoryViolation
from core.settings import get_settings
from core.specs import SequenceParams
from .logscale import LogScaleNumber

logger = logging.getLogger(__name__)

Real = Union[int, float, Fraction, mpf]

D0 = 30
# theta(x) < 1.01624 x for all x > 0 (Rosser-Schoenfeld)
THETA_CONSTANT = Fraction(101624, 100000)

# ==================== COMPOSITIONAL ROOTS ====================

@dataclass(frozen=True)
class CompRoot:
    """Breakpoint data of a compositional order-th root of exp"""
    order: int = 10
    breakpoints: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.order < 2:
            raise PreconditionError("order must be at least 2")
        if not self.breakpoints:
            object.__setattr__(self, "breakpoints",
                               tuple(Fraction(i, self.order) for i in range(self.order + 1)))
        points = tuple(Fraction(c) for c in self.breakpoints)
        object.__setattr__(self, "breakpoints", points)
        if len(points) != self.order + 1:
            raise PreconditionError(f"need {self.order + 1} breakpoints, got {len(points)}")
        if points[0] != 0 or points[-1] != 1:
            raise PreconditionError("breakpoints must run from 0 to 1")
        if any(b <= a for a, b in zip(points, points[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")

    @classmethod
    def equal(cls, order: int = 10) -> "CompRoot":
        return cls(order)

    def points(self) -> List[mpf]:
        return [mpf(c.numerator) / c.denominator for c in self.breakpoints]

    def base(self, x: mpf) -> mpf:
        """f_0 on [0, 1]"""
        c = self.points()
        n = self.order
        if x >= c[n - 1]:
            slope = (c[1] - c[0]) / (c[n] - c[n - 1])
            return mp.exp(c[0] + slope * (x - c[n - 1]))
        for i in range(n - 1):
            if x < c[i + 1]:
                t = (x - c[i]) / (c[i + 1] - c[i])
                return c[i + 1] + t * (c[i + 2] - c[i + 1])
        raise AssertionError("unreachable: x below c_{n-1} matched no linear piece")

    def to_config(self) -> dict:
        return {"order": self.order, "breakpoints": [str(c) for c in self.breakpoints]}

    @classmethod
    def from_config(cls, config: Optional[dict]) -> "CompRoot":
        if not config:
            return cls()
        points = tuple(Fraction(c) for c in config.get("breakpoints", ()))
        return cls(int(config.get("order", 10)), points)


def froot_eval(r: CompRoot, x: Real) -> mpf:
    """f(x) for real x >= 0"""
    with mp.workdps(get_settings().dps):
        x = _to_mpf(x)
        if x < 0:
            raise PreconditionError(f"f is defined on [0, inf), got {x}")
        depth = 0
        while x >= 1:
            x = mp.log(x)
            depth += 1
        y = r.base(x)
        for _ in range(depth):
            y = mp.exp(y)
        return y


def froot_iterate(r: CompRoot, x: Real, times: int) -> mpf:
    with mp.workdps(get_settings().dps):
        y = _to_mpf(x)
        for _ in range(times):
            y = froot_eval(r, y)
        return y


def froot_logscale(r: CompRoot, x: LogScaleNumber) -> LogScaleNumber:
    """f(exp^h(m)) = exp^h(f(m)), canonicalized"""
    return LogScaleNumber.canonical(x.tower_height, froot_eval(r, x.mantissa))


def _to_mpf(x: Real) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# ==================== CERTIFIED COMPARISONS ====================

def compare_with_exp(n: int, x: Fraction, max_prec: int = 4096) -> int:
    """Sign of n - e^x, decided only once an enclosure of e^x excludes n"""
    prec = 64
    saved = iv.prec
    try:
        while prec <= max_prec:
            iv.prec = prec
            exponent = iv.mpf(x.numerator) / x.denominator
            enclosure = iv.exp(exponent)
            if n > enclosure.b:
                return 1
            if n < enclosure.a:
                return -1
            prec *= 2
    finally:
        iv.prec = saved
    raise NotRepresentableError(f"could not separate {n} from e^{x} at {max_prec} bits")


# ==================== SEQUENCES ====================

def p_tilde_sequence(r: CompRoot, count: int, d0: int = D0) -> List[LogScaleNumber]:
    """P~_0 = f(d_0), P~_n = f^2(P~_{n-1})"""
    values = []
    current = froot_logscale(r, LogScaleNumber.from_value(d0))
    for _ in range(count):
        values.append(current)
        current = froot_logscale(r, froot_logscale(r, current))
    return values


def d_tilde_sequence(count: int, d0: int = D0) -> List[LogScaleNumber]:
    """d~_0 = d_0, d~_n = exp(d~_{n-1})"""
    values = []
    current = LogScaleNumber.from_value(d0)
    for _ in range(count):
        values.append(current)
        current = current.exp()
    return values


def bertrand_prime(x: mpf) -> int:
    """Smallest prime in [ceil(x), 2x)"""
    with mp.workdps(get_settings().dps):
        start = int(mp.ceil(x))
        p = int(nextprime(start - 1))
        if p >= 2 * x:
            raise TheoryViolation(f"no prime in [{start}, 2*{x})")
    return p


def build_P(r: CompRoot, count: int) -> List[Union[int, LogScaleNumber]]:
    """P_n prime with P~_n <= P_n < 2 P~_n; terms past height 0 stay symbolic (their P~)"""
    P_seq: List[Union[int, LogScaleNumber]] = []
    for target in p_tilde_sequence(r, count):
        if target.is_materializable:
            P_seq.append(bertrand_prime(target.mantissa))
        else:
            P_seq.append(target)
    exact = [p for p in P_seq if isinstance(p, int)]
    if len(set(exact)) != len(exact):
        raise TheoryViolation(f"materialized P_n repeat: {exact}")
    logger.info(f"built {len(exact)} exact P_n of {count}")
    return P_seq


@dataclass
class DTerm:
    """d_n, exact when materialized, always paired with d~_n"""
    index: int
    approx: LogScaleNumber
    exact: Optional[int] = None
    largest_prime: Optional[int] = None

    @property
    def symbolic(self) -> bool:
        return self.exact is None

    def to_record(self) -> dict:
        return {"index": self.index, "exact": self.exact, "largest_prime": self.largest_prime,
                "d_tilde": self.approx.to_record(), "symbolic": self.symbolic}


def _next_d(previous: int, exponent: Fraction) -> Tuple[int, int]:
    """Multiply by 2, 3, 5, ... until the product reaches e^exponent"""
    d = previous
    for p in primerange(2, 10 ** 7):
        d *= int(p)
        if compare_with_exp(d, exponent) >= 0:
            return d, int(p)
    raise NotRepresentableError(f"primorial search for e^{exponent} ran out of primes")


def build_d(count: int) -> List[DTerm]:
    """d_0 = 30, then greedy primorial multiples with d~_n <= d_n < d~_n^{4/3}"""
    if count < 0:
        raise PreconditionError("count must be non-negative")
    tildes = d_tilde_sequence(count)
    terms: List[DTerm] = []
    for n, tilde in enumerate(tildes):
        if n == 0:
            terms.append(DTerm(0, tilde, D0))
            continue
        previous = terms[-1]
        if n == 1:
            exponent = Fraction(D0)
            d, m = _next_d(previous.exact, exponent)
            if compare_with_exp(d, exponent * Fraction(4, 3)) >= 0:
                raise TheoryViolation(f"d_1 = {d} reaches d~_1^(4/3)")
            logger.info(f"d_1 = d_0 * primorial({m}) = {d}")
            terms.append(DTerm(1, tilde, d, m))
        else:
            terms.append(DTerm(n, tilde))
    return terms


def q_factor_indices(n: int) -> List[int]:
    return [5 * n - 5 + 2 * k for k in range(9)]


@dataclass
class QValue:
    """q_n = prod_{k=0}^{8} P_{5n-5+2k}, with P_i = 3 for i < 0"""
    n: int
    indices: List[int]
    factors: List[Union[int, LogScaleNumber, str]]

    @property
    def exact(self) -> Optional[int]:
        if all(isinstance(f, int) for f in self.factors):
            value = 1
            for f in self.factors:
                value *= f
            return value
        return None

    def to_record(self) -> dict:
        shown = [f if isinstance(f, int) else str(f) for f in self.factors]
        return {"n": self.n, "indices": self.indices, "factors": shown, "exact": self.exact}


def build_q(n: int, P_seq: Sequence[Union[int, LogScaleNumber]]) -> QValue:
    factors: List[Union[int, LogScaleNumber, str]] = []
    indices = q_factor_indices(n)
    for i in indices:
        if i < 0:
            factors.append(3)
        elif i < len(P_seq):
            factors.append(P_seq[i])
        else:
            factors.append(f"P_{i}")
    return QValue(n, indices, factors)


# ==================== CHECKS ====================

@dataclass
class IntermediateReport:
    poly_degree: int
    eps: float
    grid_size: int
    poly_threshold: Optional[mpf]
    root_threshold: Optional[mpf]
    min_gap: mpf
    above_identity: bool

    def generate_report(self) -> str:
        def shown(x):
            return "not reached on grid" if x is None else mp.nstr(x, 6)
        lines = ["=" * 50, "INTERMEDIATE GROWTH CHECK", "=" * 50,
                 f"Grid points: {self.grid_size}",
                 f"f(x) > x^{self.poly_degree} from x = {shown(self.poly_threshold)}",
                 f"f^(n-1)(x) < exp(x^{self.eps}) from x = {shown(self.root_threshold)}",
                 f"f(x) > x everywhere: {self.above_identity} (min gap {mp.nstr(self.min_gap, 6)})"]
        return "\n".join(lines)


def default_grid(max_decades: int = 1200, per_decade: int = 4) -> List[mpf]:
    small = [mpf(k) / 100 for k in range(0, 1000)]
    large = [mpf(10) ** (mpf(k) / per_decade) for k in range(per_decade, per_decade * max_decades)]
    return small + large


def _threshold(grid: Sequence[mpf], holds: Sequence[bool]) -> Optional[mpf]:
    """Least grid point from which the property holds on the rest of the grid"""
    threshold = None
    for x, ok in zip(reversed(grid), reversed(holds)):
        if not ok:
            break
        threshold = x
    return threshold


def check_intermediate(r: CompRoot, poly_degree: int, eps: float,
                       grid: Optional[Iterable[Real]] = None) -> IntermediateReport:
    """Locate where f beats x^degree and where f^(n-1)(x) < exp(x^eps).

    The second comparison is run as x < f(x^eps), which is equivalent by
    monotonicity since f^n = exp, and never builds f^(n-1)(x) itself.
    """
    with mp.workdps(get_settings().dps):
        points = sorted(_to_mpf(x) for x in (grid if grid is not None else default_grid()))
        values = [froot_eval(r, x) for x in points]
        poly = [v > x ** poly_degree for x, v in zip(points, values)]
        root = [x > 0 and x < froot_eval(r, x ** mpf(eps)) for x in points]
        gaps = [v - x for x, v in zip(points, values)]
    report = IntermediateReport(poly_degree, eps, len(points), _threshold(points, poly),
                                _threshold(points, root), min(gaps), all(g > 0 for g in gaps))
    logger.info(f"intermediate check degree={poly_degree} eps={eps}: "
                f"{report.poly_threshold}, {report.root_threshold}")
    return report


@dataclass
class SequenceCheck:
    name: str
    index: int
    passed: bool
    detail: str


@dataclass
class SequenceReport:
    checks: List[SequenceCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[SequenceCheck]:
        return [c for c in self.checks if not c.passed]

    def generate_report(self) -> str:
        lines = ["=" * 50, "SEQUENCE LEMMA CHECKS", "=" * 50]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name} n={c.index}: {c.detail}")
        lines.append("")
        lines.append(f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def terms_from_params(params: SequenceParams) -> List[DTerm]:
    """Wrap a toy d-sequence as exact terms (no tilde tower behind them)"""
    terms = []
    for n, d in enumerate(params.d_seq):
        terms.append(DTerm(n, LogScaleNumber.from_value(d), d))
    return terms


def _two_adic(x: int) -> int:
    k = 0
    while x % 2 == 0:
        x //= 2
        k += 1
    return k


def check_sequence_lemmas(terms: Union[Sequence[DTerm], SequenceParams],
                          c: float = 1.0) -> SequenceReport:
    """Primorial ratios, many small prime factors, and the 2-power bound"""
    if isinstance(terms, SequenceParams):
        terms = terms_from_params(terms)
    report = SequenceReport()
    with mp.workdps(get_settings().dps):
        for n, term in enumerate(terms):
            previous = terms[n - 1] if n else None
            if term.exact is not None:
                _check_exact_term(report, term, previous, c)
            else:
                _check_symbolic_term(report, term, previous, c)
    logger.info(f"sequence checks: {len(report.failures)} failures of {len(report.checks)}")
    return report


def _check_exact_term(report: SequenceReport, term: DTerm, previous: Optional[DTerm], c: float):
    n = term.index
    d = term.exact
    if previous is not None and previous.exact is not None:
        ratio, rest = divmod(d, previous.exact)
        factors = factorint(ratio) if ratio > 1 and not rest else {}
        m = max(factors) if factors else None
        is_primorial = bool(factors) and ratio == int(primorial(m, nth=False))
        report.checks.append(SequenceCheck(
            "primorial_ratio", n, is_primorial,
            f"d_{n}/d_{n - 1} = {ratio if not rest else 'non-integer'}"
            + (f" = primorial({m})" if is_primorial else "")))

        bound = int(c * mp.sqrt(previous.exact))
        missing = [int(p) for p in primerange(2, bound + 1) if d % p]
        detail = f"primes <= {bound} divide d_{n}"
        if m is not None:
            detail += f"; m_{n}/sqrt(d_{n - 1}) = {mp.nstr(m / mp.sqrt(previous.exact), 6)}"
        if missing:
            detail = f"primes {missing[:5]} <= {bound} do not divide d_{n}"
        report.checks.append(SequenceCheck("many_factors", n, not missing, detail))

    k = _two_adic(d)
    limit = 2 * mp.log(mp.log(d)) if d > 1 else mpf(0)
    report.checks.append(SequenceCheck(
        "two_power", n, 2 ** k < limit, f"2^{k} vs 2 log log d_{n} = {mp.nstr(limit, 6)}"))


def _check_symbolic_term(report: SequenceReport, term: DTerm, previous: Optional[DTerm], c: float):
    n = term.index
    if previous is not None and previous.exact is not None:
        # d_n >= e^{d~_{n-1}} forces theta(m_n) >= d~_{n-1} - log d_{n-1}
        m_lower = (previous.approx.materialize() - mp.log(previous.exact)) / _to_mpf(THETA_CONSTANT)
        needed = c * mp.sqrt(previous.exact)
        report.checks.append(SequenceCheck(
            "many_factors", n, m_lower >= needed,
            f"m_{n} >= {mp.nstr(m_lower, 6)} vs c*sqrt(d_{n - 1}) = {mp.nstr(needed, 6)}"))
    # every primorial ratio adds exactly one factor 2 to the single one in d_0
    k = n + 1
    loglog = term.approx.log().log()
    # a double log still above the band dwarfs any 2^k in reach
    ok = loglog.tower_height > 0 or 2 ** k < 2 * loglog.mantissa
    report.checks.append(SequenceCheck(
        "two_power", n, ok, f"2^{k} vs 2 log log d~_{n} = 2*{loglog}"))


@dataclass
class InterleavingRow:
    identity: str
    n: int
    lhs: LogScaleNumber
    rhs: LogScaleNumber
    holds: bool

    def to_record(self) -> dict:
        return {"identity": self.identity, "n": self.n, "lhs": str(self.lhs),
                "rhs": str(self.rhs), "holds": self.holds}


def interleaving_report(r: CompRoot, count: int = 3, tol: float = 1e-20) -> List[InterleavingRow]:
    """Check f(d~_n) = P~_{5n} and f(P~_{5n-1}) = d~_n, plus the literal d_n reading"""
    d_tilde = d_tilde_sequence(count)
    p_tilde = p_tilde_sequence(r, 5 * (count - 1) + 1) if count else []
    exact_d = build_d(min(count, 2))
    rows = []
    for n in range(count):
        lhs = froot_logscale(r, d_tilde[n])
        rhs = p_tilde[5 * n]
        rows.append(InterleavingRow("f(d~_n) = P~_5n", n, lhs, rhs, lhs.rel_close(rhs, tol)))
        if n == 0:
            continue
        lhs = froot_logscale(r, p_tilde[5 * n - 1])
        rows.append(InterleavingRow("f(P~_5n-1) = d~_n", n, lhs, d_tilde[n],
                                    lhs.rel_close(d_tilde[n], tol)))
        if n < len(exact_d):
            literal = LogScaleNumber.from_value(exact_d[n].exact)
            rows.append(InterleavingRow("f(P~_5n-1) = d_n", n, lhs, literal,
                                        lhs.rel_close(literal, tol)))
    for row in rows:
        if not row.holds:
            logger.warning(f"{row.identity} fails at n={row.n}: {row.lhs} vs {row.rhs}")
    return rows


def sequence_table(r: CompRoot, count: int) -> List[Dict[str, object]]:
    """Rows for the seq report: P~/P, d~/d and q terms up to ``count``"""
    rows: List[Dict[str, object]] = []
    P_seq = build_P(r, count)
    for n, (target, p) in enumerate(zip(p_tilde_sequence(r, count), P_seq)):
        rows.append({"sequence": "P", "n": n, "approx": str(target),
                     "exact": p if isinstance(p, int) else "", "symbolic": not isinstance(p, int)})
    for term in build_d(min(count, get_settings().tower_cap + 2)):
        rows.append({"sequence": "d", "n": term.index, "approx": str(term.approx),
                     "exact": term.exact if term.exact is not None else "", "symbolic": term.symbolic})
    for n in range(min(count, 3)):
        q = build_q(n, P_seq)
        rows.append({"sequence": "q", "n": n, "approx": " * ".join(str(f) for f in q.factors),
                     "exact": q.exact if q.exact is not None else "", "symbolic": q.exact is None})
    return rows
