#!/usr/bin/env python3
"""
Residual-finiteness experiments at desk scale.

Tables are an upper envelope over the implemented witness family: for
each radius n the worst element of the ball is paired with the smallest
witness the family produces for it. True rf values would need a minimum
over all finite quotients and are out of reach.
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats
from sympy import ilcm

from core.ball import enumerate_ball
from core.d_functions import FastGrowthD, FastGrowthDParams, period_mod
from core.errors import NOT_FOUND, PreconditionError, TheoryViolation
from core.hall_group import GroupElement, c_power, project_to_lamplighter, t_power
from core.settings import get_settings
from core.specs import CyclicCenter, RelationCenter, SequenceParams, TRIVIAL
from arithmetic.laurent import LaurentPoly, check_membership, exempt_collisions, find_reduction_prime
from arithmetic.primes import primes_up_to
from arithmetic.quadratic import find_small_prime_not_dividing
from separation.witnesses import (CyclicWitness, gint_witness, lamplighter_witness,
                                  verify_witness)

logger = logging.getLogger(__name__)

TABLE_LABEL = "upper envelope over witness family"

FAMILIES = {
    "integers": "cyclic",
    "lamplighter": "lamplighter",
    "gint": "gint",
}

# ==================== CONFIGURATION ====================

@dataclass
class ExperimentConfig:
    """One rf table run; see docs/CONFIG.md for the file format"""
    group: str = "lamplighter"
    max_n: int = 6
    witness_family: str = "lamplighter"
    output: Optional[str] = None
    params: Optional[SequenceParams] = None
    seed: int = 0

    def __post_init__(self):
        if self.group not in FAMILIES:
            raise PreconditionError(f"unknown group {self.group!r}; choose from {sorted(FAMILIES)}")
        if FAMILIES[self.group] != self.witness_family:
            raise PreconditionError(
                f"group {self.group} takes the {FAMILIES[self.group]} witness family")
        if self.max_n > get_settings().ball_cap:
            raise PreconditionError(f"max_n {self.max_n} exceeds ball cap {get_settings().ball_cap}")
        if self.max_n < 0:
            raise PreconditionError("max_n must be non-negative")
        if self.group == "gint" and self.params is None:
            raise PreconditionError("the gint group needs sequence params")

    def to_config(self) -> dict:
        config = {"group": self.group, "max_n": self.max_n, "witness_family": self.witness_family,
                  "output": self.output, "seed": self.seed}
        if self.params is not None:
            config["params"] = self.params.to_config()
        return config

    @classmethod
    def from_config(cls, config: dict) -> "ExperimentConfig":
        params = config.get("params")
        return cls(group=config.get("group", "lamplighter"),
                   max_n=int(config.get("max_n", 6)),
                   witness_family=config.get("witness_family", FAMILIES.get(config.get("group"), "lamplighter")),
                   output=config.get("output"),
                   params=SequenceParams.from_config(params) if params else None,
                   seed=int(config.get("seed", 0)))

    @classmethod
    def from_file(cls, path: str) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_config(json.load(fh))

    def config_hash(self) -> str:
        canonical = json.dumps(self.to_config(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def spec(self):
        if self.group == "gint":
            return RelationCenter(self.params)
        return TRIVIAL


# ==================== UPPER TABLES ====================

@dataclass
class RfTableRow:
    n: int
    worst_element: str
    witness_kind: str
    quotient_order: int
    witness: Dict[str, object] = field(default_factory=dict)
    label: str = TABLE_LABEL

    def to_record(self) -> dict:
        return {"n": self.n, "worst_element": self.worst_element,
                "witness_kind": self.witness_kind, "order": self.quotient_order,
                "witness": self.witness, "label": self.label}


def witness_for(g: GroupElement, family: str):
    """Smallest witness of the family for a nontrivial g, already verified"""
    if family == "cyclic":
        witness = CyclicWitness(find_small_prime_not_dividing(g.t_exp))
        target = g
    elif family == "lamplighter":
        witness = lamplighter_witness(g)
        target = g
    elif g.is_central:
        witness = gint_witness(g)
        target = g
    else:
        target = project_to_lamplighter(g)
        witness = lamplighter_witness(target)
    if not verify_witness(target, witness).nontrivial:
        raise TheoryViolation(f"{witness.to_record()} does not separate {g}")
    return witness


def _family_elements(config: ExperimentConfig) -> Dict[GroupElement, int]:
    if config.group == "integers":
        return {t_power(TRIVIAL, m): abs(m) for m in range(-config.max_n, config.max_n + 1)}
    return enumerate_ball(config.spec(), config.max_n)


def rf_upper_table(config: ExperimentConfig) -> List[RfTableRow]:
    """One row per n in [1, max_n]: the worst minimal witness over the ball of radius n"""
    norms = _family_elements(config)
    best_by_radius: Dict[int, Tuple[int, tuple, GroupElement, object]] = {}
    for g, radius in norms.items():
        if g.is_identity:
            continue
        witness = witness_for(g, config.witness_family)
        candidate = (witness.order, g.canonical_key(), g, witness)
        current = best_by_radius.get(radius)
        if current is None or candidate[:2] > current[:2]:
            best_by_radius[radius] = candidate

    rows = []
    worst = None
    for n in range(1, config.max_n + 1):
        layer = best_by_radius.get(n)
        if layer is not None and (worst is None or layer[:2] > worst[:2]):
            worst = layer
        if worst is None:
            continue
        order, _, g, witness = worst
        rows.append(RfTableRow(n, g.render(), witness.kind, order, witness.to_record()))
        logger.info(f"n={n}: worst {g.render()} needs order {order}")
    return rows


# ==================== FITS ====================

@dataclass
class GrowthFit:
    """max of value / scale over the sample, plus a log-log slope"""
    constant: float
    slope: Optional[float] = None
    intercept: Optional[float] = None
    samples: int = 0

    def to_record(self) -> dict:
        return {"constant": self.constant, "slope": self.slope,
                "intercept": self.intercept, "samples": self.samples}


def fit_power_bound(xs: List[float], ys: List[float], exponent: float) -> GrowthFit:
    xs_arr = np.asarray(xs, dtype=float)
    ys_arr = np.asarray(ys, dtype=float)
    if len(xs_arr) == 0:
        raise PreconditionError("nothing to fit")
    constant = float(np.max(ys_arr / xs_arr ** exponent))
    slope = intercept = None
    if len(set(xs_arr.tolist())) > 1:
        result = stats.linregress(np.log(xs_arr), np.log(ys_arr))
        slope, intercept = float(result.slope), float(result.intercept)
    return GrowthFit(constant, slope, intercept, len(xs_arr))


def fit_table(rows: List[RfTableRow], exponent: float = 2.0) -> GrowthFit:
    return fit_power_bound([row.n for row in rows], [row.quotient_order for row in rows], exponent)


def smallest_non_divisors(limit: int) -> np.ndarray:
    """p(x) for x in [2, limit]: the least prime not dividing x"""
    xs = np.arange(2, limit + 1, dtype=np.int64)
    result = np.zeros_like(xs)
    for p in primes_up_to(200):
        open_slots = (result == 0) & (xs % p != 0)
        result[open_slots] = p
        if not (result == 0).any():
            break
    return result


def chebotarev_fit(limit: int = 10 ** 6) -> GrowthFit:
    """C with p(x) <= C log x over 2 <= x <= limit"""
    xs = np.arange(2, limit + 1, dtype=np.int64)
    ps = smallest_non_divisors(limit)
    constant = float(np.max(ps / np.log(xs)))
    return GrowthFit(constant, samples=len(xs))


@dataclass
class LaurentInstance:
    f: LaurentPoly
    exempt: Tuple[int, ...]
    m0: int
    n: int


def random_laurent_instance(rng: np.random.Generator, max_n: int = 40) -> LaurentInstance:
    n = int(rng.integers(3, max(max_n, 3) + 1))
    exempt = {0}
    for _ in range(int(rng.integers(0, 3))):
        e = int(rng.integers(1, n + 1))
        exempt |= {e, -e}
    m0 = 2
    while exempt_collisions(exempt, m0):
        m0 *= 2
    coeffs = {}
    for _ in range(int(rng.integers(1, 6))):
        coeffs[int(rng.integers(-n, n + 1))] = int(rng.integers(-5, 6))
    free_degree = int(rng.choice([i for i in range(-n, n + 1) if i not in exempt]))
    coeffs[free_degree] = coeffs.get(free_degree, 0) + int(rng.choice([-1, 1])) * int(rng.integers(1, 6))
    f = LaurentPoly.from_dict(coeffs)
    if not f or all(i in exempt for i, _ in f.coeffs):
        f = f + LaurentPoly.monomial(free_degree, 1)
    return LaurentInstance(f, tuple(sorted(exempt)), m0, n)


def laurent_fit(count: int = 500, seed: int = 0, max_n: int = 40,
                exponent: float = 0.55) -> GrowthFit:
    """c with q <= c n^exponent over random instances; every certificate is re-checked"""
    rng = np.random.default_rng(seed)
    ns, qs = [], []
    for _ in range(count):
        instance = random_laurent_instance(rng, max_n)
        if all(i in instance.exempt for i, _ in instance.f.coeffs):
            continue
        q, certificate = find_reduction_prime(instance.f, instance.exempt, instance.m0, instance.n)
        if not certificate.valid or check_membership(instance.f, instance.exempt, certificate.L).member:
            raise TheoryViolation(f"reduction prime {q} fails to certify {instance}")
        ns.append(instance.n)
        qs.append(q)
    return fit_power_bound(ns, qs, exponent)


# ==================== LOWER PROBE ====================

@dataclass
class ProbeQuotient:
    q: int
    t_order: int
    log10_order: float

    def to_record(self) -> dict:
        return {"q": self.q, "t_order": self.t_order, "log10_order": round(self.log10_order, 3)}


@dataclass
class LowerProbeReport:
    n: int
    L: int
    element: str
    norm_bound: int
    separable: bool
    quotients: List[ProbeQuotient] = field(default_factory=list)
    skipped: List[int] = field(default_factory=list)

    @property
    def smallest(self) -> Optional[ProbeQuotient]:
        return min(self.quotients, key=lambda w: (w.log10_order, w.q), default=None)

    def to_record(self) -> dict:
        smallest = self.smallest
        return {"n": self.n, "L": self.L, "element": self.element, "norm_bound": self.norm_bound,
                "separable": self.separable,
                "quotients": [w.to_record() for w in self.quotients],
                "smallest": smallest.to_record() if smallest else None,
                "skipped_q": self.skipped}


def rf_lower_probe(spec: CyclicCenter, n: int, q_max: Optional[int] = None) -> LowerProbeReport:
    """Scan G_d / <c_1^q> (t mod the period of d mod q) for quotients separating c_1^L"""
    if not isinstance(spec.d, FastGrowthD):
        raise PreconditionError("the lower probe runs on fast-growth d-functions")
    if n < 1:
        raise PreconditionError("n must be positive")
    L = int(ilcm(*range(1, n + 1))) if n > 1 else 1
    g = c_power(spec, 1, L)
    report = LowerProbeReport(n, L, g.render(), 2 * L + 6, not g.is_identity)
    if g.is_identity:
        logger.info(f"c_1^{L} is trivial in {spec.describe()}: not separable")
        return report

    f = spec.d.params.f
    for q in range(2, (q_max or n + 4) + 1):
        if spec.modulus is not None and spec.modulus % q:
            continue
        if L % q == 0:
            continue
        T = period_mod(spec.d, q)
        if T is NOT_FOUND:
            report.skipped.append(q)
            continue
        if q < n + 1:
            raise TheoryViolation(f"c_1^{L} survives mod {q} < {n + 1}")
        if T < 3 ** f(n):
            raise TheoryViolation(f"t has order {T} < 3^f({n}) in the quotient mod {q}")
        log10_order = math.log10(T) + (T + 1) * math.log10(q)
        report.quotients.append(ProbeQuotient(q, T, log10_order))
    return report


def fastgrowth_spec(f_name: str = "identity", modulus: Optional[int] = None) -> CyclicCenter:
    return CyclicCenter(FastGrowthD(FastGrowthDParams(f_name)), modulus)


# ==================== OUTPUT ====================

def rows_to_json(rows: List[RfTableRow], config: ExperimentConfig, version: str) -> str:
    payload = {"schema": 1, "version": version, "config_hash": config.config_hash(),
               "config": config.to_config(), "label": TABLE_LABEL,
               "rows": [row.to_record() for row in rows]}
    return json.dumps(payload, sort_keys=True, indent=2)


def write_outputs(rows: List[RfTableRow], config: ExperimentConfig, version: str,
                  csv_path: Optional[str] = None, json_path: Optional[str] = None):
    if csv_path:
        frame = pd.DataFrame([{"n": r.n, "worst_element": r.worst_element,
                               "witness_kind": r.witness_kind, "order": r.quotient_order}
                              for r in rows], columns=["n", "worst_element", "witness_kind", "order"])
        Path(csv_path).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(csv_path, index=False)
    if json_path:
        Path(json_path).parent.mkdir(parents=True, exist_ok=True)
        Path(json_path).write_text(rows_to_json(rows, config, version), encoding="utf-8")
