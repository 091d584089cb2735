"""Random subsampling of the block family and the blow-up instance builders.

Randomness: one ``numpy.random.PCG64`` generator per trial, seeded through
``SeedSequence([seed, trial])``.  A block is kept when a uniform integer in
``[0, den)`` falls below ``num`` for ``p = num/den``, so the keep probability
is exactly ``p`` and the stream is platform independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb
from typing import Sequence

import numpy as np

from . import config
from .errors import DomainError, ResourceError
from .family import BlockFamily, generate_family
from .geometry import Box, FamilyParams
from .graph import blow_up, build_graph, family_boxes
from .solvers import chromatic_number, clique_via_cells, max_clique, max_independent_set, min_piercing


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SampleConfig:
    p: Fraction
    seed: int
    trials: int = 1

    def __post_init__(self):
        p = Fraction(self.p)
        if not 0 < p <= 1:
            raise DomainError(f"sampling probability must lie in (0, 1], got {p}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit nonnegative integer")
        if self.trials < 0:
            raise DomainError("trials must be nonnegative")
        object.__setattr__(self, "p", p)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def sample_indices(n: int, p: Fraction, seed: int, trial: int = 0) -> list[int]:
    p = Fraction(p)
    if p == 1:
        return list(range(n))
    draws = trial_rng(seed, trial).integers(0, p.denominator, size=n, dtype=np.uint64)
    return np.flatnonzero(draws < p.numerator).tolist()


def sample_family(family: BlockFamily, cfg: SampleConfig, trial: int = 0) -> BlockFamily:
    """Keep each block independently with probability ``cfg.p``."""
    return family.subfamily(sample_indices(len(family), cfg.p, cfg.seed, trial))


@dataclass(frozen=True)
class ParamChoice:
    n: int
    d: int
    k: int
    s: int
    p: Fraction
    num_types: int
    m: int
    M: int

    @property
    def family_size(self) -> int:
        return self.num_types * self.M

    def to_record(self) -> dict:
        return {
            "n": self.n, "d": self.d, "k": self.k, "s": self.s, "p": _frac_str(self.p),
            "num_types": self.num_types, "m": self.m, "M": self.M, "family_size": self.family_size,
        }


def choose_parameters(n: int, d: int, *, budget: int | None = None) -> ParamChoice:
    """Smallest ``k >= 2`` with ``k^(4d(d-1)k) >= 8n``; then ``s = k^(4d)``, ``p = 1/(4|T|)``.

    A family larger than ``budget`` (default: the family-size budget) raises
    :class:`ResourceError` whose ``payload`` is the choice.
    """
    if n < 1 or d < 3:
        raise DomainError(f"need n >= 1 and d >= 3, got n={n}, d={d}")
    k = 2
    while k ** (4 * d * (d - 1) * k) < 8 * n:
        k += 1
    s = k ** (4 * d)
    num_types = comb(k + d - 1, d - 1)
    m = s**k
    choice = ParamChoice(n, d, k, s, Fraction(1, 4 * num_types), num_types, m, m ** (d - 1))
    budget = config.budget("family_blocks") if budget is None else budget
    if choice.family_size > budget:
        raise ResourceError(
            f"parameters for n={n} give {choice.family_size} blocks (budget {budget})",
            size=choice.family_size, budget=budget, payload=choice,
        )
    return choice


@dataclass
class TrialReport:
    params: FamilyParams
    cfg: SampleConfig
    trials: list[dict] = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)

    def summary(self) -> dict:
        t = len(self.trials)
        out = {"trials": t}
        if not t:
            return out
        total = sum(r["size"] for r in self.trials)
        out["mean_size"] = _frac_str(Fraction(total, t))
        for key in ("size_ok", "alpha_ok", "omega_ok", "omega_below_r"):
            hits = sum(1 for r in self.trials if r[key])
            out[key + "_count"] = hits
            out[key + "_frequency"] = _frac_str(Fraction(hits, t))
        out["alpha_exact_count"] = sum(1 for r in self.trials if r["alpha_exact"])
        return out

    def to_record(self) -> dict:
        return {
            "schema": "boxblocks.trials/1",
            "params": {"d": self.params.d, "s": self.params.s, "k": self.params.k},
            "config": {"p": _frac_str(self.cfg.p), "seed": self.cfg.seed, "trials": self.cfg.trials},
            "thresholds": self.thresholds,
            "per_trial": self.trials,
            "summary": self.summary(),
        }


def trial_thresholds(params: FamilyParams, p: Fraction) -> dict:
    """Size, independence and clique thresholds measured per trial (natural logs)."""
    d, s, k = params.d, params.s, params.k
    family_size = params.family_size
    omega = 2 * d * k * math.log(s) / math.log(k) if k >= 2 else None
    r = None
    m = params.m
    if m > 1 and math.log(math.log(m)) > 0:
        r = math.ceil(2 * d * math.log(m) / math.log(math.log(m)))
    return {
        "family_size": family_size,
        "num_types": params.num_types,
        "M": params.M,
        "size_min": _frac_str(p * family_size / 2),
        "alpha_max": _frac_str(6 * p * params.M),
        "omega_bound": omega,
        "r": r,
        "log": "natural",
    }


def _greedy_independent(g) -> int:
    chosen, blocked = 0, 0
    for v in sorted(range(g.n), key=lambda v: (g.degree(v), v)):
        if not blocked >> v & 1:
            chosen += 1
            blocked |= g.rows[v] | (1 << v)
    return chosen


def run_trials(params: FamilyParams, cfg: SampleConfig, *, mis_budget: int | None = None) -> TrialReport:
    """Sample ``cfg.trials`` subfamilies and measure ``|X|``, ``omega(H)``, ``alpha(H)``."""
    family = generate_family(params)
    th = trial_thresholds(params, cfg.p)
    size_min = cfg.p * params.family_size / 2
    alpha_max = 6 * cfg.p * params.M
    cap = config.budget("mis") if mis_budget is None else mis_budget
    report = TrialReport(params, cfg, thresholds=th)
    for trial in range(cfg.trials):
        X = sample_family(family, cfg, trial)
        omega = clique_via_cells(X).value
        g = build_graph(family_boxes(X))
        if g.n <= cap:
            alpha, exact = max_independent_set(g, budget=cap).value, True
            alpha_lo = alpha_hi = alpha
        else:
            alpha, exact = None, False
            alpha_lo, alpha_hi = _greedy_independent(g), min(params.M, g.n)
        report.trials.append({
            "trial": trial,
            "size": len(X),
            "omega": omega,
            "alpha": alpha,
            "alpha_lower": alpha_lo,
            "alpha_upper": alpha_hi,
            "alpha_exact": exact,
            "size_ok": len(X) >= size_min,
            "alpha_ok": alpha_hi <= alpha_max,
            "omega_ok": th["omega_bound"] is not None and omega < th["omega_bound"],
            "omega_below_r": th["r"] is not None and omega < th["r"],
        })
    return report


def sampled_boxes(params: FamilyParams, cfg: SampleConfig, trial: int = 0) -> list[Box]:
    return family_boxes(sample_family(generate_family(params), cfg, trial))


def build_piercing_instance(k_target: int, params: FamilyParams, cfg: SampleConfig, *, max_attempts: int = 100):
    """First sampled family (over trial indices) whose independence number is at most ``k_target``.

    The stats carry ``tau_lower = ceil(|X| / omega(H))`` and the exact piercing
    number when the sample fits the piercing budget.
    """
    family = generate_family(params)
    for trial in range(max_attempts):
        X = sample_family(family, cfg, trial)
        boxes = family_boxes(X)
        g = build_graph(boxes)
        nu = max_independent_set(g).value
        if nu > k_target:
            continue
        omega = clique_via_cells(X).value
        stats = {
            "trial": trial,
            "size": len(X),
            "omega": omega,
            "nu": nu,
            "alpha_G": params.M,
            "tau_lower": ceil(len(X) / omega) if omega else 0,
        }
        if len(X) <= config.budget("piercing"):
            stats["tau"] = min_piercing(boxes).value
        return X, stats
    raise ResourceError(f"no sample with nu <= {k_target} in {max_attempts} attempts", size=max_attempts)


def truncate_blow_up(base: Sequence, multiplicity: int, n: int) -> list:
    """Blow up then drop extra copies, last copy number and last box first."""
    total = len(base) * multiplicity
    if n > total:
        raise DomainError(f"cannot truncate {total} boxes to {n}")
    entries = [(i, c) for i in range(len(base)) for c in range(multiplicity)]
    drop = set(sorted(entries, key=lambda e: (-e[1], -e[0]))[: total - n])
    return [base[i] for i, c in entries if (i, c) not in drop]


def build_ramsey_instance(n: int, base: Sequence[Box], multiplicity: int | None = None):
    """Blow-up of ``base`` to exactly ``n`` boxes, with measured clique and independence numbers."""
    if not base:
        raise DomainError("empty base family")
    mult = multiplicity if multiplicity is not None else ceil(n / len(base))
    if mult < 1:
        raise DomainError("multiplicity must be >= 1")
    boxes = truncate_blow_up(list(base), mult, n)
    g = build_graph(boxes)
    omega = max_clique(g, boxes=boxes).value
    alpha = max_independent_set(g).value
    return boxes, {"n": len(boxes), "multiplicity": mult, "omega": omega, "alpha": alpha, "ramsey": max(omega, alpha)}


def build_coloring_instance(base: Sequence[Box], omega_cap: int, n: int | None = None):
    """Blow-up by ``omega_cap // omega(base)``; stats carry ``chi >= n / alpha``."""
    base = list(base)
    gb = build_graph(base)
    omega_base = max_clique(gb, boxes=base).value
    if omega_cap < omega_base:
        raise DomainError(f"omega_cap={omega_cap} is below the base clique number {omega_base}")
    mult = omega_cap // omega_base
    alpha = max_independent_set(gb).value
    boxes = blow_up(base, mult) if n is None else truncate_blow_up(base, mult, n)
    g = build_graph(boxes)
    stats = {
        "n": len(boxes),
        "multiplicity": mult,
        "omega_base": omega_base,
        "omega": max_clique(g, boxes=boxes).value,
        "alpha": max_independent_set(g).value if g.n <= config.budget("mis") else alpha,
        "chi_lower": _frac_str(Fraction(len(boxes), alpha)),
        "chi_lower_int": ceil(Fraction(len(boxes), alpha)),
    }
    if g.n <= config.budget("chromatic"):
        cert = chromatic_number(g)
        stats["chi"] = cert.value
    return boxes, stats
