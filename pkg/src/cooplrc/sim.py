"""Repair experimentation: adversarial sweeps, Monte Carlo, bandwidth.

A strategy names one of the repair algorithms in the package plus its
context (graph, local distance, ...).  Sweeps run a strategy over erasure
patterns — every pattern up to a cap, or seeded uniform sampling — always on
real codewords, verifying each repair against re-encoding.  The exact
per-group erasure-tolerance probability (multivariate hypergeometric) serves
as the oracle for random sweeps on partition-style codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .code import (
    LinearCode,
    RepairReport,
    minimal_repair_set,
    repair_values,
)
from .constructions import hadamard_repair
from .errors import CoopLRCError
from .graph_codes import expander_repair, peeling_repair, zemor_decode
from .graphs import BipartiteGraph


@dataclass
class RepairStrategy:
    """Repair algorithm selector.

    kinds: generic-linear, group-scheduler, peeling, expander, zemor,
    hadamard-recursive.  ``params`` carries strategy context, e.g. the
    bipartite graph for peeling/expander or t for expander decoding.
    """

    kind: str
    params: dict = dc_field(default_factory=dict)


_KINDS = {
    "generic-linear",
    "group-scheduler",
    "peeling",
    "expander",
    "zemor",
    "hadamard-recursive",
}


def _as_strategy(strategy) -> RepairStrategy:
    if isinstance(strategy, str):
        strategy = RepairStrategy(strategy)
    if strategy.kind not in _KINDS:
        raise ValueError(f"unknown strategy {strategy.kind!r}")
    return strategy


def apply_strategy(
    code: LinearCode, strategy, erased, c_partial
) -> RepairReport:
    """Run one repair episode; raises on strategy/code mismatch."""
    strategy = _as_strategy(strategy)
    kind = strategy.kind
    erased = sorted(set(erased))
    if kind == "generic-linear":
        gamma = minimal_repair_set(code, erased)
        vals = repair_values(code, c_partial, erased, gamma)
        full = list(c_partial)
        for i, v in vals.items():
            full[i] = v
        return RepairReport(
            erased=tuple(erased),
            plan=[{"repairs": erased, "contacts": gamma}],
            contacts=len(gamma),
            success=True,
            details={"values": full},
        )
    if kind == "group-scheduler":
        return _group_scheduler(code, erased, c_partial)
    if kind == "peeling":
        g = strategy.params.get("graph")
        if not isinstance(g, BipartiteGraph):
            raise ValueError("peeling strategy needs params['graph']")
        return peeling_repair(code, g, erased, c_partial)
    if kind == "expander":
        g = strategy.params.get("graph")
        t = strategy.params.get("t")
        if not isinstance(g, BipartiteGraph) or t is None:
            raise ValueError("expander strategy needs params['graph'] and params['t']")
        return expander_repair(code, g, t, erased, c_partial)
    if kind == "zemor":
        trace = zemor_decode(code, c_partial, erased)
        return RepairReport(
            erased=tuple(erased),
            plan=trace.rounds,
            contacts=trace.contacts,
            success=trace.converged,
            details={"values": trace.values, "rounds": trace.rounds},
        )
    if kind == "hadamard-recursive":
        return hadamard_repair(code, c_partial, erased)
    raise AssertionError(kind)


def _group_scheduler(code: LinearCode, erased, c_partial) -> RepairReport:
    """Per-group repair: each local block fixes its own erasures from the
    smallest repair set inside the block."""
    groups = code.hints.get("groups")
    if not groups:
        raise ValueError("group-scheduler needs hints['groups']")
    owner = {}
    for gi, grp in enumerate(groups):
        for s in grp:
            owner.setdefault(s, gi)
    by_group: dict[int, list[int]] = {}
    for s in erased:
        if s not in owner:
            raise ValueError(f"erased symbol {s} belongs to no group")
        by_group.setdefault(owner[s], []).append(s)
    full = list(c_partial)
    plan = []
    contacts: set[int] = set()
    for gi, hit in sorted(by_group.items()):
        pool = [s for s in groups[gi] if s not in set(erased)]
        try:
            gamma = minimal_repair_set(code, hit, pool)
        except CoopLRCError as exc:
            return RepairReport(
                erased=tuple(erased),
                plan=plan,
                contacts=len(contacts),
                success=False,
                details={"failed_group": gi, "reason": str(exc)},
            )
        vals = repair_values(code, full, hit, gamma)
        for i, v in vals.items():
            full[i] = v
        contacts.update(gamma)
        plan.append({"repairs": hit, "group": gi, "contacts": gamma})
    return RepairReport(
        erased=tuple(erased),
        plan=plan,
        contacts=len(contacts),
        success=True,
        details={"values": full},
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    ell: int
    patterns_checked: int
    successes: int
    max_contacts: int
    mean_contacts: float
    worst_pattern: tuple
    exhaustive: bool
    seed: int | None = None
    strategy: str = ""
    code_meta: dict = dc_field(default_factory=dict)
    total_contacts: int = 0
    failures: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "code_meta": self.code_meta,
            "strategy": self.strategy,
            "ell": self.ell,
            "patterns_checked": self.patterns_checked,
            "successes": self.successes,
            "max_contacts": self.max_contacts,
            "mean_contacts": self.mean_contacts,
            "worst_pattern": list(self.worst_pattern),
            "exhaustive": self.exhaustive,
            "seed": self.seed,
        }


def _run_patterns(code, strategy, ell, patterns, rng, exhaustive, seed, keep_failures=64):
    strategy = _as_strategy(strategy)
    n = code.n
    checked = successes = total_contacts = 0
    max_contacts = -1
    worst: tuple = ()
    first_failure = None
    failures = []
    for S in patterns:
        checked += 1
        msg = [int(x) for x in rng.integers(0, code.field.q, size=code.k)]
        cw = code.encode(msg)
        cp = [None if i in S else cw[i] for i in range(n)]
        try:
            rep = apply_strategy(code, strategy, S, cp)
            ok = rep.success and rep.details.get("values") == cw
        except CoopLRCError:
            rep = None
            ok = False
        if ok:
            successes += 1
            total_contacts += rep.contacts
            if rep.contacts > max_contacts:
                max_contacts = rep.contacts
                worst = tuple(S)
        else:
            if first_failure is None:
                first_failure = tuple(S)
            if len(failures) < keep_failures:
                failures.append(tuple(S))
    if first_failure is not None:
        worst = first_failure
    return SweepReport(
        ell=ell,
        patterns_checked=checked,
        successes=successes,
        max_contacts=max(max_contacts, 0),
        mean_contacts=total_contacts / successes if successes else 0.0,
        worst_pattern=worst,
        exhaustive=exhaustive,
        seed=seed,
        strategy=strategy.kind,
        code_meta=code.meta,
        total_contacts=total_contacts,
        failures=failures,
    )


def adversarial_sweep(
    code: LinearCode, strategy, ell: int, cap: int = 200_000, seed: int = 0
) -> SweepReport:
    """Run the strategy on every ell-subset (or a seeded sample past the cap)."""
    n = code.n
    rng = np.random.default_rng(seed)
    total = comb(n, ell)
    if total <= cap:
        patterns = combinations(range(n), ell)
        exhaustive = True
    else:
        patterns = (
            tuple(sorted(int(x) for x in rng.choice(n, size=ell, replace=False)))
            for _ in range(cap)
        )
        exhaustive = False
    return _run_patterns(code, strategy, ell, patterns, rng, exhaustive, seed)


def random_sweep(
    code: LinearCode, strategy, ell: int, trials: int, seed: int = 0
) -> SweepReport:
    """Uniform random ell-subsets, one per trial (PCG64 generator, seeded)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = code.n
    rng = np.random.default_rng(seed)
    patterns = (
        tuple(sorted(int(x) for x in rng.choice(n, size=ell, replace=False)))
        for _ in range(trials)
    )
    return _run_patterns(code, strategy, ell, patterns, rng, False, seed)


# ---------------------------------------------------------------------------
# Exact random-erasure oracle and bandwidth accounting
# ---------------------------------------------------------------------------


def group_tolerance_probability(group_sizes, ell: int, t: int) -> Fraction:
    """P[no group receives more than t of ell uniform erasures], exact.

    Multivariate hypergeometric: convolve per-group generating polynomials
    sum_e C(n_i, e) x^e truncated at t, divided by C(n, ell).
    """
    n = sum(group_sizes)
    if ell > n:
        raise ValueError("more erasures than symbols")
    ways = [Fraction(1)] + [Fraction(0)] * ell
    for size in group_sizes:
        new = [Fraction(0)] * (ell + 1)
        for have in range(ell + 1):
            if ways[have] == 0:
                continue
            for e in range(0, min(t, size, ell - have) + 1):
                new[have + e] += ways[have] * comb(size, e)
        ways = new
    return ways[ell] / comb(n, ell)


def bandwidth_account(reports) -> dict:
    """Aggregate contact totals per strategy; all reports must share a code."""
    table: dict = {}
    meta = None
    for rep in reports:
        if meta is None:
            meta = rep.code_meta
        elif rep.code_meta != meta:
            raise ValueError("bandwidth accounting rejects mixed-code report streams")
        row = table.setdefault(
            rep.strategy,
            {"symbols_contacted": 0, "repairs": 0, "max_contacts": 0},
        )
        row["symbols_contacted"] += rep.total_contacts
        row["repairs"] += rep.successes
        row["max_contacts"] = max(row["max_contacts"], rep.max_contacts)
    for row in table.values():
        row["contacts_per_repair"] = (
            row["symbols_contacted"] / row["repairs"] if row["repairs"] else 0.0
        )
    return table
