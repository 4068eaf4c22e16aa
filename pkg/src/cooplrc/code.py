"""Linear codes and cooperative-locality semantics.

A code is carried by a full-rank generator G (k x n) and parity check H
((n-k) x n) over a shared finite field.  The operations here are the
ground-truth oracles: exact minimum distance by enumeration, exact
cooperative locality by subset search, repair-set verification by rank,
plus puncturing/shortening and the disjoint-repair-group scheduler.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .errors import BudgetExceeded, RepairFailure, UncorrectableErasure
from .field import Field
from .matrix import MatrixGF, mat_mul, null_space, rref, vec_mat


@dataclass(frozen=True)
class LinearCode:
    """An (n, k) linear code with generator/parity pair and metadata."""

    field: Field
    G: MatrixGF
    H: MatrixGF
    meta: dict = dc_field(default_factory=dict)
    hints: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    def __post_init__(self):
        if self.G.field != self.field or self.H.field != self.field:
            raise ValueError("generator/parity field mismatch")
        if self.H.cols != self.G.cols:
            raise ValueError("generator/parity length mismatch")
        prod = mat_mul(self.field, self.G.data, self.H.data.T)
        if np.any(prod):
            raise ValueError("G H^T != 0")

    @classmethod
    def from_generator(cls, field: Field, G: MatrixGF, meta=None, hints=None):
        _, rk, _ = rref(G)
        if rk != G.rows:
            raise ValueError(f"generator rows dependent (rank {rk} < {G.rows})")
        return cls(field, G, null_space(G), meta or {}, hints or {})

    @classmethod
    def from_parity(cls, field: Field, H: MatrixGF, meta=None, hints=None):
        G = null_space(H)
        # reduce H to an independent set of rows so rank(H) = n - k
        RH, rkH, _ = rref(H)
        Hred = MatrixGF(field, RH.data[:rkH])
        return cls(field, G, Hred, meta or {}, hints or {})

    def encode(self, message) -> list[int]:
        message = list(message)
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k={self.k}")
        return [int(v) for v in vec_mat(self.field, message, self.G.data)]

    def codewords(self, cap: int = 2**16):
        """Iterate over all q^k codewords (small codes only)."""
        total = self.field.q**self.k
        if total > cap:
            raise BudgetExceeded(f"codeword enumeration {total} exceeds cap {cap}")
        for idx in range(total):
            msg = []
            t = idx
            for _ in range(self.k):
                msg.append(t % self.field.q)
                t //= self.field.q
            yield self.encode(msg)


def encode(code: LinearCode, message) -> list[int]:
    return code.encode(message)


def is_codeword(code: LinearCode, c) -> bool:
    syn = mat_mul(code.field, code.H.data, np.asarray(c, dtype=np.int64).reshape(-1, 1))
    return not np.any(syn)


# ---------------------------------------------------------------------------
# Repair-set semantics (cooperative locality)
# ---------------------------------------------------------------------------


def repair_set_check(code: LinearCode, erased, contacts) -> bool:
    """True iff the symbols in ``erased`` are functions of those in ``contacts``.

    For a linear code this is the rank test: every erased generator column
    lies in the span of the contact columns.
    """
    S = sorted(set(erased))
    gamma = sorted(set(contacts))
    if set(S) & set(gamma):
        raise ValueError("repair set overlaps erased set")
    for i in S + gamma:
        if not 0 <= i < code.n:
            raise ValueError(f"index {i} out of range")
    if not S:
        return True
    return kernels.spans(code.G.data, gamma, S, code.field)


def express_columns(code: LinearCode, targets, support):
    """Coefficients expressing each target generator column over the support.

    Returns {target: [(support_index, coeff), ...]} or raises if a target is
    not in the span.
    """
    f = code.field
    support = list(support)
    A = code.G.data[:, support]
    out = {}
    for t in targets:
        b = code.G.data[:, [t]]
        aug = MatrixGF(f, np.concatenate([A, b], axis=1))
        R, rk, pivots = rref(aug)
        if pivots and pivots[-1] == len(support):
            raise UncorrectableErasure(f"column {t} not in span of {support}")
        # coefficient of support column pivots[r] is R[r, -1]
        coeffs = [
            (support[p], int(R.data[r, -1]))
            for r, p in enumerate(pivots)
            if R.data[r, -1] != 0
        ]
        out[t] = coeffs
    return out


def repair_values(code: LinearCode, c_partial, erased, contacts) -> dict[int, int]:
    """Recover erased symbol values from contact values via span coefficients."""
    f = code.field
    coeffs = express_columns(code, sorted(erased), list(contacts))
    out = {}
    for t, terms in coeffs.items():
        acc = 0
        for idx, lam in terms:
            v = c_partial[idx]
            if v is None:
                raise ValueError(f"contact {idx} has no value")
            acc = f.add(acc, f.mul(lam, v))
        out[t] = acc
    return out


@dataclass
class LocalityCertificate:
    """Worst-case minimal cooperative repair-set size over all ell-subsets."""

    ell: int
    r_achieved: int
    witness_worst: tuple  # (S, minimal Gamma) attaining r_achieved
    exhaustive: bool
    patterns_checked: int = 0


def _greedy_repair(code: LinearCode, S, pool):
    """A valid (not necessarily minimal) repair set: greedy grow then prune."""
    gamma: list[int] = []
    for c in pool:
        if kernels.spans(code.G.data, gamma, S, code.field):
            break
        if not kernels.spans(code.G.data, gamma, [c], code.field):
            gamma.append(c)
    if not kernels.spans(code.G.data, gamma, S, code.field):
        raise UncorrectableErasure(f"no repair set exists for erasure set {tuple(S)}")
    # backward prune
    for c in list(gamma):
        trial = [x for x in gamma if x != c]
        if kernels.spans(code.G.data, trial, S, code.field):
            gamma = trial
    return gamma


def minimal_repair_set(code: LinearCode, erased, pool=None, r_max=None, budget=None):
    """Smallest contact set within ``pool`` repairing ``erased`` (exhaustive).

    Search is by ascending subset size, lexicographic within a size, seeded
    by a column-rank lower bound.  ``budget`` caps the number of candidate
    checks (BudgetExceeded beyond it).
    """
    S = sorted(set(erased))
    if pool is None:
        pool = [i for i in range(code.n) if i not in set(S)]
    pool = sorted(set(pool) - set(S))
    if not kernels.spans(code.G.data, pool, S, code.field):
        raise UncorrectableErasure(f"no repair set within pool for {tuple(S)}")
    ub = _greedy_repair(code, S, pool)
    # lower bound: rank of the erased columns
    sub = MatrixGF(code.field, code.G.data[:, S])
    _, lb, _ = rref(sub)
    limit = len(ub) if r_max is None else min(len(ub), r_max)
    checked = 0
    for size in range(lb, limit):
        for cand in combinations(pool, size):
            checked += 1
            if budget is not None and checked > budget:
                raise BudgetExceeded("repair-set search budget exceeded")
            if kernels.spans(code.G.data, cand, S, code.field):
                return list(cand)
    if r_max is not None and len(ub) > r_max:
        raise UncorrectableErasure(
            f"minimal repair set for {tuple(S)} exceeds r_max={r_max}"
        )
    return ub


def locality_oracle(
    code: LinearCode,
    ell: int,
    r_max: int | None = None,
    budget: int = 20_000_000,
) -> LocalityCertificate:
    """Certify (r, ell)-cooperative locality by scanning all ell-subsets.

    Returns the worst-case minimal repair-set size with a witness pattern.
    When the search budget runs out, remaining patterns fall back to greedy
    upper bounds and the certificate is flagged non-exhaustive.
    """
    n = code.n
    if not 1 <= ell < n:
        raise ValueError(f"ell must be in [1, n), got {ell}")
    worst = -1
    witness = None
    exhaustive = True
    checked = 0
    spent = 0
    for S in combinations(range(n), ell):
        checked += 1
        pool = [i for i in range(n) if i not in S]
        if exhaustive:
            try:
                gamma = minimal_repair_set(
                    code, S, pool, r_max=r_max, budget=budget - spent
                )
                spent += 1  # coarse accounting; fine-grained is inside the search
            except BudgetExceeded:
                exhaustive = False
                gamma = _greedy_repair(code, list(S), pool)
        else:
            gamma = _greedy_repair(code, list(S), pool)
        if len(gamma) > worst:
            worst = len(gamma)
            witness = (tuple(S), tuple(gamma))
    return LocalityCertificate(
        ell=ell,
        r_achieved=worst,
        witness_worst=witness,
        exhaustive=exhaustive,
        patterns_checked=checked,
    )


# ---------------------------------------------------------------------------
# Distance oracle
# ---------------------------------------------------------------------------


def min_distance_oracle(code: LinearCode, cap: int = 2**24) -> int:
    """Exact minimum Hamming weight over nonzero codewords (enumeration)."""
    return kernels.min_weight(code.G.data, code.field, cap=cap)


# ---------------------------------------------------------------------------
# Puncturing / shortening
# ---------------------------------------------------------------------------


def puncture(code: LinearCode, coords) -> LinearCode:
    """Delete the given coordinates from every codeword."""
    coords = sorted(set(coords))
    keep = [i for i in range(code.n) if i not in set(coords)]
    if not keep:
        raise ValueError("cannot puncture away every coordinate")
    Gp = code.G.data[:, keep]
    R, rk, _ = _row_basis(code.field, Gp)
    G = MatrixGF(code.field, R[:rk])
    meta = {"kind": "punctured", "params": {"base": code.meta.get("kind"), "coords": coords}}
    return LinearCode.from_generator(code.field, G, meta=meta)


def shorten(code: LinearCode, coords) -> LinearCode:
    """Keep codewords vanishing on ``coords``, then delete those coordinates."""
    coords = sorted(set(coords))
    keep = [i for i in range(code.n) if i not in set(coords)]
    if not keep:
        raise ValueError("cannot shorten away every coordinate")
    # messages m with (mG) zero on coords: left kernel of G[:, coords]
    sub = MatrixGF(code.field, code.G.data[:, coords].T)
    Mb = null_space(sub)
    Gs = mat_mul(code.field, Mb.data, code.G.data)[:, keep]
    R, rk, _ = _row_basis(code.field, Gs)
    if rk == 0:
        raise ValueError("shortened code is trivial (dimension 0)")
    G = MatrixGF(code.field, R[:rk])
    meta = {"kind": "shortened", "params": {"base": code.meta.get("kind"), "coords": coords}}
    return LinearCode.from_generator(code.field, G, meta=meta)


def _row_basis(field: Field, A: np.ndarray):
    M = MatrixGF(field, A)
    R, rk, piv = rref(M)
    return R.data, rk, piv


# ---------------------------------------------------------------------------
# Disjoint-repair-group scheduler
# ---------------------------------------------------------------------------


@dataclass
class RepairReport:
    """Outcome of one repair episode."""

    erased: tuple
    plan: list
    contacts: int
    success: bool
    details: dict = dc_field(default_factory=dict)


def disjoint_groups_schedule(
    code: LinearCode, groups, erased, c_partial=None
) -> RepairReport:
    """Sequentially repair erased symbols via per-symbol disjoint repair groups.

    ``groups[i]`` lists the disjoint repair groups (index lists, each of size
    at most r-tilde) of symbol i.  With at least t groups per symbol and at
    most t erasures, an erased symbol with a fully intact group always exists;
    the scheduler repairs it and iterates.
    """
    erased = sorted(set(erased))
    t = min(len(groups[i]) for i in range(code.n))
    if len(erased) > t:
        raise ValueError(f"{len(erased)} erasures exceed the group count t={t}")
    for i in range(code.n):
        seen: set[int] = set()
        for grp in groups[i]:
            if i in grp:
                raise ValueError(f"group of symbol {i} contains the symbol itself")
            if seen & set(grp):
                raise ValueError(f"groups of symbol {i} are not disjoint")
            seen |= set(grp)
    remaining = set(erased)
    values = dict(enumerate(c_partial)) if c_partial is not None else None
    plan = []
    contacted: set[int] = set()
    while remaining:
        step = None
        for sym in sorted(remaining):
            for grp in groups[sym]:
                if not (set(grp) & remaining):
                    step = (sym, list(grp))
                    break
            if step:
                break
        if step is None:
            raise RepairFailure(
                "no erased symbol has an intact repair group",
                details={"remaining": sorted(remaining)},
            )
        sym, grp = step
        if not repair_set_check(code, [sym], grp):
            raise RepairFailure(f"declared group {grp} cannot repair symbol {sym}")
        if values is not None:
            val = repair_values(code, [values.get(i) for i in range(code.n)], [sym], grp)
            values[sym] = val[sym]
        contacted |= set(grp) - set(erased)
        plan.append({"repairs": [sym], "contacts": list(grp)})
        remaining.discard(sym)
    details = {}
    if values is not None:
        details["values"] = [values[i] for i in range(code.n)]
    return RepairReport(
        erased=tuple(erased),
        plan=plan,
        contacts=len(contacted),
        success=True,
        details=details,
    )


# ---------------------------------------------------------------------------
# JSON persistence
# ---------------------------------------------------------------------------


def code_to_json(code: LinearCode) -> dict:
    return {
        "field": code.field.to_json(),
        "n": code.n,
        "k": code.k,
        "generator": [[int(v) for v in row] for row in code.G.data],
        "parity_check": [[int(v) for v in row] for row in code.H.data],
        "meta": code.meta,
        "hints": {
            "groups": code.hints.get("groups"),
            "graph": code.hints.get("graph"),
        },
    }


def code_from_json(obj: dict) -> LinearCode:
    f = Field.from_json(obj["field"])
    G = MatrixGF.from_rows(f, obj["generator"])
    code = LinearCode.from_generator(
        f, G, meta=obj.get("meta") or {}, hints=obj.get("hints") or {}
    )
    if code.n != obj["n"] or code.k != obj["k"]:
        raise ValueError("stored (n, k) disagree with generator")
    stored_H = obj.get("parity_check")
    if stored_H is not None:
        Hs = MatrixGF.from_rows(f, stored_H)
        prod = mat_mul(f, code.G.data, Hs.data.T)
        if np.any(prod) or Hs.rows != code.n - code.k:
            raise ValueError("stored parity check inconsistent with generator")
    return code


def save_code(code: LinearCode, path) -> None:
    with open(path, "w") as fh:
        json.dump(code_to_json(code), fh, indent=1)
        fh.write("\n")


def load_code(path) -> LinearCode:
    with open(path) as fh:
        return code_from_json(json.load(fh))
