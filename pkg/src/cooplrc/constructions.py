"""Explicit code families with cooperative locality.

Builders return LinearCode values with construction metadata and local-group
hints:

* ``rs_mds``: Reed-Solomon / MDS via Vandermonde evaluation.
* ``partition_code``: disjoint local blocks, each a short code of distance
  at least ell + 1; rate r/(r + ell^2) for the default MDS blocks.
* ``product_code``: ell-dimensional array with one parity slice per axis;
  rate (r/(r + ell))^ell.
* ``concatenated_code``: inner MDS over GF(q) under an outer MDS over the
  super-symbol alphabet GF(q^(r/ell)).
* ``hadamard_code``: the [2^k - 1, k, 2^(k-1)] binary punctured Hadamard
  (Simplex) code, plus its dedicated recursive repairer that corrects up to
  (n - 1)/2 erasures reading at most ell + 1 symbols.

Also here: repair-cost profiles and the concave-envelope block-count
optimization for partition codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

from .code import LinearCode, RepairReport, min_distance_oracle
from .errors import RepairFailure
from .field import Field, field_new, field_from_size
from .matrix import MatrixGF, mat_mul


# ---------------------------------------------------------------------------
# MDS / Reed-Solomon
# ---------------------------------------------------------------------------


def rs_mds(q, n0: int, k0: int) -> LinearCode:
    """[n0, k0, n0-k0+1] code from a Vandermonde generator.

    Evaluation points are the first n0 field elements, so n0 <= q is
    required for distinctness.  ``q`` may be a size or a Field.
    """
    f = q if isinstance(q, Field) else field_from_size(q)
    if not 1 <= k0 <= n0:
        raise ValueError(f"need 1 <= k0 <= n0, got k0={k0}, n0={n0}")
    if n0 > f.q:
        raise ValueError(f"n0={n0} evaluation points need q >= n0, got q={f.q}")
    G = np.zeros((k0, n0), dtype=np.int64)
    for j in range(n0):
        for i in range(k0):
            G[i, j] = f.pow(j, i)
    meta = {"kind": "rs_mds", "params": {"q": f.q, "n0": n0, "k0": k0}}
    return LinearCode.from_generator(f, MatrixGF(f, G), meta=meta)


# ---------------------------------------------------------------------------
# Partition codes
# ---------------------------------------------------------------------------


def partition_code(q, k: int, r: int, ell: int, local: LinearCode | None = None) -> LinearCode:
    """Disjoint local blocks, each encoding r/ell message symbols.

    Default blocks are [r/ell + ell, r/ell] MDS, giving rate r/(r + ell^2).
    A custom ``local`` code must have dimension r/ell and minimum distance
    at least ell + 1 (so each block survives any ell erasures).
    """
    if r % ell != 0:
        raise ValueError(f"ell={ell} must divide r={r}")
    k0 = r // ell
    if k % k0 != 0:
        raise ValueError(f"r/ell={k0} must divide k={k}")
    if local is None:
        local = rs_mds(q, k0 + ell, k0)
    if local.k != k0:
        raise ValueError(f"local code dimension {local.k} != r/ell = {k0}")
    d_local = min_distance_oracle(local)
    if d_local <= ell:
        raise ValueError(f"local code distance {d_local} <= ell={ell}")
    f = local.field
    blocks = k // k0
    n = blocks * local.n
    G = np.zeros((k, n), dtype=np.int64)
    groups = []
    for b in range(blocks):
        G[b * k0 : (b + 1) * k0, b * local.n : (b + 1) * local.n] = local.G.data
        groups.append(list(range(b * local.n, (b + 1) * local.n)))
    meta = {
        "kind": "partition",
        "params": {
            "q": f.q,
            "k": k,
            "r": r,
            "ell": ell,
            "blocks": blocks,
            "local": local.meta,
            "local_dmin": d_local,
        },
    }
    hints = {"groups": groups}
    return LinearCode.from_generator(f, MatrixGF(f, G), meta=meta, hints=hints)


# ---------------------------------------------------------------------------
# Repair-cost profiles and the concave-envelope block optimization
# ---------------------------------------------------------------------------


@dataclass
class RepairCostProfile:
    """Per-block repair cost and its upper concave envelope on [1, ell].

    ``cost[x]`` is the number of symbols contacted to repair x erasures in
    one local block; the envelope interpolates the upper convex hull of the
    integer points, making block-count averaging (Jensen) valid.
    """

    cost: dict
    hull: list = dc_field(default_factory=list)  # (x, y) Fraction vertices

    def __post_init__(self):
        pts = sorted((Fraction(x), Fraction(self.cost[x])) for x in self.cost)
        if not pts:
            raise ValueError("empty cost profile")
        hull: list = []
        for p in pts:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                # drop the middle point when it lies on or below the chord
                if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                    hull.pop()
                else:
                    break
            hull.append(p)
        self.hull = hull

    def envelope(self, x) -> Fraction:
        x = Fraction(x)
        if x < self.hull[0][0] or x > self.hull[-1][0]:
            raise ValueError(f"envelope argument {x} outside profile domain")
        for (x1, y1), (x2, y2) in zip(self.hull, self.hull[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        return self.hull[-1][1]


def profile_from_cost(values) -> RepairCostProfile:
    """Profile from a cost sequence for x = 1..ell."""
    return RepairCostProfile({x + 1: v for x, v in enumerate(values)})


def envelope_optimize(profile: RepairCostProfile, p_candidates, ell: int):
    """Block count minimizing p * envelope(ell / p) over the candidates.

    Averaging the worst-case split of ell erasures over p blocks through the
    concave envelope bounds the total repair cost by p * envelope(ell / p).
    """
    best = None
    for p in p_candidates:
        x = Fraction(ell, p)
        if x < profile.hull[0][0] or x > profile.hull[-1][0]:
            continue
        bound = p * profile.envelope(x)
        if best is None or bound < best[1]:
            best = (p, bound)
    if best is None:
        raise ValueError("no candidate block count keeps ell/p inside the profile domain")
    return best


# ---------------------------------------------------------------------------
# Product codes
# ---------------------------------------------------------------------------


def product_code(q: int, r: int, ell: int) -> LinearCode:
    """ell-dimensional array code of side r/ell with a parity slice per axis.

    Messages fill an (r/ell)^ell array; each axis-parallel line gains a
    parity symbol equal to the sum of the line, extending every side to
    r/ell + 1.  Rate (r/(r+ell))^ell; every axis line is a repair group.
    """
    if r % ell != 0:
        raise ValueError(f"ell={ell} must divide r={r}")
    s = r // ell
    if s < 1:
        raise ValueError("side r/ell must be >= 1")
    f = field_from_size(q)
    msg_idx = list(iproduct(range(s), repeat=ell))
    cw_idx = list(iproduct(range(s + 1), repeat=ell))
    k, n = len(msg_idx), len(cw_idx)
    G = np.zeros((k, n), dtype=np.int64)
    for row, u in enumerate(msg_idx):
        for col, t in enumerate(cw_idx):
            if all(ti == ui or ti == s for ti, ui in zip(t, u)):
                G[row, col] = 1
    col_of = {t: i for i, t in enumerate(cw_idx)}
    groups = []
    for axis in range(ell):
        others = [idx for idx in iproduct(range(s + 1), repeat=ell - 1)]
        for rest in others:
            line = []
            for v in range(s + 1):
                t = rest[:axis] + (v,) + rest[axis:]
                line.append(col_of[t])
            groups.append(line)
    meta = {
        "kind": "product",
        "params": {"q": q, "r": r, "ell": ell, "side": s},
    }
    return LinearCode.from_generator(
        f, MatrixGF(f, G), meta=meta, hints={"groups": groups}
    )


# ---------------------------------------------------------------------------
# Concatenated codes
# ---------------------------------------------------------------------------


@dataclass
class ConcatenationParams:
    """Inner-distance parameter x and the derived outer code shape."""

    x: int
    r_out: int | None = None
    ell_out: int | None = None

    def resolve(self, ell: int) -> "ConcatenationParams":
        r_out = self.r_out if self.r_out is not None else self.x + 1
        ell_out = self.ell_out if self.ell_out is not None else ell // (self.x + 1)
        if r_out > self.x + 1:
            raise ValueError(f"outer locality {r_out} exceeds x+1 = {self.x + 1}")
        return ConcatenationParams(self.x, r_out, ell_out)


def concatenated_code(
    q: int, r: int, ell: int, params: ConcatenationParams, groups: int = 1
) -> LinearCode:
    """Inner [r/ell + x, r/ell, x+1] MDS under an outer MDS on super symbols.

    Super symbols live in GF(q^(r/ell)); the outer code per group is an
    [x+1+floor(ell/(x+1)), x+1] MDS over that alphabet, expanded to GF(q)
    via multiplication matrices and the base-q digit map.  Requires prime q
    (super-symbol alphabet is a plain extension field) and even ell or
    ell = 3; other odd ell are not constructed.
    """
    if r % ell != 0:
        raise ValueError(f"ell={ell} must divide r={r}")
    if ell % 2 != 0 and ell != 3:
        raise ValueError(f"odd ell={ell} unsupported (only ell=3)")
    x = params.x
    if not 1 <= x <= ell - 1:
        raise ValueError(f"need 1 <= x <= ell-1, got x={x}")
    params = params.resolve(ell)
    m = r // ell
    base = field_new(q)  # raises for non-prime q
    if m + x > q:
        raise ValueError(f"inner MDS [{m + x}, {m}] needs q >= {m + x}, got q={q}")
    QF = field_new(q, m)
    n_out = x + 1 + ell // (x + 1)
    if n_out > QF.q:
        raise ValueError(f"outer MDS length {n_out} exceeds super alphabet {QF.q}")
    outer = rs_mds(QF, n_out, x + 1)
    inner = rs_mds(base, m + x, m)
    k_grp = (x + 1) * m
    n_grp = n_out * (m + x)
    G = np.zeros((groups * k_grp, groups * n_grp), dtype=np.int64)
    for g in range(groups):
        for i in range(x + 1):
            for c in range(m):
                row = g * k_grp + i * m + c
                for j in range(n_out):
                    # digit vector of A[i,j] * x^c, then inner-encode it
                    w = np.array(
                        QF.digits(QF.mul(int(outer.G.data[i, j]), q**c)),
                        dtype=np.int64,
                    )
                    block = (w @ inner.G.data) % q
                    c0 = g * n_grp + j * (m + x)
                    G[row, c0 : c0 + (m + x)] = block
    rate = Fraction(x + 1, n_out) * Fraction(m, m + x)
    meta = {
        "kind": "concatenated",
        "params": {
            "q": q,
            "r": r,
            "ell": ell,
            "x": x,
            "r_out": params.r_out,
            "ell_out": params.ell_out,
            "groups": groups,
            "rate": [rate.numerator, rate.denominator],
        },
    }
    hint_groups = [list(range(g * n_grp, (g + 1) * n_grp)) for g in range(groups)]
    return LinearCode.from_generator(
        base, MatrixGF(base, G), meta=meta, hints={"groups": hint_groups}
    )


# ---------------------------------------------------------------------------
# Punctured Hadamard (Simplex) codes
# ---------------------------------------------------------------------------

# coordinate order of the classic 7-symbol example (a,b,c,a+b,b+c,c+a,a+b+c)
# as a permutation of the canonical integer-indexed order
_EXAMPLE_ORDER_K3 = [0, 1, 3, 2, 5, 4, 6]


def hadamard_code(k: int) -> LinearCode:
    """[2^k - 1, k, 2^(k-1)] binary code; coordinate p carries the parity
    <m, bits(p+1)> with bit 0 the least significant."""
    if not 2 <= k <= 20:
        raise ValueError(f"k must be in [2, 20], got {k}")
    n = 2**k - 1
    f = field_new(2)
    G = np.zeros((k, n), dtype=np.int64)
    for p in range(n):
        for j in range(k):
            G[j, p] = (p + 1) >> j & 1
    params: dict = {"k": k}
    if k == 3:
        params["example_order"] = list(_EXAMPLE_ORDER_K3)
    meta = {"kind": "hadamard", "params": params}
    return LinearCode.from_generator(f, MatrixGF(f, G), meta=meta)


# cell states for the recursive repairer: ("known", value) for resolved
# values, ("read", physical_index, xor_constant) for symbols obtainable by
# one physical read, ("erased",) otherwise
_ERASED = ("erased",)


def _cell_cost(cell, contacts) -> int:
    if cell[0] == "known":
        return 0
    if cell[0] == "read":
        return 0 if cell[1] in contacts else 1
    return 10**9


def _cell_value(cells, i, read):
    cell = cells[i]
    if cell[0] == "known":
        return cell[1]
    if cell[0] == "read":
        v = read(cell[1]) ^ cell[2]
        cells[i] = ("known", v)
        return v
    raise RepairFailure(f"cannot evaluate erased cell {i}")


def _best_pair(cells, i, half, contacts):
    """Index j minimizing extra reads for the identity c_i = c_j + c_(i xor j)."""
    n1 = 2 * half - 1
    best = None
    for j in range(1, n1 + 1):
        jj = i ^ j
        if j >= jj or jj > n1 or j == i or jj == i:
            continue
        if cells[j][0] == "erased" or cells[jj][0] == "erased":
            continue
        cost = _cell_cost(cells[j], contacts) + _cell_cost(cells[jj], contacts)
        if best is None or cost < best[0]:
            best = (cost, j, jj)
    return best


def _hadamard_solve(cells, k, read, contacts):
    """Return values for every erased cell of a level-k instance."""
    erased = [i for i in cells if cells[i][0] == "erased"]
    if not erased:
        return {}
    half = 2 ** (k - 1)
    if len(erased) == 1:
        i = erased[0]
        pair = _best_pair(cells, i, half, contacts)
        if pair is None:
            raise RepairFailure(f"no intact pair repairs cell {i}")
        _, j, jj = pair
        return {i: _cell_value(cells, j, read) ^ _cell_value(cells, jj, read)}
    if k <= 1:
        raise RepairFailure("erasure count exceeds (n - 1) / 2")
    # pivot value c_half = m_k, from the cell or from an intact pair
    if cells[half][0] != "erased":
        p = _cell_value(cells, half, read)
    else:
        best = None
        for i in range(1, half):
            a, b = cells[i], cells[half + i]
            if a[0] == "erased" or b[0] == "erased":
                continue
            cost = _cell_cost(a, contacts) + _cell_cost(b, contacts)
            if best is None or cost < best[0]:
                best = (cost, i)
        if best is None:
            raise RepairFailure("no intact prefix/suffix pair recovers the pivot")
        i = best[1]
        p = _cell_value(cells, i, read) ^ _cell_value(cells, half + i, read)
    # fold m_k out: cell m of the smaller code equals c_m = c_(half+m) + p
    sub = {}
    for mm in range(1, half):
        options = [cells[mm]]
        b = cells[half + mm]
        if b[0] == "known":
            options.append(("known", b[1] ^ p))
        elif b[0] == "read":
            options.append(("read", b[1], b[2] ^ p))
        options = [o for o in options if o[0] != "erased"]
        if options:
            sub[mm] = min(options, key=lambda o: _cell_cost(o, contacts))
        else:
            sub[mm] = _ERASED
    sol = _hadamard_solve(sub, k - 1, read, contacts)
    for mm, v in sol.items():
        sub[mm] = ("known", v)
    out = {}
    for i in erased:
        if i == half:
            out[i] = p
        elif i < half:
            out[i] = _cell_value(sub, i, read)
        else:
            out[i] = _cell_value(sub, i - half, read) ^ p
    return out


def hadamard_repair(code: LinearCode, c_partial, erased) -> RepairReport:
    """Correct up to (n-1)/2 erasures of a Hadamard code recursively.

    Splitting on the top message bit, the suffix half satisfies
    c_(half+m) = c_half + c_m, so once the pivot c_half is known (directly
    or from any intact prefix/suffix pair) the instance folds to the
    half-size code.  Reads at most len(erased) + 1 distinct symbols.
    """
    if code.meta.get("kind") != "hadamard":
        raise ValueError("hadamard_repair requires a hadamard code")
    k = code.meta["params"]["k"]
    n = code.n
    erased = sorted(set(erased))
    if len(erased) > (n - 1) // 2:
        raise RepairFailure(
            f"{len(erased)} erasures exceed the correctable limit {(n - 1) // 2}"
        )
    erased_set = set(erased)
    contacts: set[int] = set()

    def read(phys: int) -> int:
        if phys in erased_set:
            raise RepairFailure(f"attempted to read erased symbol {phys}")
        contacts.add(phys)
        v = c_partial[phys]
        if v is None:
            raise RepairFailure(f"symbol {phys} has no value")
        return v

    cells = {}
    for i in range(1, n + 1):
        cells[i] = _ERASED if i - 1 in erased_set else ("read", i - 1, 0)
    sol = _hadamard_solve(cells, k, read, contacts)
    values = list(c_partial)
    for i, v in sol.items():
        values[i - 1] = v
    return RepairReport(
        erased=tuple(erased),
        plan=[{"repairs": erased, "contacts": sorted(contacts)}],
        contacts=len(contacts),
        success=True,
        details={"values": values},
    )
