"""Codes built on graphs: girth-based edge codes, unbalanced expander codes,
and double-cover codes with the alternating-round erasure decoder.

Edge codes place one symbol per edge of a bipartite graph with a sum-to-zero
constraint per vertex; peeling repairs any girth-1 erasures.  Expander codes
place symbols on left vertices with a local MDS constraint per right vertex;
good expansion guarantees a right vertex with few erasures at every step.
Double-cover codes put a local MDS code on every vertex of a bipartite lift
and decode by alternating sides; the expander mixing lemma makes the
uncorrected-vertex sets contract geometrically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .code import LinearCode, RepairReport, repair_values
from .constructions import rs_mds
from .errors import RepairFailure
from .field import field_from_size
from .graphs import BipartiteGraph, Graph, ExpansionCertificate, double_cover
from .matrix import MatrixGF


# ---------------------------------------------------------------------------
# Girth-based edge codes with peeling repair
# ---------------------------------------------------------------------------


def _vertex_edge_incidence(g: BipartiteGraph) -> list[list[int]]:
    """Incident edge indices per vertex (left block then right block)."""
    inc = [[] for _ in range(g.left_count + g.right_count)]
    for i, (l, r) in enumerate(g.edges):
        inc[l].append(i)
        inc[g.left_count + r].append(i)
    return inc


def edge_code(g: BipartiteGraph, q: int = 2) -> LinearCode:
    """Symbols on edges; each vertex constrains its incident edges to sum to 0."""
    n = len(g.edges)
    if n == 0:
        raise ValueError("graph has no edges")
    comps = _connected_components(g)
    if comps > 1:
        warnings.warn(f"graph has {comps} components; rank accounts for it")
    f = field_from_size(q)
    inc = _vertex_edge_incidence(g)
    H = np.zeros((len(inc), n), dtype=np.int64)
    for v, edges in enumerate(inc):
        for e in edges:
            H[v, e] = 1
    meta = {
        "kind": "edge_code",
        "params": {"q": q, "left": g.left_count, "right": g.right_count},
    }
    return LinearCode.from_parity(f, MatrixGF(f, H), meta=meta)


def _connected_components(g: BipartiteGraph) -> int:
    total = g.left_count + g.right_count
    adj = g.as_graph().adjacency()
    seen = [False] * total
    comps = 0
    for s in range(total):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return comps


def peeling_repair(
    code: LinearCode, g: BipartiteGraph, erased, c_partial=None
) -> RepairReport:
    """Repeatedly solve any vertex constraint with exactly one erased edge.

    Succeeds for fewer than girth erasures; otherwise may halt on a stopping
    set (every touched vertex sees >= 2 erasures), reported in the details.
    Lowest-index qualifying vertex first, for deterministic traces.
    """
    f = code.field
    erased = sorted(set(erased))
    inc = _vertex_edge_incidence(g)
    remaining = set(erased)
    values = dict(enumerate(c_partial)) if c_partial is not None else None
    contacts: set[int] = set()
    plan = []
    while remaining:
        pick = None
        for v, edges in enumerate(inc):
            hit = [e for e in edges if e in remaining]
            if len(hit) == 1:
                pick = (v, hit[0], edges)
                break
        if pick is None:
            stopping = sorted(remaining)
            return RepairReport(
                erased=tuple(erased),
                plan=plan,
                contacts=len(contacts),
                success=False,
                details={"stopping_set": stopping},
            )
        v, e, edges = pick
        others = [x for x in edges if x != e]
        contacts.update(x for x in others if x not in set(erased))
        if values is not None:
            acc = 0
            for x in others:
                if values.get(x) is None:
                    raise RepairFailure(f"edge {x} has no value")
                acc = f.add(acc, values[x])
            values[e] = f.neg(acc)
        plan.append({"repairs": [e], "vertex": v, "contacts": others})
        remaining.discard(e)
    details = {}
    if values is not None:
        details["values"] = [values[i] for i in range(code.n)]
    return RepairReport(
        erased=tuple(erased),
        plan=plan,
        contacts=len(contacts),
        success=True,
        details=details,
    )


# ---------------------------------------------------------------------------
# Unbalanced expander codes
# ---------------------------------------------------------------------------


def unbalanced_expander_code(g: BipartiteGraph, q: int, t: int) -> LinearCode:
    """Symbols on left vertices; each right vertex's neighborhood is a
    codeword of a [Delta, Delta - t, t + 1] MDS code."""
    rdeg = g.right_degrees()
    if len(set(rdeg)) != 1:
        raise ValueError("right degree must be constant")
    delta = rdeg[0]
    if not 1 <= t < delta:
        raise ValueError(f"need 1 <= t < Delta={delta}, got t={t}")
    if q < delta:
        raise ValueError(f"local MDS of length {delta} needs q >= {delta}, got q={q}")
    f = field_from_size(q)
    local = rs_mds(f, delta, delta - t)
    nbr = [[] for _ in range(g.right_count)]
    for l, r in g.edges:
        nbr[r].append(l)
    rows = []
    for v in range(g.right_count):
        cols = sorted(nbr[v])
        for hrow in local.H.data:
            row = np.zeros(g.left_count, dtype=np.int64)
            for j, u in enumerate(cols):
                row[u] = hrow[j]
            rows.append(row)
    H = MatrixGF(f, np.array(rows, dtype=np.int64))
    meta = {
        "kind": "unbalanced_expander",
        "params": {"q": q, "t": t, "delta": delta, "local": local.meta},
    }
    return LinearCode.from_parity(f, H, meta=meta)


def expander_repair(
    code: LinearCode, g: BipartiteGraph, t: int, erased, c_partial=None
) -> RepairReport:
    """Repeatedly pick a right vertex with 1..t erased neighbors and
    MDS-decode its neighborhood from Delta - t intact symbols."""
    f = code.field
    erased = sorted(set(erased))
    delta = g.right_degrees()[0]
    local = rs_mds(f, delta, delta - t)
    nbr = [sorted({l for l, r in g.edges if r == v}) for v in range(g.right_count)]
    remaining = set(erased)
    values = dict(enumerate(c_partial)) if c_partial is not None else None
    contacts: set[int] = set()
    reads_actual = 0
    plan = []
    while remaining:
        pick = None
        for v in range(g.right_count):
            hit = [u for u in nbr[v] if u in remaining]
            if 1 <= len(hit) <= t:
                pick = (v, hit)
                break
        if pick is None:
            raise RepairFailure(
                "no right vertex with at most t erased neighbors",
                details={"remaining": sorted(remaining)},
            )
        v, hit = pick
        cols = nbr[v]
        intact_local = [j for j, u in enumerate(cols) if u not in remaining]
        support = intact_local[: delta - t]
        contacts.update(cols[j] for j in support if cols[j] not in set(erased))
        reads_actual += len(support)
        if values is not None:
            local_partial = [None] * delta
            for j in support:
                local_partial[j] = values[cols[j]]
            hit_local = [j for j, u in enumerate(cols) if u in hit]
            got = repair_values(local, local_partial, hit_local, support)
            for j, val in got.items():
                values[cols[j]] = val
        plan.append({"repairs": list(hit), "vertex": v, "contacts": [cols[j] for j in support]})
        remaining -= set(hit)
    details = {"reads_actual": reads_actual, "reads_bound": len(erased) * (delta - t)}
    if values is not None:
        details["values"] = [values[i] for i in range(code.n)]
    return RepairReport(
        erased=tuple(erased),
        plan=plan,
        contacts=len(contacts),
        success=True,
        details=details,
    )


def expander_distance_bound(cert: ExpansionCertificate, t: int, alpha_n: int):
    """Lower bound ceil((2 - eps - eps/t) * alpha_n) on the code distance.

    Returns (bound, advisory); advisory is True when the certificate is not
    exhaustive up to alpha_n, in which case the bound is not certified.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    eps = cert.epsilon_worst
    bound = math.ceil((2 - eps - eps / t) * alpha_n)
    advisory = not cert.exhaustive or cert.s_max < alpha_n
    return bound, advisory


def girth_distance_bound(g_girth: int, dtilde: int = 2) -> int:
    """Distance lower bound dtilde*((dtilde-1)^(g/2) - 1)/(dtilde-2) from the
    girth 2g of the edge/vertex incidence bipartite graph.

    dtilde is the minimum distance of the per-vertex constituent code; the
    sum-to-zero case dtilde = 2 degenerates to the analytic limit g.
    """
    if g_girth < 3:
        raise ValueError("girth must be >= 3")
    if dtilde < 2:
        raise ValueError("constituent code distance must be >= 2")
    if dtilde == 2:
        return g_girth
    # g/2 with the exact girth value even when odd: use Fraction-free integer
    # form for even girth, float otherwise rounded down (bound stays valid).
    exponent = g_girth / 2
    if g_girth % 2 == 0:
        power = (dtilde - 1) ** (g_girth // 2)
    else:
        power = math.floor((dtilde - 1) ** exponent)
    return dtilde * (power - 1) // (dtilde - 2)


# ---------------------------------------------------------------------------
# Double-cover codes with the alternating-round decoder
# ---------------------------------------------------------------------------


@dataclass
class DecodeTrace:
    """Round log of the alternating decoder."""

    rounds: list  # dicts: side, decoded vertices, s_size
    converged: bool
    contacts: int
    values: list | None = None
    details: dict = dc_field(default_factory=dict)


def zemor_code(g: Graph, q: int, d0: int) -> LinearCode:
    """Code on double-cover edges with a distance-d0 local MDS per vertex."""
    degs = set(len(a) for a in g.adjacency())
    if len(degs) != 1:
        raise ValueError("base graph must be regular")
    delta = degs.pop()
    if not 2 <= d0 <= delta:
        raise ValueError(f"need 2 <= d0 <= Delta={delta}, got {d0}")
    if q < delta:
        raise ValueError(f"local MDS of length {delta} needs q >= {delta}")
    cover = double_cover(g)
    f = field_from_size(q)
    local = rs_mds(f, delta, delta - d0 + 1)
    inc = _vertex_edge_incidence(cover)
    rows = []
    for v, edges in enumerate(inc):
        for hrow in local.H.data:
            row = np.zeros(len(cover.edges), dtype=np.int64)
            for j, e in enumerate(edges):
                row[e] = hrow[j]
            rows.append(row)
    H = MatrixGF(f, np.array(rows, dtype=np.int64))
    meta = {
        "kind": "zemor",
        "params": {
            "q": q,
            "d0": d0,
            "delta": delta,
            "N": g.vertex_count,
            "base_edges": [list(e) for e in g.edges],
            "cover_edges": [list(e) for e in cover.edges],
        },
    }
    return LinearCode.from_parity(f, H, meta=meta)


def zemor_cover(code: LinearCode) -> BipartiteGraph:
    p = code.meta["params"]
    return BipartiteGraph(p["N"], p["N"], tuple(tuple(e) for e in p["cover_edges"]))


def zemor_feasible_epsilon(d0: int, lam: float) -> float:
    """Largest eps with d0 >= (1 + eps) * lam (contraction precondition)."""
    if lam <= 0:
        return math.inf
    return d0 / lam - 1.0


def zemor_decode(
    code: LinearCode, c_partial, erased, max_rounds: int | None = None
) -> DecodeTrace:
    """Alternating-side synchronous erasure correction.

    Each round, every vertex of the active side with 1..d0-1 erased incident
    edges decodes its local codeword from Delta - d0 + 1 intact positions;
    decoded values become visible in the next round.  S^i records the active
    side's vertices that held erasures but could not act.
    """
    if code.meta.get("kind") != "zemor":
        raise ValueError("zemor_decode requires a double-cover code")
    p = code.meta["params"]
    delta, d0, N = p["delta"], p["d0"], p["N"]
    f = code.field
    cover = zemor_cover(code)
    local = rs_mds(f, delta, delta - d0 + 1)
    inc = _vertex_edge_incidence(cover)
    erased = sorted(set(erased))
    remaining = set(erased)
    values = dict(enumerate(c_partial))
    contacts: set[int] = set()
    if max_rounds is None:
        max_rounds = 2 * len(erased) + 8
    rounds = []
    side = 0
    no_progress = 0
    for _ in range(max_rounds):
        if not remaining:
            break
        lo, hi = (0, N) if side == 0 else (N, 2 * N)
        decoded_v = []
        stuck = 0
        updates = {}
        for v in range(lo, hi):
            edges = inc[v]
            hit = [e for e in edges if e in remaining]
            if not hit:
                continue
            if len(hit) > d0 - 1:
                stuck += 1
                continue
            intact = [j for j, e in enumerate(edges) if e not in remaining]
            support = intact[: delta - d0 + 1]
            local_partial = [None] * delta
            for j in support:
                local_partial[j] = values[edges[j]]
            hit_local = [j for j, e in enumerate(edges) if e in hit]
            got = repair_values(local, local_partial, hit_local, support)
            for j, val in got.items():
                updates[edges[j]] = val
            contacts.update(
                edges[j] for j in support if edges[j] not in set(erased)
            )
            decoded_v.append(v)
        rounds.append({"side": side, "decoded": decoded_v, "s_size": stuck})
        for e, val in updates.items():
            values[e] = val
            remaining.discard(e)
        # a stall on one side may still clear from the other; two stalled
        # rounds in a row mean a genuine deadlock
        no_progress = no_progress + 1 if not decoded_v else 0
        if no_progress >= 2 and remaining:
            break
        side = 1 - side
    converged = not remaining
    out_values = [values[i] for i in range(code.n)] if converged else None
    return DecodeTrace(
        rounds=rounds,
        converged=converged,
        contacts=len(contacts),
        values=out_values,
        details={} if converged else {"remaining": sorted(remaining)},
    )
