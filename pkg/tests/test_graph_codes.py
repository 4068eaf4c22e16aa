"""Graph codes: edge codes with peeling, expander codes, double-cover codes."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from cooplrc.code import is_codeword, min_distance_oracle
from cooplrc.errors import RepairFailure
from cooplrc.graph_codes import (
    edge_code,
    expander_distance_bound,
    expander_repair,
    girth_distance_bound,
    peeling_repair,
    unbalanced_expander_code,
    zemor_code,
    zemor_cover,
    zemor_decode,
    zemor_feasible_epsilon,
)
from cooplrc.graphs import (
    BipartiteGraph,
    Graph,
    ExpansionCertificate,
    double_cover,
    expansion_check,
    girth,
    heawood_graph,
    lambda2,
)


def _k4():
    return Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))


def _four_cycle():
    return BipartiteGraph(2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))


def test_heawood_edge_code_parameters():
    g = heawood_graph()
    code = edge_code(g)
    assert (code.n, code.k) == (21, 8)
    assert Fraction(code.k, code.n) == Fraction(8, 21) >= Fraction(1, 3)
    assert min_distance_oracle(code) == girth(g) == 6


def test_four_cycle_is_repetition():
    code = edge_code(_four_cycle())
    assert (code.n, code.k) == (4, 1)
    assert sorted(map(list, code.codewords())) == [[0, 0, 0, 0], [1, 1, 1, 1]]


def test_cycle_support_is_codeword():
    # a 6-cycle in Heawood touches every vertex 0 or 2 times
    g = heawood_graph()
    code = edge_code(g)
    for S in combinations(range(21), 6):
        word = [1 if i in S else 0 for i in range(21)]
        if is_codeword(code, word):
            break
    else:
        pytest.fail("no weight-6 codeword found, but d_min is 6")


def test_disconnected_graph_warns():
    g = BipartiteGraph(2, 2, ((0, 0), (1, 1)))
    with pytest.warns(UserWarning):
        edge_code(g)


def test_girth_distance_bound():
    assert girth_distance_bound(6, 2) == 6  # analytic limit at dtilde = 2
    assert girth_distance_bound(6, 3) == 3 * (2**3 - 1) // 1
    with pytest.raises(ValueError):
        girth_distance_bound(2, 2)
    with pytest.raises(ValueError):
        girth_distance_bound(6, 1)
    # never exceeds the oracle on the sum-to-zero Heawood code
    assert girth_distance_bound(6, 2) <= min_distance_oracle(edge_code(heawood_graph()))


def test_peeling_single_erasure():
    g = heawood_graph()
    code = edge_code(g)
    cw = [0] * 21
    rep = peeling_repair(code, g, [7], [None if i == 7 else 0 for i in range(21)])
    assert rep.success
    assert rep.contacts == 2  # Delta - 1
    assert rep.details["values"] == cw


def test_peeling_random_patterns_below_girth():
    g = heawood_graph()
    code = edge_code(g)
    rng = np.random.default_rng(3)
    for _ in range(100):
        S = sorted(rng.choice(21, size=5, replace=False).tolist())
        cw = code.encode(rng.integers(0, 2, size=8))
        partial = [None if i in S else cw[i] for i in range(21)]
        rep = peeling_repair(code, g, S, partial)
        assert rep.success and rep.details["values"] == cw
        assert rep.contacts <= 5 * 2  # ell * (Delta - 1)


def test_peeling_contacts_exclude_erased():
    g = heawood_graph()
    code = edge_code(g)
    rng = np.random.default_rng(8)
    for _ in range(30):
        S = sorted(rng.choice(21, size=5, replace=False).tolist())
        rep = peeling_repair(code, g, S)
        assert rep.contacts <= 21 - 5


def test_peeling_stopping_set_on_cycle():
    # erasing a full 6-cycle leaves every vertex with 0 or 2 erasures
    g = heawood_graph()
    code = edge_code(g)
    cycle = None
    for S in combinations(range(21), 6):
        if is_codeword(code, [1 if i in S else 0 for i in range(21)]):
            cycle = list(S)
            break
    rep = peeling_repair(code, g, cycle)
    assert not rep.success
    assert rep.details["stopping_set"] == cycle


def test_expander_code_t1_single_parity_per_vertex():
    g = BipartiteGraph(3, 1, ((0, 0), (1, 0), (2, 0)))
    code = unbalanced_expander_code(g, 4, 1)
    # t = 1 leaves one parity row for the lone right vertex
    assert (code.n, code.k) == (3, 2)
    assert code.H.rows == 1
    assert min_distance_oracle(code) == 2  # local distance t + 1


def test_expander_code_t2_consistency():
    # 2 right vertices of degree 4 over GF(7)
    edges = tuple((l, 0) for l in range(4)) + tuple((l, 1) for l in range(2, 6))
    g = BipartiteGraph(6, 2, edges)
    code = unbalanced_expander_code(g, 7, 2)
    assert code.n == 6
    rng = np.random.default_rng(0)
    for _ in range(5):
        assert is_codeword(code, code.encode(rng.integers(0, 7, size=code.k)))


def test_expander_code_validation():
    g = BipartiteGraph(3, 1, ((0, 0), (1, 0), (2, 0)))
    with pytest.raises(ValueError):
        unbalanced_expander_code(g, 2, 1)  # q < Delta
    with pytest.raises(ValueError):
        unbalanced_expander_code(g, 4, 3)  # t >= Delta


def test_expander_repair_sweep():
    edges = tuple((l, 0) for l in range(4)) + tuple((l, 1) for l in range(2, 6))
    g = BipartiteGraph(6, 2, edges)
    code = unbalanced_expander_code(g, 7, 2)
    rng = np.random.default_rng(5)
    delta = 4
    for S in combinations(range(6), 2):
        cw = code.encode(rng.integers(0, 7, size=code.k))
        partial = [None if i in S else cw[i] for i in range(6)]
        try:
            rep = expander_repair(code, g, 2, list(S), partial)
        except RepairFailure:
            continue  # concentrated patterns may leave no qualifying vertex
        assert rep.details["values"] == cw
        assert rep.details["reads_actual"] <= rep.details["reads_bound"]
        assert rep.contacts <= len(S) * (delta - 2)


def test_expander_repair_failure_diagnostic():
    # one right vertex, t = 1, two erasures: nothing qualifies
    g = BipartiteGraph(3, 1, ((0, 0), (1, 0), (2, 0)))
    code = unbalanced_expander_code(g, 4, 1)
    with pytest.raises(RepairFailure):
        expander_repair(code, g, 1, [0, 1])


def test_expander_distance_bound_formula():
    cert = ExpansionCertificate(h=3, s_max=4, epsilon_worst=0.0, exhaustive=True)
    assert expander_distance_bound(cert, 1, 3) == (6, False)
    cert2 = ExpansionCertificate(h=3, s_max=4, epsilon_worst=0.25, exhaustive=True)
    assert expander_distance_bound(cert2, 1, 4) == (6, False)
    cert3 = ExpansionCertificate(h=3, s_max=2, epsilon_worst=0.0, exhaustive=False)
    assert expander_distance_bound(cert3, 1, 3)[1] is True


def test_expander_distance_bound_vs_oracle():
    g = BipartiteGraph(3, 1, ((0, 0), (1, 0), (2, 0)))
    code = unbalanced_expander_code(g, 4, 1)
    cert = expansion_check(g, 1)
    bound, advisory = expander_distance_bound(cert, 1, 1)
    assert min_distance_oracle(code) >= bound


def test_zemor_code_construction():
    code = zemor_code(_k4(), 4, 2)
    assert code.n == 12
    assert code.meta["params"]["delta"] == 3
    cover = zemor_cover(code)
    assert cover.left_count == cover.right_count == 4
    # rate >= 2 * rate(C0) - 1 = 2*(2/3) - 1 = 1/3
    assert Fraction(code.k, code.n) >= Fraction(1, 3)


def test_zemor_single_erasure_one_round():
    code = zemor_code(_k4(), 4, 2)
    rng = np.random.default_rng(1)
    cw = code.encode(rng.integers(0, 4, size=code.k))
    partial = [None if i == 5 else cw[i] for i in range(12)]
    trace = zemor_decode(code, partial, [5])
    assert trace.converged
    assert trace.values == cw
    assert len([r for r in trace.rounds if r["decoded"]]) == 1


def test_zemor_exhaustive_small_patterns():
    code = zemor_code(_k4(), 4, 2)
    rng = np.random.default_rng(2)
    d0 = 2
    for ell in (1, 2, 3):
        for S in combinations(range(12), ell):
            cw = code.encode(rng.integers(0, 4, size=code.k))
            partial = [None if i in S else cw[i] for i in range(12)]
            trace = zemor_decode(code, partial, list(S))
            assert trace.converged
            assert trace.values == cw
            # uncorrected first-round vertices: |S^1| <= ell / d_min(C0)
            assert trace.rounds[0]["s_size"] <= ell / d0


def test_zemor_contraction_for_small_erasure_sets():
    k4 = _k4()
    code = zemor_code(k4, 4, 2)
    lam = lambda2(k4).lam
    eps = zemor_feasible_epsilon(2, lam)
    assert eps == pytest.approx(1.0, abs=1e-6)
    # ell within N*lam*eps*delta/2 = 4 * 1 * 1 * (2/3) / 2
    budget = int(4 * lam * eps * (2 / 3) / 2)
    for ell in range(1, budget + 1):
        for S in combinations(range(12), ell):
            cw = [0] * 12
            partial = [None if i in S else 0 for i in range(12)]
            trace = zemor_decode(code, partial, list(S))
            assert trace.converged
            sizes = [r["s_size"] for r in trace.rounds]
            for s0, s1 in zip(sizes, sizes[1:]):
                assert s1 <= s0 / (1 + eps) + 1e-9


def test_zemor_round_limit_failure():
    code = zemor_code(_k4(), 4, 2)
    # erase a full local codeword's worth around one vertex plus more
    S = list(range(9))
    partial = [None if i in S else 0 for i in range(12)]
    trace = zemor_decode(code, partial, S, max_rounds=2)
    if not trace.converged:
        assert trace.details["remaining"]


def test_zemor_requires_zemor_meta():
    code = edge_code(heawood_graph())
    with pytest.raises(ValueError):
        zemor_decode(code, [0] * 21, [0])


def test_zemor_feasible_epsilon():
    assert zemor_feasible_epsilon(3, 1.5) == pytest.approx(1.0)
    assert zemor_feasible_epsilon(2, 0.0) == float("inf")
