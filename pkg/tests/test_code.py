"""Code semantics: repair sets, locality certificates, distance, persistence."""

import numpy as np
import pytest

from cooplrc.code import (
    LinearCode,
    code_from_json,
    code_to_json,
    disjoint_groups_schedule,
    express_columns,
    is_codeword,
    locality_oracle,
    min_distance_oracle,
    minimal_repair_set,
    puncture,
    repair_set_check,
    repair_values,
    shorten,
)
from cooplrc.constructions import hadamard_code, rs_mds
from cooplrc.errors import BudgetExceeded, UncorrectableErasure
from cooplrc.field import field_new
from cooplrc.matrix import MatrixGF


def _simplex():
    return hadamard_code(3)


def test_encode_is_codeword():
    code = rs_mds(8, 7, 3)
    rng = np.random.default_rng(0)
    for _ in range(10):
        cw = code.encode(rng.integers(0, 8, size=3))
        assert is_codeword(code, cw)
        if any(cw):
            bad = list(cw)
            bad[0] = code.field.add(bad[0], 1)
            assert not is_codeword(code, bad)


def test_repair_set_check_monotone():
    # enlarging a valid repair set keeps it valid
    code = _simplex()
    assert repair_set_check(code, [0], [1, 2])
    assert repair_set_check(code, [0], [1, 2, 3])
    assert repair_set_check(code, [0], [1, 2, 3, 4, 5, 6])
    assert not repair_set_check(code, [0, 1], [2])


def test_repair_set_check_edge_cases():
    code = _simplex()
    assert repair_set_check(code, [], [])
    with pytest.raises(ValueError):
        repair_set_check(code, [0], [0, 1])
    with pytest.raises(ValueError):
        repair_set_check(code, [9], [1])


def test_repair_set_check_matches_definition():
    # rank test agrees with functional determination over all codewords
    code = hadamard_code(2)  # [3, 2], small enough to enumerate
    words = list(code.codewords())
    for S in [(0,), (1,), (2,), (0, 1)]:
        for gamma in [(1,), (2,), (1, 2), (0, 2), ()]:
            gamma = tuple(g for g in gamma if g not in S)
            # determined iff equal contact values force equal erased values
            determined = True
            for w1 in words:
                for w2 in words:
                    if all(w1[g] == w2[g] for g in gamma) and any(
                        w1[s] != w2[s] for s in S
                    ):
                        determined = False
            assert repair_set_check(code, list(S), list(gamma)) == determined


def test_minimal_repair_set_is_minimal():
    code = _simplex()
    from itertools import combinations

    for S in combinations(range(7), 2):
        gamma = minimal_repair_set(code, list(S))
        pool = [i for i in range(7) if i not in S]
        brute = min(
            (size for size in range(len(pool) + 1)
             for cand in combinations(pool, size)
             if repair_set_check(code, list(S), list(cand))),
        )
        assert len(gamma) == brute
        assert repair_set_check(code, list(S), gamma)


def test_minimal_repair_set_budget():
    code = rs_mds(16, 12, 5)
    with pytest.raises(BudgetExceeded):
        minimal_repair_set(code, [0], budget=1)


def test_minimal_repair_set_pool_restriction():
    code = _simplex()
    # within {1,2} symbol 0 is repairable; within {3} alone it is not
    assert sorted(minimal_repair_set(code, [0], pool=[1, 2])) == [1, 2]
    with pytest.raises(UncorrectableErasure):
        minimal_repair_set(code, [0], pool=[3])


def test_repair_values_reconstruct():
    code = rs_mds(9, 8, 4)
    rng = np.random.default_rng(4)
    for _ in range(10):
        cw = code.encode(rng.integers(0, 9, size=4))
        erased = sorted(rng.choice(8, size=2, replace=False).tolist())
        partial = [None if i in erased else cw[i] for i in range(8)]
        gamma = minimal_repair_set(code, erased)
        vals = repair_values(code, partial, erased, gamma)
        assert all(vals[i] == cw[i] for i in erased)


def test_express_columns_rejects_outside_span():
    code = _simplex()
    with pytest.raises(UncorrectableErasure):
        express_columns(code, [0], [3])  # column 3 = cols 0+1, cannot give col 0


def test_locality_oracle_simplex():
    cert = locality_oracle(_simplex(), 2)
    assert cert.r_achieved == 3
    assert cert.exhaustive
    assert cert.patterns_checked == 21


def test_locality_oracle_monotone_in_ell():
    code = _simplex()
    rs = [locality_oracle(code, ell).r_achieved for ell in (1, 2, 3)]
    assert rs == sorted(rs)


def test_locality_oracle_mds():
    # MDS codes have no locality: every repair needs k symbols
    code = rs_mds(8, 7, 3)
    cert = locality_oracle(code, 1)
    assert cert.r_achieved == 3


def test_distance_erasure_link():
    # any d-1 erasures repairable, some d-subset is not
    code = _simplex()
    d = min_distance_oracle(code)
    assert d == 4
    from itertools import combinations

    for S in combinations(range(7), d - 1):
        assert repair_set_check(code, list(S), [i for i in range(7) if i not in S])
    assert any(
        not repair_set_check(code, list(S), [i for i in range(7) if i not in S])
        for S in combinations(range(7), d)
    )


def test_min_distance_matches_enumeration():
    for code in (hadamard_code(3), rs_mds(4, 4, 2), rs_mds(9, 6, 3)):
        brute = min(
            sum(1 for v in w if v) for w in code.codewords() if any(w)
        )
        assert min_distance_oracle(code) == brute


def test_puncture_shorten_dimensions():
    code = _simplex()
    p = puncture(code, [0])
    assert (p.n, p.k) == (6, 3)
    s = shorten(code, [0])
    assert s.n == 6 and s.k == 2
    # shortening cannot decrease distance, puncturing drops it by at most one
    assert min_distance_oracle(s) >= 4
    assert min_distance_oracle(p) >= 3


def test_simplex_has_no_5coord_local_subcode_distance_3():
    # cooperative (3,2) locality exists, but no 5-coordinate punctured code
    # keeps distance >= 3, so classic (3, 3)-locality fails
    code = _simplex()
    from itertools import combinations

    for keep in combinations(range(7), 5):
        drop = [i for i in range(7) if i not in keep]
        sub = puncture(code, drop)
        assert min_distance_oracle(sub) < 3


def test_disjoint_groups_schedule():
    code = _simplex()
    # two disjoint repair groups per symbol from the XOR structure
    # coord p carries mask p+1; {i, j} repairs p iff (i+1) xor (j+1) == p+1
    pair_groups = {
        0: [[1, 2], [3, 4]], 1: [[0, 2], [3, 5]], 2: [[0, 1], [3, 6]],
        3: [[0, 4], [1, 5]], 4: [[0, 3], [1, 6]], 5: [[1, 3], [0, 6]],
        6: [[0, 5], [1, 4]],
    }
    groups = [pair_groups[i] for i in range(7)]
    cw = code.encode([1, 0, 1])
    rep = disjoint_groups_schedule(
        code, groups, [0, 6], [None, cw[1], cw[2], cw[3], cw[4], cw[5], None]
    )
    assert rep.success
    assert rep.details["values"] == cw
    with pytest.raises(ValueError):
        disjoint_groups_schedule(code, groups, [0, 1, 6])  # exceeds t = 2


def test_generator_rank_enforced():
    f = field_new(2)
    with pytest.raises(ValueError):
        LinearCode.from_generator(f, MatrixGF.from_rows(f, [[1, 0], [1, 0]]))


def test_json_roundtrip_and_tamper_detection():
    code = rs_mds(4, 4, 2)
    obj = code_to_json(code)
    back = code_from_json(obj)
    assert back.G == code.G and back.H == code.H and back.meta == code.meta
    bad = code_to_json(code)
    bad["parity_check"][0][0] = (bad["parity_check"][0][0] + 1) % 4
    with pytest.raises(ValueError):
        code_from_json(bad)


def test_hints_survive_roundtrip():
    from cooplrc.constructions import partition_code

    code = partition_code(4, 4, 4, 2)
    back = code_from_json(code_to_json(code))
    assert back.hints["groups"] == code.hints["groups"]
