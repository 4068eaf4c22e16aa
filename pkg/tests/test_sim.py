"""Sweeps, strategies, the hypergeometric oracle, bandwidth accounting."""

import json
from fractions import Fraction
from math import comb, sqrt

import pytest

from cooplrc.constructions import hadamard_code, partition_code, rs_mds
from cooplrc.sim import (
    RepairStrategy,
    adversarial_sweep,
    apply_strategy,
    bandwidth_account,
    group_tolerance_probability,
    random_sweep,
)


def _weak_partition():
    # local [3,2] MDS only tolerates one erasure per block
    return partition_code(4, 4, 2, 1, local=rs_mds(4, 3, 2))


def test_unknown_strategy_rejected():
    code = hadamard_code(2)
    with pytest.raises(ValueError):
        apply_strategy(code, "magic", [0], [None, 0, 0])


def test_generic_linear_repairs_and_counts():
    code = rs_mds(8, 6, 3)
    cw = code.encode([1, 5, 2])
    rep = apply_strategy(
        code, "generic-linear", [0, 4], [None if i in (0, 4) else cw[i] for i in range(6)]
    )
    assert rep.success
    assert rep.details["values"] == cw
    assert rep.contacts == 3  # MDS: k symbols determine everything


def test_group_scheduler_needs_groups():
    code = rs_mds(8, 6, 3)  # no hints
    cw = code.encode([0, 0, 0])
    with pytest.raises(ValueError):
        apply_strategy(code, "group-scheduler", [0], [None] + cw[1:])


def test_group_scheduler_stays_in_block():
    code = _weak_partition()
    cw = code.encode([1, 2, 3, 0])
    rep = apply_strategy(
        code, "group-scheduler", [0], [None] + cw[1:]
    )
    assert rep.success and rep.details["values"] == cw
    assert set(rep.plan[0]["contacts"]).issubset({1, 2})


def test_group_scheduler_reports_block_failure():
    code = _weak_partition()
    cw = code.encode([0, 0, 0, 0])
    rep = apply_strategy(
        code, "group-scheduler", [0, 1], [None, None] + cw[2:]
    )
    assert not rep.success
    assert rep.details["failed_group"] == 0


def test_adversarial_sweep_exhaustive_simplex():
    report = adversarial_sweep(hadamard_code(3), "hadamard-recursive", 2)
    assert report.exhaustive
    assert report.patterns_checked == comb(7, 2) == report.successes
    assert report.max_contacts == 3
    assert not report.failures


def test_adversarial_sweep_sampled_when_capped():
    report = adversarial_sweep(hadamard_code(4), "hadamard-recursive", 3, cap=50, seed=1)
    assert not report.exhaustive
    assert report.patterns_checked == 50


def test_sweep_reports_are_deterministic():
    code = _weak_partition()
    a = random_sweep(code, "group-scheduler", 2, trials=500, seed=42)
    b = random_sweep(code, "group-scheduler", 2, trials=500, seed=42)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    c = random_sweep(code, "group-scheduler", 2, trials=500, seed=43)
    assert json.dumps(a.to_json()) != json.dumps(c.to_json())


def test_sweep_worst_pattern_is_failure_when_any():
    code = _weak_partition()
    report = adversarial_sweep(code, "group-scheduler", 2)
    assert report.exhaustive
    assert report.successes < report.patterns_checked
    assert tuple(report.worst_pattern) in {tuple(f) for f in report.failures}


def test_random_sweep_validates_trials():
    with pytest.raises(ValueError):
        random_sweep(hadamard_code(2), "generic-linear", 1, trials=0)


def test_hypergeometric_known_values():
    assert group_tolerance_probability([3, 3], 2, 1) == Fraction(3, 5)
    assert group_tolerance_probability([3, 3], 2, 2) == 1
    assert group_tolerance_probability([4], 2, 1) == 0
    # complement of both-in-one-block for [4,4], ell=2, t=1
    assert group_tolerance_probability([4, 4], 2, 1) == 1 - Fraction(2 * comb(4, 2), comb(8, 2))


def test_hypergeometric_validates():
    with pytest.raises(ValueError):
        group_tolerance_probability([2, 2], 5, 1)


def test_random_sweep_tracks_oracle():
    code = _weak_partition()
    trials = 4000
    report = random_sweep(code, "group-scheduler", 2, trials=trials, seed=7)
    p = group_tolerance_probability([3, 3], 2, 1)
    p_hat = report.successes / trials
    sigma = sqrt(float(p) * (1 - float(p)) / trials)
    assert abs(p_hat - float(p)) <= 3 * sigma


def test_bandwidth_account_aggregates():
    code = partition_code(2, 6, 9, 3, local=hadamard_code(3))
    r1 = adversarial_sweep(code, "group-scheduler", 1)
    r2 = adversarial_sweep(code, "generic-linear", 1)
    table = bandwidth_account([r1, r2])
    assert set(table) == {"group-scheduler", "generic-linear"}
    for row in table.values():
        assert row["repairs"] == 14
        assert row["contacts_per_repair"] == row["symbols_contacted"] / 14
    # staying inside the local block is never worse here
    assert (
        table["group-scheduler"]["max_contacts"]
        <= table["generic-linear"]["max_contacts"] + 1
    )


def test_bandwidth_account_rejects_mixed_codes():
    r1 = adversarial_sweep(hadamard_code(2), "generic-linear", 1)
    r2 = adversarial_sweep(hadamard_code(3), "generic-linear", 1)
    with pytest.raises(ValueError):
        bandwidth_account([r1, r2])


def test_strategy_params_passthrough():
    from cooplrc.graph_codes import edge_code
    from cooplrc.graphs import heawood_graph

    g = heawood_graph()
    code = edge_code(g)
    report = adversarial_sweep(code, RepairStrategy("peeling", {"graph": g}), 1)
    assert report.exhaustive
    assert report.successes == 21
    assert report.max_contacts == 2
