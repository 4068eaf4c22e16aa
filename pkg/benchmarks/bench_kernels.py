"""Timing comparison of the jit and pure-numpy kernel backends.

Backend selection happens at import time (COOPLRC_NO_NUMBA), so each
backend runs in its own subprocess and the parent prints the table.

Usage: python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time


def _workload():
    import numpy as np

    from cooplrc import LinearCode, MatrixGF, min_distance_oracle, minimal_repair_set
    from cooplrc.field import field_from_size
    from cooplrc.kernels import spans

    rng = np.random.default_rng(42)
    results = {}

    def random_code(field, k, n):
        while True:
            G = rng.integers(0, field.q, size=(k, n))
            try:
                return LinearCode.from_generator(field, MatrixGF(field, G))
            except ValueError:
                continue

    # min-weight enumeration, binary [18, 9]
    code = random_code(field_from_size(2), 9, 18)
    t0 = time.perf_counter()
    d = min_distance_oracle(code)
    results["min_weight_gf2_18_9"] = {"seconds": time.perf_counter() - t0, "dmin": d}

    # min-weight enumeration over GF(16), [15, 6]
    code16 = random_code(field_from_size(16), 6, 15)
    t0 = time.perf_counter()
    d = min_distance_oracle(code16)
    results["min_weight_gf16_15_6"] = {"seconds": time.perf_counter() - t0, "dmin": d}

    # span tests, 800 random instances over GF(8)
    f8 = field_from_size(8)
    mats = [rng.integers(0, 8, size=(8, 12)) for _ in range(200)]
    t0 = time.perf_counter()
    hits = 0
    for M in mats:
        for j in range(4):
            if spans(M, range(8), [8 + j], f8):
                hits += 1
    results["spans_gf8_200x4"] = {"seconds": time.perf_counter() - t0, "hits": hits}

    # repair-set search on an MDS [12, 5] code over GF(16)
    from cooplrc import rs_mds

    mds = rs_mds(16, 12, 5)
    t0 = time.perf_counter()
    total = 0
    for s in range(mds.n):
        total += len(minimal_repair_set(mds, [s]))
    results["repair_sets_mds_12_5"] = {"seconds": time.perf_counter() - t0, "total": total}

    return results


def main():
    if "--worker" in sys.argv:
        print(json.dumps(_workload()))
        return

    here = os.path.dirname(os.path.abspath(__file__))
    rows = {}
    for label, extra_env in (("numba", {}), ("numpy", {"COOPLRC_NO_NUMBA": "1"})):
        env = dict(os.environ, **extra_env)
        # warm run first so jit compilation does not pollute the numbers
        for _ in range(2):
            out = subprocess.run(
                [sys.executable, os.path.join(here, "bench_kernels.py"), "--worker"],
                env=env,
                capture_output=True,
                text=True,
                check=True,
            )
        rows[label] = json.loads(out.stdout.strip().splitlines()[-1])

    names = sorted(rows["numba"])
    width = max(len(n) for n in names)
    print(f"{'benchmark':<{width}}  {'numba (s)':>10}  {'numpy (s)':>10}  {'speedup':>8}")
    for name in names:
        a = rows["numba"][name]["seconds"]
        b = rows["numpy"][name]["seconds"]
        check_a = {k: v for k, v in rows["numba"][name].items() if k != "seconds"}
        check_b = {k: v for k, v in rows["numpy"][name].items() if k != "seconds"}
        assert check_a == check_b, f"backend disagreement on {name}: {check_a} vs {check_b}"
        print(f"{name:<{width}}  {a:>10.4f}  {b:>10.4f}  {b / a:>7.2f}x")


if __name__ == "__main__":
    main()
