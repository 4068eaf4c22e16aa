"""Command-line interface.

Subcommands: construct, verify, repair, simulate, witness, graph.
Exit codes: 0 success/property holds, 1 property failure, 2 usage or
malformed input, 3 decode failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import sim as sim_mod
from .code import (
    LinearCode,
    load_code,
    locality_oracle,
    min_distance_oracle,
    minimal_repair_set,
    save_code,
)
from .constructions import (
    ConcatenationParams,
    concatenated_code,
    hadamard_code,
    partition_code,
    product_code,
    rs_mds,
)
from .errors import CoopLRCError
from .graphs import (
    BipartiteGraph,
    Graph,
    expansion_check,
    girth,
    graph_from_text,
    lambda2,
)
from .witness import subcode_witness

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_DECODE = 3


def _print_code_summary(code: LinearCode) -> None:
    rate = Fraction(code.k, code.n)
    print(
        json.dumps(
            {
                "n": code.n,
                "k": code.k,
                "rate": f"{rate.numerator}/{rate.denominator}",
                "meta": code.meta,
            }
        )
    )


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "mds":
        code = rs_mds(args.q, args.n0, args.k0)
    elif kind == "partition":
        local = None
        if args.local == "hadamard":
            local = hadamard_code(args.r // args.l)
        code = partition_code(args.q, args.k, args.r, args.l, local=local)
    elif kind == "product":
        code = product_code(args.q, args.r, args.l)
    elif kind == "concatenated":
        code = concatenated_code(
            args.q, args.r, args.l, ConcatenationParams(x=args.x), groups=args.groups
        )
    elif kind == "hadamard":
        code = hadamard_code(args.k)
    else:
        raise AssertionError(kind)
    if args.output:
        save_code(code, args.output)
    _print_code_summary(code)
    return EXIT_OK


def _cmd_verify(args) -> int:
    code = _load(args.code)
    ok = True
    out = {}
    if args.matrix:
        out["matrix_consistent"] = True  # from_generator verified G H^T = 0 on load
    if args.dmin or args.bounds:
        d = min_distance_oracle(code)
        out["dmin"] = d
    if args.locality:
        if args.l is None:
            print("verify --locality needs --l", file=sys.stderr)
            return EXIT_USAGE
        cert = locality_oracle(code, args.l)
        out["locality"] = {
            "ell": cert.ell,
            "r_achieved": cert.r_achieved,
            "exhaustive": cert.exhaustive,
        }
        if args.r is not None and cert.r_achieved > args.r:
            ok = False
    if args.bounds:
        if args.r is None or args.l is None:
            print("verify --bounds needs --r and --l", file=sys.stderr)
            return EXIT_USAGE
        rep = bounds_mod.dmin_bound(code.n, code.k, args.r, args.l)
        out["bounds"] = {
            "dmin_general": rep.dmin_bound_general,
            "dmin_r_ge_ell": rep.dmin_bound_r_ge_ell,
            "rate_general": str(rep.rate_bound_general),
            "rate_r_ge_ell": (
                str(rep.rate_bound_r_ge_ell) if rep.rate_bound_r_ge_ell is not None else None
            ),
            "alphabet_k": rep.alphabet_bound_k,
        }
        if out["dmin"] > rep.dmin_bound_general:
            ok = False
        if rep.dmin_bound_r_ge_ell is not None and out["dmin"] > rep.dmin_bound_r_ge_ell:
            ok = False
        if Fraction(code.k, code.n) > rep.rate_bound_general:
            ok = False
    print(json.dumps(out))
    return EXIT_OK if ok else EXIT_PROPERTY


_STRATEGY_ALIASES = {
    "generic": "generic-linear",
    "group": "group-scheduler",
    "hadamard": "hadamard-recursive",
}


def _strategy_from_args(args) -> sim_mod.RepairStrategy:
    kind = _STRATEGY_ALIASES.get(args.strategy, args.strategy)
    params = {}
    if kind in ("peeling", "expander"):
        if not args.graph:
            raise CoopLRCError(f"{kind} strategy needs --graph")
        with open(args.graph) as fh:
            g = graph_from_text(fh.read())
        if not isinstance(g, BipartiteGraph):
            raise CoopLRCError(f"{kind} strategy needs a bipartite graph")
        params["graph"] = g
        if kind == "expander":
            if args.t is None:
                raise CoopLRCError("expander strategy needs --t")
            params["t"] = args.t
    return sim_mod.RepairStrategy(kind, params)


def _cmd_repair(args) -> int:
    code = _load(args.code)
    erased = [int(x) for x in args.erase.split(",")] if args.erase else []
    strategy = _strategy_from_args(args)
    if args.message:
        msg = [int(x) for x in args.message.split(",")]
    else:
        import numpy as np

        rng = np.random.default_rng(args.seed)
        msg = [int(x) for x in rng.integers(0, code.field.q, size=code.k)]
    cw = code.encode(msg)
    cp = [None if i in set(erased) else cw[i] for i in range(code.n)]
    try:
        rep = sim_mod.apply_strategy(code, strategy, erased, cp)
    except CoopLRCError as exc:
        print(json.dumps({"success": False, "error": str(exc), "seed": args.seed}))
        return EXIT_DECODE
    correct = rep.details.get("values") == cw
    print(
        json.dumps(
            {
                "success": bool(rep.success and correct),
                "erased": list(rep.erased),
                "contacts": rep.contacts,
                "plan": rep.plan,
                "seed": args.seed,
            }
        )
    )
    return EXIT_OK if rep.success and correct else EXIT_DECODE


def _cmd_simulate(args) -> int:
    code = _load(args.code)
    strategy = _strategy_from_args(args)
    if args.exhaustive:
        report = sim_mod.adversarial_sweep(
            code, strategy, args.l, cap=args.cap, seed=args.seed
        )
    else:
        report = sim_mod.random_sweep(
            code, strategy, args.l, trials=args.trials, seed=args.seed
        )
    obj = report.to_json()
    text = json.dumps(obj)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def _cmd_witness(args) -> int:
    code = _load(args.code)

    def repair_fn(S):
        return minimal_repair_set(code, S)

    trace = subcode_witness(code, args.l, repair_fn, r=args.r)
    print(
        json.dumps(
            {
                "t": trace.t,
                "rounds": trace.rounds,
                "fixed": trace.fixed,
                "punctured_dim": trace.punctured_dim,
                "singleton_check": trace.singleton_check,
                "dmin_punctured": trace.dmin_punctured,
                "details": trace.details,
            }
        )
    )
    return EXIT_OK if trace.singleton_check and trace.details["round_check"] else EXIT_PROPERTY


def _cmd_graph(args) -> int:
    with open(args.file) as fh:
        g = graph_from_text(fh.read())
    out = {}
    if args.girth:
        gv = girth(g)
        out["girth"] = gv if gv != float("inf") else "inf"
    if args.lam:
        base = g if isinstance(g, Graph) else g.as_graph()
        sp = lambda2(base)
        out["eigen_top"] = sp.eigen_top
        out["lambda"] = sp.lam
    if args.expansion is not None:
        if not isinstance(g, BipartiteGraph):
            print("expansion check needs a bipartite graph", file=sys.stderr)
            return EXIT_USAGE
        cert = expansion_check(g, args.expansion)
        out["expansion"] = {
            "h": cert.h,
            "s_max": cert.s_max,
            "epsilon_worst": cert.epsilon_worst,
            "exhaustive": cert.exhaustive,
        }
    print(json.dumps(out))
    return EXIT_OK


def _load(path: str) -> LinearCode:
    try:
        return load_code(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _MalformedInput(str(exc))


class _MalformedInput(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cooplrc")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="build a code and write its JSON")
    c.add_argument("--kind", required=True,
                   choices=["mds", "partition", "product", "concatenated", "hadamard"])
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--n0", type=int)
    c.add_argument("--k0", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--x", type=int, default=1)
    c.add_argument("--groups", type=int, default=1)
    c.add_argument("--local", choices=["mds", "hadamard"], default="mds")
    c.add_argument("-o", "--output")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="check code properties")
    v.add_argument("--code", required=True)
    v.add_argument("--locality", action="store_true")
    v.add_argument("--dmin", action="store_true")
    v.add_argument("--bounds", action="store_true")
    v.add_argument("--matrix", action="store_true")
    v.add_argument("--l", type=int)
    v.add_argument("--r", type=int)
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("repair", help="repair an erasure pattern")
    r.add_argument("--code", required=True)
    r.add_argument("--strategy", required=True)
    r.add_argument("--erase", required=True)
    r.add_argument("--graph")
    r.add_argument("--t", type=int)
    r.add_argument("--message")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=_cmd_repair)

    s = sub.add_parser("simulate", help="sweep erasure patterns")
    s.add_argument("--code", required=True)
    s.add_argument("--strategy", required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--cap", type=int, default=200_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--graph")
    s.add_argument("--t", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=_cmd_simulate)

    w = sub.add_parser("witness", help="run the subcode distance witness")
    w.add_argument("--code", required=True)
    w.add_argument("--l", type=int, required=True)
    w.add_argument("--r", type=int)
    w.set_defaults(func=_cmd_witness)

    g = sub.add_parser("graph", help="graph diagnostics")
    g.add_argument("--file", required=True)
    g.add_argument("--girth", action="store_true")
    g.add_argument("--lambda", dest="lam", action="store_true")
    g.add_argument("--expansion", type=int)
    g.set_defaults(func=_cmd_graph)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, CoopLRCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
