"""Command-line front end.

Exit codes: 0 success and verification pass, 1 error or failed
verification, 2 an unresolved instance (a cyclic exchange digraph in
``auto`` mode or an exhausted price search).
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import pipelines, verify
from .errors import PricingError, SearchExhausted, Unresolved
from .generate import KINDS, gen_instance
from .gross_substitutes import price_gs, verify_gs_prices
from .io import dump_json, load_graph, load_instance, load_json, load_prices

EXIT_OK, EXIT_ERROR, EXIT_UNRESOLVED = 0, 1, 2
PRICE_MODES = ("auto", "partition", "sbo", "weighted", "rank-valuation", "gs")


def _raw_families(path):
    d = load_json(path)
    if "bases1" in d and "bases2" in d:
        return [frozenset(b) for b in d["bases1"]], [frozenset(b) for b in d["bases2"]]
    return None


def _run_price(inst, mode, form, verify_flag, trials, seed):
    if mode == "gs":
        v1, v2 = inst.require_valuations()
        res = price_gs(v1, v2, trials=trials, seed=seed)
        out = res.to_json()
        report = verify_gs_prices(v1, v2, res.prices) if verify_flag else None
    elif mode == "weighted":
        m1, m2 = inst.require_matroids()
        w1, w2 = inst.require_weights()
        res = pipelines.price_weighted(m1, w1, m2, w2)
        out = res.to_json()
        report = verify.verify_conjecture3(m1, w1, m2, w2, res.prices) if verify_flag else None
    elif mode == "rank-valuation":
        m1, m2 = inst.require_matroids()
        res = pipelines.price_rank_valuations(m1, m2)
        out = res.to_json()
        report = verify.verify_conjecture0(m1, m2, res.prices) if verify_flag else None
    else:
        m1, m2 = inst.require_matroids()
        if form == "disjoint":
            res = pipelines.price_conjecture1(m1, m2, mode)
            report = verify.verify_conjecture1(m1, m2, res.prices) if verify_flag else None
        else:
            res = pipelines.price_conjecture2(m1, m2, mode)
            report = verify.verify_conjecture2(m1, m2, res.prices) if verify_flag else None
        out = res.to_json()
    if report is not None:
        out["verification"] = report.to_json()
    return out, (report is None or report.passed)


def _price_one(job):
    path, out_path, mode, form, verify_flag, trials, seed = job
    try:
        inst = load_instance(path)
        out, ok = _run_price(inst, mode, form, verify_flag, trials, seed)
    except Unresolved as exc:
        return path, {"status": "unresolved", "witness": exc.witness}, EXIT_UNRESOLVED, None
    except SearchExhausted as exc:
        return path, {"status": "search-exhausted", "trials": exc.trials,
                      "instance": exc.instance}, EXIT_UNRESOLVED, None
    except (PricingError, OSError) as exc:
        return path, None, EXIT_ERROR, f"{path}: {type(exc).__name__}: {exc}"
    if out_path is not None:
        dump_json(out, out_path)
    return path, out, EXIT_OK if ok else EXIT_ERROR, None


def cmd_price(args) -> int:
    paths = args.instance
    if len(paths) > 1:
        if args.out is None:
            raise SystemExit("--out must name a directory when pricing several instances")
        Path(args.out).mkdir(parents=True, exist_ok=True)
        outs = [str(Path(args.out) / (Path(p).stem + ".prices.json")) for p in paths]
    else:
        outs = [args.out]
    jobs = [(p, o, args.mode, args.form, args.verify, args.trials, args.seed)
            for p, o in zip(paths, outs)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_price_one, jobs))
    else:
        results = [_price_one(j) for j in jobs]
    code = EXIT_OK
    for (path, out, status, err), o in zip(results, outs):
        if err:
            print(err, file=sys.stderr)
        elif o is None or status == EXIT_UNRESOLVED:
            sys.stdout.write(dump_json(out))
        code = max(code, status)
    return code


def cmd_verify(args) -> int:
    raw = _raw_families(args.instance)
    c = args.conjecture
    if raw is not None:
        if c not in ("1", "2"):
            raise PricingError("raw base families support conditions 1 and 2 only")
        p = load_prices(args.prices)
        fn = verify.verify_conjecture1 if c == "1" else verify.verify_conjecture2
        report = fn(raw[0], raw[1], p)
    else:
        inst = load_instance(args.instance)
        p = load_prices(args.prices, inst.n)
        if c == "7":
            v1, v2 = inst.require_valuations()
            report = verify_gs_prices(v1, v2, p)
        else:
            m1, m2 = inst.require_matroids()
            if c == "0":
                report = verify.verify_conjecture0(m1, m2, p)
            elif c == "1":
                report = verify.verify_conjecture1(m1, m2, p)
            elif c == "2":
                report = verify.verify_conjecture2(m1, m2, p)
            else:
                w1, w2 = inst.require_weights()
                report = verify.verify_conjecture3(m1, w1, m2, w2, p)
    sys.stdout.write(dump_json(report.to_json()))
    return EXIT_OK if report.passed else EXIT_ERROR


def cmd_gen(args) -> int:
    inst = gen_instance(args.kind, args.n, args.seed)
    text = dump_json(inst, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_match_weights(args) -> int:
    U, V, edges = load_graph(args.graph)
    w = pipelines.bipartite_edge_weights(U, V, edges)
    light, heavy = pipelines.matching_selections(U, V, edges, w)
    ok = light is not None and heavy is not None and _is_perfect(U, edges, light) \
        and _is_perfect(U, edges, heavy)
    out = {"weights": [str(x) for x in w], "lightest_per_u": light,
           "heaviest_per_v": heavy, "perfect": ok}
    text = dump_json(out, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_ERROR


def _is_perfect(size, edges, chosen):
    us = {edges[i][0] for i in chosen}
    vs = {edges[i][1] for i in chosen}
    return len(chosen) == size and len(us) == size and len(vs) == size


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matroid-pricing",
                                 description="Tie-robust item pricing for two buyers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price", help="compute prices for one or more instance files")
    p.add_argument("--instance", nargs="+", required=True)
    p.add_argument("--mode", choices=PRICE_MODES, default="auto")
    p.add_argument("--form", choices=("common", "disjoint"), default="common",
                   help="for auto/partition/sbo: common-basis or disjoint-spanning condition")
    p.add_argument("--out", help="output file (directory when several instances)")
    p.add_argument("--verify", action="store_true", help="embed a brute-force verification report")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across instance files")
    p.add_argument("--trials", type=int, default=10_000, help="price search budget (gs mode)")
    p.add_argument("--seed", type=int, default=0, help="price search seed (gs mode)")
    p.set_defaults(func=cmd_price)

    v = sub.add_parser("verify", help="check a price vector by enumeration")
    v.add_argument("--instance", required=True)
    v.add_argument("--prices", required=True)
    v.add_argument("--conjecture", choices=("0", "1", "2", "3", "7"), required=True)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a seeded random instance")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    mw = sub.add_parser("match-weights", help="edge weights for a bipartite graph")
    mw.add_argument("--graph", required=True)
    mw.add_argument("--out")
    mw.set_defaults(func=cmd_match_weights)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Unresolved as exc:
        sys.stdout.write(dump_json({"status": "unresolved", "witness": exc.witness}))
        return EXIT_UNRESOLVED
    except SearchExhausted as exc:
        sys.stdout.write(dump_json({"status": "search-exhausted", "trials": exc.trials}))
        return EXIT_UNRESOLVED
    except (PricingError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
