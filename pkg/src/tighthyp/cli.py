"""Command line front end.

Exit codes: 0 success or witness found, 1 usage or input error, 2 refuted or
no witness, 3 node budget exhausted, 4 every pipeline attempt failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import absorb, constructions, extremal, hypercore, motifs, solver


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def _parse_pattern(text: str) -> motifs.TightPattern:
    try:
        head, rest = text.split(":", 1)
        nums = [int(x) for x in rest.split(",")]
        if head == "P" and len(nums) == 2:
            return motifs.build_P(*nums)
        if head in ("path", "cycle") and len(nums) == 3:
            return motifs.build_pattern(head, *nums)
    except (ValueError, motifs.PatternError) as e:
        raise SystemExit(f"error: bad pattern {text!r}: {e}") from None
    raise SystemExit(f"error: bad pattern {text!r}, want path:k,l,t cycle:k,l,t or P:k,l")


def _emit_graph(h: hypercore.Hypergraph, out: Optional[str]) -> None:
    if out:
        hypercore.write_graph(h, out)
        print(f"wrote n={h.n} k={h.k} edges={h.edge_count()} to {out}")
    else:
        sys.stdout.write(f"{h.n} {h.k}\n")
        for t in sorted(h.edges()):
            sys.stdout.write(" ".join(map(str, t)) + "\n")


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "complete":
        h = hypercore.complete(args.n, args.k)
    elif fam == "random":
        if args.p is None:
            raise SystemExit("error: --family random needs --p")
        h = hypercore.random_graph(args.n, args.k, args.p, args.seed)
    elif fam == "ore":
        h = constructions.ore_graph(args.n)
    elif fam == "kk":
        h = constructions.kk_lower(args.n, args.k)
    elif fam == "tuza":
        h = constructions.tuza_construction(args.n, args.k, seed=args.seed)
    elif fam == "clique-link":
        if not args.link:
            raise SystemExit("error: --family clique-link needs --link FILE")
        link = hypercore.read_graph(args.link)
        h = constructions.clique_plus_link(args.n, args.k, link)
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"error: unknown family {fam}")
    _emit_graph(h, args.out)
    return 0


def cmd_solve(args) -> int:
    h = hypercore.read_graph(args.infile)
    cfg = solver.SearchConfig(node_budget=args.budget)
    res = solver.find_hamcycle(h, args.l, cfg)
    if args.json:
        print(json.dumps(_jsonable({
            "status": res.status,
            "ordering": res.ordering,
            "nodes": res.nodes,
        })))
    else:
        if res.status == "found":
            print("found " + " ".join(map(str, res.ordering)))
        else:
            print(res.status)
        print(f"nodes {res.nodes}")
    return {"found": 0, "refuted": 2, "exhausted": 3}[res.status]


def cmd_ex(args) -> int:
    p = _parse_pattern(args.pattern)
    cache = extremal.ResultCache(args.cache) if args.cache else None
    try:
        res = extremal.exact_ex(args.n, p, budget=args.budget, cache=cache)
    except extremal.BudgetError as e:
        print(f"budget exhausted after {e.nodes} nodes", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(_jsonable({
            "n": res.n,
            "pattern": p.describe(),
            "value": res.value,
            "witness_edges": sorted(res.witness.edges()),
            "certificate": res.certificate,
        })))
    else:
        print(f"ex({args.n}, {p.describe()}) = {res.value}")
        for e in sorted(res.witness.edges()):
            print("  " + " ".join(map(str, e)))
    return 0


def cmd_verify(args) -> int:
    cache = extremal.ResultCache(args.cache) if args.cache else None
    try:
        formula = extremal.formula_ex(args.n, args.k, args.l, budget=args.budget, cache=cache)
        cyc = motifs.build_pattern("cycle", args.k, args.l, args.n)
        direct = extremal.exact_ex(args.n, cyc, budget=args.budget, cache=cache)
    except extremal.BudgetError as e:
        print(f"budget exhausted after {e.nodes} nodes", file=sys.stderr)
        return 3
    verdict = "MATCH" if formula == direct.value else "DIFFER"
    print(f"clique-plus-link formula: {formula}")
    print(f"direct extremal number:   {direct.value}")
    print(verdict)
    return 0 if verdict == "MATCH" else 2


def cmd_pipeline(args) -> int:
    h = hypercore.read_graph(args.infile)
    cfg = absorb.default_constants(h.k)
    cfg = absorb.with_overrides(
        cfg,
        gamma=args.gamma,
        beta=args.beta,
        rho=args.rho,
        epsilon=args.epsilon,
        seed=args.seed,
        attempts=args.attempts,
    )
    ordering, trace = absorb.run_pipeline(h, args.l, cfg)
    if args.trace:
        with open(args.trace, "w") as f:
            json.dump(_jsonable(trace), f, indent=1)
    if args.json:
        print(json.dumps(_jsonable({"ordering": ordering, "trace": trace})))
    elif ordering is not None:
        print("found " + " ".join(map(str, ordering)))
    else:
        last = trace["attempts"][-1]["failure"] if trace.get("attempts") else trace.get("failure")
        print(f"failed: {last}")
    return 0 if ordering is not None else 4


def cmd_scan(args) -> int:
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        if n % (args.k - args.l) != 0 or n < args.k + 1:
            continue
        if hypercore.nck(n, args.k) <= extremal.SWEEP_CAP:
            r = extremal.exact_h(n, args.k, args.l, args.d)
        else:
            if args.d == 0:
                print(f"# n={n}: d=0 beyond the sweep cap, skipped", file=sys.stderr)
                continue
            r = extremal.sampled_h(
                n, args.k, args.l, args.d, args.samples, args.seed
            )
        rows.append(
            f"{r.n},{r.k},{r.l},{r.d},{r.mode},{r.value},{r.ci_low},{r.ci_high},{args.seed}"
        )
    text = "n,k,l,d,mode,value,ci_low,ci_high,seed\n" + "".join(x + "\n" for x in rows)
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(text)
        print(f"wrote {len(rows)} rows to {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> _Parser:
    ap = _Parser(prog="tighthyp", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", parents=[], help="generate a graph from a family")
    g.add_argument("--family", required=True,
                   choices=["complete", "random", "ore", "kk", "tuza", "clique-link"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--p", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--link", help="file with a (k-1)-graph for clique-link")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    s = sub.add_parser("solve", help="exact search for a spanning cycle")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--budget", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_solve)

    e = sub.add_parser("ex", help="exact extremal number for a pattern")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--pattern", required=True,
                   help="path:k,l,t cycle:k,l,t or P:k,l")
    e.add_argument("--budget", type=int)
    e.add_argument("--cache", help="JSON cache file")
    e.add_argument("--json", action="store_true")
    e.set_defaults(fn=cmd_ex)

    v = sub.add_parser("verify", help="compare the formula against direct search")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--l", type=int, required=True)
    v.add_argument("--budget", type=int)
    v.add_argument("--cache")
    v.set_defaults(fn=cmd_verify)

    p = sub.add_parser("pipeline", help="randomized absorbing cycle builder")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gamma", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--attempts", type=int)
    p.add_argument("--trace", help="write the run trace as JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_pipeline)

    c = sub.add_parser("scan", help="degree thresholds over a range of n")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n-min", type=int, required=True)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--csv")
    c.set_defaults(fn=cmd_scan)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except (OSError, ValueError, motifs.PatternError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
