"""Command-line front door: build families, compute invariants, evaluate
closed-form bounds, run the exact oracle, and emit verification tables.

Exit codes: 0 success, 2 argument or hypothesis error, 3 budget exhausted
(oracle answer inconclusive), 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructions, formulas, oracle, verification
from .families import Family, compute_invariants, is_shifted

EXIT_OK = 0
EXIT_ARG = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


def _parse_sigma(text):
    return tuple(int(x) for x in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchclique",
        description=("exact computation with k-uniform set families under "
                     "matching-number and clique-number constraints"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a named family and emit its JSON")
    p.add_argument("--family", required=True,
                   choices=constructions.FAMILY_NAMES)
    for flag in ("--n", "--k", "--s", "--q", "--m", "--l"):
        p.add_argument(flag, type=int)
    p.add_argument("--sigma", type=_parse_sigma,
                   help="cyclic order for CYC, e.g. 1,3,5,2,4")
    p.add_argument("--out", help="write the family JSON here "
                   "(default: stdout, summary on stderr)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invariants",
                       help="matching, covering and clique numbers of a "
                            "family JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("formula", help="evaluate a closed-form bound")
    p.add_argument("--name", required=True,
                   choices=("sizeA", "emc", "hm", "mstar", "m", "conjecture",
                            "cross", "crossdirect"))
    for flag in ("--n", "--k", "--s", "--q", "--l", "--t",
                 "--n1", "--n2", "--lp"):
        p.add_argument(flag, type=int)
    p.add_argument("--beta", default="1",
                   help="exact rational weight, e.g. 1 or 2/3")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("oracle", help="run the exact branch-and-bound oracle")
    p.add_argument("--mode", required=True, choices=("m", "mstar"))
    for flag in ("--n", "--k", "--s", "--q"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--node-limit", type=int, default=oracle.DEFAULT_NODE_LIMIT)
    p.add_argument("--time-limit", type=float,
                   default=oracle.DEFAULT_TIME_LIMIT)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--emit-witness", metavar="FILE",
                   help="write the witness family JSON here")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table",
                       help="sweep (n, q) cells and tabulate formula, "
                            "conjecture, oracle and gap columns")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n-range", required=True, metavar="A:B")
    p.add_argument("--q-range", required=True, metavar="A:B")
    p.add_argument("--columns", default="formula,conjecture,oracle,gap")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--node-limit", type=int,
                   default=oracle.DEFAULT_NODE_LIMIT,
                   help="per-cell oracle node budget")
    p.add_argument("--time-limit", type=float,
                   default=oracle.DEFAULT_TIME_LIMIT,
                   help="per-cell oracle time budget")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=tuple(verification.SUITES) + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--time-limit", type=float)
    p.set_defaults(func=cmd_verify)

    return parser


def _spec_params(args):
    return {key: getattr(args, key, None) for key in ("n", "k", "s", "q", "m", "l")}


def cmd_build(args) -> int:
    params = {k: v for k, v in _spec_params(args).items() if v is not None}
    fam = constructions.build(constructions.ConstructionSpec(
        args.family, params, args.sigma))
    inv = compute_invariants(fam)
    summary = {
        "family": args.family,
        "n": fam.n,
        "k": fam.k,
        "size": len(fam),
        "nu": inv.nu,
        "tau": inv.tau,
        "omega": inv.omega,
        "shifted": is_shifted(fam),
    }
    if args.out:
        fam.save(args.out)
        summary["out"] = args.out
        print(json.dumps(summary))
    else:
        print(fam.dumps())
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def cmd_invariants(args) -> int:
    fam = Family.load(args.file)
    inv = compute_invariants(fam)
    print(json.dumps({
        "n": fam.n,
        "k": fam.k,
        "size": len(fam),
        "nu": inv.nu,
        "tau": inv.tau,
        "omega": inv.omega,
        "shifted": is_shifted(fam),
        "matching_witness": [list(e) for e in inv.matching_witness],
        "cover_witness": list(inv.cover_witness),
        "clique_witness": list(inv.clique_witness),
    }))
    return EXIT_OK


def _need(args, *names):
    missing = [x for x in names if getattr(args, x, None) is None]
    if missing:
        raise ValueError(f"formula {args.name} requires --" + " --".join(missing))
    return [getattr(args, x) for x in names]


def cmd_formula(args) -> int:
    name = args.name
    out = {"value": None, "regime": name, "hypotheses_met": True, "note": ""}
    if name == "sizeA":
        n, q, k, s = _need(args, "n", "q", "k", "s")
        out["value"] = formulas.size_A(n, q, k, s)
    elif name == "emc":
        n, k, s = _need(args, "n", "k", "s")
        out["value"] = formulas.emc_bound(n, k, s)
    elif name == "hm":
        n, k = _need(args, "n", "k")
        out["value"] = formulas.hm_bound(n, k)
    elif name == "mstar":
        n, q, k, s = _need(args, "n", "q", "k", "s")
        res = formulas.m_star_closed(n, q, k, s)
        out.update(value=res.value, regime=res.regime,
                   hypotheses_met=res.hypotheses_met, note=res.note)
    elif name == "m":
        n, q, k, s = _need(args, "n", "q", "k", "s")
        res = formulas.m_closed(n, q, k, s)
        out.update(value=res.value, regime=res.regime,
                   hypotheses_met=res.hypotheses_met, note=res.note)
    elif name == "conjecture":
        n, q, k, s = _need(args, "n", "q", "k", "s")
        out["value"] = formulas.conjecture_rhs(n, q, k, s)
    elif name == "cross":
        n, k, l, t, s = _need(args, "n", "k", "l", "t", "s")
        res = formulas.cross_bound(n, k, l, t, s, Fraction(args.beta))
        value = res.value
        out.update(value=str(value) if isinstance(value, Fraction) else value,
                   hypotheses_met=res.hypotheses_met, note=res.note)
        out["argmax_i"] = res.argmax_i
    else:  # crossdirect
        n1, n2, k, l, lp, s = _need(args, "n1", "n2", "k", "l", "lp", "s")
        out["value"] = formulas.cross_direct_bound(n1, n2, k, l, lp, s)
    print(json.dumps(out))
    return EXIT_OK


def cmd_oracle(args) -> int:
    problem = oracle.SearchProblem(
        args.n, args.k, args.s, args.q,
        oracle.MODE_M_STAR if args.mode == "mstar" else oracle.MODE_M,
        args.node_limit, args.time_limit, args.threads)
    if args.mode == "mstar":
        res = oracle.exact_m_star(problem)
    else:
        res = oracle.exact_m(problem)
    payload = {
        "value": res.value,
        "proven_optimal": res.proven_optimal,
        "nodes": res.nodes_explored,
        "witness": None,
    }
    if args.emit_witness:
        res.witness.save(args.emit_witness)
        payload["witness"] = args.emit_witness
    print(json.dumps(payload))
    return EXIT_OK if res.proven_optimal else EXIT_BUDGET


def _parse_range(text):
    lo, _, hi = text.partition(":")
    lo, hi = int(lo), int(hi or lo)
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def cmd_table(args) -> int:
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    allowed = ("formula", "conjecture", "oracle", "gap")
    for c in columns:
        if c not in allowed:
            raise ValueError(f"unknown column {c!r}")
    if "gap" in columns and "oracle" not in columns:
        raise ValueError("the gap column requires the oracle column")
    n_range = _parse_range(getattr(args, "n_range"))
    q_range = _parse_range(getattr(args, "q_range"))
    rows = []
    all_proven = True
    for n in n_range:
        for q in q_range:
            row = {"n": n, "q": q}
            formula_val = formulas.m_closed(n, q, args.k, args.s).value
            if "formula" in columns:
                row["formula"] = formula_val
            if "conjecture" in columns:
                row["conjecture"] = formulas.conjecture_value(n, q, args.k, args.s)
            if "oracle" in columns:
                res = oracle.exact_m(oracle.SearchProblem(
                    n, args.k, args.s, q, oracle.MODE_M,
                    args.node_limit, args.time_limit, args.threads))
                row["oracle"] = res.value
                row["proven_optimal"] = res.proven_optimal
                all_proven = all_proven and res.proven_optimal
                if "gap" in columns:
                    row["gap"] = res.value - formula_val
            rows.append(row)
    if args.format == "json":
        text = json.dumps(rows) + "\n"
    else:
        header = ["n", "q"] + columns
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(str(row[c]) for c in header))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all_proven else EXIT_BUDGET


def cmd_verify(args) -> int:
    names = list(verification.SUITES) if args.suite == "all" else [args.suite]
    overall = EXIT_OK
    for name in names:
        fn = verification.SUITES[name]
        kwargs = {}
        import inspect
        accepted = inspect.signature(fn).parameters
        for key, val in (("seed", args.seed), ("k", args.k), ("s", args.s),
                         ("n_max", args.n_max), ("samples", args.samples),
                         ("node_limit", args.node_limit),
                         ("time_limit", args.time_limit)):
            if val is not None and key in accepted:
                kwargs[key] = val
        rep = fn(**kwargs)
        print(rep.summary())
        for line in rep.lines:
            print(f"  {line}")
        if not rep.passed:
            overall = EXIT_BUDGET if rep.inconclusive else EXIT_VERIFY
    return overall


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARG


if __name__ == "__main__":
    sys.exit(main())
