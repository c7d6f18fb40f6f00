"""Command-line front end: count / oracle / coeffs / verify / search.

Graph arguments accept three spellings:

* ``graph6:STR``             inline graph6 encoding
* ``gen:KIND:N[:P][:SEED]``  generators path | cycle | complete | random
* ``PATH``                   a file holding either edge-list text
                             (first line ``n m``) or one graph6 line

Exit code 0 means the command ran to completion, regardless of how many
mismatches were found; nonzero means an operational error (bad input,
capacity guard, I/O failure).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .coeffs import compute_f, compute_gprime
from .errors import CapacityError, Graph6ParseError
from .exact import rat_str
from .fastcount import FastCountOptions, fast_count
from .graph import Graph, generate, parse_edge_list_text, parse_graph6
from .harness import (
    OPTIONS_MATRIX,
    Budget,
    ClaimId,
    build_report,
    discrepancy_search,
    report_to_json,
    verify_claim,
    write_report,
    _FORMATTERS,
)
from .oracle import (
    count_k_directed_matchings,
    count_k_matchings,
    count_rook_placements,
    lemma1_sum,
)
from .partitions import enumerate_partitions


def _load_graph(spec: str) -> Graph:
    if spec.startswith("graph6:"):
        return parse_graph6(spec[len("graph6:"):])
    if spec.startswith("gen:"):
        parts = spec.split(":")
        if len(parts) < 3:
            raise ValueError(f"bad generator spec {spec!r}: expected gen:KIND:N[:P][:SEED]")
        kind = parts[1]
        n = int(parts[2])
        if kind == "random":
            if len(parts) < 4 or len(parts) > 5:
                raise ValueError(f"bad generator spec {spec!r}: expected gen:random:N:P[:SEED]")
            p = float(parts[3])
            seed = int(parts[4]) if len(parts) == 5 else 0
            return generate("random", n, p=p, seed=seed)
        if len(parts) != 3:
            raise ValueError(f"bad generator spec {spec!r}: {kind} takes no extra fields")
        return generate(kind, n)
    with open(spec, "r", encoding="ascii") as fh:
        text = fh.read()
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError(f"graph file {spec} is empty")
    toks = lines[0].split()
    if len(toks) == 2 and all(t.lstrip("-").isdigit() for t in toks):
        return parse_edge_list_text(text)
    return parse_graph6(lines[0])


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _cmd_count(args) -> int:
    g = _load_graph(args.graph)
    opts = FastCountOptions(args.gmode, args.index)
    res = fast_count(g, args.k, opts)
    if args.format == "json":
        _emit_json(
            {
                "n": res.n,
                "k": res.k,
                "options": {"gmode": opts.gmode, "index_convention": opts.index_convention},
                "value": rat_str(res.value),
                "is_integral": res.is_integral,
            }
        )
    else:
        tag = "integral" if res.is_integral else "non-integral"
        print(f"{rat_str(res.value)} ({tag})")
    return 0


def _cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    if args.what == "matchings":
        print(count_k_matchings(g, args.k))
    elif args.what == "directed":
        print(count_k_directed_matchings(g, args.k))
    elif args.what == "rooks":
        print(count_rook_placements(g, args.k))
    else:
        print(rat_str(lemma1_sum(g, args.k)))
    return 0


def _cmd_coeffs(args) -> int:
    if args.what == "g":
        tab = compute_gprime(args.k, args.gmode)
        _emit_json(
            {
                "k": tab.k,
                "mode": tab.mode,
                "g": {str(l): str(v) for l, v in sorted(tab.values.items())},
            }
        )
    else:
        ftab = compute_f(args.k)
        _emit_json(
            {
                "m": args.k,
                "f": {str(pi): str(ftab[pi]) for pi in enumerate_partitions(args.k)},
            }
        )
    return 0


def _cmd_verify(args) -> int:
    claims = list(ClaimId) if args.claim == "all" else [ClaimId(args.claim)]
    budget = Budget(n_max=args.nmax, k_max=args.kmax, seed=args.seed)
    records = []
    for claim in claims:
        records.extend(verify_claim(claim, budget))
    report = build_report(records, OPTIONS_MATRIX)
    if args.out:
        write_report(report, args.format, args.out)
    else:
        sys.stdout.write(_FORMATTERS[args.format](report))
    return 0


def _cmd_search(args) -> int:
    report = discrepancy_search(args.nmax, args.kmax)
    if args.out:
        write_report(report, "json", args.out)
    else:
        sys.stdout.write(report_to_json(report))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmatch",
        description="exact-arithmetic lab for a claimed fast k-matching counting formula",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="evaluate the fast formula on one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gmode", choices=["paper", "corrected"], default="corrected")
    p.add_argument("--index", choices=["paper", "corrected"], default="corrected")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("oracle", help="brute-force counts on one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--what",
        choices=["matchings", "directed", "rooks", "lemma1"],
        default="matchings",
    )
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("coeffs", help="dump coefficient tables as JSON")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gmode", choices=["paper", "corrected"], default="corrected")
    p.add_argument("--what", choices=["g", "f"], default="g")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("verify", help="run one claim suite (or all) and report")
    p.add_argument(
        "--claim",
        choices=[c.value for c in ClaimId] + ["all"],
        required=True,
    )
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="exhaustive fast-vs-oracle discrepancy search")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream consumer closed the pipe; suppress the traceback
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    except (ValueError, CapacityError, Graph6ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
