"""Command-line front end.

Exit status: 0 ok, 1 the checked property fails (or no coloring exists),
2 bad usage or malformed input, 3 a capability cap was hit. Every command
reads hypergraph files in the ``r n m`` format, with ``-`` meaning stdin.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from .colorings import find_coloring, format_coloring, parse_coloring, used_colors, verify_coloring
from .constructions import ConstructionParams, gen_construction
from .extremal import (
    CertificateRefused,
    certify_lower_bound,
    exact_search,
    verify_certificate,
    write_certificate,
)
from .hypergraph import Hypergraph, contains_injective, format_hypergraph, parse_hypergraph, tight_cycle
from .permgroup import (
    CapabilityError,
    InvalidResidueError,
    brute_force_conjugate_search,
    check_claim_simaximal,
    cyc_power,
    enumerate_available_colors,
    si_available,
    young_subgroup,
)
from .walks import contains_cycle_hom, format_walk, is_homfree, residue_reach_oracle

OK, FAIL, USAGE, CAPABILITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _read_graph(path: str) -> Hypergraph:
    return parse_hypergraph(_read_text(path))


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


class _Report:
    """Collects the values a command reports; prints them as text or JSON."""

    def __init__(self, command: str, as_json: bool):
        self.data = {"command": command}
        self.lines: list[str] = []
        self.as_json = as_json

    def __setitem__(self, key, value):
        self.data[key] = value

    def say(self, line: str) -> None:
        self.lines.append(line)

    def emit(self, status: int) -> int:
        self.data["status"] = status
        if self.as_json:
            print(json.dumps(self.data, sort_keys=True, indent=2))
        elif self.lines:
            print("\n".join(self.lines))
        return status


# ---------------------------------------------------------------------------
# commands


def cmd_gen_construction(args, rep: _Report) -> int:
    params = ConstructionParams(args.r, args.p, args.n)
    H = gen_construction(params)
    parts = " | ".join(f"{part.start}..{part.stop - 1}" for part in params.parts)
    comments = [f"construction r={args.r} p={args.p} n={args.n}",
                "edges: part indices (1-based) sum to 1 mod p",
                f"parts {parts}"]
    text = format_hypergraph(H, comments)
    rep["r"], rep["p"], rep["n"], rep["m"] = args.r, args.p, args.n, len(H)
    rep["output"] = args.output
    if rep.as_json and args.output in (None, "-"):
        raise UsageError("--json needs -o PATH for gen-construction, the graph itself goes to a file")
    _write_text(args.output, text)
    if args.output not in (None, "-"):
        rep.say(f"wrote {len(H)} edges to {args.output}")
    return OK


def cmd_check_homfree(args, rep: _Report) -> int:
    H = _read_graph(args.graph)
    free, walk = is_homfree(H, args.k, return_witness=True)
    rep["k"], rep["homfree"] = args.k, free
    rep["witness_length"] = None if walk is None else len(walk)
    rep["witness_path"] = None
    if free:
        rep.say(f"hom-free for k={args.k}")
        return OK
    if args.witness:
        _write_text(args.witness, format_walk(walk))
        rep["witness_path"] = args.witness
    rep.say(f"not hom-free for k={args.k}: closed tight walk of length {len(walk)}")
    rep.say(format_walk(walk).rstrip("\n"))
    return FAIL


def cmd_contains_cycle(args, rep: _Report) -> int:
    H = _read_graph(args.graph)
    rep["ell"] = args.ell
    if args.injective:
        found = contains_injective(H, tight_cycle(H.r, args.ell), cap=args.cap)
        rep["mode"] = "injective"
    else:
        found = contains_cycle_hom(H, args.ell)
        rep["mode"] = "homomorphic"
    rep["contains"] = found
    what = "copy" if args.injective else "homomorphic image"
    rep.say(f"{'contains a' if found else 'no'} {what} of C_{args.ell}^{H.r}")
    return FAIL if found else OK


def cmd_available_colors(args, rep: _Report) -> int:
    system = enumerate_available_colors(args.r, args.k, "full" if args.full else "young_only")
    half = args.r // 2
    unavailable = [i for i in range(1, half + 1) if not si_available(args.r, args.k, i)]
    colors = []
    for j, G in enumerate(system.base_groups):
        colors.append({"index": j, "order": G.order, "young_i": system.young_type(j),
                       "generators": [str(g) for g in G.generating_set()],
                       "cosets": len(system.coset_spaces[j])})
    rep["r"], rep["k"], rep["mode"] = args.r, args.k, system.mode
    rep["colors"], rep["unavailable_young"] = colors, unavailable
    rep.say(system.dump().rstrip("\n"))
    for c in colors:
        rep.say(f"# color {c['index']}: {system.describe(c['index'])}")
    for i in unavailable:
        rep.say(f"# i={i} unavailable: S_{i} x S_{args.r - i} holds a conjugate of cyc^{args.k}")
    return OK


def cmd_find_coloring(args, rep: _Report) -> int:
    H = _read_graph(args.graph)
    result = find_coloring(H, args.k, "full" if args.full else "young_only")
    rep["k"], rep["sat"], rep["output"] = args.k, result.sat, args.output
    if not result.sat:
        rep["conflict_component_size"] = len(result.component)
        rep.say(f"UNSAT: no accordant coloring; a constraint component of {len(result.component)} edges is inconsistent")
        return FAIL
    rep["used_colors"] = sorted(used_colors(result.coloring))
    text = format_coloring(result.coloring)
    if rep.as_json and args.output in (None, "-"):
        raise UsageError("--json needs -o PATH for find-coloring")
    _write_text(args.output, text)
    if args.output not in (None, "-"):
        rep.say(f"wrote coloring of {len(H)} edges to {args.output}")
    return OK


def cmd_verify_coloring(args, rep: _Report) -> int:
    if args.graph == "-" and args.coloring == "-":
        raise UsageError("only one of the two inputs can come from stdin")
    H = _read_graph(args.graph)
    C = parse_coloring(_read_text(args.coloring))
    ok, violations = verify_coloring(H, C)
    rep["accordant"], rep["violations"] = ok, len(violations)
    rep["violations_path"] = None
    if violations and args.violations:
        _write_text(args.violations, "".join(f"{' '.join(map(str, a))} | {' '.join(map(str, b))}\n"
                                             for a, b in violations))
        rep["violations_path"] = args.violations
    rep.say("accordant" if ok else f"{len(violations)} accordance violations")
    for v in violations[:5]:
        rep.say(f"  {v}")
    return OK if ok else FAIL


def cmd_min_codegree(args, rep: _Report) -> int:
    H = _read_graph(args.graph)
    value = H.min_codegree()
    rep["r"], rep["n"], rep["min_codegree"] = H.r, H.n, value
    rep.say(str(value))
    return OK


def cmd_extremal(args, rep: _Report) -> int:
    if args.k is None and args.ell is None:
        raise UsageError("give --k or --ell")
    t0 = time.perf_counter()
    res = exact_search(args.n, args.r, k=args.k, ell=args.ell, exact=args.exact)
    rep["n"], rep["r"], rep["k"], rep["ell"] = res.n, res.r, res.k, res.ell
    rep["best_codegree"], rep["exact"] = res.best_codegree, res.exact
    rep["nodes_explored"], rep["ratio"] = res.nodes_explored, round(res.ratio, 6)
    rep["threads"] = args.threads
    rep["witness_path"] = None
    if args.witness:
        _write_text(args.witness, format_hypergraph(res.witness))
        rep["witness_path"] = args.witness
    kind = "exact" if res.exact else "lower bound"
    target = f"k={res.k}" if res.ell is None else f"ell={res.ell}"
    rep.say(f"n={res.n} r={res.r} {target}: best min codegree {res.best_codegree} ({kind}, "
            f"{res.nodes_explored} nodes, {time.perf_counter() - t0:.2f}s)")
    return OK


def cmd_certify(args, rep: _Report) -> int:
    H = _read_graph(args.graph)
    rep["k"], rep["directory"] = args.k, args.directory
    try:
        cert = certify_lower_bound(H, args.k, search_coloring=not args.no_coloring)
    except CertificateRefused as exc:
        rep["refused"] = True
        rep["witness_length"] = len(exc.walk)
        rep.say(f"refused: {exc}")
        return FAIL
    write_certificate(cert, args.directory)
    rep["refused"], rep["codegree"] = False, cert.codegree
    rep["coloring"] = cert.coloring is not None
    rep.say(f"certificate for codegree {cert.codegree} written to {args.directory}")
    return OK


def cmd_verify_cert(args, rep: _Report) -> int:
    ok, problems = verify_certificate(args.directory)
    rep["valid"], rep["problems"] = ok, problems
    rep.say("certificate valid" if ok else "certificate INVALID")
    rep.lines.extend(f"  {p}" for p in problems)
    return OK if ok else FAIL


def _selfcheck_walks(rng: random.Random, samples: int) -> int:
    import itertools

    bad = 0
    for n in range(3, 6):
        triples = list(itertools.combinations(range(1, n + 1), 3))
        for mask in range(1 << len(triples)):
            H = Hypergraph(3, n, [t for b, t in enumerate(triples) if mask >> b & 1])
            for k in (1, 2):
                bad += is_homfree(H, k) == residue_reach_oracle(H, k)
    for _ in range(samples):
        r = rng.choice((3, 4))
        n = rng.randint(r + 1, 7)
        edges = [e for e in itertools.combinations(range(1, n + 1), r) if rng.random() < 0.4]
        H = Hypergraph(r, n, edges)
        k = rng.randrange(1, r)
        bad += is_homfree(H, k) == residue_reach_oracle(H, k)
    return bad


def cmd_selfcheck(args, rep: _Report) -> int:
    rng = random.Random(args.seed)
    results = {}

    t0 = time.perf_counter()
    results["walks_dual"] = _selfcheck_walks(rng, args.samples)
    rep.say(f"walks dual: {results['walks_dual']} mismatches ({time.perf_counter() - t0:.1f}s)")

    t0 = time.perf_counter()
    bad = 0
    for r in range(2, 9):
        for k in range(1, r):
            pi = cyc_power(r, k)
            for i in range(1, r):
                bad += si_available(r, k, i) == brute_force_conjugate_search(young_subgroup(r, i), pi)
    results["availability"] = bad
    rep.say(f"availability vs brute force, r<=8: {bad} mismatches ({time.perf_counter() - t0:.1f}s)")

    t0 = time.perf_counter()
    bad = sum(len(check_claim_simaximal(r)) for r in range(3, args.max_r + 1))
    results["simaximal"] = bad
    rep.say(f"two-block subgroups, r=3..{args.max_r}: {bad} counterexamples ({time.perf_counter() - t0:.1f}s)")

    rep["mismatches"] = results
    failed = any(results.values())
    rep.say("selfcheck FAILED" if failed else "selfcheck passed")
    return FAIL if failed else OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tclab", description="Tight-cycle homomorphism toolkit.")
    parser.add_argument("--json", action="store_true", help="print a JSON report instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_arg(p):
        p.add_argument("graph", nargs="?", default="-", help="hypergraph file, '-' for stdin (default)")

    p = sub.add_parser("gen-construction", help="write the modular-sum construction")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_construction)

    p = sub.add_parser("check-homfree", help="look for closed tight walks of length k mod r")
    graph_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--witness", metavar="PATH", help="write the witness walk here")
    p.set_defaults(func=cmd_check_homfree)

    p = sub.add_parser("contains-cycle", help="test for C_ell^r (homomorphic by default)")
    graph_arg(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--injective", action="store_true", help="look for a genuine copy instead")
    p.add_argument("--cap", type=int, default=12, help="largest ell tried with --injective")
    p.set_defaults(func=cmd_contains_cycle)

    p = sub.add_parser("available-colors", help="list the colors available for residue k")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--full", action="store_true", help="all maximal classes, not only young ones")
    p.set_defaults(func=cmd_available_colors)

    p = sub.add_parser("find-coloring", help="search for an accordant coloring")
    graph_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--full", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_find_coloring)

    p = sub.add_parser("verify-coloring", help="check a coloring against its hypergraph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--violations", metavar="PATH", help="write violating edge pairs here")
    p.set_defaults(func=cmd_verify_coloring)

    p = sub.add_parser("min-codegree", help="print the minimum codegree")
    graph_arg(p)
    p.set_defaults(func=cmd_min_codegree)

    p = sub.add_parser("extremal", help="largest min codegree avoiding the residue class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int, help="forbid a copy of C_ell^r instead")
    p.add_argument("--exact", action="store_true", help="fail with status 3 rather than fall back to a bound")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; the search runs in one thread")
    p.add_argument("--witness", metavar="PATH")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("certify", help="write a certificate directory for a hom-free graph")
    graph_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-d", "--directory", required=True)
    p.add_argument("--no-coloring", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-cert", help="re-check a certificate directory")
    p.add_argument("directory")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("selfcheck", help="run the differential oracles")
    p.add_argument("--samples", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-r", type=int, default=6, choices=range(3, 7))
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    rep = _Report(args.command, args.json)
    try:
        return rep.emit(args.func(args, rep))
    except CapabilityError as exc:
        print(f"tclab: {exc}", file=sys.stderr)
        return CAPABILITY
    except (UsageError, InvalidResidueError, ValueError) as exc:
        print(f"tclab: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
