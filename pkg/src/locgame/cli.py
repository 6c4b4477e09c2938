"""Command-line interface: ``locgame {gen,solve,analyze,verify,trace}``.

Graphs travel as graph6 on stdin/stdout; JSON is printed only with --json.
Exit codes: 0 success / all pass, 1 a theorem check failed, 2 no k <= kmax
wins, 3 input error, 4 budget skips with everything else passing.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, designs
from .graph import Graph, GraphError, encode_graph6, generate, graph_stats, parse_graph6
from .invariants import chromatic_number, metric_dimension, pathwidth
from .solver import (BoundExceeded, BudgetExceeded, GameError, Variant, cop_win,
                     solve_localization, verify_evidence)
from .solver.evidence import CAPTURED, StrategyTree, dumps, extract_strategy
from .solver.game import format_vector, members, partition_by_probe
from .suites import DEFAULT_SEED, SUITES

EXIT_OK, EXIT_FAIL, EXIT_BOUND, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3, 4
TIMING_KEYS = {"wall_time", "seconds"}


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str = __version__
    seed: int | None = None
    wall_time: float = 0.0
    payload_sha256: str = ""
    extra: dict = field(default_factory=dict)


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def payload_digest(payload) -> str:
    text = json.dumps(strip_timing(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


class InputError(Exception):
    pass


def read_graphs(source: str | None) -> list[Graph]:
    if source in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(str(exc)) from None
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("no graph6 input")
    graphs = []
    for ln in lines:
        try:
            graphs.append(parse_graph6(ln))
        except GraphError as exc:
            raise InputError(f"bad graph6 line {ln!r}: {exc}") from None
    label_file = None if source in (None, "-") else Path(str(source) + ".labels")
    if label_file is not None and label_file.exists() and len(graphs) == 1:
        labels = label_file.read_text().splitlines()
        if len(labels) == graphs[0].n:
            graphs[0] = graphs[0].relabeled(labels)
    return graphs


def _emit(args, command: str, payload, human: str, start: float, seed=None):
    manifest = RunManifest(command, _params(args), seed=seed, wall_time=round(time.monotonic() - start, 6),
                           payload_sha256=payload_digest(payload))
    if args.json:
        print(json.dumps({"manifest": asdict(manifest), "result": payload}, sort_keys=True, indent=2))
    else:
        if human:
            print(human)
        print("manifest: " + json.dumps(asdict(manifest), sort_keys=True), file=sys.stderr)


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json")}


# ---------------------------------------------------------------- commands

DESIGN_FAMILIES = ("pg", "ag", "sts")


def _build(args) -> tuple[Graph, designs.Design | None]:
    fam = args.family
    if fam in DESIGN_FAMILIES:
        if fam == "pg":
            d = designs.projective_plane(_need(args.q, "--q"))
            blocks = designs.projective_line_labels(args.q)
        elif fam == "ag":
            d, blocks = designs.affine_plane(_need(args.q, "--q")), None
        else:
            d, blocks = designs.steiner_triple_system(_need(args.v, "--v")), None
        return designs.incidence_graph(d, blocks), d
    if fam == "polarity":
        return designs.polarity_graph(_need(args.q, "--q")), None
    if fam == "complete_bipartite":
        return generate(fam, [_need(args.a, "--a"), _need(args.b, "--b")]), None
    if fam == "kneser":
        return generate(fam, [_need(args.k, "--k"), _need(args.n, "--n")]), None
    if fam == "hypercube":
        return generate(fam, [_need(args.d if args.d is not None else args.n, "--d")]), None
    return generate(fam, [_need(args.n, "--n")]), None


def _need(value, flag):
    if value is None:
        raise InputError(f"missing {flag}")
    return value


def cmd_gen(args) -> int:
    start = time.monotonic()
    g, d = _build(args)
    g6 = encode_graph6(g)
    stats = graph_stats(g).to_dict()
    payload = {"graph6": g6, "stats": stats}
    if d is not None and not args.incidence:
        payload["design"] = designs.format_design(d)
    if args.output:
        out = Path(args.output)
        if d is not None and not args.incidence:
            out.write_text(designs.format_design(d))
        else:
            out.write_text(g6 + "\n")
            if g.labels is not None:
                Path(str(out) + ".labels").write_text("\n".join(g.labels) + "\n")
        human = json.dumps(stats, sort_keys=True)
    else:
        if d is not None and not args.incidence:
            human = designs.format_design(d).rstrip()
        else:
            human = g6
        print(json.dumps(stats, sort_keys=True), file=sys.stderr)
    _emit(args, "gen", payload, human, start)
    return EXIT_OK


def _write_evidence(prefix: str, g: Graph, verdict):
    if verdict.evidence is None:
        return
    if not verify_evidence(g, verdict):
        raise RuntimeError("produced evidence failed verification")
    stem = f"{prefix}.k{verdict.k}.{verdict.variant.value}.{verdict.evidence.kind}"
    Path(stem + ".json").write_text(dumps(verdict.evidence) + "\n")
    Path(stem + ".dot").write_text(verdict.evidence.to_dot(g.labels))


def cmd_solve(args) -> int:
    start = time.monotonic()
    graphs = read_graphs(args.input)
    variant = Variant.parse(args.variant)
    results, lines = [], []
    code = EXIT_OK
    for i, g in enumerate(graphs):
        prefix = args.evidence if len(graphs) == 1 else f"{args.evidence}.{i}"
        entry = {"graph6": encode_graph6(g), "n": g.n}
        try:
            if args.evidence and not g.is_connected():
                raise InputError("--evidence needs a connected graph")
            if args.locnum:
                want = bool(args.evidence)
                res = solve_localization(g, variant, args.kmax, evidence=want, threads=args.threads,
                                         budget=args.budget_secs)
                entry["zeta"] = res.zeta
                entry["verdicts"] = [v.to_dict() for v in res.verdicts]
                lines.append(f"zeta = {res.zeta}")
                if args.evidence:
                    for v in res.verdicts[-2:]:
                        _write_evidence(prefix, g, v)
            else:
                if not g.is_connected():
                    raise InputError("--cops needs a connected graph; use --locnum")
                v = cop_win(g, args.cops, variant, threads=args.threads, budget=args.budget_secs)
                entry.update(v.to_dict())
                entry["evidence_verified"] = verify_evidence(g, v)
                who = "cops win" if v.cop_win else "robber wins"
                extra = (f"capture within {v.evidence.depth} rounds" if v.cop_win
                         else f"{len(v.evidence.safe_states)} safe territories")
                lines.append(f"k={args.cops} ({variant.value}): {who}; {extra}")
                if args.evidence:
                    _write_evidence(prefix, g, v)
        except BoundExceeded as exc:
            entry["error"] = str(exc)
            lines.append(f"bound exceeded: {exc}")
            code = max(code, EXIT_BOUND)
        except BudgetExceeded as exc:
            entry["skipped"] = str(exc)
            lines.append(f"skipped: {exc}")
            code = max(code, EXIT_BUDGET)
        results.append(entry)
    payload = results[0] if len(results) == 1 else results
    _emit(args, "solve", payload, "\n".join(lines), start)
    return code


def cmd_analyze(args) -> int:
    start = time.monotonic()
    out = []
    for g in read_graphs(args.input):
        stats = graph_stats(g).to_dict()
        entry = {"graph6": encode_graph6(g), "stats": stats, "max_degree": stats["max_degree"]}
        for key, fn, limit in (("beta", metric_dimension, 20), ("chi", chromatic_number, 18),
                               ("pw", pathwidth, 18)):
            entry[key] = fn(g) if g.n <= limit else f"skipped: size (n > {limit})"
        out.append(entry)
    payload = out[0] if len(out) == 1 else out
    human = "\n".join(f"beta={e['beta']} chi={e['chi']} pw={e['pw']} Delta={e['max_degree']} "
                      f"stats={json.dumps(e['stats'], sort_keys=True)}" for e in out)
    _emit(args, "analyze", payload, human, start)
    return EXIT_OK


def cmd_verify(args) -> int:
    start = time.monotonic()
    kw = dict(threads=args.threads, budget=args.budget_secs, evidence=not args.no_evidence)
    suite = args.suite
    if suite == "corpus":
        result = SUITES[suite](args.n if args.n is not None else 5, args.random_count, args.seed, **kw)
    elif suite == "trees":
        result = SUITES[suite](args.max_n if args.max_n is not None else 8, args.derive_n, **kw)
    elif suite == "designs":
        result = SUITES[suite](args.max_q if args.max_q is not None else 2, **kw)
    elif suite == "polarity":
        result = SUITES[suite](args.max_q if args.max_q is not None else 3, **kw)
    elif suite == "hypercube":
        result = SUITES[suite](args.max_d if args.max_d is not None else 3, **kw)
    else:
        result = SUITES[suite](args.max_n if args.max_n is not None else 6, **kw)
    payload = result.to_dict()
    payload["evidence_sha256"] = result.evidence_digest()
    lines = [result.chart(), ""]
    if suite == "trees":
        t3 = result.notes["T3"]
        found = t3["minimal_zeta2_trees"]
        if found:
            edges = parse_graph6(found[0]).edges()
            lines.append(f"derived T3 (graph6 {found[0]}, {len(edges) + 1} vertices): edges {edges}; "
                         f"biconditional over {t3['trees']} trees: {t3['biconditional']}")
        else:
            lines.append(f"no tree with zeta = 2 on n <= {t3['max_n']}; T3 not derived")
    lines.append(f"{len(result.instances)} instances, {len(result.failures)} failures, "
                 f"{len(result.skipped)} skipped")
    _emit(args, "verify", payload, "\n".join(lines), start,
          seed=args.seed if suite == "corpus" else None)
    return result.exit_code()


def _trace_rows(g: Graph, tree: StrategyTree):
    depth = tree.node_depths()
    from .graph import all_pairs_distances
    dm = all_pairs_distances(g)
    t, rnd, rows = tree.root, 1, []
    name = (lambda v: g.labels[v]) if g.labels else str
    while True:
        node = tree.nodes[t]
        parts = partition_by_probe(g, dm, t, node.probe)
        child = dict(node.children)

        def value(item):
            vec, cls = item
            c = child[vec]
            return 0 if c == CAPTURED else depth[c]
        # adversary: class with the longest remaining play, ties to the smallest class
        vec, cls = min(parts, key=lambda it: (-value(it), members(it[1])))
        nxt = child[vec]
        rows.append({
            "round": rnd,
            "territory_size": t.bit_count(),
            "probe": [name(v) for v in node.probe],
            "distance_vector": format_vector(vec),
            "class": [name(v) for v in members(cls)],
            "captured": nxt == CAPTURED,
            "next_territory_size": None if nxt == CAPTURED else nxt.bit_count(),
        })
        if nxt == CAPTURED:
            return rows
        t, rnd = nxt, rnd + 1


def cmd_trace(args) -> int:
    start = time.monotonic()
    graphs = read_graphs(args.input)
    g = graphs[0]
    variant = Variant.parse(args.variant)
    v = cop_win(g, args.cops, variant, evidence=False, threads=args.threads)
    if not v.cop_win:
        print(f"robber wins against {args.cops} cop(s); nothing to trace", file=sys.stderr)
        return EXIT_INPUT
    tree = extract_strategy(g, args.cops, variant, threads=args.threads)
    rows = _trace_rows(g, tree)
    human = "\n".join(
        f"round {r['round']}: |T|={r['territory_size']} probe {{{','.join(r['probe'])}}} "
        f"-> d=({r['distance_vector']}) class {{{','.join(r['class'])}}}"
        + (" captured" if r["captured"] else f" -> |T'|={r['next_territory_size']}")
        for r in rows)
    _emit(args, "trace", {"graph6": encode_graph6(g), "k": args.cops, "rounds": rows}, human, start)
    return EXIT_OK


# ------------------------------------------------------------------ parser

GEN_FAMILIES = ("path", "cycle", "star", "complete", "complete_bipartite", "hypercube", "kneser",
                "pg", "ag", "sts", "polarity")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locgame", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads=True):
        sp.add_argument("--json", action="store_true", help="print a JSON document on stdout")
        if threads:
            sp.add_argument("--threads", type=int, default=1)

    g = sub.add_parser("gen", help="generate a graph family or design")
    g.add_argument("family", choices=GEN_FAMILIES)
    for flag in ("--n", "--k", "--q", "--v", "--d", "--a", "--b"):
        g.add_argument(flag, type=int)
    g.add_argument("--incidence", action="store_true", help="emit the design's incidence graph")
    g.add_argument("-o", "--output")
    common(g, threads=False)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="decide k cops or compute the localization number")
    s.add_argument("input", nargs="?", default="-")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--cops", type=int)
    mode.add_argument("--locnum", action="store_true")
    s.add_argument("--variant", choices=("standard", "no-backtrack", "no_backtrack"), default="standard")
    s.add_argument("--kmax", type=int)
    s.add_argument("--evidence", metavar="PREFIX", help="write verified evidence JSON and DOT")
    s.add_argument("--budget-secs", type=float)
    common(s)
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("analyze", help="metric dimension, chromatic number, pathwidth, stats")
    a.add_argument("input", nargs="?", default="-")
    common(a, threads=False)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a theorem-check suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--n", type=int, help="corpus: largest exhaustive order")
    v.add_argument("--max-n", type=int, help="trees: largest order; kneser: largest n of K(2,n)")
    v.add_argument("--derive-n", type=int, default=12, help="trees: corpus order used to derive T3")
    v.add_argument("--max-q", type=int)
    v.add_argument("--max-d", type=int, help="hypercube: largest dimension")
    v.add_argument("--random-count", type=int, default=200)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--budget-secs", type=float, default=120.0)
    v.add_argument("--no-evidence", action="store_true")
    common(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="replay the cop strategy against the worst-case robber")
    t.add_argument("input", nargs="?", default="-")
    t.add_argument("--cops", type=int, required=True)
    t.add_argument("--variant", choices=("standard", "no-backtrack", "no_backtrack"), default="standard")
    common(t)
    t.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphError, GameError, designs.DesignError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
