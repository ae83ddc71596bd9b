"""Command-line entry point.

Exit codes: 0 property holds, 1 violation (certificate printed),
2 inconclusive (budget or survivors), 3 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import logging
import platform
import random
import sys
import time

from . import __version__
from .bounds import deletion_experiment, ramsey_upper_estimate
from .certifier import (
    PreconditionError,
    certificate_document,
    check_center_uniqueness,
    dumps,
    find_edge_h3,
    find_edge_h4,
    independence_number,
    is_independent,
)
from .grid import enumerate_edges, format_edge_list, grid_points, h3_spec, h4_spec, is_edge, symmetric4_spec
from .search import PAIRWISE, STRICT, default_threads, parse_general_spec, run_search
from .trees import enumerate_tight_trees, scan_tree_freeness

EXIT_OK, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

log = logging.getLogger("ramsey_forge")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2, which is taken by "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_spec(spec_id: str):
    named = {"h3": h3_spec, "h4": h4_spec, "sym4": symmetric4_spec}
    if spec_id in named:
        return named[spec_id]()
    if spec_id.startswith("general:"):
        try:
            return parse_general_spec(spec_id)
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad general spec {spec_id!r}: {exc}") from exc
    raise UsageError(f"unknown spec id {spec_id!r} (use h3, h4, sym4 or general:<orders>)")


def _write(path: str | None, text: str, outputs: dict) -> None:
    data = text.encode("utf-8")
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        outputs["<stdout>"] = hashlib.sha256(data).hexdigest()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc
    outputs[path] = hashlib.sha256(data).hexdigest()


def cmd_construct(args, outputs) -> int:
    spec = resolve_spec(args.spec)
    edges = list(enumerate_edges(spec, args.n))
    text = format_edge_list(edges)
    if args.out and args.out != "-":
        _write(args.out, text, outputs)
        print(f"{len(edges)} edges")
    else:
        _write(None, text, outputs)
        print(f"{len(edges)} edges", file=sys.stderr)
    return EXIT_OK


def _edge_in_set(spec, n, args) -> tuple[str, dict]:
    r = spec.r
    if r == 3 and spec == h3_spec():
        finder, size = find_edge_h3, 2 * n
    elif r == 4 and spec == h4_spec():
        finder, size = find_edge_h4, 10 * n
    else:
        raise UsageError("edge-in-set is defined for h3 and h4 only")
    points = grid_points(n, spec.d)
    if size > len(points):
        raise UsageError(f"{size}-subsets do not exist in a grid of {len(points)} points")
    if args.trials is None:
        subsets = itertools.combinations(points, size)
        seed = None
    else:
        rng = random.Random(args.seed)
        subsets = (rng.sample(points, size) for _ in range(args.trials))
        seed = args.seed
    checked = 0
    failures = []
    first = None
    for x in subsets:
        checked += 1
        try:
            e = finder(x, n)
        except (PreconditionError, AssertionError) as exc:
            failures.append({"set": [list(p) for p in x], "error": str(exc)})
            continue
        if not e.vertices <= set(x) or is_edge(spec, e.vertices) is None:
            failures.append({"set": [list(p) for p in x], "error": "invalid edge returned"})
        elif first is None:
            first = e
    status = "holds" if not failures else "violated"
    witness = {"checked": checked, "set_size": size, "failures": failures[:10], "failure_count": len(failures)}
    if first is not None:
        witness["example_edge"] = [list(p) for p in first.sorted_vertices()]
    return status, {"witness": witness, "scan_seed": seed}


def cmd_certify(args, outputs) -> int:
    spec = resolve_spec(args.spec)
    n = args.n
    extra = {}
    if args.property == "centers":
        cert = check_center_uniqueness(spec, n)
        status = "holds" if cert is None else "violated"
        doc = certificate_document("centers", spec, n, status, cert.to_json() if cert else {"edges": []})
    elif args.property == "edge-in-set":
        status, parts = _edge_in_set(spec, n, args)
        doc = certificate_document("edge-in-set", spec, n, status, parts["witness"], parts["scan_seed"])
    elif args.property == "alpha":
        if args.budget is None or args.budget <= 0:
            raise UsageError("alpha needs a positive --budget")
        res = independence_number(spec, n, budget=args.budget)
        status = "holds" if res.exact else "inconclusive"
        if not is_independent(spec, n, res.witness.vertices):
            raise AssertionError("independence witness failed re-verification")
        extra = {"value": res.value, "exact": res.exact, "nodes": res.nodes}
        doc = certificate_document("alpha", spec, n, status, {"set": res.witness.to_json()["set"]}, **extra)
    elif args.property == "tree-freeness":
        report = scan_tree_freeness(spec, n, args.t_max)
        status = "holds" if report.holds else "violated"
        doc = certificate_document("tree-freeness", spec, n, status, report.to_json(), t_max=args.t_max)
    else:
        raise UsageError(f"unknown property {args.property!r}")
    _write(args.out, dumps(doc), outputs)
    return {"holds": EXIT_OK, "violated": EXIT_VIOLATION, "inconclusive": EXIT_INCONCLUSIVE}[status]


def cmd_search(args, outputs) -> int:
    if args.mode == "sampled" and args.sample_size is None:
        raise UsageError("--mode sampled needs --sample-size")
    if args.out in (None, "-"):
        raise UsageError("search writes JSON lines to a file; give --out PATH")
    threads = args.threads if args.threads is not None else default_threads()
    summary = run_search(
        args.r, args.n_max, args.mode, args.out, sample_size=args.sample_size, seed=args.seed,
        checkpoint=args.checkpoint, threads=threads, prop=args.property, symmetry=args.symmetry,
        limit=args.limit,
    )
    with open(args.out, "rb") as fh:
        outputs[args.out] = hashlib.sha256(fh.read()).hexdigest()
    print(json.dumps(summary.to_json(), sort_keys=True))
    if not summary.reverified:
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE if summary.inconclusive else EXIT_OK


def cmd_bounds(args, outputs) -> int:
    if args.bounds_cmd == "estimate":
        try:
            est = ramsey_upper_estimate(args.k, args.r, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _write(args.out, dumps(est.to_json()), outputs)
        return EXIT_OK
    spec = resolve_spec(args.spec)
    if not 0 <= args.p <= 1:
        raise UsageError("--p must lie in [0, 1]")
    summary = deletion_experiment(spec, args.n, args.p, args.trials, args.seed)
    _write(args.out, dumps(summary.to_json()), outputs)
    return EXIT_OK if summary.passed else EXIT_VIOLATION


def cmd_tree_scan(args, outputs) -> int:
    trees = list(enumerate_tight_trees(args.r, args.t_max))
    if args.trees_out:
        text = "\n".join(t.to_text() for t in trees)
        _write(args.trees_out, text, outputs)
    if args.spec is None:
        doc = {"r": args.r, "t_max": args.t_max, "trees": len(trees),
               "by_edges": {str(t): sum(1 for h in trees if h.t == t) for t in range(1, args.t_max + 1)}}
        _write(args.out, dumps(doc), outputs)
        return EXIT_OK
    spec = resolve_spec(args.spec)
    if spec.r != args.r:
        raise UsageError(f"--r {args.r} does not match {args.spec} (r={spec.r})")
    if args.n is None:
        raise UsageError("--spec needs --n")
    report = scan_tree_freeness(spec, args.n, args.t_max)
    status = "holds" if report.holds else "violated"
    doc = certificate_document("tree-freeness", spec, args.n, status, report.to_json(), t_max=args.t_max)
    _write(args.out, dumps(doc), outputs)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ramsey-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", help="write a run manifest (JSON) to this path")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="export the edge list of a construction")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="check one structural property")
    p.add_argument("property", choices=["centers", "edge-in-set", "alpha", "tree-freeness"])
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=5_000_000, help="node budget for alpha")
    p.add_argument("--trials", type=int, help="edge-in-set: random subsets instead of all of them")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-max", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="signed-lex construction search")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--mode", choices=["full", "sampled"], default="full")
    p.add_argument("--sample-size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checkpoint")
    p.add_argument("--threads", type=int)
    p.add_argument("--property", choices=[STRICT, PAIRWISE], default=STRICT)
    p.add_argument("--symmetry", action="store_true", help="check one tuple per coordinate-relabelling orbit")
    p.add_argument("--limit", type=int, help="stop after this many tuples (resume later from --checkpoint)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="upper-bound demonstrations")
    bsub = p.add_subparsers(dest="bounds_cmd", required=True)
    q = bsub.add_parser("estimate")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--out")
    q = bsub.add_parser("delete-method")
    q.add_argument("--spec", choices=["h3", "h4"], required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--trials", type=int, default=10_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tree-scan", help="enumerate tight trees, optionally embed them")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t-max", type=int, default=4)
    p.add_argument("--spec")
    p.add_argument("--n", type=int)
    p.add_argument("--trees-out")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tree_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    outputs: dict[str, str] = {}
    start = time.perf_counter()
    try:
        code = args.func(args, outputs)
    except (UsageError, ValueError) as exc:
        # library functions reject out-of-range parameters with ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.manifest:
        manifest = {
            "argv": argv,
            "command": args.command,
            "spec": getattr(args, "spec", None),
            "n": getattr(args, "n", None),
            "seed": getattr(args, "seed", None),
            "version": __version__,
            "python": platform.python_version(),
            "wall_time_s": round(time.perf_counter() - start, 3),
            "exit_code": code,
            "outputs": outputs,
        }
        with open(args.manifest, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(manifest, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
