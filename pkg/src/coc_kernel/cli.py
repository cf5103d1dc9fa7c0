"""Command line interface and instance file handling.

Instance files are DIMACS-like text: a "p coc <n> <m>" header, one
"e <u> <v>" line per edge with 1-based vertex ids, optional "l <ell>" and
"k <budget>" parameter lines, and "c" comment lines.  Command line flags
override in-file parameters.  Exit codes are the machine contract:
0 = success / yes / verified, 1 = no / verification failed, 2 = error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from .generators import random_instance
from .graphs import COCInstance, Graph
from .kernel import kernelize, verify_kernel
from .lp import build_coc_lp
from .solvers import branching_solve, brute_force_solve

SCHEMA_VERSION = 1


class CliError(Exception):
    pass


def parse_instance_text(text: str) -> tuple[Graph, int | None, int | None]:
    """Parse instance text into a graph (0-based ids) and optional l, k."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    ell = k = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        kind = tokens[0]
        try:
            if kind == "p":
                if n is not None:
                    raise CliError("duplicate problem line")
                if len(tokens) != 4:
                    raise CliError("problem line must be 'p coc <n> <m>'")
                n, m = int(tokens[2]), int(tokens[3])
                if n < 0 or m < 0:
                    raise CliError("negative counts in problem line")
            elif kind == "e":
                if n is None:
                    raise CliError("edge line before problem line")
                if len(tokens) != 3:
                    raise CliError("edge line must be 'e <u> <v>'")
                u, v = int(tokens[1]), int(tokens[2])
                if not (1 <= u <= n and 1 <= v <= n):
                    raise CliError(f"edge endpoint out of range 1..{n}")
                if u == v:
                    raise CliError("self-loop")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise CliError(f"duplicate edge {u} {v}")
                seen.add(key)
                edges.append((u - 1, v - 1))
            elif kind == "l":
                ell = int(tokens[1])
            elif kind == "k":
                k = int(tokens[1])
            else:
                raise CliError(f"unknown line type {kind!r}")
        except (ValueError, IndexError) as exc:
            raise CliError(f"line {lineno}: {exc}") from exc
        except CliError as exc:
            raise CliError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise CliError("missing problem line")
    if m != len(edges):
        raise CliError(f"problem line promises {m} edges, file has {len(edges)}")
    return Graph.from_edges(range(n), edges), ell, k


def emit_instance_text(g: Graph, ell: int | None = None, k: int | None = None) -> str:
    """Canonical text form; vertices must be exactly 0..n-1."""
    if g.vertices != frozenset(range(g.n)):
        raise ValueError("emit requires contiguous vertex ids starting at 0")
    lines = [f"p coc {g.n} {g.m}"]
    if ell is not None:
        lines.append(f"l {ell}")
    if k is not None:
        lines.append(f"k {k}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def renumber_contiguous(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Compact ids to 0..n-1; returns the new graph and new-to-old map."""
    old = sorted(g.vertices)
    new_to_old = {i: v for i, v in enumerate(old)}
    old_to_new = {v: i for i, v in enumerate(old)}
    edges = [(old_to_new[u], old_to_new[v]) for u, v in g.edges]
    return Graph.from_edges(range(len(old)), edges), new_to_old


def _load_instance(path: str, args: argparse.Namespace) -> COCInstance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    g, ell_file, k_file = parse_instance_text(text)
    ell = args.ell if args.ell is not None else ell_file
    k = args.k if args.k is not None else k_file
    if ell is None:
        raise CliError("no ell: pass --ell or add an 'l' line to the file")
    if k is None:
        raise CliError("no k: pass --k or add a 'k' line to the file")
    if ell < 1:
        raise CliError("ell must be >= 1")
    if k < 0:
        raise CliError("k must be >= 0")
    return COCInstance(g, ell, k)


def cmd_kernelize(args: argparse.Namespace) -> int:
    inst = _load_instance(args.path, args)
    result = kernelize(inst)
    reduced = result.instance
    out_graph, new_to_old = renumber_contiguous(reduced.graph)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(emit_instance_text(out_graph, reduced.ell, reduced.k))
    vertex_map = (
        {str(i + 1): new_to_old[i] + 1 for i in range(out_graph.n)}
        if result.verdict == "reduced"
        else None
    )
    report = {
        "schema": SCHEMA_VERSION,
        "parameters": {"ell": inst.ell, "k": inst.k},
        "original": {"vertices": inst.graph.n, "edges": inst.graph.m},
        "verdict": result.verdict,
        "kernel": {
            "vertices": reduced.graph.n,
            "edges": reduced.graph.m,
            "k": reduced.k,
            "bound": 2 * inst.ell * inst.k,
            "vertex_map": vertex_map,
        },
        "trace": [
            {
                "x": sorted(v + 1 for v in step.x),
                "y": sorted(v + 1 for v in step.y),
                "budget_before": step.budget_before,
                "budget_after": step.budget_after,
                "lp_objective": str(step.lp_objective),
            }
            for step in result.trace
        ],
    }
    text = json.dumps(report, indent=2)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load_instance(args.path, args)
    if args.engine == "brute":
        if inst.graph.n > args.cap:
            raise CliError(
                f"instance has {inst.graph.n} > {args.cap} vertices; "
                "brute engine refused (see --cap)"
            )
        outcome = brute_force_solve(inst, cap=args.cap)
    else:
        outcome = branching_solve(inst)
    if outcome.answer:
        print("yes")
        assert outcome.witness is not None
        print("witness", *sorted(v + 1 for v in outcome.witness))
        return 0
    print("no")
    return 1


def _verify_one(inst: COCInstance, cap: int) -> tuple[bool, str]:
    result = kernelize(inst)
    ok = verify_kernel(inst, result, cap=cap)
    note = (
        f"n={inst.graph.n} ell={inst.ell} k={inst.k} "
        f"verdict={result.verdict} kernel_n={result.instance.graph.n}"
    )
    return ok, note


def cmd_verify(args: argparse.Namespace) -> int:
    if args.count is not None:
        rng = random.Random(args.seed)
        failures = 0
        for i in range(args.count):
            inst = random_instance(rng, max_n=min(args.cap, 14))
            ok, note = _verify_one(inst, args.cap)
            if not ok:
                failures += 1
                print(f"FAIL [{i}] {note}")
        print(f"passed {args.count - failures}/{args.count}")
        return 0 if failures == 0 else 1
    if args.path is None:
        raise CliError("pass an instance file or --count")
    inst = _load_instance(args.path, args)
    if inst.graph.n > args.cap:
        raise CliError(f"instance has {inst.graph.n} > {args.cap} vertices (see --cap)")
    ok, note = _verify_one(inst, args.cap)
    print(note)
    print("verified" if ok else "MISMATCH")
    return 0 if ok else 1


def cmd_dump_lp(args: argparse.Namespace) -> int:
    inst = _load_instance(args.path, args)
    lp = build_coc_lp(inst.graph, inst.ell)
    for c in lp.constraints:
        print(*sorted(v + 1 for v in c))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coc-kernel",
        description="Kernelization and exact solving for component order connectivity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_path: bool = True) -> None:
        if needs_path:
            p.add_argument("path", help="instance file")
        p.add_argument("--ell", type=int, default=None, help="component size limit")
        p.add_argument("--k", type=int, default=None, help="deletion budget")

    p_kern = sub.add_parser("kernelize", help="reduce an instance")
    add_common(p_kern)
    p_kern.add_argument("--output", required=True, help="write reduced instance here")
    p_kern.add_argument("--json", default=None, help="write the JSON report here")
    p_kern.set_defaults(func=cmd_kernelize)

    p_solve = sub.add_parser("solve", help="decide an instance exactly")
    add_common(p_solve)
    p_solve.add_argument("--engine", choices=("brute", "branch"), default="branch")
    p_solve.add_argument("--cap", type=int, default=16, help="brute-force size cap")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="kernelize and cross-check by brute force")
    p_verify.add_argument("path", nargs="?", default=None, help="instance file")
    p_verify.add_argument("--ell", type=int, default=None)
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.add_argument("--cap", type=int, default=16)
    p_verify.add_argument("--count", type=int, default=None, help="verify this many random instances")
    p_verify.add_argument("--seed", type=int, default=0, help="seed for --count mode")
    p_verify.set_defaults(func=cmd_verify)

    p_dump = sub.add_parser("dump-lp", help="print the covering constraints")
    add_common(p_dump)
    p_dump.set_defaults(func=cmd_dump_lp)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
