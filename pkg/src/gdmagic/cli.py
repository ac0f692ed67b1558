"""Command-line interface.

Exit codes: 0 success / found / feasible, 1 obstruction, not found or failed
verification, 2 not covered by any construction, 3 invalid input, 4 search
timeout.  Data goes to stdout, human-readable notes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .abelian import GroupError, GroupSpec, enumerate_groups
from .constructions import (
    ConstructReport,
    c4_bipartite_z2z2,
    c4_cyclic2,
    c4_tripartite,
    c4_z2z2,
    c8_cyclic2,
    c8_z2z2,
    c8_z4,
    construct,
)
from .feasibility import (
    bipartite_c4_characterization,
    bipartite_condition_obstruction,
    involution_obstruction_bipartite_c4,
    regular_magic_constant,
)
from .graphs import MAX_VERTICES, Graph, GraphError, direct_product_with_cycle, generate, parse_generator_parts
from .labeling import Labeling, LabelingError, deserialize, to_json, verify
from .search import DEFAULT_MAX_VERTICES, SearchStatus, exists_labeling, magic_constants

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_NOT_COVERED = 2
EXIT_INVALID = 3
EXIT_TIMEOUT = 4

METHODS = ("auto", "lemma21", "lemma22", "obs24", "lemma28", "lemma31", "thm32c2", "thm32c3")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=None))


def _load_graph(args) -> Graph:
    if args.gen and args.graph:
        raise UsageError("give either --gen or --graph, not both")
    if args.gen:
        g = generate(args.gen)
    elif args.graph:
        g = Graph.parse_edge_list(Path(args.graph).read_text())
    else:
        raise UsageError("a graph is required (--gen or --graph)")
    if g.n > MAX_VERTICES:
        raise UsageError(f"graph has {g.n} vertices (cap {MAX_VERTICES})")
    return g


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gen", help="generator, e.g. cycle:5, bipartite:1,9, circulant:10;1,2, petersen")
    p.add_argument("--graph", help="edge-list file: n on the first line, then 'u v' per line")


# -- subcommands ------------------------------------------------------------


def cmd_groups(args) -> int:
    groups = enumerate_groups(args.order)
    if args.json:
        _emit([str(g) for g in groups])
    else:
        for g in groups:
            print(g)
    return EXIT_OK


def cmd_product(args) -> int:
    g = _load_graph(args)
    h = direct_product_with_cycle(g, args.cycle)
    if args.json:
        _emit({"n": h.n, "edges": [list(e) for e in h.sorted_edges()]})
    else:
        sys.stdout.write(h.to_edge_list())
    return EXIT_OK


def _run_method(method: str, g: Graph, k: int, group: GroupSpec, alpha: Optional[int]) -> ConstructReport:
    if method == "auto":
        return construct(g, k, group)
    expect_k = 8 if method in ("lemma31", "thm32c2", "thm32c3") else 4
    if k != expect_k:
        raise UsageError(f"method {method} needs --cycle {expect_k}")
    if method in ("obs24", "lemma28"):
        kind, sizes = parse_generator_parts(g.spec or "")
        if method == "obs24":
            if kind != "tripartite":
                raise UsageError("obs24 needs --gen tripartite:p,q,t")
            return c4_tripartite(*sizes, group)
        if kind != "bipartite":
            raise UsageError("lemma28 needs --gen bipartite:m,n")
        return c4_bipartite_z2z2(*sizes, group)
    if method in ("lemma21", "thm32c3"):
        if alpha is None:
            two = [q for q in group.canonical().factors if q % 2 == 0]
            if not two:
                raise UsageError(f"{group} has no cyclic 2-factor")
            alpha = two[0].bit_length() - 1
        return (c4_cyclic2 if method == "lemma21" else c8_cyclic2)(g, group, alpha)
    return {"lemma22": c4_z2z2, "lemma31": c8_z2z2, "thm32c2": c8_z4}[method](g, group)


def cmd_construct(args) -> int:
    g = _load_graph(args)
    if args.cycle not in (4, 8):
        raise UsageError("--cycle must be 4 or 8")
    if bool(args.group) == bool(args.all_groups):
        raise UsageError("give exactly one of --group or --all-groups")
    order = g.n * args.cycle
    groups = enumerate_groups(order) if args.all_groups else [GroupSpec.parse(args.group)]
    reports = []
    for group in groups:
        if group.order != order:
            raise UsageError(f"group {group} has order {group.order}, the product has {order} vertices")
        rep = _run_method(args.method, g, args.cycle, group, args.alpha)
        if rep.constructed and args.native:
            rep.labeling = rep.labeling.transported(group)
            rep.magic = verify(rep.labeling).magic_constant
        reports.append(rep)
        _note(f"{group}: {rep.outcome.value} ({rep.construction}){' ' + rep.reason if rep.reason else ''}")
    docs = [r.to_json() for r in reports]
    text = json.dumps(docs if args.all_groups else docs[0])
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if all(r.constructed for r in reports):
        return EXIT_OK
    return EXIT_NOT_COVERED


def _read_labeling(path: str) -> Labeling:
    obj = json.loads(Path(path).read_text())
    # accept a bare labeling or a construct report wrapping one
    if isinstance(obj, dict) and "outcome" in obj:
        if obj.get("labeling") is None:
            raise LabelingError("report carries no labeling")
        obj = obj["labeling"]
    return deserialize(json.dumps(obj))


def cmd_verify(args) -> int:
    lab = _read_labeling(args.labeling)
    rep = verify(lab)
    if args.json:
        _emit(rep.to_json())
    elif rep.ok:
        print(json.dumps(list(rep.magic_constant)))
    if rep.ok:
        _note(f"magic labeling over {lab.group}; magic constant {list(rep.magic_constant)}")
        return EXIT_OK
    _note(f"not magic: bijection={rep.is_bijection} constant_weight={rep.is_constant_weight} offenders={rep.offending_vertices}")
    return EXIT_NEGATIVE


def cmd_search(args) -> int:
    base = _load_graph(args)
    h = base if args.cycle is None else direct_product_with_cycle(base, args.cycle)
    group = GroupSpec.parse(args.group)
    if group.order != h.n:
        raise UsageError(f"group {group} has order {group.order}, the graph has {h.n} vertices")
    if h.n > args.max_vertices:
        raise UsageError(f"{h.n} vertices exceeds --max-vertices {args.max_vertices}")
    out = exists_labeling(
        h,
        group,
        max_nodes=args.max_nodes,
        timeout=args.timeout,
        find_all=args.all,
        symmetry=not args.no_symmetry,
        max_vertices=args.max_vertices,
        jobs=args.jobs,
    )
    doc = {
        "status": out.status.value,
        "nodes_explored": out.nodes_explored,
        "elapsed": round(out.elapsed, 6),
        "count": len(out.labelings),
        "labelings": [to_json(Labeling(group, base, args.cycle, lab)) for lab in out.labelings],
    }
    if args.all:
        doc["magic_constants"] = sorted(list(c) for c in magic_constants(h, group, out))
    _emit(doc)
    _note(f"{out.status.value}: {len(out.labelings)} labeling(s), {out.nodes_explored} nodes, {out.elapsed:.2f}s")
    return {SearchStatus.FOUND: EXIT_OK, SearchStatus.EXHAUSTED_NONE: EXIT_NEGATIVE, SearchStatus.TIMEOUT: EXIT_TIMEOUT}[out.status]


def cmd_feasibility(args) -> int:
    pred = args.predicate
    if pred == "regular":
        v = regular_magic_constant(args.r, args.n)
        doc = {
            "predicate": pred,
            "verdict": "feasible" if v.feasible else "obstruction",
            "witness": {"magic_constant": str(v.magic_constant), **(v.obstruction.to_json() if v.obstruction else {})},
        }
        bad = not v.feasible
    elif pred in ("involution", "bipartite"):
        if args.m is None or args.n is None or args.group is None:
            raise UsageError(f"{pred} needs --m, --n and --group")
        group = GroupSpec.parse(args.group)
        try:
            obs = involution_obstruction_bipartite_c4(args.m, args.n, group)
            verdict = bipartite_c4_characterization(args.m, args.n, group) if pred == "bipartite" else None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if pred == "involution":
            doc = {"predicate": pred, "verdict": "obstruction" if obs else "none", "witness": obs.to_json() if obs else None}
            bad = obs is not None
        else:
            doc = {"predicate": pred, "verdict": verdict.value, "witness": obs.to_json() if obs else None}
            bad = verdict.value == "not_exists"
    elif pred in ("acg", "c8"):
        if args.m is None or args.n is None:
            raise UsageError(f"{pred} needs --m and --n")
        try:
            obs = bipartite_condition_obstruction(args.m, args.n, 4 if pred == "acg" else 8)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        doc = {"predicate": pred, "verdict": "violated" if obs else "holds", "witness": obs.to_json() if obs else None}
        bad = obs is not None
    else:
        raise UsageError(f"unknown predicate {pred}")
    _emit(doc)
    return EXIT_NEGATIVE if bad else EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = _Parser(prog="gdmagic", description="Group distance magic labelings of G x C4 and G x C8.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("groups", parents=[common], help="list Abelian groups of an order")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_groups)

    p = sub.add_parser("product", parents=[common], help="emit the edge list of G x C_k")
    _add_graph_args(p)
    p.add_argument("--cycle", type=int, required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("construct", parents=[common], help="build and verify labelings")
    _add_graph_args(p)
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--group")
    p.add_argument("--all-groups", action="store_true")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--alpha", type=int, help="exponent of the cyclic 2-factor for lemma21/thm32c3")
    p.add_argument("--native", action="store_true", help="write labels in the requested group's own coordinates")
    p.add_argument("--out", help="write the report(s) here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="verify a labeling file")
    p.add_argument("--labeling", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="exhaustive search for a labeling")
    _add_graph_args(p)
    p.add_argument("--cycle", type=int, help="search G x C_k; omit to search G itself")
    p.add_argument("--group", required=True)
    p.add_argument("--all", action="store_true", help="enumerate every labeling")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--timeout", type=float)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("feasibility", parents=[common], help="necessary conditions and obstructions")
    p.add_argument("predicate", choices=("regular", "involution", "acg", "c8", "bipartite"))
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--group")
    p.set_defaults(func=cmd_feasibility)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "feasibility" and args.predicate == "regular" and (args.r is None or args.n is None):
            raise UsageError("regular needs --r and --n")
        return args.func(args)
    except (UsageError, GroupError, GraphError, LabelingError, OSError, json.JSONDecodeError) as exc:
        _note(f"error: {exc}")
        return EXIT_INVALID
    except ValueError as exc:
        _note(f"error: {exc}")
        return EXIT_INVALID


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
