"""Command-line front door over the JSON file formats.

Subcommands generate graphs, run the exact search, build representations
from certificates, replay derivation scripts, verify finished
representations, emit chi-realizers, and evaluate the closed-form bounds.
Everything on disk is plain JSON with sorted keys, so reruns with the same
inputs produce byte-identical files and diffs stay readable.

Exit codes: 0 success, 1 a finished representation failed verification,
2 invalid input (bad file, flag, certificate, or script), 3 a search
budget ran out before an answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .boxes import (
    box_rep_from_dict,
    box_rep_to_dict,
    forest_two_dim,
    verify_representation,
)
from .certificates import (
    classification_from_dict,
    coloring_from_dict,
    coloring_to_dict,
    partition_from_dict,
)
from .derivation import (
    AcyclicStep,
    Girth4Step,
    RobertsStep,
    assemble,
    report_to_dict,
    step_from_dict,
)
from .errors import BudgetExhausted, InvalidInput
from .exact import (
    STATUS_EXACT,
    SearchBudget,
    acyclic_chromatic_number,
    acyclic_coloring,
    boxicity_result_to_dict,
    chromatic_number,
    exact_boxicity,
    find_forest_stable_partition,
    proper_coloring,
)
from .figure1 import figure1_gadget, figure1_problems
from .graphs import (
    complete,
    cycle,
    graph_from_dict,
    graph_to_dict,
    path,
    random_forest,
    random_graph,
    roberts_graph,
    subdivided_complete,
)
from .posets import (
    adjacency_poset,
    bound_calculator,
    bound_report_to_dict,
    chi_realizer_extensions,
    intersect_orders,
    is_linear_extension,
    poset_dimension_at_most,
    starred_poset,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# file plumbing
# ---------------------------------------------------------------------------


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write_atomic(target: str, doc) -> None:
    """Write canonical JSON via a temp file in the same directory, then
    rename, so readers never observe a half-written file."""
    target = os.path.abspath(target)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".boxicity-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(_dump(doc))
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _read_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(
            f"{path}: bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _load_graph(path: str):
    return graph_from_dict(_read_json(path))


def _budget_from_args(args) -> SearchBudget:
    fields = {}
    if args.max_nodes is not None:
        fields["max_nodes"] = args.max_nodes
    if args.time_limit is not None:
        fields["time_limit"] = args.time_limit
    if args.no_symmetry:
        fields["symmetry_pruning"] = False
    return SearchBudget(**fields)


def _add_budget_flags(sub) -> None:
    sub.add_argument("--max-nodes", type=int, default=None,
                     help="cap on explored search nodes")
    sub.add_argument("--time-limit", type=float, default=None,
                     help="cap in seconds on a single search")
    sub.add_argument("--no-symmetry", action="store_true",
                     help="disable the dimension-interchange pruning")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

_FAMILIES = ("complete", "cycle", "path", "roberts", "subdivided",
             "random", "forest")


def _cmd_gen(args) -> int:
    if args.family == "random":
        if args.seed is None or args.p is None:
            raise InvalidInput("gen random needs both --seed and -p")
        G = random_graph(args.n, args.p, args.seed)
    elif args.family == "forest":
        if args.seed is None:
            raise InvalidInput("gen forest needs --seed")
        G = random_forest(args.n, args.seed)
    else:
        maker = {"complete": complete, "cycle": cycle, "path": path,
                 "roberts": roberts_graph,
                 "subdivided": subdivided_complete}[args.family]
        G = maker(args.n)
    _write_atomic(args.output, graph_to_dict(G))
    print(f"wrote {args.output}: {G.n} vertices, {len(G.edges)} edges")
    return EXIT_OK


def _cmd_exact(args) -> int:
    G = _load_graph(args.graph)
    result = exact_boxicity(G, d_max=args.max_d, budget=_budget_from_args(args))
    if args.output:
        _write_atomic(args.output, boxicity_result_to_dict(result))
    if result.status == STATUS_EXACT:
        print(result.value)
        return EXIT_OK
    print(f"{result.status}: boxicity is at least {result.lower_bound}",
          file=sys.stderr)
    return EXIT_BUDGET


def _construct_rep(args):
    G = _load_graph(args.graph)
    kind = args.kind
    if kind == "roberts":
        B, _ = assemble(G, RobertsStep())
        return G, B
    if kind == "acyclic":
        if args.coloring:
            colors = coloring_from_dict(_read_json(args.coloring))
        else:
            colors = acyclic_coloring(G, acyclic_chromatic_number(G))
        B, _ = assemble(G, AcyclicStep(coloring=colors))
        return G, B
    if kind == "girth4":
        if args.partition:
            part = partition_from_dict(_read_json(args.partition))
        else:
            part = find_forest_stable_partition(G, _budget_from_args(args))
            if part is None:
                raise InvalidInput(
                    "no forest/stable split with the distance guard exists"
                )
        B, _ = assemble(G, Girth4Step(part=part))
        return G, B
    if kind == "forest":
        B = forest_two_dim(G)
        if not verify_representation(B, G).equal:
            raise RuntimeError("internal error: forest layout failed to verify")
        return G, B
    if kind == "figure1":
        if not args.classification:
            raise InvalidInput("construct figure1 needs --classification")
        cls = classification_from_dict(_read_json(args.classification))
        B = figure1_gadget(G, cls)
        problems = figure1_problems(G, cls, B)
        if problems:
            raise RuntimeError(f"internal error: gadget check: {problems[0]}")
        return G, B
    raise InvalidInput(f"unknown construct kind {kind!r}")


def _cmd_construct(args) -> int:
    G, B = _construct_rep(args)
    _write_atomic(args.output, box_rep_to_dict(B))
    print(f"wrote {args.output}: {B.d} dimensions, {len(B.domain())} boxes")
    return EXIT_OK


def _cmd_derive(args) -> int:
    G = _load_graph(args.graph)
    script = step_from_dict(_read_json(args.script))
    B, report = assemble(G, script)
    _write_atomic(args.output, box_rep_to_dict(B))
    if args.report:
        _write_atomic(args.report, report_to_dict(report))
    print(f"verified: {report.total_dimension} dimensions "
          f"over {len(report.steps)} steps")
    return EXIT_OK


def _cmd_verify(args) -> int:
    G = _load_graph(args.graph)
    B = box_rep_from_dict(_read_json(args.rep))
    report = verify_representation(B, G)
    if report.equal:
        print(f"OK: matches the graph in {B.d} dimensions")
        return EXIT_OK
    for u, v in report.missing_edges:
        print(f"missing: graph edge ({u}, {v}) has disjoint boxes")
    for u, v in report.extra_edges:
        print(f"extra: boxes ({u}, {v}) intersect without a graph edge")
    return EXIT_MISMATCH


def _cmd_poset(args) -> int:
    G = _load_graph(args.graph)
    if args.check_dimension is not None:
        P = adjacency_poset(G)
        orders = poset_dimension_at_most(P, args.check_dimension,
                                         _budget_from_args(args))
        if orders is None:
            print(f"no: dimension exceeds {args.check_dimension}")
        else:
            print(f"yes: realized by {len(orders)} linear orders")
        return EXIT_OK
    if args.coloring:
        colors = coloring_from_dict(_read_json(args.coloring))
    else:
        colors = proper_coloring(G, chromatic_number(G))
    orders = chi_realizer_extensions(G, colors)
    P, star = adjacency_poset(G), starred_poset(G)
    recovered = intersect_orders(orders) & star.relation if orders else None
    if orders and (recovered != P.relation
                   or not all(is_linear_extension(P, L) for L in orders)):
        raise RuntimeError("internal error: realizer lost the adjacency poset")
    doc = {
        "colors": coloring_to_dict(colors),
        "orders": [list(L) for L in orders],
    }
    if args.output:
        _write_atomic(args.output, doc)
    print(f"chi-realizer: {len(orders)} orders over {2 * G.n} elements")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    report = bound_calculator(g=args.genus,
                              orientable=not args.nonorientable,
                              box=args.box, chi=args.chi)
    doc = bound_report_to_dict(report)
    if args.output:
        _write_atomic(args.output, doc)
    else:
        print(_dump(doc), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxicity",
        description="Build, compose and verify box representations of graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated graph")
    gen.add_argument("family", choices=_FAMILIES)
    gen.add_argument("n", type=int, help="size parameter of the family")
    gen.add_argument("-o", "--output", required=True)
    gen.add_argument("-p", type=float, default=None,
                     help="edge probability (random only)")
    gen.add_argument("--seed", type=int, default=None,
                     help="RNG seed (required for random/forest)")
    gen.set_defaults(func=_cmd_gen)

    exact = sub.add_parser("exact", help="exact boxicity by closure search")
    exact.add_argument("graph")
    exact.add_argument("--max-d", type=int, default=None,
                       help="stop after refuting this many dimensions")
    exact.add_argument("-o", "--output", default=None,
                       help="also write the full result with witness")
    _add_budget_flags(exact)
    exact.set_defaults(func=_cmd_exact)

    construct = sub.add_parser(
        "construct", help="build a verified representation from a certificate"
    )
    construct.add_argument("kind", choices=("acyclic", "roberts", "girth4",
                                            "forest", "figure1"))
    construct.add_argument("graph")
    construct.add_argument("-o", "--output", required=True)
    construct.add_argument("--coloring", default=None,
                           help="acyclic coloring file (acyclic only)")
    construct.add_argument("--partition", default=None,
                           help="forest/stable partition file (girth4 only)")
    construct.add_argument("--classification", default=None,
                           help="cycle classification file (figure1 only)")
    _add_budget_flags(construct)
    construct.set_defaults(func=_cmd_construct)

    derive = sub.add_parser("derive", help="replay a derivation script")
    derive.add_argument("graph")
    derive.add_argument("script")
    derive.add_argument("-o", "--output", required=True)
    derive.add_argument("--report", default=None,
                        help="also write the per-step accounting")
    derive.set_defaults(func=_cmd_derive)

    verify = sub.add_parser("verify", help="check a representation file")
    verify.add_argument("graph")
    verify.add_argument("rep")
    verify.set_defaults(func=_cmd_verify)

    poset = sub.add_parser("poset", help="adjacency poset tools")
    poset.add_argument("graph")
    poset.add_argument("--coloring", default=None,
                       help="proper coloring file; computed when omitted")
    poset.add_argument("-o", "--output", default=None,
                       help="write the realizer orders")
    poset.add_argument("--check-dimension", type=int, default=None,
                       help="search for a realizer of this size instead")
    _add_budget_flags(poset)
    poset.set_defaults(func=_cmd_poset)

    bounds = sub.add_parser("bounds", help="closed-form genus bounds")
    bounds.add_argument("--genus", type=int, default=None)
    bounds.add_argument("--nonorientable", action="store_true")
    bounds.add_argument("--box", type=int, default=None)
    bounds.add_argument("--chi", type=int, default=None)
    bounds.add_argument("-o", "--output", default=None)
    bounds.set_defaults(func=_cmd_bounds)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
