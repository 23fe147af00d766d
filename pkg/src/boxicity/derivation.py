"""Certificate-driven assembly of box representations.

A derivation script is a finite tree of steps.  Composite steps carry a
certificate (pair cover, separation, clique, cycle classification) plus
scripts for the strictly smaller graphs they reduce to; leaf steps build a
representation outright (a coloring pipeline, the girth-four pipeline, the
matched-complement family, an explicit representation, or the exhaustive
search oracle).  Assembly replays the tree bottom-up, validates every
certificate against the subgraph it applies to, verifies the composed
representation at every level, and reports the per-step dimension
accounting.

All vertex sets in a script, at any depth, use the root graph's vertex
ids.  Internally each level works on a dense induced copy; certificates
are translated down and child representations are relabeled back up one
level at a time.

Topological facts (genus, facewidth, noncontractibility) have no
computational meaning here.  A step may carry a free-text note, echoed
into the report unverified, for exactly those caller-asserted claims.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boxes import (
    BoxRepresentation,
    acyclic_pipeline,
    box_rep_from_dict,
    box_rep_to_dict,
    from_interval_reps,
    girth4_pipeline,
    pair_gadget,
    relabel_box_representation,
    sur1_compose,
    sur2_compose,
    sur2bis_double,
    verify_representation,
)
from .certificates import (
    CycleClassification,
    acyclic_coloring_problems,
    ForestStablePartition,
    PairCover,
    Separation,
    classification_from_dict,
    classification_to_dict,
    coloring_from_dict,
    coloring_to_dict,
    pair_cover_from_dict,
    pair_cover_to_dict,
    partition_from_dict,
    partition_to_dict,
    separation_from_dict,
    separation_to_dict,
)
from .errors import BudgetExhausted, CertificateError, InvalidInput, ParseError
from .exact import STATUS_BUDGET, SearchBudget, exact_boxicity
from .figure1 import figure1_gadget
from .graphs import Graph, induced_subgraph, make_graph


@dataclass(frozen=True)
class Sur1Step:
    cover: PairCover
    sub: "DerivationStep"
    note: str | None = None


@dataclass(frozen=True)
class Sur2Step:
    sep: Separation
    sub1: "DerivationStep"
    sub2: "DerivationStep"
    note: str | None = None


@dataclass(frozen=True)
class Sur2bisStep:
    K: tuple[int, ...]
    sub: "DerivationStep"
    note: str | None = None


@dataclass(frozen=True)
class Figure1Step:
    cls: CycleClassification
    sub: "DerivationStep"
    note: str | None = None


@dataclass(frozen=True)
class AcyclicStep:
    coloring: dict[int, int]
    note: str | None = None


@dataclass(frozen=True)
class Girth4Step:
    part: ForestStablePartition
    note: str | None = None


@dataclass(frozen=True)
class RobertsStep:
    note: str | None = None


@dataclass(frozen=True)
class BaseExplicitStep:
    rep: BoxRepresentation
    note: str | None = None


@dataclass(frozen=True)
class BaseOracleStep:
    d_max: int | None = None
    budget: SearchBudget | None = None
    note: str | None = None


DerivationStep = (
    Sur1Step
    | Sur2Step
    | Sur2bisStep
    | Figure1Step
    | AcyclicStep
    | Girth4Step
    | RobertsStep
    | BaseExplicitStep
    | BaseOracleStep
)


@dataclass(frozen=True)
class StepReport:
    path: str
    rule: str
    vertices: int
    formula: str
    claimed: int
    achieved: int
    verified: bool
    note: str | None


@dataclass(frozen=True)
class DerivationReport:
    steps: tuple[StepReport, ...]
    total_dimension: int
    verified: bool


def bound_formula(step: DerivationStep, *sub_dims: int) -> int | None:
    """Claimed dimension of one step given its children's dimensions.

    None for the oracle step, whose dimension is whatever the search
    determines.  The two leaf families that depend on the graph size
    (matched-complement) or the coloring width are computed from the step's
    own certificate; callers pass the graph's vertex count as the sole
    sub-dimension for the matched-complement rule.
    """
    if isinstance(step, Sur1Step):
        return sub_dims[0] + len(step.cover.X) - len(step.cover.pairs)
    if isinstance(step, Sur2Step):
        return sub_dims[0] + sub_dims[1] + 1
    if isinstance(step, Sur2bisStep):
        return 2 * sub_dims[0]
    if isinstance(step, Figure1Step):
        return sub_dims[0] + 5
    if isinstance(step, AcyclicStep):
        k = len(set(step.coloring.values()))
        return k * (k - 1)
    if isinstance(step, Girth4Step):
        return 4
    if isinstance(step, RobertsStep):
        return sub_dims[0] // 2
    if isinstance(step, BaseExplicitStep):
        return step.rep.d
    return None


def _fmt(path: tuple[str, ...]) -> str:
    return "/".join(path)


def _inverse(to_root: tuple[int, ...]) -> dict[int, int]:
    return {r: i for i, r in enumerate(to_root)}


def _locals(ids, inverse, path, what) -> tuple[int, ...]:
    out = []
    for r in ids:
        r = int(r)
        if r not in inverse:
            raise CertificateError(
                f"{_fmt(path)}: {what} mentions vertex {r}, "
                "which is not in this step's subgraph"
            )
        out.append(inverse[r])
    return tuple(out)


def _matched_complement_pairs(H: Graph, path) -> list[tuple[int, int]]:
    """The complement of H must be a perfect matching; return its pairs."""
    if H.n % 2:
        raise CertificateError(
            f"{_fmt(path)}: matched-complement rule needs an even vertex count"
        )
    pairs = []
    seen = set()
    for v in range(H.n):
        missing = [u for u in range(H.n) if u != v and not H.has_edge(u, v)]
        if len(missing) != 1:
            raise CertificateError(
                f"{_fmt(path)}: vertex {v} misses {len(missing)} partners; "
                "the complement must be a perfect matching"
            )
        if v not in seen:
            pairs.append((v, missing[0]))
            seen.update((v, missing[0]))
    return pairs


def _verified(B: BoxRepresentation, H: Graph, path) -> BoxRepresentation:
    report = verify_representation(B, H)
    if not report.equal:
        bad = (report.missing_edges + report.extra_edges)[0]
        raise CertificateError(
            f"{_fmt(path)}: composed representation disagrees on pair {bad}"
        )
    return B


def _claimed(step, achieved: int, path, *sub_dims: int) -> int:
    want = bound_formula(step, *sub_dims)
    if want is None:
        return achieved
    if want != achieved:
        raise CertificateError(
            f"{_fmt(path)}: achieved dimension {achieved} differs from "
            f"the claimed bound {want}"
        )
    return want


def _walk(
    H: Graph,
    step: DerivationStep,
    to_root: tuple[int, ...],
    path: tuple[str, ...],
    out: list | None,
    build: bool,
) -> BoxRepresentation | None:
    inverse = _inverse(to_root)
    slot = None
    if out is not None:
        slot = len(out)
        out.append(None)

    def record(rule, formula, claimed, achieved):
        if out is not None:
            out[slot] = StepReport(
                path=_fmt(path),
                rule=rule,
                vertices=H.n,
                formula=formula,
                claimed=claimed,
                achieved=achieved,
                verified=build,
                note=step.note,
            )

    if isinstance(step, Sur1Step):
        cover = PairCover(
            X=_locals(step.cover.X, inverse, path, "pair cover"),
            pairs=tuple(
                tuple(_locals(p, inverse, path, "pair cover")) for p in step.cover.pairs
            ),
        )
        cover.validate(H)
        rest = [v for v in range(H.n) if v not in set(cover.X)]
        if not rest:
            raise CertificateError(
                f"{_fmt(path)}: X must leave at least one vertex"
            )
        H_sub, vmap = induced_subgraph(H, rest)
        child_root = tuple(to_root[v] for v in vmap)
        B_sub = _walk(H_sub, step.sub, child_root, path + ("sub",), out, build)
        if not build:
            return None
        lifted = relabel_box_representation(B_sub, dict(enumerate(vmap)))
        B = _verified(sur1_compose(H, cover, lifted), H, path)
        x, k = len(cover.X), len(cover.pairs)
        claimed = _claimed(step, B.d, path, B_sub.d)
        record("sur1", f"sub + |X| - k = {B_sub.d} + {x} - {k}", claimed, B.d)
        return B

    if isinstance(step, Sur2Step):
        sep = Separation(
            V1=_locals(step.sep.V1, inverse, path, "separation"),
            V2=_locals(step.sep.V2, inverse, path, "separation"),
            X=_locals(step.sep.X, inverse, path, "separation"),
        )
        sep.validate(H)
        if not sep.V1 or not sep.V2:
            raise CertificateError(
                f"{_fmt(path)}: V1 and V2 must both be nonempty"
            )
        side1 = sorted(set(sep.V1) | set(sep.X))
        side2 = sorted(set(sep.V2) | set(sep.X))
        H1, vmap1 = induced_subgraph(H, side1)
        H2, vmap2 = induced_subgraph(H, side2)
        B1 = _walk(
            H1, step.sub1, tuple(to_root[v] for v in vmap1), path + ("sub1",), out, build
        )
        B2 = _walk(
            H2, step.sub2, tuple(to_root[v] for v in vmap2), path + ("sub2",), out, build
        )
        if not build:
            return None
        lifted1 = relabel_box_representation(B1, dict(enumerate(vmap1)))
        lifted2 = relabel_box_representation(B2, dict(enumerate(vmap2)))
        B = _verified(sur2_compose(H, sep, lifted1, lifted2), H, path)
        claimed = _claimed(step, B.d, path, B1.d, B2.d)
        record("sur2", f"sub1 + sub2 + 1 = {B1.d} + {B2.d} + 1", claimed, B.d)
        return B

    if isinstance(step, Sur2bisStep):
        K = _locals(step.K, inverse, path, "clique")
        kset = set(K)
        if len(kset) != len(K):
            raise CertificateError(f"{_fmt(path)}: clique vertices must be distinct")
        members = sorted(kset)
        for i, u in enumerate(members):
            for w in members[i + 1 :]:
                if not H.has_edge(u, w):
                    raise CertificateError(
                        f"{_fmt(path)}: K is not a clique, ({u}, {w}) is a non-edge"
                    )
        stripped = [
            (u, v) for u, v in H.edges if not (u in kset and v in kset)
        ]
        H_sub = make_graph(H.n, stripped)
        B_sub = _walk(H_sub, step.sub, to_root, path + ("sub",), out, build)
        if not build:
            return None
        B = _verified(sur2bis_double(B_sub, K), H, path)
        claimed = _claimed(step, B.d, path, B_sub.d)
        record("sur2bis", f"2 * sub = 2 * {B_sub.d}", claimed, B.d)
        return B

    if isinstance(step, Figure1Step):
        cls = CycleClassification(
            cycle=_locals(step.cls.cycle, inverse, path, "classification"),
            assignments={
                _locals((v,), inverse, path, "classification")[0]: (name, anchor)
                for v, (name, anchor) in step.cls.assignments.items()
            },
        )
        cls.validate(H)
        on_cycle = set(cls.cycle)
        rest = [v for v in range(H.n) if v not in on_cycle]
        if not rest:
            raise CertificateError(
                f"{_fmt(path)}: the graph must extend beyond the cycle"
            )
        H_sub, vmap = induced_subgraph(H, rest)
        child_root = tuple(to_root[v] for v in vmap)
        B_rest = _walk(H_sub, step.sub, child_root, path + ("sub",), out, build)
        if not build:
            return None
        attached = tuple(sorted(cls.assignments))
        doubled = sur2bis_double(figure1_gadget(H, cls), attached)
        v2 = tuple(v for v in rest if v not in cls.assignments)
        sep = Separation(V1=tuple(sorted(on_cycle)), V2=v2, X=attached)
        lifted = relabel_box_representation(B_rest, dict(enumerate(vmap)))
        B = _verified(sur2_compose(H, sep, doubled, lifted), H, path)
        claimed = _claimed(step, B.d, path, B_rest.d)
        record("figure1", f"sub + 5 = {B_rest.d} + 5", claimed, B.d)
        return B

    if isinstance(step, AcyclicStep):
        colors = {
            _locals((v,), inverse, path, "coloring")[0]: int(c)
            for v, c in step.coloring.items()
        }
        k = len(set(colors.values()))
        found = acyclic_coloring_problems(H, colors)
        if found:
            raise CertificateError(f"{_fmt(path)}: {found[0]}")
        if k < 2:
            raise CertificateError(
                f"{_fmt(path)}: the coloring pipeline needs at least 2 colors"
            )
        if not build:
            return None
        B = _verified(acyclic_pipeline(H, colors), H, path)
        claimed = _claimed(step, B.d, path)
        record("acyclic", f"k(k-1) = {k}*{k - 1}", claimed, B.d)
        return B

    if isinstance(step, Girth4Step):
        part = ForestStablePartition(
            F=_locals(step.part.F, inverse, path, "partition"),
            S=_locals(step.part.S, inverse, path, "partition"),
        )
        part.validate(H)
        if not build:
            return None
        B = _verified(girth4_pipeline(H, part), H, path)
        claimed = _claimed(step, B.d, path)
        record("girth4", "4", claimed, B.d)
        return B

    if isinstance(step, RobertsStep):
        pairs = _matched_complement_pairs(H, path)
        if not build:
            return None
        B = _verified(
            from_interval_reps([pair_gadget(H, u, v) for u, v in pairs]), H, path
        )
        claimed = _claimed(step, B.d, path, H.n)
        record("roberts", f"n = {H.n // 2}", claimed, B.d)
        return B

    if isinstance(step, BaseExplicitStep):
        given = step.rep
        want = set(to_root)
        if set(given.domain()) != want:
            raise CertificateError(
                f"{_fmt(path)}: explicit representation covers vertices "
                f"{sorted(given.domain())}, expected {sorted(want)}"
            )
        local = relabel_box_representation(given, inverse)
        report = verify_representation(local, H)
        if not report.equal:
            bad = (report.missing_edges + report.extra_edges)[0]
            root_pair = (to_root[bad[0]], to_root[bad[1]])
            raise CertificateError(
                f"{_fmt(path)}: explicit representation disagrees on pair "
                f"{root_pair}"
            )
        record("base_explicit", f"given ({given.d})", given.d, given.d)
        return local if build else None

    if isinstance(step, BaseOracleStep):
        if step.d_max is not None and step.d_max < 1:
            raise CertificateError(f"{_fmt(path)}: d_max must be at least 1")
        if not build:
            return None
        result = exact_boxicity(H, step.d_max, step.budget)
        if result.status == STATUS_BUDGET:
            raise BudgetExhausted(
                f"{_fmt(path)}: oracle search stopped early "
                f"(lower bound {result.lower_bound})"
            )
        if result.value is None:
            raise CertificateError(
                f"{_fmt(path)}: oracle found no representation "
                f"(status {result.status}, lower bound {result.lower_bound})"
            )
        record("base_oracle", f"box(G) by search = {result.value}",
               result.value, result.value)
        return result.witness

    raise InvalidInput(f"unknown derivation step {type(step).__name__}")


def assemble(G: Graph, script: DerivationStep) -> tuple[BoxRepresentation, DerivationReport]:
    """Build and verify the representation a script describes.

    Every certificate is validated against the subgraph it applies to and
    every composition is re-verified; the first failure aborts with the
    step's path and a witness, and nothing partial is returned.
    """
    steps: list[StepReport] = []
    B = _walk(G, script, tuple(range(G.n)), ("root",), steps, build=True)
    report = DerivationReport(tuple(steps), B.d, True)
    return B, report


def validate_script(G: Graph, script: DerivationStep) -> None:
    """Dry-run check of certificates and structure, without building.

    Accepts exactly when assemble would, except that oracle steps are only
    checked for well-formed limits here; whether the search succeeds is
    knowable only by running it.
    """
    _walk(G, script, tuple(range(G.n)), ("root",), None, build=False)


# --------------------------------------------------------------------------
# JSON


def _budget_to_dict(b: SearchBudget) -> dict:
    return {
        "max_nodes": b.max_nodes,
        "time_limit": b.time_limit,
        "symmetry_pruning": b.symmetry_pruning,
    }


def _budget_from_dict(doc) -> SearchBudget:
    if not isinstance(doc, dict) or set(doc) - {
        "max_nodes",
        "time_limit",
        "symmetry_pruning",
    }:
        raise ParseError("budget must be an object with known keys")
    base = SearchBudget()
    return SearchBudget(
        max_nodes=int(doc.get("max_nodes", base.max_nodes)),
        time_limit=float(doc.get("time_limit", base.time_limit)),
        symmetry_pruning=bool(doc.get("symmetry_pruning", base.symmetry_pruning)),
    )


def step_to_dict(step: DerivationStep) -> dict:
    out: dict = {}
    if isinstance(step, Sur1Step):
        out = {
            "rule": "sur1",
            "cover": pair_cover_to_dict(step.cover),
            "sub": step_to_dict(step.sub),
        }
    elif isinstance(step, Sur2Step):
        out = {
            "rule": "sur2",
            "sep": separation_to_dict(step.sep),
            "sub1": step_to_dict(step.sub1),
            "sub2": step_to_dict(step.sub2),
        }
    elif isinstance(step, Sur2bisStep):
        out = {"rule": "sur2bis", "K": list(step.K), "sub": step_to_dict(step.sub)}
    elif isinstance(step, Figure1Step):
        out = {
            "rule": "figure1",
            "cls": classification_to_dict(step.cls),
            "sub": step_to_dict(step.sub),
        }
    elif isinstance(step, AcyclicStep):
        out = {"rule": "acyclic", "coloring": coloring_to_dict(step.coloring)}
    elif isinstance(step, Girth4Step):
        out = {"rule": "girth4", "part": partition_to_dict(step.part)}
    elif isinstance(step, RobertsStep):
        out = {"rule": "roberts"}
    elif isinstance(step, BaseExplicitStep):
        out = {"rule": "base_explicit", "rep": box_rep_to_dict(step.rep)}
    elif isinstance(step, BaseOracleStep):
        out = {"rule": "base_oracle"}
        if step.d_max is not None:
            out["d_max"] = step.d_max
        if step.budget is not None:
            out["budget"] = _budget_to_dict(step.budget)
    else:
        raise InvalidInput(f"unknown derivation step {type(step).__name__}")
    if step.note is not None:
        out["note"] = step.note
    return out


def _expect_keys(doc, required, optional, rule):
    keys = set(doc)
    missing = required - keys
    extra = keys - required - optional - {"rule", "note"}
    if missing:
        raise ParseError(f"{rule} step is missing {sorted(missing)}")
    if extra:
        raise ParseError(f"{rule} step has unknown keys {sorted(extra)}")


def step_from_dict(doc) -> DerivationStep:
    if not isinstance(doc, dict) or "rule" not in doc:
        raise ParseError("each step must be an object with a 'rule'")
    rule = doc["rule"]
    note = doc.get("note")
    if note is not None and not isinstance(note, str):
        raise ParseError("a step note must be a string")
    if rule == "sur1":
        _expect_keys(doc, {"cover", "sub"}, set(), rule)
        return Sur1Step(
            cover=pair_cover_from_dict(doc["cover"]),
            sub=step_from_dict(doc["sub"]),
            note=note,
        )
    if rule == "sur2":
        _expect_keys(doc, {"sep", "sub1", "sub2"}, set(), rule)
        return Sur2Step(
            sep=separation_from_dict(doc["sep"]),
            sub1=step_from_dict(doc["sub1"]),
            sub2=step_from_dict(doc["sub2"]),
            note=note,
        )
    if rule == "sur2bis":
        _expect_keys(doc, {"K", "sub"}, set(), rule)
        if not isinstance(doc["K"], list):
            raise ParseError("K must be a list of vertices")
        return Sur2bisStep(
            K=tuple(int(v) for v in doc["K"]),
            sub=step_from_dict(doc["sub"]),
            note=note,
        )
    if rule == "figure1":
        _expect_keys(doc, {"cls", "sub"}, set(), rule)
        return Figure1Step(
            cls=classification_from_dict(doc["cls"]),
            sub=step_from_dict(doc["sub"]),
            note=note,
        )
    if rule == "acyclic":
        _expect_keys(doc, {"coloring"}, set(), rule)
        return AcyclicStep(coloring=coloring_from_dict(doc["coloring"]), note=note)
    if rule == "girth4":
        _expect_keys(doc, {"part"}, set(), rule)
        return Girth4Step(part=partition_from_dict(doc["part"]), note=note)
    if rule == "roberts":
        _expect_keys(doc, set(), set(), rule)
        return RobertsStep(note=note)
    if rule == "base_explicit":
        _expect_keys(doc, {"rep"}, set(), rule)
        return BaseExplicitStep(rep=box_rep_from_dict(doc["rep"]), note=note)
    if rule == "base_oracle":
        _expect_keys(doc, set(), {"d_max", "budget"}, rule)
        d_max = doc.get("d_max")
        budget = doc.get("budget")
        return BaseOracleStep(
            d_max=int(d_max) if d_max is not None else None,
            budget=_budget_from_dict(budget) if budget is not None else None,
            note=note,
        )
    raise ParseError(f"unknown rule {rule!r}")


def report_to_dict(report: DerivationReport) -> dict:
    return {
        "total_dimension": report.total_dimension,
        "verified": report.verified,
        "steps": [
            {
                "path": s.path,
                "rule": s.rule,
                "vertices": s.vertices,
                "formula": s.formula,
                "claimed": s.claimed,
                "achieved": s.achieved,
                "verified": s.verified,
                "note": s.note,
            }
            for s in report.steps
        ],
    }
