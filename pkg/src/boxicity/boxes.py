"""Axis-parallel box representations and the composition operations.

A d-dimensional box representation maps each vertex to a product of d closed
rational intervals; two vertices are adjacent exactly when their boxes meet,
i.e. when the intervals meet in every dimension.  Equivalently each dimension
is an interval representation and the represented graph is the intersection
of the d interval graphs.

The composition operations each consume a validated certificate and produce
a representation whose dimension is an exact function of the inputs:

  pair/singleton gadgets      1 dimension, breaks all non-adjacencies at the
                              chosen vertices
  sur1_compose                d(sub) + |X| - #pairs
  sur2_compose                d(B1) + d(B2) + 1
  sur2bis_double              2 d(B)
  forest_two_dim              2
  acyclic_pipeline            k(k-1) for a k-class coloring
  girth4_pipeline             4
  roberts_representation(n)   n, and n is optimal for that graph
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .certificates import (
    ForestStablePartition,
    PairCover,
    Separation,
    validate_acyclic_coloring,
)
from .errors import InvalidInput, ParseError
from .graphs import Graph, check_vertex_set, find_cycle, induced_subgraph
from .intervals import (
    Interval,
    IntervalRepresentation,
    canonical_extension,
    interval_from_pairs,
    interval_to_pairs,
)


@dataclass(frozen=True, eq=False)
class BoxRepresentation:
    """Map from vertex ids to d-tuples of intervals.

    Like interval representations, the ids are arbitrary ints so that a
    representation can live on a subset of an ambient graph's vertices.
    """

    d: int
    boxes: dict[int, tuple[Interval, ...]]

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInput(f"dimension must be at least 1, got {self.d}")
        if not self.boxes:
            raise InvalidInput("empty representation")
        for v, box in self.boxes.items():
            if len(box) != self.d:
                raise InvalidInput(
                    f"vertex {v} has {len(box)} intervals, expected {self.d}"
                )

    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(self.boxes))

    def box(self, v: int) -> tuple[Interval, ...]:
        return self.boxes[v]

    def dimension_rep(self, i: int) -> IntervalRepresentation:
        return IntervalRepresentation({v: box[i] for v, box in self.boxes.items()})

    def __eq__(self, other):
        return (
            isinstance(other, BoxRepresentation)
            and self.d == other.d
            and self.boxes == other.boxes
        )


def box_adjacent(B: BoxRepresentation, u: int, v: int) -> bool:
    return all(a.intersects(b) for a, b in zip(B.boxes[u], B.boxes[v]))


def box_edges(B: BoxRepresentation) -> set[tuple[int, int]]:
    return {
        (u, v) for u, v in combinations(B.domain(), 2) if box_adjacent(B, u, v)
    }


def box_graph_of(B: BoxRepresentation) -> Graph:
    """The represented graph, relabeled densely through the sorted domain."""
    dom = B.domain()
    index = {v: i for i, v in enumerate(dom)}
    return Graph(
        len(dom), frozenset((index[u], index[v]) for u, v in box_edges(B))
    )


def stack(reps) -> BoxRepresentation:
    """Concatenate representations on the same domain along dimensions."""
    reps = list(reps)
    if not reps:
        raise InvalidInput("stack needs at least one representation")
    dom = reps[0].domain()
    for B in reps[1:]:
        if B.domain() != dom:
            raise InvalidInput("stack: domains differ")
    boxes = {
        v: tuple(iv for B in reps for iv in B.boxes[v]) for v in dom
    }
    return BoxRepresentation(sum(B.d for B in reps), boxes)


def from_interval_reps(reps) -> BoxRepresentation:
    """Stack 1-dimensional layers given as interval representations."""
    reps = list(reps)
    if not reps:
        raise InvalidInput("need at least one dimension")
    dom = reps[0].domain()
    for R in reps[1:]:
        if R.domain() != dom:
            raise InvalidInput("dimension domains differ")
    return BoxRepresentation(
        len(reps), {v: tuple(R.intervals[v] for R in reps) for v in dom}
    )


def relabel_box_representation(
    B: BoxRepresentation, mapping: dict[int, int]
) -> BoxRepresentation:
    out: dict[int, tuple[Interval, ...]] = {}
    for v, box in B.boxes.items():
        if v not in mapping:
            raise InvalidInput(f"relabeling misses vertex {v}")
        out[mapping[v]] = box
    if len(out) != len(B.boxes):
        raise InvalidInput("relabeling is not injective")
    return BoxRepresentation(B.d, out)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    equal: bool
    missing_edges: list[tuple[int, int]]  # in the graph, not in the boxes
    extra_edges: list[tuple[int, int]]  # in the boxes, not in the graph

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "missing_edges": [list(e) for e in self.missing_edges],
            "extra_edges": [list(e) for e in self.extra_edges],
        }


def verify_representation(B: BoxRepresentation, G: Graph) -> VerificationReport:
    """Compare the represented graph against G pair by pair.

    The domain must be exactly V(G); a wrong domain is an input error, not a
    verification failure.
    """
    if set(B.domain()) != set(range(G.n)):
        raise InvalidInput(
            f"domain {list(B.domain())} does not match vertex set 0..{G.n - 1}"
        )
    missing = []
    extra = []
    for u, v in combinations(range(G.n), 2):
        adj = box_adjacent(B, u, v)
        if G.has_edge(u, v) and not adj:
            missing.append((u, v))
        elif adj and not G.has_edge(u, v):
            extra.append((u, v))
    return VerificationReport(not missing and not extra, missing, extra)


def _check_agrees(B: BoxRepresentation, G: Graph, what: str) -> None:
    """Require the represented graph to equal G induced on B's domain."""
    for u, v in combinations(B.domain(), 2):
        if box_adjacent(B, u, v) != G.has_edge(u, v):
            raise InvalidInput(
                f"{what} disagrees with the graph at pair ({u}, {v})"
            )


# ---------------------------------------------------------------------------
# one-dimensional gadgets
# ---------------------------------------------------------------------------


def pair_gadget(G: Graph, u: int, v: int) -> IntervalRepresentation:
    """One dimension that separates the non-adjacent pair u, v.

    u sits at 0 and v at 2; common neighbors span [0, 2], private neighbors
    get the matching half, everything else sits at 1.  The result is a
    supergraph of G in which u and v keep all their non-adjacencies.
    """
    check_vertex_set(G, [u, v])
    if u == v:
        raise InvalidInput("pair gadget needs two distinct vertices")
    if G.has_edge(u, v):
        raise InvalidInput(f"pair gadget needs a non-adjacent pair, got edge ({u}, {v})")
    out = {u: Interval(0, 0), v: Interval(2, 2)}
    for w in G.vertices():
        if w in (u, v):
            continue
        near_u = G.has_edge(w, u)
        near_v = G.has_edge(w, v)
        if near_u and near_v:
            out[w] = Interval(0, 2)
        elif near_u:
            out[w] = Interval(0, 1)
        elif near_v:
            out[w] = Interval(1, 2)
        else:
            out[w] = Interval(1, 1)
    return IntervalRepresentation(out)


def singleton_gadget(G: Graph, v: int) -> IntervalRepresentation:
    """One dimension that separates v from all its non-neighbors."""
    check_vertex_set(G, [v])
    out = {v: Interval(0, 0)}
    for w in G.vertices():
        if w == v:
            continue
        out[w] = Interval(0, 1) if G.has_edge(w, v) else Interval(1, 1)
    return IntervalRepresentation(out)


# ---------------------------------------------------------------------------
# compositions
# ---------------------------------------------------------------------------


def sur1_compose(
    G: Graph, cover: PairCover, B_sub: BoxRepresentation
) -> BoxRepresentation:
    """Splice a representation of G minus X back into G.

    Each dimension of B_sub is canonically extended to V(G); every cover
    pair contributes one pair-gadget dimension and every uncovered vertex of
    X one singleton dimension.  Total: d(B_sub) + |X| - #pairs.
    """
    cover.validate(G)
    rest = tuple(v for v in G.vertices() if v not in set(cover.X))
    if not rest:
        raise InvalidInput("X must be a proper subset of the vertex set")
    if B_sub.domain() != rest:
        raise InvalidInput(
            f"sub-representation domain {list(B_sub.domain())} is not "
            f"V minus X = {list(rest)}"
        )
    _check_agrees(B_sub, G, "sub-representation")
    dims = [
        canonical_extension(B_sub.dimension_rep(i), G) for i in range(B_sub.d)
    ]
    for a, b in cover.pairs:
        dims.append(pair_gadget(G, a, b))
    for v in cover.uncovered():
        dims.append(singleton_gadget(G, v))
    return from_interval_reps(dims)


def sur2_compose(
    G: Graph,
    sep: Separation,
    B1: BoxRepresentation,
    B2: BoxRepresentation,
) -> BoxRepresentation:
    """Glue representations of the two sides of a separation.

    B1 must represent, on V1 + X, a supergraph of the induced subgraph that
    agrees with G on every pair except possibly pairs inside X; B2 must
    represent G induced on V2 + X exactly.  Both checks are performed here,
    pair by pair.  One extra dimension places V1 at 0, V2 at 1 and X across
    [0, 1].  Total: d(B1) + d(B2) + 1.
    """
    sep.validate(G)
    side1 = tuple(sorted(set(sep.V1) | set(sep.X)))
    side2 = tuple(sorted(set(sep.V2) | set(sep.X)))
    if not side1 or not side2:
        raise InvalidInput("both sides of the separation must be nonempty")
    if B1.domain() != side1:
        raise InvalidInput(
            f"B1 domain {list(B1.domain())} is not V1 + X = {list(side1)}"
        )
    if B2.domain() != side2:
        raise InvalidInput(
            f"B2 domain {list(B2.domain())} is not V2 + X = {list(side2)}"
        )
    in_x = set(sep.X)
    for u, v in combinations(side1, 2):
        adj = box_adjacent(B1, u, v)
        if G.has_edge(u, v) and not adj:
            raise InvalidInput(f"B1 misses the edge ({u}, {v})")
        if not G.has_edge(u, v) and adj and not (u in in_x and v in in_x):
            raise InvalidInput(
                f"B1 adds the non-edge ({u}, {v}) outside X"
            )
    _check_agrees(B2, G, "B2")
    dims = [canonical_extension(B1.dimension_rep(i), G) for i in range(B1.d)]
    dims += [canonical_extension(B2.dimension_rep(i), G) for i in range(B2.d)]
    split = {}
    for v in sep.V1:
        split[v] = Interval(0, 0)
    for v in sep.V2:
        split[v] = Interval(1, 1)
    for v in sep.X:
        split[v] = Interval(0, 1)
    dims.append(IntervalRepresentation(split))
    return from_interval_reps(dims)


def sur2bis_double(B: BoxRepresentation, K) -> BoxRepresentation:
    """Double every dimension to complete K into a clique.

    Dimension i splits into a left copy, where each K-box is stretched to
    the dimension's minimum, and a right copy stretched to the maximum.  Any
    pair inside K then meets everywhere; every other pair keeps its original
    adjacency, because a disjointness [_, hi(u)] < [lo(w), _] survives in the
    left copy and the mirrored one in the right copy.  Total: 2 d(B).
    """
    K = tuple(sorted(set(K)))
    dom = set(B.domain())
    for v in K:
        if v not in dom:
            raise InvalidInput(f"clique vertex {v} is outside the domain")
    dims = []
    for i in range(B.d):
        R = B.dimension_rep(i)
        lo = min(iv.lo for iv in R.intervals.values())
        hi = max(iv.hi for iv in R.intervals.values())
        left = dict(R.intervals)
        right = dict(R.intervals)
        for v in K:
            left[v] = Interval(lo, R.intervals[v].hi)
            right[v] = Interval(R.intervals[v].lo, hi)
        dims.append(IntervalRepresentation(left))
        dims.append(IntervalRepresentation(right))
    return from_interval_reps(dims)


def forest_two_dim(F: Graph) -> BoxRepresentation:
    """Two-dimensional representation of a forest.

    Dimension 1 is the [entry, exit] window of a depth-first traversal
    (boxes nest along root-to-leaf paths and are disjoint across branches);
    dimension 2 is the depth band [2 depth, 2 depth + 2], which two boxes
    share exactly when their depths differ by at most one.  Boxes then meet
    exactly for parent-child pairs.  Components are traversed one after the
    other from their smallest vertex, so their windows are disjoint.
    """
    cyc = find_cycle(F)
    if cyc is not None:
        raise InvalidInput(f"not a forest: contains the cycle {cyc}")
    if F.n == 0:
        raise InvalidInput("empty representation")
    entry = [0] * F.n
    exit_ = [0] * F.n
    depth = [0] * F.n
    clock = 1
    seen = [False] * F.n
    for root in range(F.n):
        if seen[root]:
            continue
        seen[root] = True
        depth[root] = 0
        stack: list[tuple[int, int, object]] = [(root, -1, None)]
        while stack:
            v, parent, children = stack[-1]
            if children is None:
                entry[v] = clock
                clock += 1
                children = iter(sorted(F.neighbors(v)))
                stack[-1] = (v, parent, children)
            advanced = False
            for w in children:
                if w == parent:
                    continue
                seen[w] = True
                depth[w] = depth[v] + 1
                stack.append((w, v, None))
                advanced = True
                break
            if not advanced:
                exit_[v] = clock
                clock += 1
                stack.pop()
    return BoxRepresentation(
        2,
        {
            v: (
                Interval(entry[v], exit_[v]),
                Interval(2 * depth[v], 2 * depth[v] + 2),
            )
            for v in F.vertices()
        },
    )


def acyclic_pipeline(G: Graph, colors: dict[int, int]) -> BoxRepresentation:
    """Representation of G from a coloring whose class pairs induce forests.

    For every pair of color classes the induced forest gets its two
    dimensions, canonically extended to V(G); the extension leaves pairs
    colored within the class pair alone and joins everything else, so the
    intersection over all pairs restores G exactly.  Total: k(k-1).
    """
    dense = validate_acyclic_coloring(G, colors)
    k = max(dense) + 1
    if k < 2:
        raise InvalidInput("need at least two color classes")
    dims = []
    for i, j in combinations(range(k), 2):
        keep = [v for v in G.vertices() if dense[v] in (i, j)]
        sub, vmap = induced_subgraph(G, keep)
        two = forest_two_dim(sub)
        lifted = relabel_box_representation(
            two, {new: old for new, old in enumerate(vmap)}
        )
        dims.append(canonical_extension(lifted.dimension_rep(0), G))
        dims.append(canonical_extension(lifted.dimension_rep(1), G))
    return from_interval_reps(dims)


def girth4_pipeline(G: Graph, part: ForestStablePartition) -> BoxRepresentation:
    """Four-dimensional representation from a forest/stable split.

    Dimensions 1-2 represent the forest G[F] and are canonically extended,
    which joins every pair touching S.  Dimensions 3-4 encode the stable
    side: each s_t sits at the point t in both; a forest vertex attached to
    s_t (it has at most one such neighbor, since S-vertices are 3 apart)
    spans [t, p+1] in one and [0, t] in the other, while unattached forest
    vertices sit at p+1 and 0.  Forest pairs meet in both (at p+1 and 0),
    distinct S-vertices never meet, and an S-F pair meets exactly when the
    attachment matches.  The intersection of the four dimensions is G.
    """
    part.validate(G)
    F = part.F
    S = part.S
    p = len(S)
    pos = {s: t + 1 for t, s in enumerate(S)}
    if F:
        sub, vmap = induced_subgraph(G, F)
        two = relabel_box_representation(
            forest_two_dim(sub), {new: old for new, old in enumerate(vmap)}
        )
        dims = [
            canonical_extension(two.dimension_rep(0), G),
            canonical_extension(two.dimension_rep(1), G),
        ]
    else:
        # no forest side: the stable dimensions already separate everything
        blanket = IntervalRepresentation(
            {v: Interval(0, 1) for v in G.vertices()}
        )
        dims = [blanket, blanket]
    attach: dict[int, int] = {}
    for f in F:
        hits = [pos[s] for s in G.neighbors(f) if s in pos]
        if len(hits) > 1:
            raise InvalidInput(
                f"vertex {f} has {len(hits)} neighbors in S; the partition "
                "validation should have rejected this"
            )
        if hits:
            attach[f] = hits[0]
    dim_a = {}
    dim_b = {}
    for s, t in pos.items():
        dim_a[s] = Interval(t, t)
        dim_b[s] = Interval(t, t)
    for f in F:
        if f in attach:
            t = attach[f]
            dim_a[f] = Interval(t, p + 1)
            dim_b[f] = Interval(0, t)
        else:
            dim_a[f] = Interval(p + 1, p + 1)
            dim_b[f] = Interval(0, 0)
    dims.append(IntervalRepresentation(dim_a))
    dims.append(IntervalRepresentation(dim_b))
    return from_interval_reps(dims)


def roberts_representation(n: int) -> BoxRepresentation:
    """The n-dimensional representation of the complete graph on 2n vertices
    minus the matching {2j, 2j+1}; dimension j parks the pair at [0, 1] and
    [2, 3] and lets everyone else span [0, 3]."""
    if n < 1:
        raise InvalidInput(f"need n >= 1, got {n}")
    boxes = {}
    for v in range(2 * n):
        row = []
        for j in range(n):
            if v == 2 * j:
                row.append(Interval(0, 1))
            elif v == 2 * j + 1:
                row.append(Interval(2, 3))
            else:
                row.append(Interval(0, 3))
        boxes[v] = tuple(row)
    return BoxRepresentation(n, boxes)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def box_rep_to_dict(B: BoxRepresentation) -> dict:
    return {
        "d": B.d,
        "vertices": {
            str(v): [interval_to_pairs(iv) for iv in box]
            for v, box in sorted(B.boxes.items())
        },
    }


def box_rep_from_dict(doc) -> BoxRepresentation:
    if not isinstance(doc, dict) or set(doc) != {"d", "vertices"}:
        raise InvalidInput("box representation document needs exactly 'd' and 'vertices'")
    d = doc["d"]
    if not isinstance(d, int) or d < 1:
        raise InvalidInput(f"'d' must be a positive int, got {d!r}")
    if not isinstance(doc["vertices"], dict):
        raise InvalidInput("'vertices' must map vertex ids to interval lists")
    boxes = {}
    for key, val in doc["vertices"].items():
        try:
            v = int(key)
        except ValueError:
            raise InvalidInput(f"vertex key {key!r} is not an integer") from None
        if not isinstance(val, list) or len(val) != d:
            raise InvalidInput(
                f"vertices[{key}] must list exactly {d} intervals"
            )
        boxes[v] = tuple(
            interval_from_pairs(iv, f"vertices[{key}][{i}]")
            for i, iv in enumerate(val)
        )
    return BoxRepresentation(d, boxes)


def serialize_box_representation(B: BoxRepresentation) -> str:
    return json.dumps(box_rep_to_dict(B), indent=2, sort_keys=True) + "\n"


def parse_box_representation(text: str) -> BoxRepresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return box_rep_from_dict(doc)
