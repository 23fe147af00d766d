"""Closed intervals with exact rational endpoints and interval representations.

A vertex ordering sigma is *umbrella-free* for a graph G when for all
positions p(u) < p(v) < p(w), uw in E(G) implies uv in E(G).  These orderings
are exactly the left-endpoint orders of interval supergraphs, which makes
them the search space for everything in this package: a graph is the
intersection of d interval graphs iff there are d orderings whose umbrella
closures intersect to the graph itself.

Correctness basis for umbrella_closure.  Define reach(u) as the largest
position among u's neighbors placed after u (or u's own position if there is
none), and C := { (u, v) : p(u) < p(v) <= reach(u) }.  Then:

  * C contains G: an edge uv with p(u) < p(v) has p(v) <= reach(u).
  * C is umbrella-free: if p(u) < p(v) < p(w) and uw in C then
    p(w) <= reach(u), so p(v) < reach(u) and uv in C.
  * C is least: let H be any umbrella-free supergraph of G.  For (u, v) in C
    there is a G-edge uw with p(v) <= p(w); either v = w (a G-edge, so in H)
    or p(u) < p(v) < p(w) forces uv in H by umbrella-freeness.

So C is the unique least umbrella-free supergraph, i.e. the fixpoint of
repeatedly adding the forced edge uv whenever p(u) < p(v) < p(w) and uw is
present.  The test suite re-derives the fixpoint naively with randomized
rule application and compares.

Orderings are plain tuples of vertex ids; intervals use Fraction endpoints,
so all comparisons are exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvalidInput, ParseError
from .graphs import Graph, check_vertex_set

Rational = Fraction


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; endpoints are coerced to Fraction."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidInput(f"interval has lo > hi: [{self.lo}, {self.hi}]")

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi


@dataclass(frozen=True, eq=False)
class IntervalRepresentation:
    """Map from vertex ids to intervals.

    Ids are arbitrary non-negative ints: a representation may live on a
    subset of some ambient graph's vertices (compositions rely on that).
    """

    intervals: dict[int, Interval]

    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(self.intervals))

    def interval(self, v: int) -> Interval:
        return self.intervals[v]

    def span(self) -> Interval:
        """Smallest interval containing every vertex interval."""
        if not self.intervals:
            raise InvalidInput("span of an empty representation")
        return Interval(
            min(iv.lo for iv in self.intervals.values()),
            max(iv.hi for iv in self.intervals.values()),
        )

    def __eq__(self, other):
        return (
            isinstance(other, IntervalRepresentation)
            and self.intervals == other.intervals
        )


def interval_adjacent(R: IntervalRepresentation, u: int, v: int) -> bool:
    return R.intervals[u].intersects(R.intervals[v])


def interval_edges(R: IntervalRepresentation) -> set[tuple[int, int]]:
    """Intersecting pairs over the representation's own ids."""
    return {
        (u, v)
        for u, v in combinations(R.domain(), 2)
        if interval_adjacent(R, u, v)
    }


def interval_graph_of(R: IntervalRepresentation) -> Graph:
    """The intersection graph, relabeled densely through the sorted domain."""
    dom = R.domain()
    index = {v: i for i, v in enumerate(dom)}
    edges = frozenset((index[u], index[v]) for u, v in interval_edges(R))
    return Graph(len(dom), edges)


def relabel_interval_representation(
    R: IntervalRepresentation, mapping: dict[int, int]
) -> IntervalRepresentation:
    """Rename vertex ids; mapping must be injective on the domain."""
    out: dict[int, Interval] = {}
    for v, iv in R.intervals.items():
        if v not in mapping:
            raise InvalidInput(f"relabeling misses vertex {v}")
        out[mapping[v]] = iv
    if len(out) != len(R.intervals):
        raise InvalidInput("relabeling is not injective")
    return IntervalRepresentation(out)


# ---------------------------------------------------------------------------
# umbrella machinery
# ---------------------------------------------------------------------------


def check_ordering(G: Graph, sigma) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(G.n)):
        raise InvalidInput(
            f"ordering {list(sigma)} is not a permutation of 0..{G.n - 1}"
        )
    return sigma


def is_umbrella_free(G: Graph, sigma) -> bool:
    """Definition-level check over all position triples."""
    sigma = check_ordering(G, sigma)
    for a in range(G.n):
        u = sigma[a]
        for c in range(a + 2, G.n):
            if not G.has_edge(u, sigma[c]):
                continue
            for b in range(a + 1, c):
                if not G.has_edge(u, sigma[b]):
                    return False
    return True


def _reach(G: Graph, sigma: tuple[int, ...]) -> list[int]:
    """reach[i] = largest position of a neighbor of sigma[i] after i."""
    pos = {v: i for i, v in enumerate(sigma)}
    out = []
    for i, v in enumerate(sigma):
        later = [pos[w] for w in G.neighbors(v) if pos[w] > i]
        out.append(max(later, default=i))
    return out


def umbrella_closure(G: Graph, sigma) -> Graph:
    """Least supergraph of G for which sigma is umbrella-free.

    Equals the fixpoint of the forcing rule (module docstring); computed in
    one pass from neighbor reaches.
    """
    sigma = check_ordering(G, sigma)
    reach = _reach(G, sigma)
    edges = set(G.edges)
    for i in range(G.n):
        u = sigma[i]
        for j in range(i + 1, reach[i] + 1):
            v = sigma[j]
            edges.add((u, v) if u < v else (v, u))
    return Graph(G.n, frozenset(edges))


def representation_from_ordering(G: Graph, sigma) -> IntervalRepresentation:
    """Canonical interval representation read off an umbrella-free ordering.

    Vertex at position i (1-based) gets [i, max(i, positions of its later
    neighbors)].  Its intersection graph is G exactly when the precondition
    holds.
    """
    sigma = check_ordering(G, sigma)
    if not is_umbrella_free(G, sigma):
        raise InvalidInput("ordering is not umbrella-free for this graph")
    reach = _reach(G, sigma)
    return IntervalRepresentation(
        {v: Interval(i + 1, reach[i] + 1) for i, v in enumerate(sigma)}
    )


def recognize_interval(G: Graph) -> IntervalRepresentation | None:
    """Search for an umbrella-free ordering of G itself.

    Backtracks over left-to-right placements, pruning a partial ordering at
    the first violated triple: once a placed vertex u has a placed
    non-neighbor after it, no neighbor of u may be placed later.  Returns
    the canonical representation for the first ordering found (placements
    are tried in ascending vertex order), or None when G is not an interval
    graph.
    """
    n = G.n
    if n == 0:
        return IntervalRepresentation({})
    order: list[int] = []
    dirty: list[bool] = []  # parallel to order
    used = [False] * n

    def place() -> bool:
        if len(order) == n:
            return True
        for x in range(n):
            if used[x]:
                continue
            ok = True
            for u, d in zip(order, dirty):
                if d and G.has_edge(u, x):
                    ok = False
                    break
            if not ok:
                continue
            touched = []
            for i, u in enumerate(order):
                if not dirty[i] and not G.has_edge(u, x):
                    dirty[i] = True
                    touched.append(i)
            order.append(x)
            dirty.append(False)
            used[x] = True
            if place():
                return True
            used[x] = False
            order.pop()
            dirty.pop()
            for i in touched:
                dirty[i] = False
        return False

    if not place():
        return None
    return representation_from_ordering(G, tuple(order))


# ---------------------------------------------------------------------------
# canonical extension
# ---------------------------------------------------------------------------


def canonical_extension(
    R: IntervalRepresentation, G: Graph
) -> IntervalRepresentation:
    """Extend a representation on X subset of V(G) to all of V(G).

    Vertices outside X are mapped to the full span of R, so they meet
    everything.  Requires a nonempty domain inside V(G) covering every edge
    of the induced subgraph G[X]; the result's graph is then a supergraph of
    G that agrees with R's graph on pairs inside X.
    """
    X = check_vertex_set(G, R.domain())
    if not X:
        raise InvalidInput("canonical extension needs a nonempty domain")
    for u, v in combinations(X, 2):
        if G.has_edge(u, v) and not interval_adjacent(R, u, v):
            raise InvalidInput(
                f"representation misses edge ({u}, {v}) of the induced subgraph"
            )
    span = R.span()
    out = dict(R.intervals)
    for v in G.vertices():
        if v not in out:
            out[v] = span
    return IntervalRepresentation(out)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _fraction_to_pair(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def _fraction_from_pair(doc, where: str) -> Fraction:
    if (
        not isinstance(doc, list)
        or len(doc) != 2
        or not all(isinstance(x, int) for x in doc)
    ):
        raise InvalidInput(f"{where}: rational must be [numerator, denominator]")
    if doc[1] <= 0:
        raise InvalidInput(f"{where}: denominator must be positive, got {doc[1]}")
    return Fraction(doc[0], doc[1])


def interval_to_pairs(iv: Interval) -> list[list[int]]:
    return [_fraction_to_pair(iv.lo), _fraction_to_pair(iv.hi)]


def interval_from_pairs(doc, where: str) -> Interval:
    if not isinstance(doc, list) or len(doc) != 2:
        raise InvalidInput(f"{where}: interval must be [[n, d], [n, d]]")
    lo = _fraction_from_pair(doc[0], where)
    hi = _fraction_from_pair(doc[1], where)
    if lo > hi:
        raise InvalidInput(f"{where}: interval has lo > hi")
    return Interval(lo, hi)


def interval_rep_to_dict(R: IntervalRepresentation) -> dict:
    return {
        "vertices": {
            str(v): interval_to_pairs(iv) for v, iv in sorted(R.intervals.items())
        }
    }


def interval_rep_from_dict(doc) -> IntervalRepresentation:
    if not isinstance(doc, dict) or set(doc) != {"vertices"}:
        raise InvalidInput("interval representation document needs exactly 'vertices'")
    if not isinstance(doc["vertices"], dict):
        raise InvalidInput("'vertices' must map vertex ids to intervals")
    out: dict[int, Interval] = {}
    for key, val in doc["vertices"].items():
        try:
            v = int(key)
        except ValueError:
            raise InvalidInput(f"vertex key {key!r} is not an integer") from None
        if v < 0:
            raise InvalidInput(f"vertex id {v} is negative")
        out[v] = interval_from_pairs(val, f"vertices[{key}]")
    return IntervalRepresentation(out)


def serialize_interval_representation(R: IntervalRepresentation) -> str:
    return json.dumps(interval_rep_to_dict(R), indent=2, sort_keys=True) + "\n"


def parse_interval_representation(text: str) -> IntervalRepresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return interval_rep_from_dict(doc)
