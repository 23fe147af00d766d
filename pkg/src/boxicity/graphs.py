"""Simple undirected graphs on vertices 0..n-1, family generators and JSON I/O.

Vertex sets are passed around as plain iterables of ints and normalized to
sorted tuples; there is no wrapper class for them.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import InvalidInput, ParseError


@dataclass(frozen=True)
class Graph:
    """Finite simple graph; edges stored as (u, v) pairs with u < v."""

    n: int
    edges: frozenset[tuple[int, int]]

    @cached_property
    def _adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def non_edges(self) -> list[tuple[int, int]]:
        """All unordered non-adjacent pairs, lexicographically sorted."""
        return [
            (u, v)
            for u, v in combinations(range(self.n), 2)
            if (u, v) not in self.edges
        ]


def make_graph(n: int, edges) -> Graph:
    """Build a Graph from an edge iterable, validating and normalizing.

    Rejects negative n, loops, endpoints outside 0..n-1, and duplicate
    edges (after orienting each pair as (min, max)).
    """
    if not isinstance(n, int) or n < 0:
        raise InvalidInput(f"vertex count must be a non-negative int, got {n!r}")
    seen: set[tuple[int, int]] = set()
    for e in edges:
        u, v = e
        if not isinstance(u, int) or not isinstance(v, int):
            raise InvalidInput(f"edge endpoints must be ints, got {e!r}")
        if u == v:
            raise InvalidInput(f"loop at vertex {u} is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidInput(f"edge {e!r} has an endpoint outside 0..{n - 1}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InvalidInput(f"duplicate edge {key}")
        seen.add(key)
    return Graph(n, frozenset(seen))


def check_vertex_set(G: Graph, S) -> tuple[int, ...]:
    """Normalize S to a sorted tuple; reject out-of-range ids and repeats."""
    out = tuple(sorted(S))
    for v in out:
        if not isinstance(v, int) or not (0 <= v < G.n):
            raise InvalidInput(f"vertex {v!r} is not in 0..{G.n - 1}")
    if len(set(out)) != len(out):
        raise InvalidInput(f"vertex set {list(out)} has repeated entries")
    return out


def induced_subgraph(G: Graph, S) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on S, relabeled to 0..|S|-1.

    Returns (H, vertex_map) where vertex_map[i] is the original id of new
    vertex i; the map is sorted, so relabeling is order-preserving.
    """
    vmap = check_vertex_set(G, S)
    index = {old: new for new, old in enumerate(vmap)}
    edges = [
        (index[u], index[v]) for u, v in G.edges if u in index and v in index
    ]
    return Graph(len(vmap), frozenset(edges)), vmap


def remove_vertices(G: Graph, S) -> Graph:
    """Induced subgraph on V(G) minus S, relabeled to dense ids."""
    drop = set(check_vertex_set(G, S))
    keep = [v for v in range(G.n) if v not in drop]
    H, _ = induced_subgraph(G, keep)
    return H


def complement(G: Graph) -> Graph:
    return Graph(G.n, frozenset(G.non_edges()))


def graph_intersection(graphs) -> Graph:
    """Edge-wise intersection of graphs on a common vertex set."""
    graphs = list(graphs)
    if not graphs:
        raise InvalidInput("graph_intersection needs at least one graph")
    n = graphs[0].n
    for H in graphs[1:]:
        if H.n != n:
            raise InvalidInput(
                f"vertex count mismatch: {H.n} vs {n}"
            )
    edges = set(graphs[0].edges)
    for H in graphs[1:]:
        edges &= H.edges
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------


def complete(n: int) -> Graph:
    return make_graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return make_graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidInput(f"cycle needs at least 3 vertices, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def roberts_graph(n: int) -> Graph:
    """Complete graph on 2n vertices minus the perfect matching {2i, 2i+1}."""
    if n < 1:
        raise InvalidInput(f"roberts_graph needs n >= 1, got {n}")
    edges = [
        (u, v)
        for u, v in combinations(range(2 * n), 2)
        if not (u // 2 == v // 2)
    ]
    return make_graph(2 * n, edges)


def subdivided_complete(n: int) -> Graph:
    """Complete graph on n vertices with every edge subdivided once.

    Branch vertices keep ids 0..n-1; the subdivision vertex of edge (u, v)
    gets id n + r where r is the rank of (u, v) among the lexicographically
    sorted edges of the complete graph.
    """
    if n < 1:
        raise InvalidInput(f"subdivided_complete needs n >= 1, got {n}")
    base = sorted(combinations(range(n), 2))
    edges = []
    for r, (u, v) in enumerate(base):
        mid = n + r
        edges.append((u, mid))
        edges.append((v, mid))
    return make_graph(n + len(base), edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi graph; deterministic for a fixed seed."""
    if not (0.0 <= p <= 1.0):
        raise InvalidInput(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return make_graph(n, edges)


def random_forest(n: int, seed: int, attach_probability: float = 0.8) -> Graph:
    """Random forest: each vertex i > 0 attaches to an earlier vertex with
    the given probability, otherwise starts a new component."""
    rng = random.Random(seed)
    edges = []
    for i in range(1, n):
        if rng.random() < attach_probability:
            edges.append((rng.randrange(i), i))
    return make_graph(n, edges)


# ---------------------------------------------------------------------------
# structure probes used by certificate validation and constructions
# ---------------------------------------------------------------------------


def connected_components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for root in range(G.n):
        if seen[root]:
            continue
        comp = []
        queue = deque([root])
        seen[root] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in sorted(G.neighbors(v)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(comp)
    return comps


def find_cycle(G: Graph) -> list[int] | None:
    """Some cycle of G as a vertex list, or None if G is a forest."""
    parent: dict[int, int | None] = {}
    for root in range(G.n):
        if root in parent:
            continue
        parent[root] = None
        stack = [(root, -1)]
        while stack:
            v, prev = stack.pop()
            for w in sorted(G.neighbors(v)):
                if w == prev:
                    continue
                if w in parent:
                    # walk both endpoints up to the root; the cycle closes at
                    # the first common ancestor
                    path_v = [v]
                    x = v
                    while parent[x] is not None:
                        x = parent[x]
                        path_v.append(x)
                    ancestors = {u: i for i, u in enumerate(path_v)}
                    path_w = [w]
                    x = w
                    while x not in ancestors:
                        x = parent[x]
                        path_w.append(x)
                    return path_w + path_v[: ancestors[path_w[-1]]][::-1]
                parent[w] = v
                stack.append((w, v))
    return None


def is_forest(G: Graph) -> bool:
    return find_cycle(G) is None


def bfs_distances(G: Graph, source: int) -> list[int | None]:
    """Hop distances from source; None for unreachable vertices."""
    dist: list[int | None] = [None] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in G.neighbors(v):
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def graph_to_dict(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def graph_from_dict(doc) -> Graph:
    if not isinstance(doc, dict):
        raise InvalidInput(f"graph document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - {"n", "edges"}
    if unknown:
        raise InvalidInput(f"unknown graph keys: {sorted(unknown)}")
    if "n" not in doc or "edges" not in doc:
        raise InvalidInput("graph document needs 'n' and 'edges'")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise InvalidInput("'edges' must be a list of [u, v] pairs")
    pairs = []
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2):
            raise InvalidInput(f"edges[{i}] must be a [u, v] pair, got {e!r}")
        pairs.append((e[0], e[1]))
    return make_graph(doc["n"], pairs)


def serialize(G: Graph) -> str:
    """Canonical JSON text: sorted keys, edges in lexicographic order."""
    return json.dumps(graph_to_dict(G), indent=2, sort_keys=True) + "\n"


def parse(text: str) -> Graph:
    """Parse serialized graph text; malformed JSON reports the position."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return graph_from_dict(doc)
