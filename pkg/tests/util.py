"""Helpers shared across test modules."""

from itertools import combinations

from boxicity.boxes import BoxRepresentation, from_interval_reps, singleton_gadget, verify_representation
from boxicity.certificates import CycleClassification, acyclic_coloring_problems
from boxicity.graphs import Graph, make_graph


def all_graphs(n):
    """Every labeled graph on n vertices, in edge-mask order."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield make_graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def star(leaves):
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

CLASS_OFFSETS = {"S1": (0,), "S2": (0, 1), "S3": (0, 2), "S4": (0, 1, 2)}


def gadget_instance(
    k: int, classes=("S1", "S2", "S3", "S4")
) -> tuple[Graph, CycleClassification]:
    """Cycle 0..k-1 plus one attachment vertex per (class, anchor) pair.

    Attachment vertices carry exactly the neighborhood their class
    declares and no edges among themselves, so every anchor position of
    every requested class is exercised at once.
    """
    edges = [(i, (i + 1) % k) for i in range(k)]
    assignments: dict[int, tuple[str, int]] = {}
    nxt = k
    for name in classes:
        for anchor in range(k):
            assignments[nxt] = (name, anchor)
            for off in CLASS_OFFSETS[name]:
                edges.append((nxt, (anchor + off) % k))
            nxt += 1
    G = make_graph(nxt, edges)
    cls = CycleClassification(cycle=tuple(range(k)), assignments=assignments)
    return G, cls


def universal_representation(G: Graph) -> BoxRepresentation:
    """Exact n-dimensional representation: one singleton gadget per vertex.

    Every edge survives in every gadget and the non-adjacencies at v are
    broken in v's own dimension, so the intersection is exactly G.  Handy
    as a valid-but-unoptimized input for composition tests.
    """
    if G.n == 0:
        raise ValueError("need at least one vertex")
    return from_interval_reps([singleton_gadget(G, v) for v in G.vertices()])


def assert_represents(B: BoxRepresentation, G: Graph) -> None:
    report = verify_representation(B, G)
    assert report.equal, (
        f"missing={report.missing_edges} extra={report.extra_edges}"
    )


def greedy_acyclic_coloring(G: Graph) -> dict[int, int]:
    """First-fit coloring kept proper and acyclic on every class pair.

    Not optimal, but always valid: a fresh color can never be rejected.
    """
    colors: dict[int, int] = {}
    for v in range(G.n):
        for c in range(G.n + 1):
            trial = dict(colors)
            trial[v] = c
            # validate on the colored prefix only
            sub_vertices = sorted(trial)
            from boxicity.graphs import induced_subgraph

            sub, vmap = induced_subgraph(G, sub_vertices)
            dense = {i: trial[old] for i, old in enumerate(vmap)}
            if not acyclic_coloring_problems(sub, dense):
                colors[v] = c
                break
        else:
            raise AssertionError("greedy coloring failed to place a vertex")
    return colors
