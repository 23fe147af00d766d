"""Adjacency posets, coloring-driven realizers, and bound arithmetic.

The adjacency poset of a graph puts its vertex set on a bottom layer and a
primed copy on a top layer, with u below w' exactly for edges uw; the
starred variant also puts each vertex below its own copy.  A proper
coloring with k classes yields k linear extensions, one per class i,
stacked as: vertices of other classes, then primed copies of class i, then
class i itself, then the remaining primed copies.  Their intersection cuts
the starred relation back down to the plain adjacency poset, which is the
step this module can build and check outright; everything else about poset
dimension here is brute force for tiny inputs, plus closed-form bound
evaluation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .certificates import check_coloring
from .errors import BudgetExhausted, InvalidInput
from .exact import SearchBudget
from .graphs import Graph

LinearOrder = tuple[int, ...]


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its full order relation.

    Construction validates reflexivity, antisymmetry, and transitivity and
    reports the first offending pair or triple.
    """

    elements: tuple[int, ...]
    relation: frozenset[tuple[int, int]]

    def __post_init__(self):
        elems = tuple(int(x) for x in self.elements)
        if len(set(elems)) != len(elems):
            raise InvalidInput("poset elements must be distinct")
        rel = frozenset((int(a), int(b)) for a, b in self.relation)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "relation", rel)
        members = set(elems)
        for a, b in rel:
            if a not in members or b not in members:
                raise InvalidInput(f"relation pair ({a}, {b}) uses unknown elements")
        for x in elems:
            if (x, x) not in rel:
                raise InvalidInput(f"relation is not reflexive: missing ({x}, {x})")
        above: dict[int, set[int]] = {x: set() for x in elems}
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise InvalidInput(f"antisymmetry violated on ({a}, {b})")
            above[a].add(b)
        for a in elems:
            for b in above[a]:
                missing = above[b] - above[a]
                if missing:
                    c = min(missing)
                    raise InvalidInput(
                        f"transitivity violated: {a} <= {b} <= {c} without {a} <= {c}"
                    )

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.relation


def adjacency_poset(G: Graph) -> Poset:
    """Two-layer poset: v and its copy v+n, with u below w+n iff uw is an
    edge."""
    n = G.n
    rel = {(x, x) for x in range(2 * n)}
    for u, v in G.edges:
        rel.add((u, v + n))
        rel.add((v, u + n))
    return Poset(tuple(range(2 * n)), frozenset(rel))


def starred_poset(G: Graph) -> Poset:
    """The adjacency poset plus v below its own copy, for every v."""
    base = adjacency_poset(G)
    rel = set(base.relation)
    rel.update((v, v + G.n) for v in range(G.n))
    return Poset(base.elements, frozenset(rel))


def chi_realizer_extensions(G: Graph, colors: dict[int, int]) -> list[LinearOrder]:
    """One linear extension per color class of a proper coloring.

    Class i's order runs: other-class vertices, copies of class i, class i,
    remaining copies, each block ascending.  Every output extends the
    adjacency poset, and intersecting all of them with the starred relation
    gives back exactly the adjacency poset; both facts are the point of the
    construction and are enforced by the test suite.
    """
    dense = check_coloring(G, colors)
    for u, v in sorted(G.edges):
        if dense[u] == dense[v]:
            raise InvalidInput(f"edge ({u}, {v}) is monochromatic")
    n = G.n
    k = max(dense) + 1 if n else 0
    orders = []
    for i in range(k):
        others = [v for v in range(n) if dense[v] != i]
        mine = [v for v in range(n) if dense[v] == i]
        orders.append(
            tuple(others + [v + n for v in mine] + mine + [v + n for v in others])
        )
    return orders


def _check_arrangement(elements, L) -> tuple[int, ...]:
    order = tuple(int(x) for x in L)
    if sorted(order) != sorted(elements):
        raise InvalidInput("order must arrange exactly the poset elements")
    return order


def is_linear_extension(P: Poset, L) -> bool:
    order = _check_arrangement(P.elements, L)
    pos = {x: i for i, x in enumerate(order)}
    return all(pos[a] <= pos[b] for a, b in P.relation)


def intersect_orders(orders) -> frozenset[tuple[int, int]]:
    """Pairs (a, b) with a at or before b in every given total order."""
    if not orders:
        raise InvalidInput("need at least one order")
    first = tuple(orders[0])
    out = None
    for L in orders:
        order = _check_arrangement(first, L)
        pos = {x: i for i, x in enumerate(order)}
        cur = {(a, b) for a in order for b in order if pos[a] <= pos[b]}
        out = cur if out is None else out & cur
    return frozenset(out)


def poset_dimension_at_most(
    P: Poset, d: int, budget: SearchBudget | None = None
) -> tuple[LinearOrder, ...] | None:
    """d linear extensions intersecting to P, or None after an exhaustive
    refusal.

    Enumerates all linear extensions, keeps one witness per inclusion-
    maximal set of reversed incomparable pairs, and covers the incomparable
    pairs with d such sets.  Strictly a tiny-poset tool: the envelope is
    about ten elements, and the budget interrupts anything larger by
    raising rather than answering.
    """
    if d < 1:
        raise InvalidInput("dimension must be at least 1")
    budget = budget or SearchBudget()
    deadline = time.monotonic() + budget.time_limit
    nodes = [0]

    def tick():
        nodes[0] += 1
        if nodes[0] > budget.max_nodes:
            raise BudgetExhausted(f"node budget of {budget.max_nodes} exceeded")
        if nodes[0] % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted(f"time limit of {budget.time_limit}s exceeded")

    elems = sorted(P.elements)
    targets = frozenset(
        (a, b)
        for a in elems
        for b in elems
        if a != b and (a, b) not in P.relation
    )
    preds = {x: {a for a, b in P.relation if b == x and a != x} for x in elems}

    kills: dict[frozenset, LinearOrder] = {}
    placed: list[int] = []
    placed_set: set[int] = set()

    def generate():
        if len(placed) == len(elems):
            order = tuple(placed)
            pos = {x: i for i, x in enumerate(order)}
            killed = frozenset((a, b) for a, b in targets if pos[b] < pos[a])
            kills.setdefault(killed, order)
            return
        for x in elems:
            if x in placed_set or not preds[x] <= placed_set:
                continue
            tick()
            placed.append(x)
            placed_set.add(x)
            generate()
            placed.pop()
            placed_set.remove(x)

    generate()
    maximal: list[frozenset] = []
    for s in sorted(kills, key=lambda s: (-len(s), sorted(s))):
        if not any(s <= m for m in maximal):
            maximal.append(s)

    def cover(remaining: frozenset, depth: int):
        if not remaining:
            return ()
        if depth == 0:
            return None
        pivot = min(remaining)
        for s in maximal:
            if pivot in s:
                tick()
                rest = cover(remaining - s, depth - 1)
                if rest is not None:
                    return (s,) + rest
        return None

    chosen = cover(targets, d)
    if chosen is None:
        return None
    some_order = next(iter(kills.values()))
    realizer = tuple(kills[s] for s in chosen)
    return realizer + (some_order,) * (d - len(realizer))


@dataclass(frozen=True)
class BoundValue:
    """A closed-form bound: its floor, a float reading, and the exact
    rational when the radical collapses."""

    floor: int
    approx: float
    exact: Fraction | None


@dataclass(frozen=True)
class BoundReport:
    genus: int | None
    orientable: bool | None
    box_bound: int | None
    chi_bound: BoundValue | None
    dim_bound: BoundValue | None
    dim_from_box_chi: int | None


def _half_plus(base: int, radicand: int, offset: int) -> BoundValue:
    """offset + (base + sqrt(radicand)) / 2, floored without rounding
    error: floor((base + sqrt(D)) / 2) == (base + isqrt(D)) // 2."""
    root = isqrt(radicand)
    floor = offset + (base + root) // 2
    approx = offset + (base + math.sqrt(radicand)) / 2
    exact = Fraction(base + root, 2) + offset if root * root == radicand else None
    return BoundValue(floor, approx, exact)


def bound_calculator(
    g: int | None = None,
    orientable: bool = True,
    box: int | None = None,
    chi: int | None = None,
) -> BoundReport:
    """Evaluate the surface bounds (genus at least 1) and, when a boxicity
    and chromatic number are supplied, the direct 2*box + chi + 4 bound."""
    if g is None and (box is None or chi is None):
        raise InvalidInput("need a genus, or both box and chi")
    box_bound = chi_bound = dim_bound = None
    if g is not None:
        if g < 1:
            raise InvalidInput("surface bounds require genus at least 1")
        radicand = 1 + (48 if orientable else 24) * g
        box_bound = 5 * g + 3
        chi_bound = _half_plus(7, radicand, 0)
        dim_bound = _half_plus(27, radicand, 10 * g)
    direct = None
    if box is not None and chi is not None:
        if box < 1 or chi < 1:
            raise InvalidInput("box and chi must be at least 1")
        direct = 2 * box + chi + 4
    return BoundReport(
        genus=g,
        orientable=orientable if g is not None else None,
        box_bound=box_bound,
        chi_bound=chi_bound,
        dim_bound=dim_bound,
        dim_from_box_chi=direct,
    )


def _bound_value_to_obj(b: BoundValue | None):
    if b is None:
        return None
    exact = None
    if b.exact is not None:
        exact = [b.exact.numerator, b.exact.denominator]
    return {"floor": b.floor, "approx": b.approx, "exact": exact}


def bound_report_to_dict(report: BoundReport) -> dict:
    return {
        "genus": report.genus,
        "orientable": report.orientable,
        "box_bound": report.box_bound,
        "chi_bound": _bound_value_to_obj(report.chi_bound),
        "dim_bound": _bound_value_to_obj(report.dim_bound),
        "dim_from_box_chi": report.dim_from_box_chi,
    }
