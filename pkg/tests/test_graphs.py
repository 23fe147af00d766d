import random

import pytest

from boxicity.errors import InvalidInput, ParseError
from boxicity.graphs import (
    Graph,
    bfs_distances,
    complement,
    complete,
    connected_components,
    cycle,
    find_cycle,
    graph_intersection,
    induced_subgraph,
    is_forest,
    make_graph,
    parse,
    path,
    random_forest,
    random_graph,
    remove_vertices,
    roberts_graph,
    serialize,
    subdivided_complete,
)


def test_make_graph_normalizes_orientation():
    G = make_graph(3, [(2, 0), (1, 2)])
    assert G.edges == frozenset({(0, 2), (1, 2)})
    assert G.has_edge(2, 0) and G.has_edge(0, 2)
    assert not G.has_edge(0, 1)


def test_make_graph_rejects_bad_input():
    with pytest.raises(InvalidInput):
        make_graph(3, [(0, 0)])
    with pytest.raises(InvalidInput):
        make_graph(3, [(0, 3)])
    with pytest.raises(InvalidInput):
        make_graph(3, [(-1, 2)])
    with pytest.raises(InvalidInput):
        make_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidInput):
        make_graph(-1, [])


def test_neighbors_and_degrees():
    G = path(4)
    assert G.neighbors(0) == {1}
    assert G.neighbors(1) == {0, 2}
    assert G.degree(3) == 1
    assert G.non_edges() == [(0, 2), (0, 3), (1, 3)]


def test_induced_subgraph_relabels_in_order():
    G = cycle(5)
    H, vmap = induced_subgraph(G, [4, 0, 1])
    assert vmap == (0, 1, 4)
    assert H.n == 3
    # edges 0-1 and 4-0 survive, relabeled through the sorted map
    assert H.edges == frozenset({(0, 1), (0, 2)})


def test_induced_subgraph_rejects_bad_sets():
    G = cycle(4)
    with pytest.raises(InvalidInput):
        induced_subgraph(G, [0, 0, 1])
    with pytest.raises(InvalidInput):
        induced_subgraph(G, [0, 9])


def test_remove_vertices():
    G = cycle(5)
    H = remove_vertices(G, [2])
    assert H.n == 4
    assert H.edges == frozenset({(0, 1), (2, 3), (0, 3)})


def test_complement_is_involution():
    for seed in range(5):
        G = random_graph(7, 0.4, seed)
        assert complement(complement(G)) == G
    assert complement(complete(4)).edge_count() == 0


def test_graph_intersection():
    A = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    B = make_graph(4, [(1, 2), (2, 3), (0, 3)])
    assert graph_intersection([A, B]).edges == frozenset({(1, 2), (2, 3)})
    assert graph_intersection([A]) == A
    with pytest.raises(InvalidInput):
        graph_intersection([])
    with pytest.raises(InvalidInput):
        graph_intersection([A, complete(3)])


def test_cycle_of_length_three_is_complete():
    assert cycle(3) == complete(3)
    with pytest.raises(InvalidInput):
        cycle(2)


def test_roberts_graph_shape():
    for n in range(1, 5):
        G = roberts_graph(n)
        assert G.n == 2 * n
        assert G.edge_count() == n * (2 * n - 1) - n
        # the complement is exactly the matching of consecutive pairs
        assert complement(G).edges == frozenset(
            (2 * i, 2 * i + 1) for i in range(n)
        )
    with pytest.raises(InvalidInput):
        roberts_graph(0)


def test_subdivided_complete_three_is_a_six_cycle():
    G = subdivided_complete(3)
    assert G.n == 6
    assert G.edge_count() == 6
    assert all(G.degree(v) == 2 for v in G.vertices())
    assert len(connected_components(G)) == 1
    assert find_cycle(G) is not None


def test_random_generators_are_seed_deterministic():
    assert random_graph(8, 0.5, 17) == random_graph(8, 0.5, 17)
    assert random_graph(8, 0.5, 17) != random_graph(8, 0.5, 18)
    assert random_forest(9, 3) == random_forest(9, 3)
    with pytest.raises(InvalidInput):
        random_graph(5, 1.5, 0)


def test_random_forest_is_a_forest():
    for seed in range(20):
        assert is_forest(random_forest(10, seed))


def test_find_cycle_returns_a_real_cycle():
    rng = random.Random(5)
    for _ in range(30):
        G = random_graph(8, rng.random(), rng.randrange(10**6))
        cyc = find_cycle(G)
        if cyc is None:
            assert is_forest(G)
            continue
        assert len(cyc) >= 3
        assert len(set(cyc)) == len(cyc)
        for i, v in enumerate(cyc):
            assert G.has_edge(v, cyc[(i + 1) % len(cyc)])


def test_bfs_distances():
    G = path(4)
    assert bfs_distances(G, 0) == [0, 1, 2, 3]
    H = make_graph(3, [(0, 1)])
    assert bfs_distances(H, 0) == [0, 1, None]


def test_serialize_parse_round_trip():
    for seed in range(5):
        G = random_graph(6, 0.5, seed)
        assert parse(serialize(G)) == G
    # canonical form sorts edges lexicographically
    import json

    doc = json.loads(serialize(make_graph(3, [(2, 1), (1, 0)])))
    assert doc["edges"] == [[0, 1], [1, 2]]


def test_parse_reports_position_on_bad_json():
    with pytest.raises(ParseError) as err:
        parse('{"n": 3, "edges": [[0, 1],]}')
    assert "line" in str(err.value) and "column" in str(err.value)


def test_parse_rejects_schema_violations():
    with pytest.raises(InvalidInput):
        parse('{"n": 3}')
    with pytest.raises(InvalidInput):
        parse('{"n": 3, "edges": [[0, 1]], "extra": 1}')
    with pytest.raises(InvalidInput):
        parse('{"n": 3, "edges": [[0, 1, 2]]}')
    with pytest.raises(InvalidInput):
        parse('{"n": 2, "edges": [[0, 5]]}')
    with pytest.raises(InvalidInput):
        parse('[1, 2]')


def test_graph_is_hashable_and_comparable():
    A = make_graph(3, [(0, 1)])
    B = make_graph(3, [(1, 0)])
    assert A == B and hash(A) == hash(B)
    assert A != make_graph(4, [(0, 1)])
    assert len({A, B, Graph(3, frozenset())}) == 2
