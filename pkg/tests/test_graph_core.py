import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from nsgraphs.errors import (
    Disconnected,
    FewerThanThreeVertices,
    GraphFormatError,
    NotEulerian,
    TooLargeForBruteForce,
    Unreachable,
)
from nsgraphs.graph_core import (
    Criterion,
    DegreesBoundedBy,
    FiniteGraph,
    Trail,
    brute_force_hamiltonian,
    complete_graph,
    cycle_graph,
    cyclomatic_number,
    eccentricity_radius_diameter,
    empty_graph,
    eulerian_circuit,
    format_graph,
    greedy_coloring,
    hamiltonian_criteria,
    holds,
    induced_subgraph,
    is_acyclic,
    is_connected,
    is_eulerian,
    is_loop,
    is_path,
    is_trail,
    parse_graph,
    path_graph,
    shortest_distance,
    shortest_path,
    spanning_tree,
    star_graph,
    verify_coloring,
)

from corpus import connected_graphs, random_graph, to_nx

CONNECTED = connected_graphs(500, seed=2024)
ANY = [random_graph(random.Random(s), random.Random(s).randint(1, 8), 0.35) for s in range(300)]
TWO_EDGES = FiniteGraph.from_edges(4, [(0, 1), (2, 3)])


def test_construction_rejects_loops_and_duplicates():
    with pytest.raises(GraphFormatError):
        FiniteGraph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphFormatError):
        FiniteGraph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphFormatError):
        FiniteGraph.from_edges(2, [(0, 2)])


def test_text_format_round_trip():
    g = parse_graph("# a triangle\n3 3\n0 1\n1 2\n\n0 2\n")
    assert g == complete_graph(3)
    assert parse_graph(format_graph(g)) == g
    assert format_graph(path_graph(3)) == "3 2\n0 1\n1 2\n"
    for bad in ["", "3 1\n", "2 1\n1 0\n", "3 1\n0 5\n", "x y\n"]:
        with pytest.raises(GraphFormatError):
            parse_graph(bad)


def test_distance_examples():
    # frozen from networkx BFS: d(0, 4) = 4 on the path with five vertices
    assert shortest_distance(path_graph(5), 0, 4) == 4
    g = CONNECTED[7]
    assert all(shortest_distance(g, u, u) == 0 for u in range(g.p))
    assert shortest_distance(complete_graph(4), 0, 3) == 1
    with pytest.raises(Unreachable):
        shortest_distance(TWO_EDGES, 0, 3)


def test_eccentricity_examples():
    # frozen from networkx radius/diameter
    assert eccentricity_radius_diameter(cycle_graph(7))[1:] == (3, 3)
    assert eccentricity_radius_diameter(path_graph(5))[1:] == (2, 4)
    assert eccentricity_radius_diameter(complete_graph(3))[1:] == (1, 1)
    with pytest.raises(Disconnected):
        eccentricity_radius_diameter(TWO_EDGES)


def test_cyclomatic_examples():
    assert cyclomatic_number(complete_graph(4)) == 3
    assert cyclomatic_number(star_graph(5)) == 0
    assert cyclomatic_number(cycle_graph(9)) == 1
    with pytest.raises(Disconnected):
        spanning_tree(TWO_EDGES)


def test_euler_examples():
    assert is_eulerian(complete_graph(5))
    assert not is_eulerian(path_graph(2))
    for m in range(3, 9):
        t = eulerian_circuit(cycle_graph(m))
        assert t.closed and len(t) == m
    with pytest.raises(NotEulerian):
        eulerian_circuit(path_graph(3))


def test_hamilton_examples():
    c4, c5 = hamiltonian_criteria(cycle_graph(4)), hamiltonian_criteria(cycle_graph(5))
    assert c4.dirac and brute_force_hamiltonian(cycle_graph(4))
    assert not c5.dirac and not c5.ore and brute_force_hamiltonian(cycle_graph(5))
    assert hamiltonian_criteria(complete_graph(5)).dirac
    with pytest.raises(FewerThanThreeVertices):
        hamiltonian_criteria(path_graph(2))
    with pytest.raises(TooLargeForBruteForce):
        brute_force_hamiltonian(complete_graph(11))


def test_coloring_examples():
    c5 = greedy_coloring(cycle_graph(5))
    assert verify_coloring(cycle_graph(5), c5, 3)
    assert set(greedy_coloring(empty_graph(4)).values()) == {1}
    k4 = greedy_coloring(complete_graph(4))
    assert sorted(k4.values()) == [1, 2, 3, 4]
    # no proper 3-coloring of K_4 exists (exhaustive oracle)
    assert not any(verify_coloring(complete_graph(4), list(c), 3)
                   for c in itertools.product(range(1, 4), repeat=4))


def test_connectivity_examples():
    assert is_connected(cycle_graph(6))
    assert not is_connected(TWO_EDGES)
    assert is_connected(empty_graph(1))


@pytest.mark.parametrize("g", CONNECTED[:120])
def test_against_networkx(g):
    h = to_nx(g)
    for u in range(g.p):
        lengths = nx.single_source_shortest_path_length(h, u)
        assert [shortest_distance(g, u, v) for v in range(g.p)] == [lengths[v] for v in range(g.p)]
    ecc, R, D = eccentricity_radius_diameter(g)
    assert ecc == [nx.eccentricity(h, u) for u in range(g.p)]
    assert (R, D) == (nx.radius(h), nx.diameter(h))
    assert is_eulerian(g) == nx.is_eulerian(h)


@pytest.mark.parametrize("g", ANY)
def test_connectivity_against_networkx(g):
    assert is_connected(g) == nx.is_connected(to_nx(g))


def test_section_identities_on_random_connected():
    for g in CONNECTED:
        p, q = g.p, g.q
        tree = spanning_tree(g)
        assert cyclomatic_number(g) == q - p + 1 == q - tree.q
        assert p - 1 <= q <= p * (p - 1) // 2
        _, R, D = eccentricity_radius_diameter(g)
        assert R <= D <= 2 * R
        assert tree.q == p - 1 and tree.p == p
        assert is_acyclic(tree) and is_connected(tree)
        assert tree.edges <= g.edges


def test_euler_three_ways():
    for g in CONNECTED + ANY:
        even = all(d % 2 == 0 for d in g.degrees())
        try:
            t = eulerian_circuit(g)
        except NotEulerian:
            built = False
        else:
            built = True
            assert t.closed or g.q == 0
            assert sorted(t.edges) == g.sorted_edges()
            assert is_trail(g, t)
        assert is_eulerian(g) == built == (is_connected(g) and even)


def test_hamilton_chain():
    for g in CONNECTED:
        if g.p < 3:
            continue
        c = hamiltonian_criteria(g)
        ham = brute_force_hamiltonian(g)
        assert not c.dirac or c.ore
        assert not c.ore or ham
        assert not c.posa or ham
        assert ham == _ham_oracle(g)


def _ham_oracle(g):
    for perm in itertools.permutations(range(1, g.p)):
        cyc = (0,) + perm
        if all(g.has_edge(cyc[i], cyc[(i + 1) % g.p]) for i in range(g.p)):
            return True
    return False


def test_greedy_coloring_bound():
    for g in CONNECTED + ANY:
        col = greedy_coloring(g)
        assert verify_coloring(g, col, g.max_degree() + 1)


def test_triangle_inequality():
    for g in CONNECTED[:150]:
        d = [[shortest_distance(g, u, v) for v in range(g.p)] for u in range(g.p)]
        for a, b, c in itertools.product(range(g.p), repeat=3):
            assert d[a][c] <= d[a][b] + d[b][c]


@given(st.integers(1, 8), st.data())
def test_shortest_path_is_a_path(p, data):
    g = connected_graphs(1, data.draw(st.integers(0, 10**6)), lo=p, hi=p)[0]
    u, v = data.draw(st.integers(0, p - 1)), data.draw(st.integers(0, p - 1))
    t = shortest_path(g, u, v)
    assert t.vertices[0] == u and t.vertices[-1] == v
    assert is_path(g, t) and len(t) == shortest_distance(g, u, v)


def test_walk_predicates():
    c = cycle_graph(4)
    assert is_loop(c, Trail((0, 1, 2, 3, 0)))
    assert not is_path(c, Trail((0, 1, 2, 3, 0)))
    assert not is_trail(c, Trail((0, 1, 0)))
    assert not is_loop(c, Trail((0, 1, 0)))


def test_holds_and_induced():
    assert holds(cycle_graph(5), DegreesBoundedBy(2))
    assert not holds(path_graph(2), Criterion.DIRAC)
    assert induced_subgraph(cycle_graph(6), [0, 1, 2]) == path_graph(3)
    assert induced_subgraph(cycle_graph(6), [5, 0]) == path_graph(2)
