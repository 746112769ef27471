import itertools

import networkx as nx
import pytest

from nsgraphs.errors import InfiniteGraph, InvalidFamily, InvalidSelector, DisconnectedAlmostEverywhere
from nsgraphs import graph_core as gc
from nsgraphs.graph_core import Criterion, FiniteGraph
from nsgraphs.graph_families import (
    CompleteFamily,
    ConstantFamily,
    CycleFamily,
    ExplicitPeriodicFamily,
    InfinitePathFamily,
    PathFamily,
    StarFamily,
    VertexSelector,
    degree_seq,
    distance_seq,
    edge_set,
    graph_at,
    property_set,
    size_sequences,
    window_at,
)
from nsgraphs.up_algebra import AnchoredUltrafilter, UPPSeq, UPSet

from corpus import (
    PATCHED,
    check_family_evaluators,
    check_vertex_evaluators,
    parametric_families,
    tabulated_families,
    to_nx,
)

FAMILIES = parametric_families() + tabulated_families() + PATCHED


def test_master_oracle_smoke():
    # the full per-family sweep lives in the acceptance suite
    for fam in (CycleFamily("2n+5"), PATCHED[0], tabulated_families()[3]):
        check_family_evaluators(fam)
        check_vertex_evaluators(fam)


def test_infinite_path_against_windows():
    fam = InfinitePathFamily()
    sels = [UPPSeq.of(s) for s in ("0", "n", "n+1", "2n", "3", "n+2")]
    for x, y in itertools.product(sels, repeat=2):
        es, ds = edge_set(fam, x, y), distance_seq(fam, x, y)
        for n in range(30):
            u, v = x[n], y[n]
            w = window_at(fam, n, 0, max(u, v))
            assert ds[n] == nx.shortest_path_length(to_nx(w), u, v)
            assert (n in es) == w.has_edge(u, v)


def test_graph_at_examples():
    assert graph_at(CycleFamily("2n+5"), 1) == gc.cycle_graph(7)
    k3 = gc.complete_graph(3)
    assert all(graph_at(ConstantFamily(k3), n) == k3 for n in (0, 1, 99))
    a, b, c = gc.path_graph(2), gc.cycle_graph(3), gc.star_graph(2)
    assert graph_at(ExplicitPeriodicFamily((a,), (b, c)), 4) == c
    with pytest.raises(InfiniteGraph):
        graph_at(InfinitePathFamily(), 0)


def test_window_examples():
    fam = InfinitePathFamily()
    assert window_at(fam, 0, 0, 4) == gc.path_graph(5)
    assert window_at(fam, 0, 3, 3) == gc.empty_graph(1)
    assert window_at(fam, 0, 0, 1) == gc.path_graph(2)


def test_size_examples():
    # edge counts of K_3..K_6 counted by networkx: 3, 6, 10, 15
    fam = CompleteFamily("n+3")
    p, q = size_sequences(fam)
    assert p == UPPSeq.of("n+3")
    assert q == UPPSeq.of("(n+3)(n+2)/2")
    assert [q[n] for n in range(4)] == [3, 6, 10, 15]
    assert size_sequences(ConstantFamily(gc.complete_graph(3))) == (UPPSeq.of(3), UPPSeq.of(3))
    p, q = size_sequences(CycleFamily("2n+5"))
    assert p == q == UPPSeq.of("2n+5")
    with pytest.raises(InfiniteGraph):
        size_sequences(InfinitePathFamily())


def test_edge_examples():
    fam = InfinitePathFamily()
    assert edge_set(fam, "n", "n+1").is_cofinite()
    assert edge_set(fam, "n", "2n+2").is_finite()
    assert edge_set(CompleteFamily("n+3"), 0, 1) == UPSet.everything()


def test_degree_examples():
    # degrees in K_3..K_6 are 2..5
    fam = CompleteFamily("n+3")
    for x in ("0", "n", "n+2"):
        assert degree_seq(fam, x) == UPPSeq.of("n+2")
    assert degree_seq(CycleFamily("2n+5"), "n") == UPPSeq.of(2)
    assert degree_seq(PathFamily("n+4"), 0) == UPPSeq.of(1)


def test_distance_examples():
    # BFS on windows for n <= 12 gives d(n, 2n) = n
    assert distance_seq(InfinitePathFamily(), "n", "2n") == UPPSeq.of("n")
    for fam in FAMILIES:
        assert distance_seq(fam, 0, 0) == UPPSeq.of(0)
    assert distance_seq(CycleFamily("2n+5"), 0, 1) == UPPSeq.of(1)
    # C_{2n+5}: d(0, n+2) = n+2 for n = 1..3 (BFS gives 3, 4, 5)
    assert distance_seq(CycleFamily("2n+5"), 0, "n+2") == UPPSeq.of("n+2")


def test_distance_requires_connection():
    two = FiniteGraph.from_edges(4, [(0, 1), (2, 3)])
    fam = ConstantFamily(two)
    with pytest.raises(DisconnectedAlmostEverywhere):
        distance_seq(fam, 0, 3, AnchoredUltrafilter(0))
    assert distance_seq(fam, 0, 1, AnchoredUltrafilter(0)) == UPPSeq.of(1)


def test_property_examples():
    # Hierholzer on K_3..K_6: Eulerian, not, Eulerian, not
    fam = CompleteFamily.with_floor("n")
    eul = property_set(fam, Criterion.EULERIAN)
    assert [n in eul for n in range(3, 7)] == [True, False, True, False]
    assert eul.canonical() == UPSet(3, 2, {1}, [False, False, False])
    assert property_set(CycleFamily("2n+5"), Criterion.EULERIAN).is_cofinite()
    dirac = property_set(PathFamily("n+4"), Criterion.DIRAC)
    assert dirac == UPSet.nothing()


def test_constructor_enforces_minimum():
    with pytest.raises(InvalidFamily):
        PathFamily("n")
    with pytest.raises(InvalidFamily):
        CycleFamily("n+2")
    with pytest.raises(InvalidFamily):
        StarFamily("n")
    with pytest.raises(InvalidFamily):
        ExplicitPeriodicFamily((), ())
    with pytest.raises(InvalidFamily):
        CompleteFamily.with_floor(UPPSeq(0, ("n", "1")))
    fam = CycleFamily.with_floor("n")
    assert [fam.size[n] for n in range(6)] == [3, 3, 3, 3, 4, 5]


def test_selector_validity_is_decided():
    fam = CycleFamily("2n+5")
    VertexSelector(fam, "2n+4")
    with pytest.raises(InvalidSelector):
        VertexSelector(fam, "2n+5")
    with pytest.raises(InvalidSelector):
        VertexSelector(fam, "n-1")
    with pytest.raises(InvalidSelector):
        VertexSelector(ExplicitPeriodicFamily((gc.path_graph(2),), (gc.cycle_graph(5),)), "3")
    with pytest.raises(InvalidSelector):
        edge_set(StarFamily(UPPSeq.periodic([1, 3])), 0, 2)
    other = CycleFamily("n+3")
    with pytest.raises(InvalidSelector):
        edge_set(fam, VertexSelector(other, 0), 1)


def test_patched_family():
    fam = PATCHED[0]
    assert graph_at(fam, 0) == gc.empty_graph(1)
    assert graph_at(fam, 5) == gc.cycle_graph(8)
    p, q = size_sequences(fam)
    assert [p[n] for n in range(4)] == [1, 2, 5, 6]
    assert [q[n] for n in range(4)] == [0, 1, 5, 6]
    eul = property_set(fam, Criterion.EULERIAN)
    assert [n in eul for n in range(4)] == [True, False, True, True]
    assert fam.kind == "cycle"
