import networkx as nx
import pytest

from conftest import to_nx
from spectough.graph import (
    Graph,
    GraphSizeError,
    MalformedInput,
    complete,
    component_count,
    components,
    cycle,
    disjoint_copies,
    emit_edge_list,
    emit_graph6,
    empty,
    induced_subgraph,
    is_connected,
    join,
    max_degree,
    min_degree,
    parse_edge_list,
    parse_graph6,
    path,
    star,
    union,
    vertex_set,
)


def test_complete_small():
    assert complete(1).n == 1 and complete(1).m == 0
    k4 = complete(4)
    assert k4.m == 6 and min_degree(k4) == max_degree(k4) == 3
    k5 = complete(5)
    assert min_degree(k5) == 4 and is_connected(k5)


@pytest.mark.parametrize("n", [0, 65])
def test_complete_rejects_bad_size(n):
    with pytest.raises(GraphSizeError):
        complete(n)


def test_union_counts():
    g = union(complete(2), complete(3))
    assert (g.n, g.m, component_count(g)) == (5, 4, 2)
    g = union(complete(1), complete(1))
    assert (g.n, g.m) == (2, 0)
    g = union(path(4), cycle(4))
    assert (g.n, g.m, component_count(g)) == (8, 7, 2)


def test_union_overflow():
    with pytest.raises(GraphSizeError):
        union(complete(40), complete(30))
    with pytest.raises(GraphSizeError):
        join(complete(40), complete(30))


def test_join_examples():
    p3 = join(complete(1), union(complete(1), complete(1)))
    assert p3.m == 2 and nx.is_isomorphic(to_nx(p3), nx.path_graph(3))
    k5 = join(complete(2), complete(3))
    assert k5.is_complete() and k5.n == 5
    h = join(complete(1), union(complete(3), empty(2)))
    assert (h.n, h.m) == (6, 8)


def test_join_labels_first_operand_first():
    g = join(complete(2), empty(3))
    assert g.adj[0] == 0b11110 and g.adj[1] == 0b11101
    assert all(g.adj[v] == 0b00011 for v in range(2, 5))


def test_component_count_examples():
    assert component_count(path(4), vertex_set([1])) == 2
    assert component_count(complete(5), vertex_set([0, 2, 4])) == 1
    assert component_count(star(3), vertex_set([0])) == 3


def test_component_count_rejects_full_removal():
    with pytest.raises(ValueError):
        component_count(complete(3), 0b111)


def test_components_masks_match_networkx():
    g = union(path(3), union(complete(2), complete(1)))
    masks = components(g)
    assert masks == [0b000111, 0b011000, 0b100000]
    assert len(masks) == nx.number_connected_components(to_nx(g))


def test_degree_and_connectivity():
    assert min_degree(star(3)) == 1
    assert not is_connected(union(complete(2), complete(2)))
    h = join(complete(2), union(complete(10 - 2 * 2 - 1), empty(3)))
    assert h.n == 10 and min_degree(h) == 2


def test_disjoint_copies_and_induced():
    g = disjoint_copies(complete(3), 3)
    assert (g.n, g.m, component_count(g)) == (9, 9, 3)
    sub = induced_subgraph(cycle(5), vertex_set([0, 1, 2]))
    assert sub.m == 2


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0b00))  # loop
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_graph6_known_values():
    assert emit_graph6(complete(3)) == "Bw"
    assert emit_graph6(parse_graph6("D?{")) == "D?{"
    assert parse_graph6("D?{").n == 5
    assert parse_graph6(">>graph6<<Bw") == complete(3)


def test_graph6_matches_networkx_encoder():
    for g in (path(7), cycle(9), star(12), complete(63), join(complete(2), empty(62))):
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert emit_graph6(g) == ref
        assert parse_graph6(ref) == g


@pytest.mark.parametrize("bad", ["", "Bx", "B", "B~~", "C~~~", "~??", "B\x7f"])
def test_graph6_malformed(bad):
    with pytest.raises(MalformedInput):
        parse_graph6(bad)


def test_edge_list_round_trip():
    g = join(complete(1), union(complete(3), empty(2)))
    assert parse_edge_list(emit_edge_list(g)) == g
    assert parse_edge_list("3\n0 1\n# comment\n1 2\n") == path(3)


@pytest.mark.parametrize("bad", ["", "x", "3\n0", "3\n0 5", "2\n1 1"])
def test_edge_list_malformed(bad):
    with pytest.raises(MalformedInput):
        parse_edge_list(bad)
