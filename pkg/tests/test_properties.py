"""Property-based checks over random graphs and matrices."""
from fractions import Fraction

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from spectough.canon import canonical_form
from spectough.families import FamilySpec, split_join, threshold_rho
from spectough.graph import Graph, component_count, components, emit_graph6, is_connected, join, parse_graph6, union
from spectough.invariants import cut_scan
from spectough.spectral import a_alpha, edge_bound, power_iteration, quotient_eigen_largest, rho, spectral_radius


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def connected_graphs(draw, min_n=2, max_n=8):
    g = draw(graphs(min_n, max_n))
    # connect components with a path through their lowest vertices
    reps = [(c & -c).bit_length() - 1 for c in components(g)]
    edges = list(g.edges()) + list(zip(reps, reps[1:]))
    return Graph.from_edges(g.n, edges)


alphas = st.fractions(min_value=0, max_value=1, max_denominator=20)
# A_1 = D is diagonal and reducible, so Perron-vector statements need alpha < 1
irreducible_alphas = st.fractions(min_value=0, max_value=Fraction(19, 20), max_denominator=20)


@given(graphs(max_n=6), graphs(max_n=6))
def test_join_edge_count(g1, g2):
    assert join(g1, g2).m == g1.m + g2.m + g1.n * g2.n
    assert union(g1, g2).m == g1.m + g2.m


@given(graphs(max_n=20))
def test_graph6_round_trip(g):
    code = emit_graph6(g)
    assert parse_graph6(code) == g
    assert emit_graph6(parse_graph6(code)) == code


@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_form_permutation_invariant(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@given(graphs(max_n=8))
def test_connectivity_via_component_count(g):
    assert (component_count(g, 0) == 1) == is_connected(g)


@settings(max_examples=60)
@given(connected_graphs(min_n=3, max_n=9), irreducible_alphas, st.data())
def test_proper_subgraph_has_smaller_radius(g, a, data):
    # delete one edge, keeping the graph connected
    edges = list(g.edges())
    assume(len(edges) > g.n - 1)
    drop = data.draw(st.sampled_from(edges))
    h = Graph.from_edges(g.n, [e for e in edges if e != drop])
    assume(is_connected(h))
    assert rho(g, a) > rho(h, a) + 1e-9


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_nonnegative_domination(k, seed):
    r = np.random.default_rng(seed)
    M2 = r.random((k, k))
    M2 = M2 + M2.T
    P = r.random((k, k)) * (r.random((k, k)) < 0.5)
    M1 = M2 + (P + P.T)
    assert spectral_radius(M1).radius >= spectral_radius(M2).radius - 1e-12
    assert quotient_eigen_largest(M2 + P) >= quotient_eigen_largest(M2) - 1e-12


@settings(max_examples=80)
@given(connected_graphs(min_n=2, max_n=8), st.sampled_from([0.5, 0.6, 0.75, 0.9]))
def test_edge_bound(g, a):
    r = rho(g, a)
    bound = edge_bound(g.n, g.m, a)
    assert r <= bound + 1e-9
    if a > 0.5 and abs(bound - r) <= 1e-9:
        assert g.is_complete()


@settings(max_examples=50)
@given(connected_graphs(min_n=2, max_n=8), irreducible_alphas)
def test_dense_and_power_iteration_agree(g, a):
    M = a_alpha(g, a)
    assert abs(spectral_radius(M).radius - power_iteration(M).radius) <= 1e-8


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=8))
def test_twin_reduced_scan_equals_full_scan(g):
    assert cut_scan(g, True) == cut_scan(g, False)


@settings(max_examples=60)
@given(
    st.integers(1, 4),
    st.lists(st.integers(1, 7), min_size=1, max_size=5),
    alphas,
)
def test_family_quotient_root_matches_dense(s, parts, a):
    fg = split_join(FamilySpec(s, sorted(parts, reverse=True)))
    assert abs(threshold_rho(fg, a) - rho(fg.graph, a)) <= 1e-8


@settings(max_examples=40)
@given(
    st.integers(1, 4),
    st.lists(st.integers(1, 6), min_size=2, max_size=5),
    irreducible_alphas,
)
def test_perron_vector_constant_on_blocks(s, parts, a):
    fg = split_join(FamilySpec(s, sorted(parts, reverse=True)))
    v = spectral_radius(a_alpha(fg.graph, a)).vector
    for b in fg.blocks:
        idx = [i for i in range(fg.graph.n) if b >> i & 1]
        assert np.ptp(v[idx]) <= 1e-8
