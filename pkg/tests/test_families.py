from fractions import Fraction

import numpy as np
import pytest

from conftest import eig_oracle
from spectough.canon import is_isomorphic
from spectough.graph import complete, empty, join, min_degree, union
from spectough.families import (
    FamilySpec,
    concentrated_parts,
    cut_family_graph,
    cut_family_quotient,
    extremal_scattering,
    extremal_tau_fractional,
    extremal_tau_integer,
    matches_split_join,
    parts_vectors,
    split_join,
    split_join_quotient,
    threshold_rho,
)
from spectough.spectral import a_alpha, power_iteration, quotient, spectral_radius


def test_spec_parse_and_validation():
    spec = FamilySpec.parse("s=2;parts=5,1,1,1")
    assert (spec.s, spec.parts, spec.n, spec.t) == (2, (5, 1, 1, 1), 10, 4)
    assert str(spec) == "s=2;parts=5,1,1,1"
    for bad in ("s=1", "parts=3", "s=1;parts=1,2", "s=-1;parts=2", "s=1;parts=0", "s=1 parts"):
        with pytest.raises(ValueError):
            FamilySpec.parse(bad)


def test_split_join_examples():
    g = split_join(FamilySpec(1, (3, 1, 1))).graph
    assert (g.n, g.m) == (6, 8)
    assert is_isomorphic(g, join(complete(1), union(complete(3), empty(2))))
    assert split_join(FamilySpec(0, (4,))).graph == complete(4)
    h = split_join(FamilySpec(2, (5, 1, 1, 1))).graph
    assert is_isomorphic(h, extremal_scattering(10, 2).graph)


def test_split_join_min_degree(rng):
    for _ in range(30):
        s = int(rng.integers(1, 4))
        parts = sorted(rng.integers(1, 6, int(rng.integers(1, 5))).tolist(), reverse=True)
        fg = split_join(FamilySpec(s, parts))
        assert min_degree(fg.graph) == s + parts[-1] - 1 or len(parts) == 1


def test_extremal_constructors():
    assert is_isomorphic(extremal_scattering(6, 1).graph, join(complete(1), union(complete(3), empty(2))))
    assert extremal_tau_integer(16, 3).spec == FamilySpec(2, (13, 1))
    assert extremal_tau_fractional(12, 2).spec == FamilySpec(1, (8, 1, 1, 1))


def test_extremal_warnings_and_errors():
    assert extremal_scattering(6, 1).warnings == ()
    assert extremal_scattering(8, 2).warnings  # below 4*delta+2 = 10
    assert extremal_tau_fractional(30, 1).warnings
    with pytest.raises(ValueError):
        extremal_scattering(3, 1)
    with pytest.raises(ValueError):
        extremal_tau_integer(10, 1)
    with pytest.raises(ValueError):
        extremal_tau_fractional(4, 2)


@pytest.mark.parametrize("n,delta", [(6, 1), (7, 1), (10, 2), (14, 2), (30, 3)])
def test_extremal_scattering_min_degree(n, delta):
    assert min_degree(extremal_scattering(n, delta).graph) == delta


def test_split_join_quotient_examples():
    spec = FamilySpec(1, (3, 1, 1))
    Q = split_join_quotient(spec, 0)
    np.testing.assert_allclose(Q.entries[0], [0, 3, 1, 1])
    full = quotient(a_alpha(split_join(spec).graph, 0), split_join(spec).blocks)
    assert full.is_equitable
    np.testing.assert_allclose(Q.entries, full.entries, atol=1e-12)
    Q = split_join_quotient(FamilySpec(2, (5, 1, 1, 1)), Fraction(1, 2))
    assert Q.entries[0, 0] == 5
    with pytest.raises(ValueError):
        split_join_quotient(FamilySpec(0, (3, 2)), 0)


def test_split_join_quotient_matches_assembled_matrix(rng):
    for _ in range(50):
        s = int(rng.integers(1, 5))
        parts = sorted(rng.integers(1, 8, int(rng.integers(1, 5))).tolist(), reverse=True)
        a = Fraction(int(rng.integers(0, 11)), 10)
        fg = split_join(FamilySpec(s, parts))
        M = a_alpha(fg.graph, a)
        np.testing.assert_allclose(fg.quotient(a).entries, quotient(M, fg.blocks).entries, atol=1e-12)
        assert abs(threshold_rho(fg, a) - eig_oracle(M)) <= 1e-8


def test_perron_vector_constant_on_blocks(rng):
    for _ in range(20):
        s = int(rng.integers(1, 4))
        parts = sorted(rng.integers(1, 6, int(rng.integers(2, 5))).tolist(), reverse=True)
        fg = split_join(FamilySpec(s, parts))
        v = spectral_radius(a_alpha(fg.graph, float(rng.random()))).vector
        for b in fg.blocks:
            idx = [i for i in range(fg.graph.n) if b >> i & 1]
            assert np.ptp(v[idx]) <= 1e-8


def test_cut_family_quotient_is_equitable_and_exact():
    # K_1 v (K_5 u 2K_2): the large clique has 10 - 1 - 2*2 = 5 vertices
    fg = cut_family_graph(10, 2, 1)
    Q = cut_family_quotient(10, 2, 1, 0)
    full = quotient(a_alpha(fg.graph, 0), fg.blocks)
    assert full.is_equitable
    np.testing.assert_allclose(Q.entries, full.entries, atol=1e-12)
    assert Q.entries[1, 1] == 1  # a K_2 vertex has one neighbour in its own block


def test_cut_family_root_matches_dense(rng):
    for n, delta, s in [(10, 2, 1), (14, 3, 1), (16, 3, 2), (20, 4, 3), (12, 3, 2)]:
        fg = cut_family_graph(n, delta, s)
        for a in (0, 0.25, 0.5, 0.75):
            assert abs(threshold_rho(fg, a) - eig_oracle(a_alpha(fg.graph, a))) <= 1e-8


def test_cut_family_perron_ratio():
    for n, delta, s in [(10, 2, 1), (16, 3, 2), (20, 4, 1)]:
        fg = cut_family_graph(n, delta, s)
        for a in (0.0, 0.3, 0.6):
            res = power_iteration(a_alpha(fg.graph, a), tol=1e-13)
            big, _, joinset = fg.blocks
            x1 = res.vector[(big & -big).bit_length() - 1]
            x3 = res.vector[(joinset & -joinset).bit_length() - 1]
            expect = (1 - a) * s / (res.radius - (n - (delta + 2 - s) * (s + 1) + a * s))
            assert abs(x1 / x3 - expect) <= 1e-7


def test_cut_family_preconditions():
    with pytest.raises(ValueError):
        cut_family_graph(10, 2, 2)
    with pytest.raises(ValueError):
        cut_family_quotient(5, 2, 1, 0)


def test_threshold_rho_examples():
    r = threshold_rho(extremal_scattering(6, 1), 0)
    assert 3 < r < 5
    assert threshold_rho(extremal_tau_integer(16, 3), Fraction(1, 2)) > 14
    assert abs(threshold_rho(split_join(FamilySpec(0, (7,))), 0.4) - 6) <= 1e-12
    assert abs(threshold_rho(split_join(FamilySpec(3, (4,))), 0.4) - 6) <= 1e-12


def test_threshold_rho_lower_bounds(rng):
    for _ in range(40):
        s = int(rng.integers(1, 4))
        parts = sorted(rng.integers(1, 8, int(rng.integers(2, 5))).tolist(), reverse=True)
        spec = FamilySpec(s, parts)
        a = float(rng.random())
        r = threshold_rho(split_join(spec), a)
        assert r > spec.n * a - s * a + s - 1
        assert r > parts[0] + s - 1


def test_parts_vectors():
    assert list(parts_vectors(5, 2)) == [(4, 1), (3, 2)]
    assert list(parts_vectors(6, 3, floor=2)) == [(2, 2, 2)]
    assert concentrated_parts(9, 3, 2) == (5, 2, 2)
    assert all(sum(p) == 12 and list(p) == sorted(p, reverse=True) for p in parts_vectors(12, 4))
    assert len(list(parts_vectors(12, 4))) == 15


def test_structural_certificate_agrees_with_isomorphism(rng):
    spec = FamilySpec(2, (5, 1, 1, 1))
    g = split_join(spec).graph
    perm = [int(p) for p in rng.permutation(g.n)]
    assert matches_split_join(g.relabel(perm), spec)
    assert not matches_split_join(g.add_edge(7, 8), spec)
    assert not matches_split_join(split_join(FamilySpec(2, (4, 2, 1, 1))).graph, spec)
    big = extremal_scattering(40, 3)
    assert matches_split_join(big.graph.relabel(list(range(39, -1, -1))), big.spec)
