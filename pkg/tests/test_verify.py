from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from conftest import eig_oracle
from spectough.families import extremal_scattering, extremal_tau_fractional, extremal_tau_integer
from spectough.graph import complete, is_connected, min_degree, parse_graph6, path, union
from spectough.spectral import a_alpha
from spectough.verify import (
    audit_equivalences,
    check_scattering,
    check_tau_fractional,
    check_tau_integer,
    eval_f_c,
    eval_g_s,
    f_endpoint_gap,
    g_endpoint_gap,
    random_min_degree_graph,
    search_scattering,
    sweep_parts_monotonicity,
    sweep_rows,
    tau_fractional_regime,
    tau_integer_regime,
)

ALPHAS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


@pytest.mark.parametrize("alpha", ALPHAS)
def test_check_scattering_on_extremal_graph(alpha):
    v = check_scattering(extremal_scattering(6, 1).graph, alpha)
    assert v.hypothesis_holds and not v.conclusion_holds and v.is_extremal and v.respected
    assert v.values["scattering"] == 2


def test_check_scattering_on_complete_and_path():
    v = check_scattering(complete(6), 0)
    assert v.conclusion_holds and v.values["scattering"] is None and v.respected
    v = check_scattering(path(6), 0)
    threshold = eig_oracle(a_alpha(extremal_scattering(6, 1).graph, 0))
    assert abs(v.values["rho"] - eig_oracle(a_alpha(path(6), 0))) <= 1e-10
    assert abs(v.values["threshold"] - threshold) <= 1e-9
    assert not v.hypothesis_holds and v.respected
    with pytest.raises(ValueError):
        check_scattering(union(complete(3), complete(3)), 0)


def test_check_scattering_is_deterministic():
    g = parse_graph6("E?^w")
    assert check_scattering(g, "3/4").to_dict() == check_scattering(g, "3/4").to_dict()


def test_scattering_counterexample_at_six_vertices():
    # pendant vertex on K_2 v 4K_1 minus one edge: s = 2, not the extremal graph,
    # and its radius ties (alpha = 1/2) or beats (alpha = 3/4) the threshold
    g = parse_graph6("E?^w")
    for a in ("1/2", "3/4"):
        v = check_scattering(g, a)
        assert v.hypothesis_holds and not v.conclusion_holds and not v.is_extremal
        assert not v.respected
    v = check_scattering(g, "1/4")
    assert not v.hypothesis_holds


def test_counterexample_radius_gap_exact():
    x = sp.symbols("x")

    def radius(graph, a):
        A = sp.Matrix(graph.adjacency_matrix().astype(int).tolist())
        D = sp.diag(*[sum(A.row(i)) for i in range(graph.n)])
        M = a * D + (1 - a) * A
        return max(sp.Poly(M.charpoly(x).as_expr(), x).real_roots()), M.charpoly(x).as_expr()

    g = parse_graph6("E?^w")
    h = extremal_scattering(6, 1).graph
    rg, pg = radius(g, sp.Rational(1, 2))
    rh, ph = radius(h, sp.Rational(1, 2))
    assert sp.expand(pg - ph) == 0
    rg, _ = radius(g, sp.Rational(3, 4))
    rh, _ = radius(h, sp.Rational(3, 4))
    assert float(rg.evalf(30) - rh.evalf(30)) > 0.019


@pytest.mark.parametrize("alpha", ["1/2", "5/8"])
def test_check_tau_integer_on_extremal(alpha):
    v = check_tau_integer(extremal_tau_integer(40, 2).graph, alpha, 2)
    assert v.regime_ok and v.hypothesis_holds and not v.conclusion_holds and v.is_extremal
    assert v.values["tau"] == "1/1"


def test_check_tau_fractional_on_extremal():
    v = check_tau_fractional(extremal_tau_fractional(30, 2).graph, "1/2", 2)
    assert v.regime_ok and v.hypothesis_holds and v.is_extremal and not v.conclusion_holds
    assert v.values["tau"] == "1/3"


def test_check_tau_on_complete_graph():
    v = check_tau_integer(complete(40), "1/2", 2)
    assert v.conclusion_holds and v.respected
    v = check_tau_fractional(complete(30), "1/2", 2)
    assert v.conclusion_holds and v.respected


def test_tau_regimes():
    assert tau_integer_regime(40, "1/2", 2)[0]
    assert tau_integer_regime(27, "1/2", 2)[0]
    assert not tau_integer_regime(26, "1/2", 2)[0]
    assert not tau_integer_regime(40, "3/4", 2)[0]
    assert not tau_integer_regime(40, "1/2", 1)[0]
    assert tau_fractional_regime(30, "1/2", 2)[0]
    assert not tau_fractional_regime(30, "9/10", 2)[0]
    ok, notes = tau_fractional_regime(30, "1/2", 1)
    assert ok and notes
    assert not tau_fractional_regime(30, "3/5", 1)[0]


def test_regime_violation_reported_not_raised():
    v = check_tau_integer(extremal_tau_integer(40, 2).graph, "1/4", 2)
    assert not v.regime_ok and not v.hypothesis_holds and v.notes


def test_audit_small():
    rep = audit_equivalences(5)
    assert rep.examined_by_n[5] == 20 and not rep.violations
    rep6 = audit_equivalences(6)
    assert rep6.examined_by_n[6] == 111 and not rep6.violations


def test_search_counts_and_determinism():
    rep = search_scattering(6, 1, ALPHAS)
    assert rep.examined == 51
    assert sorted({a for _, a, _ in rep.violations}) == ["1/2", "3/4"]
    assert rep.violations_graph6() == "E?^w\n"
    rep2 = search_scattering(6, 1, ALPHAS, jobs=2)
    assert rep.to_json() == rep2.to_json()


def test_random_search_replays_with_seed():
    a = search_scattering(12, 2, ALPHAS, mode="random", count=40, seed=7)
    b = search_scattering(12, 2, ALPHAS, mode="random", count=40, seed=7, jobs=2)
    assert a.to_json() == b.to_json() and a.seed == 7
    assert not a.violations


def test_random_min_degree_graph_properties():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_min_degree_graph(11, 2, rng)
        assert min_degree(g) == 2 and is_connected(g)


def test_search_rejects_unknown_mode():
    with pytest.raises(ValueError):
        search_scattering(6, 1, ALPHAS, mode="bogus")


def test_sweep_small():
    rows = sweep_rows(8, 2, 3, ["0", "1/2"])
    assert max(abs(r.rho_quotient - r.rho_dense) for r in rows) <= 1e-8
    rep = sweep_parts_monotonicity(10, 2, 3, 2, ALPHAS)
    assert rep.examined > 0 and not rep.violations


def test_proof_polynomials_against_sympy():
    n, t, c, b, s = sp.symbols("n t c b s")
    f = eval_f_c(n, t, c)
    gap = sp.simplify(f.subs(c, 3) - f.subs(c, n / (t + 1) + 1) - (n - 2 * t - 2) * (n - 4 * t**2 - 5 * t - 1) / (t + 1) ** 2)
    assert gap == 0
    g = eval_g_s(n, b, s)
    closed = (n - 2 * b - 4) * ((n - 7) * b**2 - 2 * b**3 - 5 * b - 2) / (b + 1) ** 2
    assert sp.simplify(g.subs(s, 2) - g.subs(s, (n - 2) / (b + 1)) - closed) == 0


def test_proof_polynomial_examples():
    assert f_endpoint_gap(4 * 4 + 10 + 1, 2) == 0
    n = 2 * Fraction(1, 4) + 5 * Fraction(1, 2) + 4 + 8
    assert g_endpoint_gap(int(n) + 1, 2) >= 0
    assert eval_f_c(30, 2, 3) == 5 * 9 - (60 + 8 + 3) * 3 + 900 + 30 + 4 + 2


def test_f_maximum_at_left_endpoint():
    for t in (2, 3, 4):
        for n in range(4 * t * t + 5 * t + 1, 201):
            hi = n // (t + 1) + 1
            vals = [eval_f_c(n, t, c) for c in range(3, hi + 1)]
            assert max(vals) == vals[0]


def test_g_maximum_at_left_endpoint():
    for b in (2, 3, 4):
        tau = Fraction(1, b)
        start = int(2 * tau * tau + 5 * tau + 2 / tau + 8) + 1
        for n in range(start, 201):
            hi = (n - 2) // (b + 1)
            vals = [eval_g_s(n, b, s) for s in range(2, hi + 1)]
            if vals:
                assert max(vals) == vals[0]
