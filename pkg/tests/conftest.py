"""Shared brute-force oracles, independent of the package's search code."""
from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_invariants(g):
    """(s, t, tau) by plain enumeration over all vertex subsets with networkx components.

    Returns None for each value when no subset leaves more than one component.
    """
    h = to_nx(g)
    best_s = best_t = best_tau = None
    for k in range(g.n):
        for S in itertools.combinations(range(g.n), k):
            rest = h.subgraph(set(range(g.n)) - set(S))
            c = nx.number_connected_components(rest)
            if c <= 1:
                continue
            s = c - k
            t = Fraction(k, c)
            u = Fraction(k, c - 1)
            best_s = s if best_s is None else max(best_s, s)
            best_t = t if best_t is None else min(best_t, t)
            best_tau = u if best_tau is None else min(best_tau, u)
    return best_s, best_t, best_tau


def eig_oracle(M) -> float:
    return float(np.linalg.eigvalsh(np.asarray(M, dtype=float))[-1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
