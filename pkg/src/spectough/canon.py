"""Canonical labelling, isomorphism testing and small-graph enumeration.

Canonical forms come from individualisation-refinement: colour refinement
splits cells by neighbour counts, the search branches on the first smallest
non-singleton cell, and the largest adjacency code over all leaves wins.
Branches on twin vertices (equal open or closed neighbourhoods) are skipped;
swapping two twins is an automorphism that fixes the current partition, so
their subtrees produce identical codes.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from spectough.graph import Graph, emit_graph6, is_connected, parse_graph6, popcount

EXACT_MAX_N = 12
ENUM_MAX_N = 7


class TooLargeForExactMode(ValueError):
    pass


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        for w in range(len(cells)):
            wmask = 0
            for v in cells[w]:
                wmask |= 1 << v
            new_cells = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(popcount(adj[v] & wmask), []).append(v)
                if len(groups) > 1:
                    split = True
                    new_cells.extend(groups[key] for key in sorted(groups))
                else:
                    new_cells.append(cell)
            if split:
                cells = new_cells
                break
        else:
            return cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    # bit order follows graph6: column j, rows i < j
    code = 0
    for j in range(1, len(order)):
        nb = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (nb >> order[i] & 1)
    return code


def _twin_representatives(adj: tuple[int, ...], cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        if not any((adj[v] & ~(1 << r)) == (adj[r] & ~(1 << v)) for r in reps):
            reps.append(v)
    return reps


def _search(adj: tuple[int, ...], cells: list[list[int]]) -> tuple[int, list[int]]:
    cells = _refine(adj, cells)
    target = None
    for idx, cell in enumerate(cells):
        if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
            target = idx
    if target is None:
        order = [cell[0] for cell in cells]
        return _code(adj, order), order
    cell = cells[target]
    best: tuple[int, list[int]] | None = None
    for v in _twin_representatives(adj, cell):
        rest = [u for u in cell if u != v]
        child = cells[:target] + [[v], rest] + cells[target + 1 :]
        got = _search(adj, child)
        if best is None or got[0] > best[0]:
            best = got
    assert best is not None
    return best


def canonical_labeling(g: Graph) -> list[int]:
    """``order[i]`` is the original vertex placed at canonical position ``i``."""
    if g.n > EXACT_MAX_N:
        raise TooLargeForExactMode(f"exact canonical labelling capped at n <= {EXACT_MAX_N}")
    return _search(g.adj, [list(range(g.n))])[1]


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonically relabelled graph; equal iff isomorphic."""
    order = canonical_labeling(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return emit_graph6(g.relabel(perm))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[str, ...]:
    if n == 1:
        return (canonical_form(Graph(1, (0,))),)
    seen: set[str] = set()
    for code in _all_graphs(n - 1):
        h = parse_graph6(code)
        for nbrs in range(1 << (n - 1)):
            g = Graph(n, tuple(nb | ((nbrs >> v & 1) << (n - 1)) for v, nb in enumerate(h.adj)) + (nbrs,))
            seen.add(canonical_form(g))
    return tuple(sorted(seen))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of all graphs on ``n`` vertices."""
    if not 1 <= n <= ENUM_MAX_N:
        raise ValueError(f"built-in enumeration supports 1 <= n <= {ENUM_MAX_N}; use a graph6 file")
    for code in _all_graphs(n):
        yield parse_graph6(code)


def enumerate_connected(n: int) -> Iterator[Graph]:
    for g in enumerate_graphs(n):
        if is_connected(g):
            yield g


def read_graph6_lines(text: str) -> Iterator[Graph]:
    for line in text.splitlines():
        line = line.strip()
        if line:
            yield parse_graph6(line)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    adj = [0] * n
    draws = rng.random(n * (n - 1) // 2)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[k] < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    return Graph(n, tuple(adj))


def random_connected_graph(n: int, rng: np.random.Generator, p: float | None = None) -> Graph:
    """Erdos-Renyi sample conditioned on connectivity (rejection)."""
    while True:
        q = rng.uniform(0.2, 0.9) if p is None else p
        g = random_graph(n, q, rng)
        if is_connected(g):
            return g
