"""Simple undirected graphs on at most 64 vertices, stored as neighbour bitmasks.

A vertex set is a plain ``int`` bitmask over the host graph's vertices (bit
``v`` set iff ``v`` is in the set).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from spectough import kernels

MAX_VERTICES = 64


class MalformedInput(ValueError):
    """Raised for unparseable graph6 / edge-list text."""


class GraphSizeError(ValueError):
    pass


def vertex_set(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphSizeError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has neighbours outside the graph")
            if nb >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in members(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 1 <= n <= MAX_VERTICES:
            raise GraphSizeError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        return sum(popcount(nb) for nb in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degrees(self) -> list[int]:
        return [popcount(nb) for nb in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in members(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1.0
        return A

    def adj_array(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.uint64)

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, [*self.edges(), (u, v)])

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, g6={emit_graph6(self)!r})"


# ----------------------------------------------------------------- constructors

def complete(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphSizeError(f"K_n needs 1 <= n <= {MAX_VERTICES}, got {n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    """``n`` isolated vertices."""
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; ``g1`` keeps labels ``0..n1-1``, ``g2`` is shifted."""
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphSizeError(f"union has {n} > {MAX_VERTICES} vertices")
    return Graph(n, g1.adj + tuple(nb << g1.n for nb in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides; ``g1`` labelled first."""
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphSizeError(f"join has {n} > {MAX_VERTICES} vertices")
    left = (1 << g1.n) - 1
    right = ((1 << g2.n) - 1) << g1.n
    return Graph(
        n,
        tuple(nb | right for nb in g1.adj) + tuple((nb << g1.n) | left for nb in g2.adj),
    )


def disjoint_copies(g: Graph, k: int) -> Graph:
    out = g
    for _ in range(k - 1):
        out = union(out, g)
    return out


# ----------------------------------------------------------------- queries

def component_count(g: Graph, removed: int = 0) -> int:
    """Number of components of ``g - removed``; ``removed`` must be a proper subset."""
    if removed & ~g.full_mask:
        raise ValueError("removed set has vertices outside the graph")
    if removed == g.full_mask:
        raise ValueError("cannot remove every vertex")
    return kernels.components(g.adj_array(), g.n, removed)


def components(g: Graph, removed: int = 0) -> list[int]:
    """Vertex masks of the components of ``g - removed``, ordered by lowest vertex."""
    remaining = g.full_mask & ~removed
    out = []
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= g.adj[v]
            frontier = nxt & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return component_count(g) == 1


def min_degree(g: Graph) -> int:
    return min(g.degrees())


def max_degree(g: Graph) -> int:
    return max(g.degrees())


def induced_subgraph(g: Graph, keep: int) -> Graph:
    verts = members(keep)
    index = {v: i for i, v in enumerate(verts)}
    return Graph.from_edges(
        len(verts), ((index[u], index[v]) for u, v in g.edges() if u in index and v in index)
    )


# ----------------------------------------------------------------- graph6

def _size_bytes(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))


def emit_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            bits.append(col >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _size_bytes(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise MalformedInput("empty graph6 string")
    codes = [ord(ch) - 63 for ch in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise MalformedInput(f"graph6 character out of range in {text!r}")
    if codes[0] == 63:
        if len(codes) < 4:
            raise MalformedInput("truncated graph6 size header")
        if codes[1] == 63:
            raise MalformedInput("graph6 8-byte size headers are not supported")
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        if n <= 62:
            raise MalformedInput("non-minimal graph6 size header")
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]
    if not 1 <= n <= MAX_VERTICES:
        raise MalformedInput(f"graph6 vertex count {n} outside 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise MalformedInput(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = [c >> (5 - k) & 1 for c in body for k in range(6)]
    if any(bits[nbits:]):
        raise MalformedInput("nonzero graph6 padding bits")
    adj = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
    return Graph(n, tuple(adj))


# ----------------------------------------------------------------- edge lists

def parse_edge_list(text: str) -> Graph:
    """First non-blank line is ``n``; each further line is ``u v`` (0-indexed)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MalformedInput("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise MalformedInput(f"bad edge-list line: {exc}") from exc
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def emit_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n), *(f"{u} {v}" for u, v in g.edges())]) + "\n"
