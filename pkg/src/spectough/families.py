"""Join-of-cliques families ``K_s v (K_{n_1} u ... u K_{n_t})`` and their quotient matrices.

Family graphs carry their block partition, so quotients are written down in
closed form instead of being inferred from the full matrix.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from spectough.graph import (
    MAX_VERTICES,
    Graph,
    GraphSizeError,
    complete,
    components,
    induced_subgraph,
    join,
    popcount,
    union,
)
from spectough.spectral import (
    QuotientMatrix,
    as_fraction,
    quotient_eigen_largest,
)


@dataclass(frozen=True)
class FamilySpec:
    s: int
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if self.s < 0:
            raise ValueError("s must be >= 0")
        if not self.parts:
            raise ValueError("at least one clique part is required")
        if any(p < 1 for p in self.parts):
            raise ValueError("clique parts must be >= 1")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be non-increasing")
        if self.n > MAX_VERTICES:
            raise GraphSizeError(f"family has {self.n} > {MAX_VERTICES} vertices")

    @property
    def n(self) -> int:
        return self.s + sum(self.parts)

    @property
    def t(self) -> int:
        return len(self.parts)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"s=2;parts=5,1,1,1"``."""
        fields = _parse_fields(text)
        try:
            return cls(int(fields["s"]), tuple(int(p) for p in fields["parts"].split(",")))
        except KeyError as exc:
            raise ValueError(f"family spec {text!r} is missing {exc}") from None

    def __str__(self) -> str:
        return f"s={self.s};parts={','.join(map(str, self.parts))}"


def _parse_fields(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (x.strip() for x in re.split(r"[;\s]+", text))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


@dataclass(frozen=True)
class FamilyGraph:
    graph: Graph
    blocks: tuple[int, ...]
    kind: str
    spec: FamilySpec | None = None
    params: tuple[tuple[str, int], ...] = ()
    warnings: tuple[str, ...] = ()

    def quotient(self, alpha) -> QuotientMatrix:
        if self.kind == "cut_family":
            p = dict(self.params)
            return cut_family_quotient(p["n"], p["delta"], p["s"], alpha)
        if self.spec is None:
            raise ValueError("family graph has no block metadata")
        return family_quotient(self.spec, alpha)


def _clique_union(parts: Sequence[int]) -> Graph:
    g = complete(parts[0])
    for p in parts[1:]:
        g = union(g, complete(p))
    return g


def _join_of_cliques(s: int, parts: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    body = _clique_union(parts)
    g = join(complete(s), body) if s else body
    blocks = [((1 << s) - 1)] if s else []
    off = s
    for p in parts:
        blocks.append(((1 << p) - 1) << off)
        off += p
    return g, tuple(blocks)


def split_join(spec: FamilySpec) -> FamilyGraph:
    """``K_s v (K_{n_1} u ... u K_{n_t})``, join block labelled first, then each clique."""
    g, blocks = _join_of_cliques(spec.s, spec.parts)
    return FamilyGraph(g, blocks, "split_join", spec)


def extremal_scattering(n: int, delta: int) -> FamilyGraph:
    """``K_delta v (K_{n-2delta-1} u (delta+1) K_1)``: the sharp graph for the ``s(G) <= 1`` bound."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    big = n - 2 * delta - 1
    if big < 1:
        raise ValueError(f"n={n} too small for delta={delta}: clique K_{big} would be empty")
    warnings = []
    if n < max(4 * delta + 2, delta**3 + delta):
        warnings.append(f"n={n} below max(4*delta+2, delta^3+delta)={max(4 * delta + 2, delta**3 + delta)}")
    spec = FamilySpec(delta, (big,) + (1,) * (delta + 1))
    g, blocks = _join_of_cliques(spec.s, spec.parts)
    return FamilyGraph(g, blocks, "split_join", spec, (("n", n), ("delta", delta)), tuple(warnings))


def extremal_tau_integer(n: int, tau: int) -> FamilyGraph:
    """``K_{tau-1} v (K_{n-tau} u K_1)``: sharp graph for integer tau >= 2."""
    if int(tau) != tau or tau < 2:
        raise ValueError("tau must be an integer >= 2 (K_{tau-1} would be empty)")
    if n - tau < 1:
        raise ValueError(f"n={n} too small for tau={tau}")
    warnings = []
    if n < 4 * tau * tau + 5 * tau + 1:
        warnings.append(f"n={n} below 4*tau^2+5*tau+1={4 * tau * tau + 5 * tau + 1}")
    spec = FamilySpec(tau - 1, (n - tau, 1))
    g, blocks = _join_of_cliques(spec.s, spec.parts)
    return FamilyGraph(g, blocks, "split_join", spec, (("n", n), ("tau", tau)), tuple(warnings))


def extremal_tau_fractional(n: int, b: int) -> FamilyGraph:
    """``K_1 v (K_{n-b-2} u (b+1) K_1)``: sharp graph for tau = 1/b.

    ``b >= 2`` is the general-alpha regime; ``b = 1`` is accepted but only
    covered by the alpha = 1/2 statement, which is recorded as a warning.
    """
    if int(b) != b or b < 1:
        raise ValueError("b = 1/tau must be a positive integer")
    big = n - b - 2
    if big < 1:
        raise ValueError(f"n={n} too small for b={b}")
    warnings = []
    if b == 1:
        warnings.append("b=1 lies outside the general-alpha regime (b >= 2); alpha=1/2 only")
    tau = Fraction(1, b)
    bound = 2 * tau * tau + 5 * tau + 2 / tau + 8
    if n < bound:
        warnings.append(f"n={n} below 2tau^2+5tau+2/tau+8={float(bound):.6g}")
    spec = FamilySpec(1, (big,) + (1,) * (b + 1))
    g, blocks = _join_of_cliques(spec.s, spec.parts)
    return FamilyGraph(g, blocks, "split_join", spec, (("n", n), ("b", b)), tuple(warnings))


# ----------------------------------------------------------------- quotients

def _exact_quotient(rows: list[list[Fraction]], sizes: Sequence[int], blocks: Sequence[int]) -> QuotientMatrix:
    B = np.array([[float(x) for x in row] for row in rows])
    return QuotientMatrix(B, tuple(sizes), np.ones(B.shape, dtype=bool), tuple(blocks))


def family_quotient(spec: FamilySpec, alpha) -> QuotientMatrix:
    """Equitable quotient of A_alpha over the family blocks; handles ``s = 0`` too."""
    if spec.s >= 1:
        return split_join_quotient(spec, alpha)
    _, blocks = _join_of_cliques(0, spec.parts)
    rows = [[Fraction(0)] * spec.t for _ in range(spec.t)]
    for i, p in enumerate(spec.parts):
        rows[i][i] = Fraction(p - 1)
    return _exact_quotient(rows, spec.parts, blocks)


def split_join_quotient(spec: FamilySpec, alpha) -> QuotientMatrix:
    """The ``(t+1) x (t+1)`` arrowhead quotient of A_alpha for ``s >= 1``.

    Corner ``n*alpha - s*alpha + s - 1``, first row ``n_j (1 - alpha)``,
    first column ``s (1 - alpha)``, diagonal ``s*alpha + n_j - 1``.
    """
    if spec.s < 1:
        raise ValueError("split_join_quotient needs s >= 1")
    a = as_fraction(alpha)
    s, n, t = spec.s, spec.n, spec.t
    rows = [[Fraction(0)] * (t + 1) for _ in range(t + 1)]
    rows[0][0] = n * a - s * a + s - 1
    for j, nj in enumerate(spec.parts, start=1):
        rows[0][j] = nj * (1 - a)
        rows[j][0] = s * (1 - a)
        rows[j][j] = s * a + nj - 1
    _, blocks = _join_of_cliques(s, spec.parts)
    return _exact_quotient(rows, (s,) + spec.parts, blocks)


def _cut_family_sizes(n: int, delta: int, s: int) -> tuple[int, int]:
    if not 1 <= s < delta:
        raise ValueError(f"cut family needs 1 <= s < delta, got s={s}, delta={delta}")
    big = n - s - (delta + 1 - s) * (s + 1)
    if big < 1:
        raise ValueError(f"n={n} too small: large clique would have {big} vertices")
    return big, delta + 1 - s


def cut_family_graph(n: int, delta: int, s: int) -> FamilyGraph:
    """``K_s v (K_{n-s-(delta+1-s)(s+1)} u (s+1) K_{delta+1-s})`` with three coarse blocks.

    Blocks are ordered (large clique, small cliques, join set).
    """
    big, small = _cut_family_sizes(n, delta, s)
    g, fine = _join_of_cliques(s, [big] + [small] * (s + 1))
    smalls = 0
    for b in fine[2:]:
        smalls |= b
    return FamilyGraph(
        g, (fine[1], smalls, fine[0]), "cut_family", None, (("n", n), ("delta", delta), ("s", s))
    )


def cut_family_quotient(n: int, delta: int, s: int, alpha) -> QuotientMatrix:
    """3x3 equitable quotient of A_alpha for :func:`cut_family_graph`.

    A vertex in a small clique has degree ``delta`` and ``delta - s``
    neighbours inside its own block, so its diagonal entry is
    ``delta - s + alpha*s``.
    """
    big, small = _cut_family_sizes(n, delta, s)
    a = as_fraction(alpha)
    rows = [
        [n - (delta + 2 - s) * (s + 1) + a * s, Fraction(0), (1 - a) * s],
        [Fraction(0), delta - s + a * s, (1 - a) * s],
        [(1 - a) * big, (1 - a) * small * (s + 1), a * (n - s) + s - 1],
    ]
    return _exact_quotient(rows, (big, small * (s + 1), s), cut_family_graph(n, delta, s).blocks)


def threshold_rho(fg: FamilyGraph, alpha) -> float:
    """A_alpha spectral radius of a family graph, computed from its small quotient."""
    return quotient_eigen_largest(fg.quotient(alpha))


# ----------------------------------------------------------------- parts vectors

def parts_vectors(total: int, t: int, floor: int = 1) -> Iterator[tuple[int, ...]]:
    """Non-increasing ``t``-tuples of integers ``>= floor`` summing to ``total``."""

    def rec(remaining: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        hi = min(cap, remaining - floor * (slots - 1))
        for first in range(hi, floor - 1, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(total, t, total)


def concentrated_parts(total: int, t: int, floor: int = 1) -> tuple[int, ...]:
    """The parts vector with all surplus in the first clique: ``(total - floor(t-1), floor, ...)``."""
    head = total - floor * (t - 1)
    if head < floor:
        raise ValueError("no parts vector with that floor")
    return (head,) + (floor,) * (t - 1)


def matches_split_join(g: Graph, spec: FamilySpec) -> bool:
    """Exact isomorphism test against a join-of-cliques family.

    For ``t >= 2`` the join vertices are exactly the universal vertices, and
    removing them must leave cliques with the prescribed sizes.
    """
    if g.n != spec.n or g.m != _family_edges(spec):
        return False
    if spec.t == 1:
        return g.is_complete()
    universal = [v for v, d in enumerate(g.degrees()) if d == g.n - 1]
    if len(universal) != spec.s:
        return False
    rest = g.full_mask
    for v in universal:
        rest &= ~(1 << v)
    sizes = []
    for comp in components(g, g.full_mask & ~rest):
        k = popcount(comp)
        if not induced_subgraph(g, comp).is_complete():
            return False
        sizes.append(k)
    return tuple(sorted(sizes, reverse=True)) == spec.parts


def _family_edges(spec: FamilySpec) -> int:
    s = spec.s
    return s * (s - 1) // 2 + s * sum(spec.parts) + sum(p * (p - 1) // 2 for p in spec.parts)

