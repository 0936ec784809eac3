"""Exact scattering number, toughness and tau-toughness by cut-set enumeration.

All three come out of one scan over vertex subsets ``S`` with
``c(G - S) > 1``. Before scanning, vertices are grouped into twin classes
(equal open or equal closed neighbourhoods). Any permutation inside a twin
class is an automorphism, so only the count taken from each class matters
and the scan visits ``prod(|class| + 1)`` representatives instead of ``2^n``.
Representatives take the lowest-numbered vertices of each class, which
also makes them the numerically smallest masks in their orbits, so the
smallest-mask tie-break agrees with a full enumeration.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from spectough import kernels
from spectough.graph import Graph, is_connected, members

INF = math.inf
MAX_SCAN = 1 << 28

Value = Fraction | float  # float only for +inf


def twin_classes(g: Graph) -> list[list[int]]:
    """Partition vertices into true-twin classes, then false-twin classes among the rest."""
    closed: dict[int, list[int]] = {}
    for v in range(g.n):
        closed.setdefault(g.adj[v] | (1 << v), []).append(v)
    classes = [vs for vs in closed.values() if len(vs) > 1]
    rest = [vs[0] for vs in closed.values() if len(vs) == 1]
    opened: dict[int, list[int]] = {}
    for v in rest:
        opened.setdefault(g.adj[v], []).append(v)
    classes.extend(opened.values())
    return sorted(classes)


@dataclass(frozen=True)
class CutScan:
    found: bool
    scattering: int
    scattering_witness: int
    toughness: Fraction
    toughness_witness: int
    tau: Fraction
    tau_witness: int


@lru_cache(maxsize=4096)
def cut_scan(g: Graph, reduce_twins: bool = True) -> CutScan:
    classes = twin_classes(g) if reduce_twins else [[v] for v in range(g.n)]
    space = math.prod(len(c) + 1 for c in classes)
    if space > MAX_SCAN:
        raise ValueError(f"cut search space {space} exceeds {MAX_SCAN}")
    offsets = [0]
    prefix: list[int] = []
    for cls in classes:
        mask = 0
        prefix.append(0)
        for v in sorted(cls):
            mask |= 1 << v
            prefix.append(mask)
        offsets.append(len(prefix))
    found, s, s_mask, t_num, t_den, t_mask, u_num, u_den, u_mask = kernels.scan_cuts(
        g.adj_array(), g.n, np.array(offsets, dtype=np.int64), np.array(prefix, dtype=np.uint64)
    )
    return CutScan(
        bool(found),
        int(s),
        int(s_mask),
        Fraction(int(t_num), int(t_den)),
        int(t_mask),
        Fraction(int(u_num), int(u_den)),
        int(u_mask),
    )


def scattering_number(g: Graph) -> int | None:
    """``max c(G-S) - |S|`` over ``S`` with ``c(G-S) > 1``; ``None`` if no such ``S``."""
    scan = cut_scan(g)
    return scan.scattering if scan.found else None


def toughness(g: Graph) -> Value:
    """``min |S| / c(G-S)`` over cuts; ``inf`` for complete graphs."""
    if not is_connected(g):
        raise ValueError("toughness is defined for connected graphs")
    scan = cut_scan(g)
    return scan.toughness if scan.found else INF


def tau(g: Graph) -> Fraction | None:
    """``min |S| / (c(G-S) - 1)`` over cuts; ``None`` for complete graphs."""
    if not is_connected(g):
        raise ValueError("tau is defined for connected graphs")
    scan = cut_scan(g)
    return scan.tau if scan.found else None


def is_tau_tough(g: Graph, threshold) -> bool:
    value = tau(g)
    return value is None or value >= Fraction(threshold)


def is_t_tough(g: Graph, threshold) -> bool:
    return toughness(g) >= Fraction(threshold)


def format_value(x: Value | int | None) -> str | None:
    if x is None:
        return None
    if isinstance(x, float):
        return "inf" if x == INF else repr(x)
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_value(text: str) -> Value:
    text = text.strip()
    if text in ("inf", "+inf"):
        return INF
    return Fraction(text)


@dataclass
class InvariantReport:
    n: int
    scattering: int | None
    toughness: Value | None
    tau: Fraction | None
    witnesses: dict[str, list[int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "scattering": self.scattering,
            "toughness": format_value(self.toughness),
            "tau": format_value(self.tau),
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def invariant_report(g: Graph) -> InvariantReport:
    """All three invariants with witness cut sets.

    Disconnected graphs get ``toughness = 0`` (the empty cut) and ``tau``
    from the same scan; the connectivity guard applies only to the single-value
    functions above.
    """
    scan = cut_scan(g)
    if not scan.found:
        return InvariantReport(g.n, None, INF, None, {})
    return InvariantReport(
        g.n,
        scan.scattering,
        scan.toughness,
        scan.tau,
        {
            "scattering": members(scan.scattering_witness),
            "toughness": members(scan.toughness_witness),
            "tau": members(scan.tau_witness),
        },
    )
