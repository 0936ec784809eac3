"""Checkers that tie A_alpha spectral thresholds to scattering number and tau-toughness.

Three sufficient conditions are checked, each with a sharp extremal graph:

* ``scattering``  -- rho_alpha(G) >= rho_alpha(K_d v (K_{n-2d-1} u (d+1)K_1)) with
  ``d = delta(G)`` and ``n >= max(4d+2, d^3+d)`` forces ``s(G) <= 1``.
* ``tau_integer`` -- integer tau >= 2, alpha in [1/2, 3/4): rho_alpha(G) >=
  rho_alpha(K_{tau-1} v (K_{n-tau} u K_1)) forces G to be tau-tough.
* ``tau_fractional`` -- tau = 1/b, b >= 2: rho_alpha(G) >=
  rho_alpha(K_1 v (K_{n-b-2} u (b+1)K_1)) forces G to be tau-tough.

A verdict is a violation when the hypothesis holds, the conclusion fails and
G is not the extremal graph.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from spectough.canon import EXACT_MAX_N, enumerate_connected, is_isomorphic, random_graph
from spectough.families import (
    FamilyGraph,
    FamilySpec,
    concentrated_parts,
    extremal_scattering,
    extremal_tau_fractional,
    extremal_tau_integer,
    family_quotient,
    matches_split_join,
    parts_vectors,
    split_join,
    threshold_rho,
)
from spectough.graph import Graph, emit_graph6, is_connected, members, min_degree, parse_graph6
from spectough.invariants import cut_scan, format_value
from spectough.spectral import a_alpha, as_fraction, quotient_eigen_largest, rho, spectral_radius

RADIUS_TOL = 1e-9
MARGIN_TOL = 1e-10
THEOREMS = ("scattering", "tau_integer", "tau_fractional")


def alpha_label(alpha) -> str:
    a = as_fraction(alpha)
    return str(a) if a.denominator <= 10**6 else repr(float(alpha))


@dataclass
class Verdict:
    theorem: str
    alpha: str
    hypothesis_holds: bool
    conclusion_holds: bool
    is_extremal: bool
    regime_ok: bool
    witness: list[int] | None = None
    values: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def respected(self) -> bool:
        return not self.hypothesis_holds or self.conclusion_holds or self.is_extremal

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "alpha": self.alpha,
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_holds": self.conclusion_holds,
            "is_extremal": self.is_extremal,
            "regime_ok": self.regime_ok,
            "respected": self.respected,
            "witness": self.witness,
            "values": self.values,
            "notes": self.notes,
        }


def is_family_member(g: Graph, fg: FamilyGraph) -> bool:
    """Isomorphism for ``n <= 12``; beyond that a structural certificate for the family."""
    if g.n != fg.graph.n:
        return False
    if g.n <= EXACT_MAX_N:
        return is_isomorphic(g, fg.graph)
    assert fg.spec is not None
    return matches_split_join(g, fg.spec)


@lru_cache(maxsize=1024)
def _threshold(kind: str, n: int, param: int, alpha: Fraction) -> float | None:
    makers = {
        "scattering": extremal_scattering,
        "tau_integer": extremal_tau_integer,
        "tau_fractional": extremal_tau_fractional,
    }
    try:
        fg = makers[kind](n, param)
    except ValueError:
        return None
    return threshold_rho(fg, alpha)


def _radius_meets(r: float, threshold: float | None) -> bool:
    return threshold is not None and r >= threshold - RADIUS_TOL


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ValueError("theorem checks need a connected graph")


def check_scattering(g: Graph, alpha) -> Verdict:
    _require_connected(g)
    a = as_fraction(alpha)
    d = min_degree(g)
    n = g.n
    bound = max(4 * d + 2, d**3 + d)
    size_ok = n >= bound
    threshold = _threshold("scattering", n, d, a) if n - 2 * d - 1 >= 1 else None
    r = rho(g, a)
    notes = [] if size_ok else [f"n={n} below max(4*delta+2, delta^3+delta)={bound}"]
    if threshold is None:
        notes.append("extremal graph not constructible at this (n, delta)")
    scan = cut_scan(g)
    s = scan.scattering if scan.found else None
    conclusion = s is None or s <= 1
    extremal = threshold is not None and is_family_member(g, extremal_scattering(n, d))
    return Verdict(
        "scattering",
        alpha_label(a),
        size_ok and _radius_meets(r, threshold),
        conclusion,
        extremal,
        size_ok,
        members(scan.scattering_witness) if scan.found else None,
        {"n": n, "delta": d, "rho": r, "threshold": threshold, "scattering": s},
        notes,
    )


def tau_integer_regime(n: int, alpha, t: int) -> tuple[bool, list[str]]:
    a = as_fraction(alpha)
    notes = []
    if int(t) != t or t < 2:
        notes.append("tau must be an integer >= 2")
        return False, notes
    if not Fraction(1, 2) <= a < Fraction(3, 4):
        notes.append("alpha outside [1/2, 3/4)")
        return False, notes
    bound = max(Fraction(4 * t * t + 5 * t + 1), (8 * t * (1 - a) - 2 * a + 1) / (3 - 4 * a))
    if n < bound:
        notes.append(f"n={n} below {float(bound):.6g}")
        return False, notes
    return True, notes


def tau_fractional_regime(n: int, alpha, b: int) -> tuple[bool, list[str]]:
    a = as_fraction(alpha)
    notes = []
    if int(b) != b or b < 1:
        notes.append("b = 1/tau must be a positive integer")
        return False, notes
    t = Fraction(1, b)
    if b == 1:
        notes.append("b=1: only the alpha=1/2 statement applies")
        if a != Fraction(1, 2):
            return False, notes
        bound = (2 * t + 5) * t + 2 / t + 8
    else:
        if not Fraction(1, 2) <= a < (3 + t) / (4 + 2 * t):
            notes.append("alpha outside [1/2, (3+tau)/(4+2tau))")
            return False, notes
        den = (1 - 2 * a) * t * t + (3 - 4 * a) * t
        if den <= 0:
            notes.append("size bound T undefined (non-positive denominator)")
            return False, notes
        T = ((5 - 6 * a) * t * t + (13 - 14 * a) * t + 4 * (1 - a)) / den
        bound = max(2 * t * t + 5 * t + 2 / t + 8, T)
    if n < bound:
        notes.append(f"n={n} below {float(bound):.6g}")
        return False, notes
    return True, notes


def _check_tau(g: Graph, alpha, kind: str, param: int, threshold_tau: Fraction) -> Verdict:
    _require_connected(g)
    a = as_fraction(alpha)
    n = g.n
    regime = tau_integer_regime if kind == "tau_integer" else tau_fractional_regime
    regime_ok, notes = regime(n, a, param)
    threshold = _threshold(kind, n, param, a)
    if threshold is None:
        notes.append("extremal graph not constructible at this size")
    r = rho(g, a)
    scan = cut_scan(g)
    value = scan.tau if scan.found else None
    conclusion = value is None or value >= threshold_tau
    maker = extremal_tau_integer if kind == "tau_integer" else extremal_tau_fractional
    extremal = threshold is not None and is_family_member(g, maker(n, param))
    return Verdict(
        kind,
        alpha_label(a),
        regime_ok and _radius_meets(r, threshold),
        conclusion,
        extremal,
        regime_ok,
        members(scan.tau_witness) if scan.found else None,
        {
            "n": n,
            "rho": r,
            "threshold": threshold,
            "tau_required": format_value(threshold_tau),
            "tau": format_value(value),
        },
        notes,
    )


def check_tau_integer(g: Graph, alpha, t: int) -> Verdict:
    return _check_tau(g, alpha, "tau_integer", t, Fraction(t))


def check_tau_fractional(g: Graph, alpha, b: int) -> Verdict:
    return _check_tau(g, alpha, "tau_fractional", b, Fraction(1, b))


# ----------------------------------------------------------------- reports

@dataclass
class SearchReport:
    space: str
    examined: int
    violations: list[tuple[str, str, Verdict]] = field(default_factory=list)
    runtime: float = 0.0
    seed: int | None = None
    examined_by_n: dict[int, int] = field(default_factory=dict)

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "space": self.space,
            "examined": self.examined,
            "examined_by_n": {str(k): v for k, v in sorted(self.examined_by_n.items())},
            "seed": self.seed,
            "violation_count": len(self.violations),
            "violations": [
                {"graph6": g6, "alpha": a, "verdict": v.to_dict()} for g6, a, v in self.violations
            ],
        }
        if include_runtime:
            out["runtime"] = self.runtime
        return out

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.to_dict(include_runtime), sort_keys=True)

    def violations_graph6(self) -> str:
        return "".join(f"{g6}\n" for g6 in sorted({g6 for g6, _, _ in self.violations}))


def _map_chunks(fn: Callable, items: Sequence, jobs: int) -> list:
    """Apply ``fn`` to contiguous chunks of ``items`` and concatenate, in order."""
    if jobs <= 1 or len(items) < 2:
        return list(fn(list(items)))
    size = math.ceil(len(items) / jobs)
    chunks = [list(items[i : i + size]) for i in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(fn, chunks):
            out.extend(part)
    return out


def _sorted_violations(vs: Iterable[tuple[str, str, Verdict]]) -> list[tuple[str, str, Verdict]]:
    return sorted(vs, key=lambda x: (x[0], as_fraction(x[1])))


# ----------------------------------------------------------------- equivalence audit

def _audit_chunk(codes: list[str]) -> list[tuple[str, str, Verdict]]:
    out = []
    for code in codes:
        g = parse_graph6(code)
        scan = cut_scan(g)
        s, t, u = scan.scattering, scan.toughness, scan.tau
        problems = []
        if (s <= 0) != (t >= 1):
            problems.append("s<=0 vs t>=1")
        if (s <= 1) != (u >= 1):
            problems.append("s<=1 vs tau>=1")
        if problems:
            v = Verdict(
                "equivalence",
                "-",
                True,
                False,
                False,
                True,
                None,
                {"scattering": s, "toughness": format_value(t), "tau": format_value(u)},
                problems,
            )
            out.append((code, "-", v))
    return out


def audit_equivalences(n_max: int, jobs: int = 1) -> SearchReport:
    """``s <= 0 <=> t >= 1`` and ``s <= 1 <=> tau >= 1`` on connected non-complete graphs."""
    start = time.perf_counter()
    codes = []
    by_n = {}
    for n in range(1, n_max + 1):
        batch = [emit_graph6(g) for g in enumerate_connected(n) if not g.is_complete()]
        by_n[n] = len(batch)
        codes.extend(batch)
    violations = _map_chunks(_audit_chunk, codes, jobs)
    return SearchReport(
        f"connected non-complete graphs, n <= {n_max}",
        len(codes),
        _sorted_violations(violations),
        time.perf_counter() - start,
        None,
        by_n,
    )


# ----------------------------------------------------------------- scattering search

def random_min_degree_graph(n: int, delta: int, rng: np.random.Generator) -> Graph:
    """Random connected graph with minimum degree exactly ``delta``.

    Draws G(n, p) with ``p ~ U(0.2, 1)``, trims a random vertex down to
    degree ``delta``, and rejects until connected with the target minimum degree.
    """
    while True:
        g = random_graph(n, rng.uniform(0.2, 1.0), rng)
        v = int(rng.integers(n))
        nbrs = members(g.adj[v])
        if len(nbrs) < delta:
            continue
        drop = rng.choice(nbrs, size=len(nbrs) - delta, replace=False) if len(nbrs) > delta else []
        adj = list(g.adj)
        for u in drop:
            u = int(u)
            adj[v] &= ~(1 << u)
            adj[u] &= ~(1 << v)
        h = Graph(n, tuple(adj))
        if min_degree(h) == delta and is_connected(h):
            return h


def _scattering_chunk(args: tuple[tuple[str, ...], tuple[Fraction, ...], int]) -> list:
    codes, alphas, delta = args
    out = []
    for code in codes:
        g = parse_graph6(code)
        for a in alphas:
            threshold = _threshold("scattering", g.n, delta, a)
            if threshold is None or spectral_radius(a_alpha(g, a)).radius < threshold - RADIUS_TOL:
                continue
            v = check_scattering(g, a)
            if not v.respected:
                out.append((code, v.alpha, v))
    return out


class _ChunkRunner:
    def __init__(self, alphas, delta):
        self.alphas = tuple(alphas)
        self.delta = delta

    def __call__(self, codes):
        return _scattering_chunk((tuple(codes), self.alphas, self.delta))


def search_scattering(
    n: int,
    delta: int,
    alphas: Sequence,
    mode: str = "exhaustive",
    count: int = 1000,
    seed: int = 42,
    jobs: int = 1,
) -> SearchReport:
    """Falsification search for the scattering-number condition."""
    start = time.perf_counter()
    alphas = tuple(as_fraction(a) for a in alphas)
    if mode == "exhaustive":
        codes = [emit_graph6(g) for g in enumerate_connected(n) if min_degree(g) == delta]
        space = f"all connected graphs, n={n}, min degree {delta}"
        used_seed = None
    elif mode == "random":
        codes = [
            emit_graph6(random_min_degree_graph(n, delta, np.random.default_rng([seed, i])))
            for i in range(count)
        ]
        space = f"{count} random connected graphs, n={n}, min degree {delta}"
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")
    violations = _map_chunks(_ChunkRunner(alphas, delta), codes, jobs)
    return SearchReport(
        space + f", alpha in {{{', '.join(alpha_label(a) for a in alphas)}}}",
        len(codes),
        _sorted_violations(violations),
        time.perf_counter() - start,
        used_seed,
        {n: len(codes)},
    )


# ----------------------------------------------------------------- parts monotonicity

@dataclass
class SweepRow:
    spec: FamilySpec
    alpha: Fraction
    rho_quotient: float
    rho_dense: float | None = None

    def csv_fields(self) -> list[str]:
        dense = "" if self.rho_dense is None else f"{self.rho_dense:.17g}"
        delta = "" if self.rho_dense is None else f"{abs(self.rho_quotient - self.rho_dense):.3e}"
        return [
            str(self.spec.n),
            str(self.spec.s),
            " ".join(map(str, self.spec.parts)),
            alpha_label(self.alpha),
            f"{self.rho_quotient:.17g}",
            dense,
            delta,
        ]


SWEEP_COLUMNS = ["n", "s", "parts", "alpha", "rho_quotient", "rho_dense", "delta_rho"]


def sweep_rows(n_max: int, s_max: int, t_max: int, alphas: Sequence, dense: bool = True) -> list[SweepRow]:
    rows = []
    for n in range(2, n_max + 1):
        for s in range(1, s_max + 1):
            for t in range(1, t_max + 1):
                for parts in parts_vectors(n - s, t):
                    spec = FamilySpec(s, parts)
                    for a in alphas:
                        a = as_fraction(a)
                        rq = quotient_eigen_largest(family_quotient(spec, a))
                        rd = rho(split_join(spec).graph, a) if dense else None
                        rows.append(SweepRow(spec, a, rq, rd))
    return rows


def sweep_parts_monotonicity(
    n_max: int, s_max: int, t_max: int, p_max: int, alphas: Sequence
) -> SearchReport:
    """Concentrating clique sizes maximises rho_alpha, strictly and uniquely.

    For each ``(n, s, t, p)`` every parts vector with minimum part ``>= p`` is
    compared with ``(n - s - p(t-1), p, ..., p)``; the concentrated vector must
    beat every other by more than ``MARGIN_TOL``. Each single shift of one
    vertex from the last clique into the first must also raise rho_alpha.
    """
    start = time.perf_counter()
    alphas = tuple(as_fraction(a) for a in alphas)
    violations = []
    examined = 0
    by_n: dict[int, int] = {}
    cache: dict[tuple[FamilySpec, Fraction], float] = {}

    def r(spec: FamilySpec, a: Fraction) -> float:
        key = (spec, a)
        if key not in cache:
            cache[key] = quotient_eigen_largest(family_quotient(spec, a))
        return cache[key]

    for n in range(2, n_max + 1):
        for s in range(1, s_max + 1):
            for t in range(2, t_max + 1):
                for p in range(1, p_max + 1):
                    if n - s < p * t:
                        continue
                    top = FamilySpec(s, concentrated_parts(n - s, t, p))
                    others = [FamilySpec(s, pv) for pv in parts_vectors(n - s, t, p) if pv != top.parts]
                    for a in alphas:
                        best = r(top, a)
                        for spec in others:
                            examined += 1
                            by_n[n] = by_n.get(n, 0) + 1
                            margin = best - r(spec, a)
                            if margin <= MARGIN_TOL:
                                violations.append(_sweep_violation(spec, a, "not below concentrated", margin))
                            shifted = _shift_one(spec.parts)
                            if shifted is not None and shifted[-1] >= p:
                                step = r(FamilySpec(s, shifted), a) - r(spec, a)
                                if step <= MARGIN_TOL:
                                    violations.append(_sweep_violation(spec, a, "shift did not increase", step))
    return SearchReport(
        f"parts vectors n<={n_max}, s<={s_max}, 2<=t<={t_max}, p<={p_max}, "
        f"alpha in {{{', '.join(alpha_label(a) for a in alphas)}}}",
        examined,
        _sorted_violations(violations),
        time.perf_counter() - start,
        None,
        by_n,
    )


def _shift_one(parts: tuple[int, ...]) -> tuple[int, ...] | None:
    """Move one vertex from the last clique to the first; ``None`` if the last would vanish."""
    if parts[-1] <= 1 and len(parts) > 1:
        return None
    return (parts[0] + 1,) + parts[1:-1] + (parts[-1] - 1,)


def _sweep_violation(spec: FamilySpec, a: Fraction, what: str, margin: float):
    g6 = emit_graph6(split_join(spec).graph)
    v = Verdict("parts_monotonicity", alpha_label(a), True, False, False, True, None,
                {"spec": str(spec), "margin": margin}, [what])
    return (g6, alpha_label(a), v)


# ----------------------------------------------------------------- proof polynomials

def eval_f_c(n, t, c):
    """``(2t+1)c^2 - (2n+4t+3)c + n^2 + n + 2t + 2`` (edge count bound for integer tau)."""
    return (2 * t + 1) * c * c - (2 * n + 4 * t + 3) * c + n * n + n + 2 * t + 2


def eval_g_s(n, b, s):
    """``(b+2)b s^2 - (2bn-3b-2)s + n^2 - 3n + 2`` (edge count bound for tau = 1/b)."""
    return (b + 2) * b * s * s - (2 * b * n - 3 * b - 2) * s + n * n - 3 * n + 2


def f_endpoint_gap(n, t):
    """Closed form of ``f(3) - f(n/(t+1) + 1)``."""
    return Fraction((n - 2 * t - 2) * (n - 4 * t * t - 5 * t - 1), (t + 1) ** 2)


def g_endpoint_gap(n, b):
    """Closed form of ``g(2) - g((n-2)/(b+1))``."""
    return Fraction((n - 2 * b - 4) * ((n - 7) * b * b - 2 * b**3 - 5 * b - 2), (b + 1) ** 2)

