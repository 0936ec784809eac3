"""Command-line front end: ``spectough <subcommand> ...``.

Exit codes: 0 clean, 1 usage or input error, 2 a mathematical violation was found.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from spectough.families import (
    FamilyGraph,
    FamilySpec,
    _parse_fields,
    extremal_scattering,
    extremal_tau_fractional,
    extremal_tau_integer,
    split_join,
    threshold_rho,
)
from spectough.graph import Graph, MalformedInput, emit_graph6, members, parse_edge_list, parse_graph6
from spectough.invariants import invariant_report
from spectough.spectral import a_alpha, as_fraction, quotient, quotient_eigen_largest, spectral_radius
from spectough.verify import (
    SWEEP_COLUMNS,
    alpha_label,
    audit_equivalences,
    check_scattering,
    check_tau_fractional,
    check_tau_integer,
    search_scattering,
    sweep_parts_monotonicity,
    sweep_rows,
)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2

THEOREM_ALIASES = {
    "t11": "scattering",
    "scattering": "scattering",
    "t12a": "tau_integer",
    "tau-int": "tau_integer",
    "t12b": "tau_fractional",
    "tau-frac": "tau_fractional",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ----------------------------------------------------------------- argument helpers

def parse_alphas(text: str) -> list[Fraction]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            a = as_fraction(item)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad alpha {item!r}") from exc
        if not 0 <= a <= 1:
            raise UsageError(f"alpha {item} outside [0, 1]")
        out.append(a)
    if not out:
        raise UsageError("empty alpha list")
    return out


def parse_extremal(text: str) -> FamilyGraph:
    fields = _parse_fields(text)
    try:
        n = int(fields["n"])
        if "delta" in fields:
            return extremal_scattering(n, int(fields["delta"]))
        if "tau" in fields:
            return extremal_tau_integer(n, int(fields["tau"]))
        if "b" in fields:
            return extremal_tau_fractional(n, int(fields["b"]))
    except KeyError as exc:
        raise UsageError(f"extremal spec {text!r} is missing {exc}") from None
    raise UsageError("extremal spec needs one of delta=, tau=, b=")


def load_source(args) -> tuple[Graph, FamilyGraph | None]:
    given = [x for x in ("g6", "edges", "family", "family_extremal") if getattr(args, x, None)]
    if len(given) != 1:
        raise UsageError("give exactly one graph source: --g6, --edges, --family or --family-extremal")
    if args.g6:
        return parse_graph6(args.g6), None
    if args.edges:
        with open(args.edges) as fh:
            return parse_edge_list(fh.read()), None
    fg = split_join(FamilySpec.parse(args.family)) if args.family else parse_extremal(args.family_extremal)
    for w in fg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return fg.graph, fg


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--g6", help="graph6 string")
    p.add_argument("--edges", metavar="FILE", help="edge-list file (first line n, then 'u v' per line)")
    p.add_argument("--family", metavar="SPEC", help='join-of-cliques spec, e.g. "s=2;parts=5,1,1,1"')
    p.add_argument(
        "--family-extremal",
        metavar="SPEC",
        help='extremal graph: "n=6;delta=1", "n=16;tau=3" or "n=12;b=2"',
    )


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SPECTOUGH_JOBS", "1")))
    except ValueError:
        return 1


# ----------------------------------------------------------------- output

def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.17g}"


# ----------------------------------------------------------------- subcommands

def cmd_invariants(args) -> tuple[str, int]:
    g, _ = load_source(args)
    rep = invariant_report(g)
    d = rep.to_dict()
    d["graph6"] = emit_graph6(g)
    if args.format == "json":
        return _dump_json(d), EXIT_OK
    if args.format == "csv":
        return _csv(["graph6", "n", "scattering", "toughness", "tau"],
                    [[d["graph6"], d["n"], d["scattering"], d["toughness"], d["tau"]]]), EXIT_OK
    lines = [f"graph6      {d['graph6']}", f"n           {d['n']}"]
    for key in ("scattering", "toughness", "tau"):
        wit = d["witnesses"].get(key)
        lines.append(f"{key:<11} {d[key]}" + (f"   S={wit}" if wit is not None else ""))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_rho(args) -> tuple[str, int]:
    g, fg = load_source(args)
    radii = []
    for a in parse_alphas(args.alpha):
        dense = spectral_radius(a_alpha(g, a)).radius
        quot = threshold_rho(fg, a) if fg is not None else None
        radii.append(
            {
                "alpha": alpha_label(a),
                "rho_dense": dense,
                "rho_quotient": quot,
                "delta_rho": None if quot is None else abs(quot - dense),
            }
        )
    out = {"graph6": emit_graph6(g), "n": g.n, "radii": radii}
    if args.format == "json":
        return _dump_json(out), EXIT_OK
    if args.format == "csv":
        rows = [[r["alpha"], _fmt(r["rho_dense"]), _fmt(r["rho_quotient"]),
                 "" if r["delta_rho"] is None else f"{r['delta_rho']:.3e}"] for r in radii]
        return _csv(["alpha", "rho_dense", "rho_quotient", "delta_rho"], rows), EXIT_OK
    lines = []
    for r in radii:
        line = f"alpha={r['alpha']}  rho={r['rho_dense']:.12f}"
        if r["rho_quotient"] is not None:
            line += f"  quotient={r['rho_quotient']:.12f}  |diff|={r['delta_rho']:.2e}"
        lines.append(line)
    return "\n".join(lines) + "\n", EXIT_OK


def _parse_blocks(text: str) -> list[int]:
    blocks = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            blocks.append(sum(1 << int(v) for v in chunk.split(",")))
    if not blocks:
        raise UsageError("empty --blocks")
    return blocks


def cmd_quotient(args) -> tuple[str, int]:
    g, fg = load_source(args)
    alphas = parse_alphas(args.alpha)
    if args.blocks:
        blocks = _parse_blocks(args.blocks)
    elif fg is not None:
        blocks = list(fg.blocks)
    else:
        raise UsageError("a plain graph source needs --blocks, e.g. '0;1,2,3'")
    results = []
    csv_parts = []
    for a in alphas:
        try:
            Q = fg.quotient(a) if (fg is not None and not args.blocks) else quotient(a_alpha(g, a), blocks)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        largest = quotient_eigen_largest(Q) if Q.is_equitable else None
        results.append(
            {
                "alpha": alpha_label(a),
                "blocks": [members(b) for b in Q.blocks],
                "sizes": list(Q.sizes),
                "equitable": Q.is_equitable,
                "entries": Q.entries.tolist(),
                "largest_eigenvalue": largest,
            }
        )
        csv_parts.append(Q.to_csv())
    if args.format == "json":
        return _dump_json({"graph6": emit_graph6(g), "quotients": results}), EXIT_OK
    if args.format == "csv":
        return "\n".join(csv_parts), EXIT_OK
    lines = []
    for r in results:
        lines.append(f"alpha={r['alpha']} sizes={r['sizes']} equitable={r['equitable']}")
        lines.extend("  " + "  ".join(f"{x:10.6f}" for x in row) for row in r["entries"])
        if r["largest_eigenvalue"] is not None:
            lines.append(f"  largest eigenvalue {r['largest_eigenvalue']:.12f}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_family(args) -> tuple[str, int]:
    if not (args.family or args.family_extremal):
        raise UsageError("family needs --family or --family-extremal")
    g, fg = load_source(args)
    assert fg is not None
    out = {
        "graph6": emit_graph6(g),
        "n": g.n,
        "m": g.m,
        "spec": str(fg.spec) if fg.spec is not None else None,
        "blocks": [members(b) for b in fg.blocks],
        "warnings": list(fg.warnings),
    }
    if args.format == "json":
        return _dump_json(out), EXIT_OK
    if args.format == "csv":
        return _csv(["graph6", "n", "m", "spec"], [[out["graph6"], g.n, g.m, out["spec"]]]), EXIT_OK
    return out["graph6"] + "\n", EXIT_OK


def cmd_check(args) -> tuple[str, int]:
    theorem = THEOREM_ALIASES.get(args.theorem)
    if theorem is None:
        raise UsageError(f"unknown theorem {args.theorem!r}")
    g, _ = load_source(args)
    verdicts = []
    for a in parse_alphas(args.alpha):
        try:
            if theorem == "scattering":
                v = check_scattering(g, a)
            elif theorem == "tau_integer":
                if args.tau is None:
                    raise UsageError("--tau is required")
                v = check_tau_integer(g, a, args.tau)
            else:
                if args.b is None:
                    raise UsageError("--b is required")
                v = check_tau_fractional(g, a, args.b)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        verdicts.append(v)
    code = EXIT_OK if all(v.respected for v in verdicts) else EXIT_VIOLATION
    out = {"graph6": emit_graph6(g), "verdicts": [v.to_dict() for v in verdicts]}
    if args.format == "json":
        return _dump_json(out), code
    rows = [[v.alpha, v.hypothesis_holds, v.conclusion_holds, v.is_extremal, v.respected,
             _fmt(v.values.get("rho")), _fmt(v.values.get("threshold"))] for v in verdicts]
    header = ["alpha", "hypothesis", "conclusion", "extremal", "respected", "rho", "threshold"]
    if args.format == "csv":
        return _csv(header, rows), code
    lines = [f"{v.theorem} alpha={v.alpha}: hypothesis={v.hypothesis_holds} conclusion={v.conclusion_holds} "
             f"extremal={v.is_extremal} -> {'respected' if v.respected else 'VIOLATED'}" for v in verdicts]
    return "\n".join(lines) + "\n", code


def _report_output(rep, args) -> tuple[str, int]:
    code = EXIT_OK if not rep.violations else EXIT_VIOLATION
    if args.violations_out:
        with open(args.violations_out, "w") as fh:
            fh.write(rep.violations_graph6())
    if args.format == "json":
        return _dump_json(rep.to_dict(include_runtime=args.timing)), code
    if args.format == "csv":
        rows = [[g6, a, v.theorem] for g6, a, v in rep.violations]
        return _csv(["graph6", "alpha", "theorem"], rows), code
    lines = [f"{rep.space}", f"examined {rep.examined}", f"{len(rep.violations)} violations"]
    lines.extend(f"  {g6} alpha={a}" for g6, a, _ in rep.violations)
    if args.timing:
        lines.append(f"runtime {rep.runtime:.3f}s")
    return "\n".join(lines) + "\n", code


def cmd_search(args) -> tuple[str, int]:
    if THEOREM_ALIASES.get(args.theorem) != "scattering":
        raise UsageError("search supports the scattering condition only (t11)")
    try:
        rep = search_scattering(
            args.n, args.delta, parse_alphas(args.alpha), args.mode, args.count, args.seed, args.jobs
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _report_output(rep, args)


def cmd_audit(args) -> tuple[str, int]:
    try:
        rep = audit_equivalences(args.nmax, args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _report_output(rep, args)


def cmd_sweep(args) -> tuple[str, int]:
    alphas = parse_alphas(args.alpha)
    rows = sweep_rows(args.nmax, args.smax, args.tmax, alphas, dense=not args.no_dense)
    mono = sweep_parts_monotonicity(args.nmax, args.smax, args.tmax, args.pmax, alphas)
    code = EXIT_OK if not mono.violations else EXIT_VIOLATION
    if args.format == "csv":
        return _csv(SWEEP_COLUMNS, [r.csv_fields() for r in rows]), code
    if args.format == "json":
        out = {
            "rows": [dict(zip(SWEEP_COLUMNS, r.csv_fields())) for r in rows],
            "monotonicity": mono.to_dict(include_runtime=args.timing),
        }
        return _dump_json(out), code
    worst = max((abs(r.rho_quotient - r.rho_dense) for r in rows if r.rho_dense is not None), default=0.0)
    text = (f"{len(rows)} (spec, alpha) rows, max |quotient - dense| = {worst:.2e}\n"
            f"monotonicity: {mono.examined} comparisons, {len(mono.violations)} violations\n")
    return text, code


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spectough", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_format="json"):
        sp.add_argument("--format", choices=["json", "csv", "plain"], default=default_format)
        sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    sp = sub.add_parser("invariants", help="scattering number, toughness and tau with witnesses")
    _add_source(sp)
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("rho", help="A_alpha spectral radius (dense, and via quotient for families)")
    _add_source(sp)
    sp.add_argument("--alpha", default="0")
    common(sp)
    sp.set_defaults(func=cmd_rho)

    sp = sub.add_parser("quotient", help="quotient matrix of A_alpha over a vertex partition")
    _add_source(sp)
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--blocks", help="partition as '0;1,2,3' (';' between blocks)")
    common(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("family", help="build a join-of-cliques or extremal graph")
    _add_source(sp)
    common(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("check", help="check one graph against a spectral sufficient condition")
    sp.add_argument("theorem", help="t11 | t12a | t12b (aliases: scattering, tau-int, tau-frac)")
    _add_source(sp)
    sp.add_argument("--alpha", default="1/2")
    sp.add_argument("--tau", type=int, help="integer tau >= 2 (t12a)")
    sp.add_argument("--b", type=int, help="b = 1/tau (t12b)")
    common(sp)
    sp.set_defaults(func=cmd_check)

    def report_opts(sp):
        sp.add_argument("--jobs", type=int, default=_default_jobs())
        sp.add_argument("--violations-out", metavar="FILE", help="write violating graphs as graph6 lines")
        sp.add_argument("--timing", action="store_true", help="include runtime (breaks byte-stable output)")

    sp = sub.add_parser("search", help="exhaustive or random falsification search")
    sp.add_argument("theorem", help="t11")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--alpha", default="0,1/4,1/2,3/4")
    sp.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=42)
    report_opts(sp)
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("audit", help="s<=0 <=> t>=1 and s<=1 <=> tau>=1 over small graphs")
    sp.add_argument("--nmax", type=int, default=6)
    report_opts(sp)
    common(sp, default_format="plain")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("sweep", help="quotient vs dense radii and parts-monotonicity sweep")
    sp.add_argument("--nmax", type=int, default=10)
    sp.add_argument("--smax", type=int, default=3)
    sp.add_argument("--tmax", type=int, default=4)
    sp.add_argument("--pmax", type=int, default=2)
    sp.add_argument("--alpha", default="0,1/4,1/2,3/4")
    sp.add_argument("--no-dense", action="store_true", help="skip the dense cross-check column")
    sp.add_argument("--timing", action="store_true")
    common(sp, default_format="csv")
    sp.set_defaults(func=cmd_sweep)
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except (UsageError, MalformedInput, ValueError, OSError) as exc:
        print(f"spectough: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
