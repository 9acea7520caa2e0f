"""Command line front end: ``tworay <command> [scenario | --builtin NAME]``.

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 an
inconclusive restriction was met and ``--strict`` was given.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import reports
from .scenario import BUILTINS, ScenarioError, builtin, load, parse_pair

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 2, 3, 4

COMMANDS = ("describe", "monomials", "baselocus", "localchart", "game", "sections", "transform")


def _pair(text):
    try:
        return parse_pair(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _chart(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError("expected two variable names like v,z")
    return tuple(parts)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tworay",
        description="Chamber fans, linear systems and 2-ray games on rank-two toric 4-folds.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("scenario", nargs="?", help="scenario file")
    p.add_argument("--builtin", choices=BUILTINS, help="use a bundled scenario")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--full-trace", action="store_true", help="game: continue past the first failure")
    p.add_argument("--strict", action="store_true",
                   help="exit with status 4 when a restriction rule is inconclusive")
    p.add_argument("--bound", type=int, default=12, help="section ring weight bound")
    p.add_argument("--seed", type=int, default=0, help="seed for random coefficient checks")
    p.add_argument("--degree", type=_pair, help="monomials: bidegree, e.g. --degree=-4,4")
    p.add_argument("--ray", type=_pair, help="sections: ray, e.g. --ray=-2,1")
    p.add_argument("--chart", type=_chart, help="localchart: the two nonzero variables, e.g. v,z")
    p.add_argument("--max-degree", type=int, default=6, help="localchart: report degrees up to this")
    p.add_argument("-o", "--output", help="transform: write the new scenario here")
    return p


# --------------------------------------------------------------------------
# text rendering

def _r(v):
    return f"({v[0]},{v[1]})"


def _c(c):
    return f"Convex<{_r(c[0])},{_r(c[1])}>"


def _ideal(pair):
    return "(" + ",".join(pair[0]) + ")∩(" + ",".join(pair[1]) + ")"


def render_describe(rep) -> str:
    g = rep["grading"]
    width = [max(len(str(a)), len(str(b)), len(c)) for a, b, c in zip(g["row1"], g["row2"], g["vars"])]
    rows = [" ".join(str(x).rjust(w) for x, w in zip(row, width))
            for row in (g["vars"], g["row1"], g["row2"])]
    out = ["grading:"] + ["  " + r for r in rows]
    fan = rep["chamber_fan"]
    out.append("chamber fan rays: " + " ".join(_r(r) for r in fan["rays"]))
    for m in fan["multiplicity"]:
        out.append(f"  {_r(m['ray'])}: {','.join(m['vars'])}")
    out.append("chambers:")
    for ch in fan["chambers"]:
        out.append(f"  {_c(ch['cone'])}  irrelevant ideal {_ideal(ch['irrelevant'])}")
    out.append(f"model chamber: {_c(rep['model']['chamber'])}, irrelevant ideal "
               f"{_ideal(rep['model']['irrelevant'])}")
    out.append(f"effective cone: {_c(rep['effective_cone'])}")
    mob = rep['mobile_cone']
    out.append(f"mobile cone: {_c(mob) if mob else 'degenerate (a ray or less)'}")
    out.append(f"-K ambient: {_r(rep['anticanonical_ambient'])}")
    h = rep["hypersurface"]
    if h is None:
        out.append("no hypersurface")
    else:
        out.append(f"hypersurface degree: {_r(h['degree'])}")
        out.append(f"-K hypersurface: {_r(h['anticanonical'])}")
        out.append(f"K-condition: {h['k_condition']}")
        out.append(f"hypersurface class interior to mobile cone: {h['mobile_interior']}"
                   + ("" if h["mobile_interior"] else "  (warning: mobile cones may differ)"))
        out.append(f"Gorenstein test: {h['gorenstein']}")
    out.append("assumptions:")
    out += [f"  - {a}" for a in rep["assumptions"]]
    return "\n".join(out)


def render_monomials(rep) -> str:
    out = [f"degree {_r(rep['degree'])}" + ("  (with constraints)" if rep["constrained"] else "")]
    base = ",".join(rep["base"]) or "-"
    for col in rep["columns"]:
        out.append(f"  coefficient degree {col['free_degree']} in {base}: " + ", ".join(col["entries"]))
    out.append(f"fibre monomials: {rep['fibre_count']}; total dimension: {rep['dimension']}")
    if rep["missing"]:
        out.append("missing monomials: " + ", ".join(rep["missing"]))
    return "\n".join(out)


def render_baselocus(rep) -> str:
    out = [f"irrelevant ideal {_ideal(rep['irrelevant'])}", "base locus strata:"]
    for st in rep["strata"]:
        z = "(" + "=".join(st["zeros"]) + "=0)"
        if st["certificate"]:
            out.append(f"  {z}: smooth, witness {st['certificate']} linear in {st['variable']}"
                       f" (seeded check {'passed' if st['verified'] else 'FAILED'})")
        else:
            out.append(f"  {z}: no witness; singularity candidate")
    return "\n".join(out)


def render_localchart(rep) -> str:
    out = [f"chart {','.join(rep['nonzero'])} != 0 at the point ({'='.join(rep['point'])}=0)"]
    for c in rep["coordinates"]:
        out.append(f"  {c['var']} -> {c['coordinate']}  exponents {tuple(c['exponents'])}")
    out.append(f"lowest degree: {rep['min_degree']}")
    for d, ms in rep["by_degree"].items():
        out.append(f"  degree {d}: {', '.join(ms)}")
    out.append("pure powers: " + ", ".join(f"{v}^{p}" for v, p in rep["pure_powers"]))
    if rep["note"]:
        out.append("note: " + rep["note"])
    return "\n".join(out)


def render_game(rep) -> str:
    out = [f"-K = {_r(rep['anticanonical'])}"]
    for i, st in enumerate(rep["steps"]):
        r = st["restriction"]
        out.append(f"step {i}: {st['description']}")
        line = f"  restricted: {r['result']}"
        if r["rule"] == "elimination":
            line += f", eliminate {r['eliminated']} via {r['witness']}"
        elif r["rule"] == "disjoint":
            line += f" via {r['witness']}"
        if r["result"] == "restricted_small":
            line += f"; type ({','.join(map(str, r['weights']))}) {r['k_sign']}"
        out.append(line)
        if r["warning"]:
            out.append(f"  warning: {r['warning']}")
        m = st["mori"]
        out.append("  Mori check: " + ("ok" if m["ok"] else f"FAIL ({m['reason']})")
                   + (f"; {m['note']}" if m["note"] else ""))
    if rep["full_trace"] and len(rep["failures"]) > 1:
        out.append("all failures: " + "; ".join(f"{_r(f['wall'])} {f['reason']}" for f in rep["failures"]))
    if rep["end"]:
        e = rep["end"]
        out.append("end generators: " + ", ".join(
            f"{g['monomial']}[{g['weight']}]" for g in e["generators"]))
        if e["rewrite_error"]:
            out.append(f"rewrite failed: {e['rewrite_error']}")
    out.append(f"verdict: {rep['verdict']['line']}")
    return "\n".join(out)


def render_sections(rep) -> str:
    out = []
    for item in rep["rays"]:
        out.append(f"ray {_r(item['ray'])}: {item['ambient']}"
                   + ("" if item["complete"] else f"  (complete only up to weight {item['bound']})"))
        by_w = {}
        for g in item["generators"]:
            by_w.setdefault(g["weight"], []).append(g["monomial"])
        for w, ms in sorted(by_w.items()):
            out.append(f"  weight {w}: {', '.join(ms)}")
        if item["claim"]:
            c = item["claim"]
            out.append(f"  claimed: {c['ambient']}; {c['note']}")
    return "\n".join(out)


RENDER = {
    "describe": render_describe, "monomials": render_monomials, "baselocus": render_baselocus,
    "localchart": render_localchart, "game": render_game, "sections": render_sections,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.builtin and args.scenario:
            raise ScenarioError("give either a scenario file or --builtin, not both")
        if args.builtin:
            scn = builtin(args.builtin)
        elif args.scenario:
            scn = load(args.scenario)
        else:
            raise ScenarioError("no scenario given")
    except (ScenarioError, OSError) as exc:
        print(f"tworay: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        cmd = args.command
        if cmd == "describe":
            rep = reports.describe(scn)
        elif cmd == "monomials":
            rep = reports.monomials(scn, args.degree)
        elif cmd == "baselocus":
            rep = reports.baselocus(scn, args.seed)
        elif cmd == "localchart":
            rep = reports.localchart(scn, args.chart, args.max_degree)
        elif cmd == "game":
            rep = reports.game(scn, args.full_trace, args.bound)
        elif cmd == "sections":
            rep = reports.sections(scn, args.ray, args.bound)
        else:
            rep = reports.transform(scn)
    except ValueError as exc:
        print(f"tworay: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION

    if cmd == "transform" and args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rep["output"])
    if args.json:
        json.dump(rep, stdout, indent=2, sort_keys=True, ensure_ascii=False)
        stdout.write("\n")
    elif cmd == "transform":
        if not args.output:
            stdout.write(rep["output"])
        else:
            stdout.write(f"wrote {args.output} (cancelled u^{rep['cancelled_power']})\n")
    else:
        stdout.write(RENDER[cmd](rep) + "\n")

    if args.strict and cmd == "game" and rep["warnings"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
