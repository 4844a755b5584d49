"""``fb``: command-line front end.

Exit codes: 0 ok, 1 usage, 2 invalid input graph, 3 verification failure,
4 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import LPInfeasible, alpha_closed, build_rate_report, lp_min
from .corpus import CHECKS, REPORT_ONLY, expand, load_spec, verify_corpus, write_report
from .embedding import PlaneGraphError, bfs_tree, format_plane_graph, parse_plane_graph
from .engine import BudgetSchedule, GameError, GameState, OracleLimitExceeded, SearchLimits, sn_exact
from .generators import family_id, generate
from .render import render_svg
from .separator import SeparatorError, find_balanced_curve
from .strategy import (
    THREE_TWO,
    TWO,
    degree4_defense,
    dispatch_defense,
    lemma22_defense,
    lemma32_applies,
    null_defense,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _frac(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, Fraction):
        s = f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
        return f"{s} ({float(x):.6f})"
    return str(x)


def _kv(pairs) -> str:
    return "".join(f"{k}: {_frac(v)}\n" for k, v in pairs)


def _load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_plane_graph(text)


def _root(g, r):
    if not 0 <= r < g.n:
        raise UsageError(f"root {r} out of range for n={g.n}")
    return r


def _schedule(text):
    try:
        return BudgetSchedule.parse(text)
    except GameError as exc:
        raise UsageError(str(exc)) from None


def cmd_validate(a):
    g = _load(a.file)
    sys.stdout.write(_kv([("status", "ok"), ("n", g.n), ("m", g.m), ("faces", g.faces.count), ("outer", f"{g.outer[0]} {g.outer[1]}")]))


def cmd_gen(a):
    try:
        g = generate(a.family, a.params, a.seed, a.base)
    except (PlaneGraphError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    text = format_plane_graph(g, comment=family_id(a.family, a.params, a.seed, a.base))
    if a.output:
        Path(a.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_separator(a):
    g = _load(a.file)
    r = _root(g, a.root)
    t = bfs_tree(g, r)
    bc = find_balanced_curve(g, t)
    c = bc.curve
    depths = [t.depth[v] for v in c.cycle]
    per_level = max(depths.count(d) for d in set(depths))
    sys.stdout.write(_kv([
        ("root", r),
        ("z", c.z),
        ("arc", f"{c.arc.u} {c.arc.v}" + (" (edge)" if c.arc.existing else f" (face {c.arc.face})")),
        ("u_path", " ".join(map(str, c.u_path))),
        ("v_path", " ".join(map(str, c.v_path))),
        ("cycle", " ".join(map(str, c.cycle))),
        ("interior", bc.interior_size),
        ("exterior", bc.exterior_size),
        ("max_per_level", per_level),
        ("balanced", 3 * max(bc.interior_size, bc.exterior_size) < 2 * g.n),
    ]))


def _simulate(g, r, strategy, budgets):
    sched = _schedule(budgets) if budgets else None
    if strategy == "dispatch":
        if sched is None or sched == TWO:
            return dispatch_defense(g, r, "two")
        if sched == THREE_TWO:
            return dispatch_defense(g, r, "three_two")
        raise UsageError("dispatch supports budgets '2*' and '3,2*'")
    if strategy == "lemma22":
        if g.n < 5:
            raise UsageError("lemma22 needs n >= 5")
        return lemma22_defense(g, r, sched)
    if strategy == "degree4":
        if sched not in (None, TWO):
            raise UsageError("degree4 runs with budgets '2*' only")
        if not lemma32_applies(g, r):
            raise UsageError("degree4 needs n >= 5, a degree-4 root and at most one neighbour of degree > 5")
        return degree4_defense(g, r)
    return null_defense(g, r, sched or TWO)


def _state_json(s: GameState) -> dict:
    return {
        "burned": sorted(s.burned),
        "protected": sorted(s.protected),
        "round": s.round,
        "schedule": str(s.schedule),
        "saved": s.saved,
    }


def cmd_simulate(a):
    g = _load(a.file)
    r = _root(g, a.root)
    o = _simulate(g, r, a.strategy, a.budgets)
    sys.stdout.write(_kv([
        ("root", r),
        ("strategy", a.strategy),
        ("schedule", str(o.schedule)),
        ("trace", o.case_trace),
        ("saved", o.saved),
        ("guarantee", f"{o.guarantee} = {_frac(o.guarantee.bound)}"),
        ("holds", o.ok),
        ("side", o.side),
        ("rounds", o.state.round),
        ("burned", " ".join(map(str, sorted(o.state.burned)))),
        ("protected", " ".join(map(str, sorted(o.state.protected)))),
    ]))
    if a.state_out:
        Path(a.state_out).write_text(json.dumps(_state_json(o.state), indent=1) + "\n")


def cmd_sn_exact(a):
    g = _load(a.file)
    r = _root(g, a.root)
    sched = _schedule(a.budgets)
    best = sn_exact(g, r, sched, SearchLimits(max_n=a.max_n, max_nodes=a.max_nodes))
    sys.stdout.write(_kv([("root", r), ("schedule", str(sched)), ("sn", best)]))


def cmd_rate(a):
    g = _load(a.file)
    rep = build_rate_report(g, SearchLimits(max_n=a.exact_cap))
    if a.json:
        flat = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in rep.items()}
        flat.update({f"{k}_float": float(v) for k, v in rep.items() if isinstance(v, Fraction)})
        sys.stdout.write(json.dumps(flat, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_kv(rep.items()))


def cmd_lp(a):
    try:
        eps = Fraction(a.eps)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {a.eps!r}") from None
    if a.n < 1:
        raise UsageError("n must be >= 1")
    try:
        alpha, (x, y, z, w) = lp_min(a.n, eps)
    except LPInfeasible as exc:
        sys.stdout.write(_kv([("eps", eps), ("n", a.n), ("status", f"infeasible: {exc}")]))
        return EXIT_VERIFY
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    closed = alpha_closed(a.n, eps) if eps <= Fraction(5, 2) else None
    sys.stdout.write(_kv([
        ("eps", eps), ("n", a.n), ("alpha", alpha),
        ("x", x), ("y", y), ("z", z), ("w", w),
        ("alpha_closed", closed),
        ("matches_closed", None if closed is None else closed == alpha),
    ]))


def cmd_verify(a):
    checks = [c.strip() for c in a.checks.split(",") if c.strip()] if a.checks else list(CHECKS)
    bad = sorted(set(checks) - set(CHECKS))
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    try:
        specs = load_spec(a.spec)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad corpus spec {a.spec}: {exc}") from None
    graphs = expand(specs)
    records, repros = verify_corpus(graphs, checks, corrupt_guarantee=a.corrupt_guarantee, jobs=a.jobs)
    txt, js = write_report(records, repros, a.out)
    failed = [r for r in records if not r.passed and r.check not in REPORT_ONLY]
    sys.stdout.write(f"graphs: {len(graphs)}\nrecords: {len(records)}\nfailed: {len(failed)}\nreport: {txt}\n")
    for r in failed[:20]:
        sys.stdout.write(f"FAIL {r.line()}\n")
    if repros:
        sys.stdout.write(f"reproducers: {Path(a.out) / 'repro'}\n")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_render(a):
    g = _load(a.file)
    tree = curve = state = None
    burned = protected = None
    if a.curve:
        r = _root(g, a.root)
        tree = bfs_tree(g, r)
        curve = find_balanced_curve(g, tree).curve
    if a.state:
        try:
            data = json.loads(Path(a.state).read_text())
            burned, protected = data["burned"], data["protected"]
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"bad state file {a.state}: {exc}") from None
        if any(not 0 <= v < g.n for v in [*burned, *protected]):
            raise UsageError("state file names vertices outside the graph")
    svg = render_svg(g, tree=tree, curve=curve, state=state, burned=burned, protected=protected)
    Path(a.output).write_text(svg)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fb", description="Plane-graph firefighting workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="parse and check an embedded graph")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("gen", help="generate a family member")
    s.add_argument("family")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--base", help="base graph for subdivide, e.g. apollonian:15")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("separator", help="balanced Jordan curve for a BFS root")
    s.add_argument("file")
    s.add_argument("--root", type=int, required=True)
    s.set_defaults(func=cmd_separator)

    s = sub.add_parser("simulate", help="play a strategy from a root")
    s.add_argument("file")
    s.add_argument("--root", type=int, required=True)
    s.add_argument("--strategy", choices=["lemma22", "degree4", "dispatch", "null"], default="dispatch")
    s.add_argument("--budgets", help="e.g. '3,2*' (head list, then the repeating tail)")
    s.add_argument("--state-out", help="write the terminal state as JSON")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sn-exact", help="exact firefighter number")
    s.add_argument("file")
    s.add_argument("--root", type=int, required=True)
    s.add_argument("--budgets", default="2*")
    s.add_argument("--max-n", type=int, default=SearchLimits.max_n)
    s.add_argument("--max-nodes", type=int, default=SearchLimits.max_nodes)
    s.set_defaults(func=cmd_sn_exact)

    s = sub.add_parser("rate", help="surviving-rate report")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.add_argument("--exact-cap", type=int, default=12, help="largest n for the exact rate")
    s.set_defaults(func=cmd_rate)

    s = sub.add_parser("lp", help="minimum of the class-count program")
    s.add_argument("--eps", required=True, help="rational, e.g. 3/2")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_lp)

    s = sub.add_parser("verify", help="run corpus checks")
    s.add_argument("--spec", required=True)
    s.add_argument("--checks", help=f"comma list from {','.join(CHECKS)} (default all)")
    s.add_argument("--out", default="verify-out")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--corrupt-guarantee", action="store_true", help="raise every strategy guarantee by n (negative test)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="SVG drawing")
    s.add_argument("file")
    s.add_argument("--curve", action="store_true", help="draw the BFS tree and balanced curve")
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--state", help="state JSON from simulate --state-out")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"fb: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PlaneGraphError as exc:
        print(f"fb: invalid graph: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OracleLimitExceeded as exc:
        print(f"fb: oracle cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SeparatorError as exc:
        print(f"fb: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
