"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import json
import shutil
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE, CORPUS
from planefire.bounds import alpha_closed, build_rate_report, lp_min, theorem12_bound
from planefire.corpus import expand, girth, load_spec
from planefire.embedding import bfs_tree
from planefire.engine import BudgetSchedule, SearchLimits, rho_exact, sn_exact, sn_exhaustive
from planefire.generators import apollonian, cycle, grid, hex_patch, k2n, path
from planefire.separator import find_balanced_curve
from planefire.strategy import lemma32_applies

FULL = CORPUS / "full.json"
TWO = BudgetSchedule.constant(2)
ONE = BudgetSchedule.constant(1)


def verdict(num, title, failures, info=""):
    ok = not failures
    line = f"criterion {num} {'PASS' if ok else 'FAIL'}: {title}"
    if info:
        line += f" [{info}]"
    if failures:
        line += " -- " + "; ".join(failures[:6]) + (f" (+{len(failures) - 6} more)" if len(failures) > 6 else "")
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def _fb():
    exe = shutil.which("fb")
    return [exe] if exe else [sys.executable, "-m", "planefire.cli"]


@pytest.fixture(scope="module")
def graphs():
    return dict(expand(load_spec(FULL)))


@pytest.fixture(scope="module")
def runs(tmp_path_factory):
    """Two consecutive CLI verification runs over the full corpus."""
    out = []
    for k in range(2):
        d = tmp_path_factory.mktemp(f"verify{k}")
        start = time.perf_counter()
        proc = subprocess.run(_fb() + ["verify", "--spec", str(FULL), "--out", str(d)], capture_output=True, text=True)
        out.append((d, proc, time.perf_counter() - start))
    return out


@pytest.fixture(scope="module")
def records(runs):
    d, proc, _ = runs[0]
    assert proc.returncode in (0, 3), proc.stderr
    data = json.loads((d / "report.json").read_text())
    by = {}
    for r in data["records"]:
        by.setdefault(r["check"], []).append(r)
    return by


def _coverage(graphs, records, check, want):
    """Graphs in ``want`` lacking a passing record, plus every failing record."""
    passed = {r["graph_id"] for r in records.get(check, []) if r["passed"]}
    missing = [f"{gid}: no passing {check} record" for gid in sorted(want) if gid not in passed]
    failed = [f"{r['graph_id']} root {r['root']}: saved {r['saved']} vs {r['guarantee']}" for r in records.get(check, []) if not r["passed"]]
    return missing + failed


def test_criterion_01_separator_balance(graphs, records):
    failures = []
    if len(graphs) < 200:
        failures.append(f"only {len(graphs)} corpus graphs")
    ids = set(graphs)
    needed = ["grid(2,2)", "grid(14,14)", "cycle(60)", "path(60)", "hex_patch(4)"]
    failures += [f"corpus lacks {gid}" for gid in needed if gid not in ids]
    if max(g.n for gid, g in graphs.items() if gid.startswith("apollonian")) != 60:
        failures.append("no apollonian graph with n = 60")
    if not any(gid.startswith("subdivide") for gid in ids):
        failures.append("no subdivisions")
    failures += _coverage(graphs, records, "separator_balance", [gid for gid, g in graphs.items() if g.n >= 2])
    # timing at desk scale, one root per graph
    slowest = 0.0
    for g in (grid(22, 22), apollonian(496, 1), hex_patch(9), cycle(500), path(500)):
        for r in (0, g.n // 2):
            start = time.perf_counter()
            find_balanced_curve(g, bfs_tree(g, r))
            slowest = max(slowest, time.perf_counter() - start)
    if slowest >= 1.0:
        failures.append(f"slowest separator call at n <= 500 took {slowest:.2f} s")
    verdict(1, "balanced curve for every root, regions < 2n/3, <= 2 curve vertices per level", failures,
            f"{len(graphs)} graphs, slowest n~500 call {slowest:.3f} s")


def test_criterion_02_lemma22(graphs, records):
    failures = _coverage(graphs, records, "lemma22", [gid for gid, g in graphs.items() if g.n >= 5])
    verdict(2, "lemma22_defense saves > n/3 - 1 from every root (n >= 5)", failures)


def test_criterion_03_low_degree(graphs, records):
    want = [gid for gid, g in graphs.items() if any(g.degree(v) <= 3 for v in range(g.n))]
    failures = _coverage(graphs, records, "obs31", want)
    verdict(3, "deg <= 2 roots save n - 1, deg-3 roots save > n/3 - 1", failures, f"{len(want)} graphs")


def test_criterion_04_degree4(graphs, records):
    want = [gid for gid, g in graphs.items() if any(lemma32_applies(g, v) for v in range(g.n))]
    failures = _coverage(graphs, records, "lemma32", want)
    seen = set()
    for r in records.get("lemma32", []):
        if r["detail"].startswith("traces="):
            seen.update(r["detail"].split(";")[0][len("traces="):].split(","))
    missing = [f"case {k} never fired" for k in range(2, 7) if f"case{k}" not in seen]
    verdict(4, "degree-4 roots save > n/6 - 1 and cases 2-6 all occur", failures + missing,
            f"{len(want)} graphs, cases seen {sorted(seen)}")


def test_criterion_05_oracle(graphs, records):
    failures = _coverage(graphs, records, "oracle_dominance", [gid for gid, g in graphs.items() if g.n <= 12])
    c5 = cycle(5)
    if any(sn_exact(c5, v, TWO) != 4 for v in range(5)):
        failures.append("sn2(C5) != 4")
    g = grid(3, 3)
    got = (sn_exact(g, 4, TWO), sn_exhaustive(g, 4, TWO))
    if got != (5, 5):
        failures.append(f"sn2(3x3 grid, centre) = {got}, expected 5")
    k = k2n(3)
    hub = (sn_exact(k, 0, ONE), sn_exhaustive(k, 0, ONE))
    if hub != (1, 1):
        failures.append(f"sn1(K2,3, hub) = {hub[0]} (exhaustive {hub[1]}), expected 1")
    leaf = (sn_exact(k, 2, ONE), sn_exhaustive(k, 2, ONE))
    if leaf != (2, 2):
        failures.append(f"sn1(K2,3, leaf) = {leaf}, expected 2")
    compared = 0
    for gid, h in graphs.items():
        if h.n > 9:
            continue
        for sched in (ONE, TWO, BudgetSchedule((3,), 2)):
            for v in range(h.n):
                a, b = sn_exact(h, v, sched), sn_exhaustive(h, v, sched)
                compared += 1
                if a != b:
                    failures.append(f"{gid} root {v} {sched}: pruned {a}, exhaustive {b}")
    verdict(5, "strategies <= sn_exact; spot values; pruned == exhaustive for n <= 9", failures,
            f"{compared} pruned/exhaustive comparisons")


def test_criterion_06_lp():
    failures = []
    start = time.perf_counter()
    for n in (10, 100, 1000):
        for k in range(1, 26):
            eps = Fraction(k, 10)
            val, (x, y, z, w) = lp_min(n, eps)
            closed = alpha_closed(n, eps)
            if val != closed:
                failures.append(f"n={n} eps={eps}: lp {val} != closed {closed}")
            if eps <= Fraction(3, 2) and (x, z) != (0, 0):
                failures.append(f"n={n} eps={eps}: minimiser has x={x}, z={z}")
            if eps > Fraction(3, 2) and (w, z) != (0, 0):
                failures.append(f"n={n} eps={eps}: minimiser has w={w}, z={z}")
    elapsed = time.perf_counter() - start
    if elapsed > 1.0:
        failures.append(f"75 cells took {elapsed:.2f} s")
    verdict(6, "lp_min == alpha_closed on 75 cells with the stated minimiser structure", failures,
            f"{elapsed * 1000:.0f} ms")


def test_criterion_07_theorem12(graphs, records):
    free = [gid for gid, g in graphs.items() if g.n >= 9 and (girth(g) is None or girth(g) >= 4)]
    failures = _coverage(graphs, records, "corollary13", free)
    hexes = [gid for gid in free if gid.startswith("hex_patch")]
    if len(hexes) < 3:
        failures.append("too few hex patches among the triangle-free graphs")
    failures += _coverage(graphs, records, "theorem12", [gid for gid, g in graphs.items() if g.n >= 2 and theorem12_bound(g.n, g.m) is not None])
    small = 0
    for gid, g in graphs.items():
        if not 2 <= g.n <= 12 or theorem12_bound(g.n, g.m) is None:
            continue
        r = build_rate_report(g, SearchLimits(max_n=12))
        small += 1
        if not r.exact_rate >= r.simulated_rate >= r.bound_thm12:
            failures.append(f"{gid}: exact {r.exact_rate}, simulated {r.simulated_rate}, bound {r.bound_thm12}")
    verdict(7, "triangle-free / C4-free: bound > 1/9 and simulated >= bound; exact >= simulated >= bound for n <= 12",
            failures, f"{len(free)} triangle-free graphs, {small} exact checks")


def test_criterion_08_degree_inequality(graphs, records):
    failures = _coverage(graphs, records, "degree_inequality", list(graphs))
    verdict(8, "2m >= x + 3y + 4z + 9w/2 on every corpus graph", failures)


def test_criterion_09_k2n():
    rates = [rho_exact(k2n(n), 1) for n in range(2, 9)]
    failures = []
    if not all(a > b for a, b in zip(rates, rates[1:])):
        failures.append("not strictly decreasing")
    if not rates[-1] < Fraction(1, 5):
        failures.append(f"rho1(K2,8) = {rates[-1]}, not < 1/5")
    verdict(9, "rho1(K2,n) strictly decreasing for n = 2..8 and rho1(K2,8) < 1/5", failures,
            "rates " + ", ".join(map(str, rates)))


def test_criterion_10_corollary23_report(graphs, records, runs):
    want = {gid for gid, g in graphs.items()
            if g.n >= 2 and 2 * g.m < 4 * g.n and sum(g.degree(v) < 4 for v in range(g.n)) >= 2}
    got = {r["graph_id"] for r in records.get("report_cor23", [])}
    failures = [f"{gid}: no report line" for gid in sorted(want - got)]
    text = (runs[0][0] / "report.txt").read_text()
    if "report_cor23" not in text:
        failures.append("report.txt has no report_cor23 lines")
    below = sum("below 1/3" in r["detail"] for r in records.get("report_cor23", []))
    verdict(10, "rho_(3,2) reported against 1/3 (report only)", failures,
            f"{len(got)} graphs reported, {below} below 1/3")


def test_criterion_11_determinism(runs):
    (d1, p1, t1), (d2, p2, t2) = runs
    failures = []
    for name in ("report.txt", "report.json"):
        if (d1 / name).read_bytes() != (d2 / name).read_bytes():
            failures.append(f"{name} differs between runs")
    if p1.returncode != 0:
        failures.append(f"fb verify exited {p1.returncode}")
    if max(t1, t2) >= 600:
        failures.append(f"verify run took {max(t1, t2):.0f} s")
    verdict(11, "two fb verify runs give byte-identical reports", failures, f"runs {t1:.1f} s and {t2:.1f} s")
