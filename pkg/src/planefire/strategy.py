"""Constructive two-firefighter defences built on balanced curves.

Every defence here is a fixed per-round target plan (vertices along two
shortest paths out of the fire, plus a few hand-picked neighbours of the
ignition vertex) wrapped in a deterministic fallback that spends unused
budget on fire-adjacent vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .embedding import (
    JordanCurve,
    PlaneGraph,
    RegionPartition,
    bfs_distances,
    bfs_tree,
    curve_partition,
    edge_site,
)
from .engine import BudgetSchedule, GameState, run
from .separator import BalancedCurve, find_balanced_curve

__all__ = [
    "Guarantee",
    "StrategyOutcome",
    "PlannedDefense",
    "NullDefense",
    "two_path_protection",
    "lemma22_defense",
    "degree4_defense",
    "null_defense",
    "neighbors_defense",
    "dispatch_defense",
    "lemma32_applies",
    "lemma22_schedule",
]

SIDES = ("interior", "exterior")
TWO = BudgetSchedule.constant(2)
THREE_TWO = BudgetSchedule((3,), 2)


@dataclass(frozen=True)
class Guarantee:
    """``saved > bound`` (strict) or ``saved >= bound``."""

    bound: Fraction
    strict: bool
    label: str

    def holds(self, saved: int) -> bool:
        return saved > self.bound if self.strict else saved >= self.bound

    def __str__(self):
        return f"{'>' if self.strict else '>='} {self.label}"


def _g_third_minus(n):
    return Guarantee(Fraction(n, 3) - 1, True, "n/3 - 1")


def _g_third_plus(n):
    return Guarantee(Fraction(n, 3) + 1, True, "n/3 + 1")


def _g_sixth_minus(n):
    return Guarantee(Fraction(n, 6) - 1, True, "n/6 - 1")


@dataclass(frozen=True)
class StrategyOutcome:
    saved: int
    guarantee: Guarantee
    case_trace: str
    schedule: BudgetSchedule
    state: GameState = field(repr=False)
    curve: Optional[JordanCurve] = field(default=None, repr=False)
    side: Optional[str] = None

    @property
    def case(self) -> Optional[int]:
        """Case number (2..6) for degree-4 defences, else None."""
        if self.case_trace.startswith("case"):
            return int(self.case_trace[4])
        return None

    @property
    def ok(self) -> bool:
        return self.guarantee.holds(self.saved)


class PlannedDefense:
    """Protect planned targets each round; spare budget goes to the fallback.

    Fallback: lowest-id fire-adjacent vertices inside ``prefer`` first, then
    any other fire-adjacent vertex.  ``fallback=False`` skips instead.
    """

    def __init__(self, plan: dict[int, Sequence[int]], prefer: Iterable[int] = (), fallback: bool = True):
        self.plan = {t: list(vs) for t, vs in plan.items()}
        self.prefer = frozenset(prefer)
        self.fallback = fallback

    def __call__(self, s: GameState) -> list[int]:
        t = s.round + 1
        budget = s.next_budget
        chosen: list[int] = []
        for v in self.plan.get(t, ()):
            if len(chosen) == budget:
                break
            if v not in s.burned and v not in s.protected and v not in chosen:
                chosen.append(v)
        if self.fallback and len(chosen) < budget:
            front = sorted(s.frontier() - set(chosen), key=lambda v: (v not in self.prefer, v))
            chosen.extend(front[: budget - len(chosen)])
        return chosen


class NullDefense:
    """Greedy: protect the fire-adjacent vertices with most unburned neighbours."""

    def __call__(self, s: GameState) -> list[int]:
        g = s.graph

        def weight(v):
            return sum(1 for w in g.adjacency[v] if w not in s.burned and w not in s.protected)

        front = sorted(s.frontier(), key=lambda v: (-weight(v), v))
        return front[: s.next_budget]


def lemma22_schedule(g: PlaneGraph, root: int) -> BudgetSchedule:
    return BudgetSchedule((2 + (g.degree(root) - 2) // 2,), 2)


def _path_plan(paths: Sequence[Sequence[int]], extra_first: Sequence[int] = ()) -> dict[int, list[int]]:
    plan: dict[int, list[int]] = {}
    horizon = max(len(p) for p in paths)
    for t in range(1, horizon):
        plan[t] = [p[t] for p in paths if t < len(p)]
    plan.setdefault(1, []).extend(extra_first)
    return plan


def _root_paths(g: PlaneGraph, root: int, curve: JordanCurve) -> tuple[list[int], list[int]]:
    prefix = bfs_tree(g, root).root_path(curve.z)
    return prefix + list(curve.u_path[1:]), prefix + list(curve.v_path[1:])


def _side_neighbors(g: PlaneGraph, root: int, part: RegionPartition, side: str) -> list[int]:
    region = part.open(side)
    return [w for w in g.adjacency[root] if w in region]


def _pick_side(g: PlaneGraph, root: int, part: RegionPartition) -> str:
    """Side with fewest off-curve root neighbours; ties -> larger closed side -> interior."""
    return min(
        SIDES,
        key=lambda s: (len(_side_neighbors(g, root, part, s)), -len(part.closed(s)), SIDES.index(s)),
    )


def two_path_protection(
    g: PlaneGraph,
    root: int,
    curve: BalancedCurve | JordanCurve,
    side: str,
    fallback: bool = True,
    paths: Optional[Sequence[Sequence[int]]] = None,
    partition: Optional[RegionPartition] = None,
) -> PlannedDefense:
    """Round ``t`` protects the depth-``t`` vertices of both root paths.

    When the root lies on the curve its off-curve neighbours on ``side`` are
    added to round 1.
    """
    if isinstance(curve, BalancedCurve):
        partition = partition or curve.partition
        curve = curve.curve
    if partition is None:
        partition = curve_partition(g, curve)
    if paths is None:
        paths = _root_paths(g, root, curve)
    extra = _side_neighbors(g, root, partition, side) if root in partition.on_curve else []
    return PlannedDefense(_path_plan(paths, extra), partition.closed(side), fallback)


def _play(g, root, strategy, schedule, guarantee, trace, curve=None, side=None) -> StrategyOutcome:
    state, saved = run(g, root, strategy, schedule)
    return StrategyOutcome(saved, guarantee, trace, schedule, state, curve, side)


def lemma22_defense(
    g: PlaneGraph, root: int, schedule: Optional[BudgetSchedule] = None, fallback: bool = True
) -> StrategyOutcome:
    """Protect a balanced curve plus the root's neighbours on the lighter side."""
    schedule = schedule or lemma22_schedule(g, root)
    bc = find_balanced_curve(g, bfs_tree(g, root))
    side = _pick_side(g, root, bc.partition)
    strat = two_path_protection(g, root, bc, side, fallback)
    return _play(g, root, strat, schedule, _g_third_minus(g.n), "lemma22", bc.curve, side)


def neighbors_defense(g: PlaneGraph, root: int, schedule: BudgetSchedule = TWO) -> StrategyOutcome:
    """Degree <= 2: wall off the root in round 1."""
    strat = PlannedDefense({1: list(g.adjacency[root])})
    return _play(g, root, strat, schedule, Guarantee(Fraction(g.n - 1), False, "n - 1"), "low-degree")


def null_defense(g: PlaneGraph, root: int, schedule: BudgetSchedule = TWO) -> StrategyOutcome:
    guarantee = Guarantee(Fraction(min(2, g.n - 1)), False, "2")
    return _play(g, root, NullDefense(), schedule, guarantee, "null-defense")


def lemma32_applies(g: PlaneGraph, root: int) -> bool:
    return g.n >= 5 and g.degree(root) == 4 and sum(g.degree(w) > 5 for w in g.adjacency[root]) <= 1


# -- the degree-4 case analysis ------------------------------------------------


def _geodesic(g: PlaneGraph, start: int, target: int, dist: list[int], stop: set[int], prefer: set[int]) -> list[int]:
    """Shortest path start -> target, halting at the first vertex in ``stop``."""
    out = [start]
    cur = start
    while cur != target and cur not in stop:
        nxt = [w for w in g.adjacency[cur] if dist[w] == dist[cur] - 1]
        cur = min(nxt, key=lambda w: (w not in prefer, w))
        out.append(cur)
    return out


def _sealed(g, root, curve):
    part = curve_partition(g, curve)
    side = _pick_side(g, root, part)
    return part, side


def degree4_defense(g: PlaneGraph, root: int, fallback: bool = True) -> StrategyOutcome:
    """Case analysis for a degree-4 ignition vertex with at most one heavy neighbour."""
    if not lemma32_applies(g, root):
        raise ValueError(f"vertex {root} does not meet the degree-4 preconditions")
    n = g.n
    r = root
    t = bfs_tree(g, r)
    bc = find_balanced_curve(g, t)
    curve = bc.curve
    U, V = _root_paths(g, r, curve)
    if len(U) == 1:
        U, V = V, U
        curve = curve.reversed()
    rot = g.adjacency[r]
    a = U[1]
    k0 = rot.index(a)
    b, c, d = rot[(k0 + 1) % 4], rot[(k0 + 2) % 4], rot[(k0 + 3) % 4]

    def two_path(cur, paths, part, side, guarantee, trace):
        strat = two_path_protection(g, r, cur, side, fallback, paths=paths, partition=part)
        return _play(g, r, strat, TWO, guarantee, trace, cur, side)

    if len(V) > 1 and V[1] == a:
        part = bc.partition
        side = _pick_side(g, r, part)
        return two_path(curve, (U, V), part, side, _g_third_plus(n), "case2: root off the curve")
    if len(V) == 1 or V[1] in (b, d):
        part = bc.partition
        side = min(SIDES, key=lambda s: (len(_side_neighbors(g, r, part, s)), SIDES.index(s)))
        trace = "case3: arc ends at the root" if len(V) == 1 else "case3: second path through b or d"
        return two_path(curve, (U, V), part, side, _g_third_minus(n), trace)

    # v_1 == c from here on
    i = len(U) - 1
    u = U[-1]
    on_uv = {w: ("U", k) for k, w in enumerate(U)}
    on_uv.update({w: ("V", k) for k, w in enumerate(V)})
    on_uv.pop(r)
    dist_u = bfs_distances(g, u)

    shortcut = []
    for x in (b, d):
        if dist_u[x] != i - 1:
            continue
        P = [r] + _geodesic(g, x, u, dist_u, set(on_uv), set(on_uv))
        y = P[-1]
        k = len(P) - 1
        which, _ = on_uv[y]
        if which == "U":
            c1 = JordanCurve(tuple(U[: k + 1]), tuple(P[:k]), edge_site(g, P[k - 1], y))
            c2 = JordanCurve(tuple(P + U[k + 1:]), tuple(V), curve.arc)
        else:
            c1 = JordanCurve(tuple(V[: k + 1]), tuple(P[:k]), edge_site(g, P[k - 1], y))
            c2 = JordanCurve(tuple(U), tuple(P + V[k + 1:]), curve.arc)
        for cur in (c1, c2):
            part, side = _sealed(g, r, cur)
            shortcut.append((len(part.closed(side)), cur, part, side, x))
    if shortcut:
        shortcut.sort(key=lambda e: -e[0])
        _, cur, part, side, x = shortcut[0]
        label = "b" if x == b else "d"
        return two_path(cur, (cur.u_path, cur.v_path), part, side, _g_sixth_minus(n),
                        f"case4: shortcut through {label}")

    dist_c = bfs_distances(g, c)
    reentry = next((ip for ip in range(2, i + 1) if 1 + dist_c[U[ip]] == ip), None)
    trace = "case6: final"
    if reentry is not None:
        ip = reentry
        Q = [r] + _geodesic(g, c, U[ip], bfs_distances(g, U[ip]), set(), set(V))
        k = max(s for s in range(min(len(Q), len(V))) if Q[s] == V[s])
        piece = JordanCurve(tuple(Q[k:ip + 1] + U[ip + 1:]), tuple(V[k:]), curve.arc)
        ppart = curve_partition(g, piece)
        far = "exterior" if r in ppart.interior else "interior"
        if 6 * len(ppart.closed(far)) > n - 6:
            paths = (V[:k] + list(piece.u_path), V)
            return two_path(piece, paths, ppart, far, _g_sixth_minus(n), "case5: piece beyond the re-entry")
        curve = JordanCurve(tuple(U[:ip]), tuple(Q[: ip + 1]), edge_site(g, U[ip - 1], U[ip]))
        U, V = list(curve.u_path), list(curve.v_path)
        trace = "case5: re-entry curve, final defence"

    # final case
    part = curve_partition(g, curve)
    if g.degree(V[1]) > g.degree(U[1]):
        U, V = V, U
    a, c = U[1], V[1]
    off = [w for w in rot if w not in (a, c)]

    def c_count(s):
        closed = part.closed(s)
        return sum(1 for w in g.adjacency[c] if w in closed)

    side = min(SIDES, key=lambda s: (c_count(s), -len(part.closed(s)), SIDES.index(s)))
    closed = part.closed(side)
    s_nbr = [w for w in off if w in part.open(side)]
    c_nbrs = sorted((w for w in g.adjacency[c] if w in closed and w != r), key=lambda w: (w not in part.on_curve, w))
    plan = {1: [a] + s_nbr, 2: c_nbrs}
    for tt in range(3, max(len(U) + 1, len(V)) + 1):
        plan[tt] = [p[k] for p, k in ((U, tt - 1), (V, tt)) if k < len(p)]
    strat = PlannedDefense(plan, closed, fallback)
    return _play(g, r, strat, TWO, _g_sixth_minus(n), trace, curve, side)


def dispatch_defense(g: PlaneGraph, root: int, schedule_kind: str = "two") -> StrategyOutcome:
    """Pick the defence by the root's degree (and its neighbours' degrees)."""
    deg = g.degree(root)
    if schedule_kind == "two":
        if deg <= 2:
            return neighbors_defense(g, root, TWO)
        if deg == 3:
            return lemma22_defense(g, root, TWO)
        if lemma32_applies(g, root):
            return degree4_defense(g, root)
        return null_defense(g, root, TWO)
    if schedule_kind == "three_two":
        if deg <= 2:
            return neighbors_defense(g, root, THREE_TWO)
        if deg <= 4:
            return lemma22_defense(g, root, THREE_TWO)
        return null_defense(g, root, THREE_TWO)
    raise ValueError(f"unknown schedule kind {schedule_kind!r}")
