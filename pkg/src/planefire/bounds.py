"""Counting bounds on the 2-surviving rate.

Vertices are sorted into four classes by local degree conditions, the
class counts feed a lower bound on the rate, and a four-variable linear
program relaxes those counts to the average degree alone.  All arithmetic
is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .embedding import PlaneGraph
from .engine import BudgetSchedule, SearchLimits, rho_exact

__all__ = [
    "VertexClass",
    "LPInfeasible",
    "classify_vertex",
    "class_counts",
    "rate_lower_bound",
    "class_objective",
    "check_degree_inequality",
    "lp_min",
    "alpha_closed",
    "theorem12_bound",
    "epsilon",
    "tau",
    "RateReport",
    "build_rate_report",
]

NINE_HALVES = Fraction(9, 2)


class VertexClass(enum.Enum):
    X = "X"  # saves n - 1
    Y = "Y"  # saves more than n/3 - 1
    Z = "Z"  # saves more than n/6 - 1
    W = "W"  # saves at least 2


class LPInfeasible(ValueError):
    pass


def classify_vertex(g: PlaneGraph, v: int) -> VertexClass:
    deg = g.degree(v)
    if deg <= 2:
        return VertexClass.X
    if deg == 3:
        return VertexClass.Y
    if deg == 4 and sum(g.degree(w) >= 6 for w in g.adjacency[v]) <= 1:
        return VertexClass.Z
    return VertexClass.W


def class_counts(g: PlaneGraph) -> tuple[int, int, int, int]:
    counts = {c: 0 for c in VertexClass}
    for v in range(g.n):
        counts[classify_vertex(g, v)] += 1
    return counts[VertexClass.X], counts[VertexClass.Y], counts[VertexClass.Z], counts[VertexClass.W]


def class_objective(n, x, y, z, w) -> Fraction:
    """Unclamped rate bound for given class counts."""
    n = Fraction(n)
    return (n * (x + Fraction(y, 3) + Fraction(z, 6)) - (x + y + z) + 2 * w) / (n * n)


def rate_lower_bound(g: PlaneGraph) -> Fraction:
    """Lower bound on the 2-surviving rate from the class counts, clamped at 0."""
    return max(Fraction(0), class_objective(g.n, *class_counts(g)))


def check_degree_inequality(g: PlaneGraph) -> tuple[bool, Fraction]:
    """``2m >= x + 3y + 4z + 9/2 w``; returns (holds, slack).

    Fails only for the single vertex, whose degree 0 still counts as class X.
    """
    x, y, z, w = class_counts(g)
    slack = 2 * g.m - (x + 3 * y + 4 * z + NINE_HALVES * w)
    return slack >= 0, Fraction(slack)


def epsilon(n: int, m: int) -> Fraction:
    return NINE_HALVES - Fraction(2 * m, n)


def lp_min(n: int, eps) -> tuple[Fraction, tuple[Fraction, Fraction, Fraction, Fraction]]:
    """Exact minimum of the class-count objective over the degree polytope.

    Constraints: ``x+y+z+w = n``, ``x+3y+4z+9/2 w + s = (9/2-eps) n`` and
    all variables non-negative.  With two equality rows every vertex of the
    polytope picks two basic variables out of five, so all ten bases are
    solved by Cramer's rule and the best feasible one is returned.
    """
    n = Fraction(n)
    eps = Fraction(eps)
    if n < 1:
        raise ValueError("n must be >= 1")
    if eps <= 0:
        raise ValueError(f"eps={eps} must be positive")
    rhs = (NINE_HALVES - eps) * n
    if rhs < n:
        raise LPInfeasible(f"eps={eps}: even x = n violates the degree constraint")
    rows = ((1, 1, 1, 1, 0), (1, 3, 4, NINE_HALVES, 1))
    cost = ((n - 1) / n**2, (n / 3 - 1) / n**2, (n / 6 - 1) / n**2, 2 / n**2, Fraction(0))
    best = None
    for p, q in combinations(range(5), 2):
        a, b = Fraction(rows[0][p]), Fraction(rows[0][q])
        c, d = Fraction(rows[1][p]), Fraction(rows[1][q])
        det = a * d - b * c
        if det == 0:
            continue
        vp = (n * d - b * rhs) / det
        vq = (a * rhs - c * n) / det
        if vp < 0 or vq < 0:
            continue
        sol = [Fraction(0)] * 5
        sol[p], sol[q] = vp, vq
        val = sum(ci * si for ci, si in zip(cost, sol))
        key = (val, tuple(sol))
        if best is None or key < best:
            best = key
    if best is None:
        raise LPInfeasible(f"no feasible basis for eps={eps}")
    val, sol = best
    return val, tuple(sol[:4])


def alpha_closed(n: int, eps) -> Fraction:
    """Closed-form candidate for the LP minimum: one branch up to eps = 3/2, another above."""
    n = Fraction(n)
    eps = Fraction(eps)
    if eps <= 0 or eps > Fraction(5, 2):
        raise ValueError(f"eps={eps} outside (0, 5/2]")
    if eps <= Fraction(3, 2):
        return (Fraction(2, 9) * eps * n**2 - Fraction(2, 3) * eps * n + 2 * (1 - Fraction(2, 3) * eps) * n) / n**2
    return Fraction(2, 9) * eps - 1 / n


def theorem12_bound(n: int, m: int) -> Optional[Fraction]:
    """Guaranteed 2-surviving rate from average degree, or None when 2m/n >= 9/2."""
    eps = epsilon(n, m)
    if eps <= 0:
        return None
    if eps <= 1:
        return Fraction(2, 9) * eps
    return Fraction(2, 9) * eps - Fraction(1, n)


def tau(k: int) -> Fraction:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return Fraction(30, 11)
    return k + 2 - Fraction(1, k + 2)


@dataclass(frozen=True)
class RateReport:
    n: int
    m: int
    eps: Fraction
    x: int
    y: int
    z: int
    w: int
    bound_ineq1: Fraction
    bound_thm12: Optional[Fraction]
    lp_min: Optional[Fraction]
    simulated_rate: Fraction
    exact_rate: Optional[Fraction]
    degree_slack: Fraction
    guarantees_ok: bool

    def items(self) -> list[tuple[str, object]]:
        return [(k, getattr(self, k)) for k in self.__dataclass_fields__]


def build_rate_report(g: PlaneGraph, limits: SearchLimits = SearchLimits(max_n=12)) -> RateReport:
    from .strategy import dispatch_defense

    x, y, z, w = class_counts(g)
    eps = epsilon(g.n, g.m)
    lp = None
    if 0 < eps <= Fraction(7, 2):
        lp = lp_min(g.n, eps)[0]
    outcomes = [dispatch_defense(g, v) for v in range(g.n)]
    simulated = Fraction(sum(o.saved for o in outcomes), g.n * g.n)
    ok = all(o.ok for o in outcomes) if g.n >= 5 else True
    exact = rho_exact(g, BudgetSchedule.constant(2), limits) if g.n <= limits.max_n else None
    return RateReport(
        n=g.n,
        m=g.m,
        eps=eps,
        x=x,
        y=y,
        z=z,
        w=w,
        bound_ineq1=rate_lower_bound(g),
        bound_thm12=theorem12_bound(g.n, g.m) if g.n >= 2 else None,
        lp_min=lp,
        simulated_rate=simulated,
        exact_rate=exact,
        degree_slack=check_degree_inequality(g)[1],
        guarantees_ok=ok,
    )
