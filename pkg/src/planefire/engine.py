"""Turn-based firefighting: protect, then spread.

Round 0 is the state right after ignition.  In round ``t >= 1`` the
defenders protect at most ``schedule.budget(t)`` vertices, then the fire
moves to every unprotected neighbour of a burning vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .embedding import PlaneGraph

__all__ = [
    "GameError",
    "OracleLimitExceeded",
    "BudgetSchedule",
    "GameState",
    "Strategy",
    "new_game",
    "step",
    "run",
    "sn_exact",
    "sn_exhaustive",
    "rho_exact",
    "SearchLimits",
]


class GameError(ValueError):
    """Illegal move or invalid game setup."""


class OracleLimitExceeded(RuntimeError):
    """The exact search hit its size or node cap; the answer is unknown."""


@dataclass(frozen=True)
class BudgetSchedule:
    """Per-round budgets: ``head`` for rounds 1..len(head), then ``tail`` forever."""

    head: tuple[int, ...] = ()
    tail: int = 2

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(b) for b in self.head))
        if any(b < 0 for b in self.head) or self.tail < 0:
            raise GameError("budgets must be non-negative")

    @classmethod
    def constant(cls, k: int) -> "BudgetSchedule":
        return cls((), k)

    @classmethod
    def parse(cls, text: str) -> "BudgetSchedule":
        """``"3,2*"`` -> head (3,), tail 2.  The starred entry must come last."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts or not parts[-1].endswith("*"):
            raise GameError(f"budget list {text!r} must end with a repeating 't*' entry")
        try:
            head = tuple(int(p) for p in parts[:-1])
            tail = int(parts[-1][:-1])
        except ValueError:
            raise GameError(f"malformed budget list {text!r}") from None
        return cls(head, tail)

    def budget(self, round_no: int) -> int:
        if round_no < 1:
            raise GameError("protection rounds start at 1")
        if round_no <= len(self.head):
            return self.head[round_no - 1]
        return self.tail

    def __str__(self):
        return ",".join([*map(str, self.head), f"{self.tail}*"])


@dataclass(frozen=True)
class GameState:
    graph: PlaneGraph = field(repr=False)
    burned: frozenset
    protected: frozenset
    round: int
    schedule: BudgetSchedule

    def frontier(self) -> set[int]:
        """Unburned, unprotected neighbours of the fire."""
        g = self.graph
        out = set()
        for b in self.burned:
            for w in g.adjacency[b]:
                if w not in self.burned and w not in self.protected:
                    out.add(w)
        return out

    @property
    def terminal(self) -> bool:
        return not self.frontier()

    @property
    def saved(self) -> int:
        return self.graph.n - len(self.burned)

    @property
    def next_budget(self) -> int:
        return self.schedule.budget(self.round + 1)


Strategy = Callable[[GameState], Iterable[int]]


def new_game(g: PlaneGraph, ignition: int, schedule: BudgetSchedule) -> GameState:
    if not isinstance(ignition, int) or not 0 <= ignition < g.n:
        raise GameError(f"invalid ignition vertex {ignition!r} for n={g.n}")
    return GameState(g, frozenset([ignition]), frozenset(), 0, schedule)


def step(s: GameState, protections: Iterable[int]) -> GameState:
    prot = set(protections)
    g = s.graph
    for v in prot:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise GameError(f"invalid vertex {v!r}")
        if v in s.burned:
            raise GameError(f"vertex {v} is on fire")
        if v in s.protected:
            raise GameError(f"vertex {v} is already protected")
    budget = s.next_budget
    if len(prot) > budget:
        raise GameError(f"round {s.round + 1}: {len(prot)} protections exceed budget {budget}")
    protected = s.protected | prot
    spread = {
        w
        for b in s.burned
        for w in g.adjacency[b]
        if w not in s.burned and w not in protected
    }
    return GameState(g, s.burned | spread, protected, s.round + 1, s.schedule)


def run(g: PlaneGraph, ignition: int, strategy: Strategy, schedule: BudgetSchedule) -> tuple[GameState, int]:
    """Play ``strategy`` until the fire stops; returns the final state and saved count."""
    s = new_game(g, ignition, schedule)
    while not s.terminal:
        s = step(s, strategy(s))
        if s.round > g.n:
            raise GameError("game exceeded n rounds")
    return s, s.saved


# -- exact search ------------------------------------------------------------


@dataclass(frozen=True)
class SearchLimits:
    max_n: int = 14
    max_nodes: int = 5_000_000


class _Bits:
    def __init__(self, g: PlaneGraph):
        self.n = g.n
        self.nbr = [sum(1 << w for w in g.adjacency[v]) for v in range(g.n)]
        self.full = (1 << g.n) - 1

    def spread(self, burned: int, protected: int) -> int:
        reach = 0
        b = burned
        while b:
            low = b & -b
            reach |= self.nbr[low.bit_length() - 1]
            b ^= low
        return burned | (reach & ~protected & ~burned)

    def reachable(self, burned: int, protected: int) -> int:
        """Unburned vertices connected to the fire through unprotected ones."""
        free = self.full & ~burned & ~protected
        seen = 0
        frontier = burned
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self.nbr[low.bit_length() - 1]
                f ^= low
            nxt &= free & ~seen
            seen |= nxt
            frontier = nxt
        return seen


def _bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def sn_exact(g: PlaneGraph, ignition: int, schedule: BudgetSchedule, limits: SearchLimits = SearchLimits()) -> int:
    """Maximum number of vertices savable, by memoised branch and bound.

    Only vertices still reachable from the fire are worth protecting, and
    spending the whole budget never hurts, so each round chooses exactly
    ``min(budget, |reachable|)`` of them.  A child whose unburned count
    cannot beat the best sibling is skipped.
    """
    if g.n > limits.max_n:
        raise OracleLimitExceeded(f"n={g.n} exceeds exact-search cap {limits.max_n}")
    new_game(g, ignition, schedule)
    bits = _Bits(g)
    head_len = len(schedule.head)
    memo: dict = {}
    nodes = 0

    def solve(burned: int, protected: int, rnd: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > limits.max_nodes:
            raise OracleLimitExceeded(f"node cap {limits.max_nodes} exceeded")
        cand = bits.reachable(burned, protected)
        unburned = g.n - bin(burned).count("1")
        if not cand:
            return unburned
        # everything neither burned nor reachable is safe for good
        key = (burned, cand, min(rnd, head_len + 1))
        hit = memo.get(key)
        if hit is not None:
            return hit
        budget = schedule.budget(rnd)
        verts = _bits_of(cand)
        k = min(budget, len(verts))
        # fire-adjacent vertices first: good moves early tighten the bound
        adj = 0
        for v in _bits_of(burned):
            adj |= bits.nbr[v]
        verts.sort(key=lambda v: (not (adj >> v) & 1, v))
        best = -1
        for choice in combinations(verts, k):
            mask = 0
            for v in choice:
                mask |= 1 << v
            p2 = protected | mask
            b2 = bits.spread(burned, p2)
            bound = g.n - bin(b2).count("1")
            if bound <= best:
                continue
            val = solve(b2, p2, rnd + 1)
            if val > best:
                best = val
                if best == unburned:
                    break
        memo[key] = best
        return best

    return solve(1 << ignition, 0, 1)


def sn_exhaustive(g: PlaneGraph, ignition: int, schedule: BudgetSchedule, max_n: int = 9) -> int:
    """Unpruned reference search over every protection subset of every size.

    No candidate restriction, memoisation or bounding; only for tiny graphs.
    """
    if g.n > max_n:
        raise OracleLimitExceeded(f"n={g.n} exceeds exhaustive cap {max_n}")

    def solve(s: GameState) -> int:
        if s.terminal:
            return s.saved
        free = [v for v in range(g.n) if v not in s.burned and v not in s.protected]
        best = 0
        for size in range(min(s.next_budget, len(free)) + 1):
            for choice in combinations(free, size):
                best = max(best, solve(step(s, choice)))
        return best

    return solve(new_game(g, ignition, schedule))


def rho_exact(g: PlaneGraph, k: int | BudgetSchedule, limits: SearchLimits = SearchLimits()) -> Fraction:
    """Exact surviving rate: mean of sn over ignition vertices, divided by n."""
    schedule = k if isinstance(k, BudgetSchedule) else BudgetSchedule.constant(k)
    total = sum(sn_exact(g, v, schedule, limits) for v in range(g.n))
    return Fraction(total, g.n * g.n)
