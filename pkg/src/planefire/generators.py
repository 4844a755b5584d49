"""Plane graph families with explicit embeddings.

Geometric families are laid out with coordinates, rotations are read off
by sorting neighbours clockwise, and the outer face is the face traced
with negative signed area.  Apollonian networks and subdivisions are
built combinatorially.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .embedding import PlaneGraph, PlaneGraphError

__all__ = [
    "FAMILIES",
    "generate",
    "family_id",
    "from_coordinates",
    "grid",
    "cycle",
    "path",
    "star",
    "k2n",
    "wheel",
    "hex_patch",
    "apollonian",
    "subdivide",
    "octahedron",
    "complete4",
]


def from_coordinates(points: Sequence[tuple[float, float]], edges) -> PlaneGraph:
    n = len(points)
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def angle(u, v):
        return math.atan2(points[v][1] - points[u][1], points[v][0] - points[u][0])

    # decreasing angle == clockwise with y pointing up
    adjacency = [tuple(sorted(nbrs[u], key=lambda v: (-angle(u, v), v))) for u in range(n)]
    if n == 1:
        return PlaneGraph(1, ((),))
    probe = PlaneGraph.unchecked(n, adjacency)
    from .embedding import Faces

    faces = Faces.trace(probe)

    def area(walk):
        return sum(points[a][0] * points[b][1] - points[b][0] * points[a][1] for a, b in walk)

    best = min(range(len(faces.walks)), key=lambda f: (round(area(faces.walks[f]), 9), f))
    return PlaneGraph(n, tuple(adjacency), faces.walks[best][0])


def grid(w: int, h: int) -> PlaneGraph:
    if w < 1 or h < 1 or w * h < 1:
        raise PlaneGraphError("grid dimensions must be positive")
    pts = [(x, y) for y in range(h) for x in range(w)]
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return from_coordinates(pts, edges)


def cycle(n: int) -> PlaneGraph:
    if n < 3:
        raise PlaneGraphError("cycle needs n >= 3")
    pts = [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
    return from_coordinates(pts, [(k, (k + 1) % n) for k in range(n)])


def path(n: int) -> PlaneGraph:
    if n < 1:
        raise PlaneGraphError("path needs n >= 1")
    return from_coordinates([(k, 0) for k in range(n)], [(k, k + 1) for k in range(n - 1)])


def star(leaves: int) -> PlaneGraph:
    """K_{1,leaves} with centre 0."""
    if leaves < 1:
        raise PlaneGraphError("star needs at least one leaf")
    pts = [(0.0, 0.0)] + [
        (math.cos(2 * math.pi * k / leaves), math.sin(2 * math.pi * k / leaves)) for k in range(leaves)
    ]
    return from_coordinates(pts, [(0, k + 1) for k in range(leaves)])


def k2n(n: int) -> PlaneGraph:
    """K_{2,n}: hubs 0 and 1, leaves 2..n+1."""
    if n < 1:
        raise PlaneGraphError("K_{2,n} needs n >= 1")
    pts = [(0.0, 1.0), (0.0, -1.0)] + [(k - (n - 1) / 2, 0.0) for k in range(n)]
    edges = [(hub, k + 2) for hub in (0, 1) for k in range(n)]
    return from_coordinates(pts, edges)


def wheel(n: int) -> PlaneGraph:
    """Hub 0 joined to a rim cycle 1..n."""
    if n < 3:
        raise PlaneGraphError("wheel needs a rim of at least 3")
    pts = [(0.0, 0.0)] + [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
    edges = [(0, k + 1) for k in range(n)] + [(k + 1, (k + 1) % n + 1) for k in range(n)]
    return from_coordinates(pts, edges)


def hex_patch(r: int) -> PlaneGraph:
    """Honeycomb patch: all hexagons within hex distance ``r - 1`` of a centre hexagon."""
    if r < 1:
        raise PlaneGraphError("hex patch radius must be >= 1")
    index = {}
    pts = []
    edges = set()
    centres = []
    for q in range(-(r - 1), r):
        for s in range(-(r - 1), r):
            if abs(q + s) <= r - 1:
                centres.append((math.sqrt(3) * (q + s / 2), 1.5 * s))
    for cx, cy in centres:
        corner_ids = []
        for k in range(6):
            a = math.pi / 6 + k * math.pi / 3
            key = (round(cx + math.cos(a), 6), round(cy + math.sin(a), 6))
            if key not in index:
                index[key] = len(pts)
                pts.append(key)
            corner_ids.append(index[key])
        for k in range(6):
            a, b = corner_ids[k], corner_ids[(k + 1) % 6]
            edges.add((min(a, b), max(a, b)))
    return from_coordinates(pts, sorted(edges))


def complete4() -> PlaneGraph:
    pts = [(0.0, 2.0), (-math.sqrt(3), -1.0), (math.sqrt(3), -1.0), (0.0, 0.0)]
    return from_coordinates(pts, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def octahedron() -> PlaneGraph:
    outer = [(0.0, 3.0), (-3 * math.sqrt(3) / 2, -1.5), (3 * math.sqrt(3) / 2, -1.5)]
    inner = [(0.0, -1.0), (math.sqrt(3) / 2, 0.5), (-math.sqrt(3) / 2, 0.5)]
    pts = outer + inner
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
             (0, 4), (0, 5), (1, 5), (1, 3), (2, 3), (2, 4)]
    return from_coordinates(pts, edges)


def _stellar(adjacency: list[list[int]], walk) -> int:
    """Insert a vertex into the triangular face ``walk`` (a->b->c)."""
    (a, b), (_, c), _ = walk
    x = len(adjacency)
    for w, pred in ((a, c), (b, a), (c, b)):
        rot = adjacency[w]
        rot.insert(rot.index(pred) + 1, x)
    adjacency.append([a, c, b])
    return x


def apollonian(steps: int, seed: int = 0) -> PlaneGraph:
    """Start from K4 and ``steps`` times insert a vertex into a uniform random face."""
    if steps < 0:
        raise PlaneGraphError("steps must be >= 0")
    rng = random.Random(seed)
    g = complete4()
    adjacency = [list(r) for r in g.adjacency]
    outer = g.outer
    for _ in range(steps):
        cur = PlaneGraph(len(adjacency), tuple(map(tuple, adjacency)), outer)
        walks = cur.faces.walks
        _stellar(adjacency, walks[rng.randrange(len(walks))])
    return PlaneGraph(len(adjacency), tuple(map(tuple, adjacency)), outer)


def subdivide(base: PlaneGraph, seed: int = 0, count: int = 1) -> PlaneGraph:
    """Replace ``count`` uniformly chosen edges by 2-paths."""
    if count < 0:
        raise PlaneGraphError("count must be >= 0")
    rng = random.Random(seed)
    adjacency = [list(r) for r in base.adjacency]
    outer = base.outer
    for _ in range(count):
        edges = sorted((u, v) for u in range(len(adjacency)) for v in adjacency[u] if u < v)
        if not edges:
            raise PlaneGraphError("cannot subdivide a graph without edges")
        u, v = edges[rng.randrange(len(edges))]
        w = len(adjacency)
        adjacency[u][adjacency[u].index(v)] = w
        adjacency[v][adjacency[v].index(u)] = w
        adjacency.append([u, v])
        if outer == (u, v):
            outer = (u, w)
        elif outer == (v, u):
            outer = (v, w)
    return PlaneGraph(len(adjacency), tuple(map(tuple, adjacency)), outer)


FAMILIES = {
    "grid": (grid, 2),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "k2n": (k2n, 1),
    "wheel": (wheel, 1),
    "hex_patch": (hex_patch, 1),
    "apollonian": (apollonian, 1),
    "octahedron": (octahedron, 0),
    "k4": (complete4, 0),
}


def family_id(family: str, params: Sequence[int], seed: int | None = None, base: str | None = None) -> str:
    inner = ",".join(str(p) for p in params)
    if base is not None:
        inner = f"{base};{inner}" if inner else base
    if seed is not None and family in ("apollonian", "subdivide"):
        inner = f"{inner};seed={seed}" if inner else f"seed={seed}"
    return f"{family}({inner})"


def generate(family: str, params: Sequence[int] = (), seed: int = 0, base: str | None = None) -> PlaneGraph:
    """Build a family member.

    ``subdivide`` takes ``base`` as a ``family:p1,p2`` string and
    ``params = (count,)``.
    """
    params = [int(p) for p in params]
    if family == "subdivide":
        if base is None:
            raise PlaneGraphError("subdivide needs a base graph, e.g. base='grid:4,4'")
        name, _, rest = base.partition(":")
        base_params = [int(p) for p in rest.split(",") if p]
        if len(params) != 1:
            raise PlaneGraphError("subdivide takes one parameter: count")
        return subdivide(generate(name, base_params, seed), seed, params[0])
    if family not in FAMILIES:
        raise PlaneGraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES) + ['subdivide']}")
    fn, arity = FAMILIES[family]
    if len(params) != arity:
        raise PlaneGraphError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if family == "apollonian":
        return fn(params[0], seed)
    return fn(*params)
