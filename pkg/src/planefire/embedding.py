"""Plane graphs stored as clockwise rotation systems.

A plane graph is a simple connected graph together with, for each vertex,
the cyclic clockwise order of its neighbours, plus one directed half-edge
that names the outer face.  Faces are the orbits of the successor map

    next(u -> v) = (v -> w),  w = the neighbour following u in rot(v).

Everything here is purely combinatorial; coordinates only exist in the
renderer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

__all__ = [
    "PlaneGraphError",
    "PlaneGraph",
    "SpanningTree",
    "ArcSite",
    "JordanCurve",
    "RegionPartition",
    "parse_plane_graph",
    "format_plane_graph",
    "trace_faces",
    "bfs_tree",
    "bfs_distances",
    "insert_arc",
    "region_partition",
    "curve_partition",
]


class PlaneGraphError(ValueError):
    """Raised for malformed embedded-graph input or invalid embedding ops."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=True)
class PlaneGraph:
    """Simple connected plane graph given by a clockwise rotation system.

    ``adjacency[v]`` is the cyclic clockwise neighbour sequence of ``v``.
    ``outer`` is a directed half-edge whose traced face is the outer face
    (``None`` only for the single-vertex graph).
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    outer: Optional[tuple[int, int]] = None
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        adjacency = tuple(tuple(int(w) for w in rot) for rot in self.adjacency)
        object.__setattr__(self, "adjacency", adjacency)
        if self.outer is not None:
            object.__setattr__(self, "outer", (int(self.outer[0]), int(self.outer[1])))
        validate(self)

    @classmethod
    def unchecked(cls, n, adjacency, outer=None, labels=None) -> "PlaneGraph":
        """Build without validation (used for intermediate, possibly broken states)."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adjacency", tuple(tuple(r) for r in adjacency))
        object.__setattr__(g, "outer", None if outer is None else tuple(outer))
        object.__setattr__(g, "labels", labels)
        return g

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._positions[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @cached_property
    def _positions(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(rot)} for rot in self.adjacency)

    def position(self, u: int, v: int) -> int:
        """Index of ``v`` in the rotation of ``u``."""
        return self._positions[u][v]

    def successor(self, v: int, u: int) -> int:
        """Neighbour following ``u`` clockwise around ``v``."""
        rot = self.adjacency[v]
        return rot[(self._positions[v][u] + 1) % len(rot)]

    @cached_property
    def faces(self) -> "Faces":
        return Faces.trace(self)

    def __hash__(self):
        return hash((self.n, self.adjacency, self.outer))

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m}, f={self.faces.count})"


@dataclass(frozen=True)
class Faces:
    """Face orbits plus half-edge -> (face, walk index) lookup."""

    walks: tuple[tuple[tuple[int, int], ...], ...]
    location: dict

    @classmethod
    def trace(cls, g: PlaneGraph) -> "Faces":
        seen = {}
        walks = []
        for u in range(g.n):
            for v in g.adjacency[u]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen[(a, b)] = (len(walks), len(walk))
                    walk.append((a, b))
                    a, b = b, g.successor(b, a)
                if (a, b) != (u, v):
                    raise PlaneGraphError("successor map is not a permutation (asymmetric rotation)")
                walks.append(tuple(walk))
        return cls(tuple(walks), seen)

    @property
    def count(self) -> int:
        # the single-vertex graph has one (empty) face
        return max(1, len(self.walks))

    def face_of(self, u: int, v: int) -> int:
        return self.location[(u, v)][0]

    def index_of(self, u: int, v: int) -> tuple[int, int]:
        return self.location[(u, v)]

    def vertices(self, f: int) -> list[int]:
        return [a for a, _ in self.walks[f]]


def validate(g: PlaneGraph) -> None:
    n = g.n
    if n < 1:
        raise PlaneGraphError("graph must have at least one vertex")
    if len(g.adjacency) != n:
        raise PlaneGraphError(f"expected {n} rotations, got {len(g.adjacency)}")
    for u, rot in enumerate(g.adjacency):
        if len(set(rot)) != len(rot):
            raise PlaneGraphError(f"parallel edge at vertex {u}")
        for v in rot:
            if not 0 <= v < n:
                raise PlaneGraphError(f"vertex {u} lists unknown neighbour {v}")
            if v == u:
                raise PlaneGraphError(f"loop at vertex {u}")
            if u not in g.adjacency[v]:
                raise PlaneGraphError(f"asymmetric rotation: {u} lists {v} but {v} does not list {u}")
    if n > 1:
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b in g.adjacency[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        if len(seen) != n:
            raise PlaneGraphError("graph is disconnected")
        if g.outer is None:
            raise PlaneGraphError("missing outer half-edge")
        u, v = g.outer
        if not (0 <= u < n and v in g.adjacency[u]):
            raise PlaneGraphError(f"outer half-edge ({u}, {v}) is not an edge")
    elif g.outer is not None:
        raise PlaneGraphError("single-vertex graph cannot name an outer half-edge")
    f = g.faces.count
    if n - g.m + f != 2:
        raise PlaneGraphError(f"Euler violation: n - m + f = {n} - {g.m} + {f} != 2")


# -- text format -------------------------------------------------------------


def parse_plane_graph(text: str) -> PlaneGraph:
    """Parse the line-oriented embedded-graph format.

    >>> g = parse_plane_graph("planar 1\\nn 3\\nouter 0 1\\nv 0 : 1 2\\nv 1 : 2 0\\nv 2 : 0 1\\n")
    >>> (g.n, g.m, g.faces.count)
    (3, 3, 2)
    """
    n = None
    outer = None
    rotations: dict[int, tuple[int, ...]] = {}
    labels: dict[int, str] = {}
    magic = False

    def ints(tokens, lineno, line):
        out = []
        for tok in tokens:
            try:
                out.append(int(tok))
            except ValueError:
                raise PlaneGraphError(f"expected integer, got {tok!r}", lineno, line.find(tok) + 1) from None
        return out

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        key = tokens[0]
        col = line.find(key) + 1
        if not magic:
            if tokens != ["planar", "1"]:
                raise PlaneGraphError("expected magic line 'planar 1'", lineno, col)
            magic = True
        elif key == "n":
            if n is not None or len(tokens) != 2:
                raise PlaneGraphError("malformed or repeated 'n' line", lineno, col)
            (n,) = ints(tokens[1:], lineno, line)
        elif key == "outer":
            if outer is not None or len(tokens) != 3:
                raise PlaneGraphError("malformed or repeated 'outer' line", lineno, col)
            outer = tuple(ints(tokens[1:], lineno, line))
        elif key == "v":
            if len(tokens) < 3 or tokens[2] != ":":
                raise PlaneGraphError("expected 'v <id> : <neighbours>'", lineno, col)
            (vid,) = ints(tokens[1:2], lineno, line)
            if vid in rotations:
                raise PlaneGraphError(f"duplicate rotation for vertex {vid}", lineno, col)
            rotations[vid] = tuple(ints(tokens[3:], lineno, line))
        elif key == "label":
            if len(tokens) < 3:
                raise PlaneGraphError("expected 'label <id> <name>'", lineno, col)
            (vid,) = ints(tokens[1:2], lineno, line)
            labels[vid] = " ".join(tokens[2:])
        else:
            raise PlaneGraphError(f"unknown directive {key!r}", lineno, col)
    if not magic:
        raise PlaneGraphError("empty input: expected magic line 'planar 1'", 1, 1)
    if n is None:
        raise PlaneGraphError("missing 'n' line")
    missing = [v for v in range(n) if v not in rotations]
    if missing:
        raise PlaneGraphError(f"missing rotation line for vertex {missing[0]}")
    extra = sorted(set(rotations) - set(range(n)))
    if extra:
        raise PlaneGraphError(f"rotation line for out-of-range vertex {extra[0]}")
    label_tuple = None
    if labels:
        label_tuple = tuple(labels.get(v, str(v)) for v in range(n))
    return PlaneGraph(n, tuple(rotations[v] for v in range(n)), outer, label_tuple)


def format_plane_graph(g: PlaneGraph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append("planar 1")
    lines.append(f"n {g.n}")
    if g.outer is not None:
        lines.append(f"outer {g.outer[0]} {g.outer[1]}")
    for v, rot in enumerate(g.adjacency):
        lines.append(f"v {v} : {' '.join(map(str, rot))}".rstrip())
    if g.labels:
        lines.extend(f"label {v} {name}" for v, name in enumerate(g.labels))
    return "\n".join(lines) + "\n"


def trace_faces(g: PlaneGraph) -> list[list[tuple[int, int]]]:
    """Face boundary walks as lists of directed half-edges."""
    return [list(w) for w in g.faces.walks]


# -- BFS trees ---------------------------------------------------------------


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: tuple[int, ...]
    depth: tuple[int, ...]

    def path_to_root(self, v: int) -> list[int]:
        """Vertices ``v, parent(v), ..., root``."""
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def root_path(self, v: int) -> list[int]:
        """Vertices ``root, ..., v`` (so index == depth)."""
        return self.path_to_root(v)[::-1]

    def is_tree_edge(self, u: int, v: int) -> bool:
        return (self.parent[u] == v and u != self.root) or (self.parent[v] == u and v != self.root)

    def lca(self, u: int, v: int) -> int:
        du, dv = self.depth[u], self.depth[v]
        while du > dv:
            u, du = self.parent[u], du - 1
        while dv > du:
            v, dv = self.parent[v], dv - 1
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u


def bfs_tree(g: PlaneGraph, root: int) -> SpanningTree:
    """BFS tree; children are explored clockwise from the parent half-edge.

    The root starts its sweep at its lowest-id neighbour.
    """
    if not 0 <= root < g.n:
        raise PlaneGraphError(f"root {root} out of range")
    parent = [-1] * g.n
    depth = [-1] * g.n
    parent[root] = root
    depth[root] = 0
    queue = deque([root])
    while queue:
        a = queue.popleft()
        rot = g.adjacency[a]
        if not rot:
            continue
        start = g.position(a, parent[a]) if a != root else rot.index(min(rot))
        for k in range(len(rot)):
            b = rot[(start + k) % len(rot)]
            if depth[b] < 0:
                depth[b] = depth[a] + 1
                parent[b] = a
                queue.append(b)
    return SpanningTree(root, tuple(parent), tuple(depth))


def bfs_distances(g: PlaneGraph, source: int, blocked: Iterable[int] = ()) -> list[int]:
    """Plain queue BFS distances (``-1`` for unreachable); ignores rotations."""
    dist = [-1] * g.n
    for b in blocked:
        dist[b] = -2
    dist[source] = 0
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in g.adjacency[a]:
            if dist[b] == -1:
                dist[b] = dist[a] + 1
                queue.append(b)
    return [d if d >= 0 else -1 for d in dist]


# -- arcs and curves ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class ArcSite:
    """Where the closing arc of a curve runs.

    For ``existing=True`` the arc is the graph edge ``(u, v)`` and ``i == j``
    is the walk index of half-edge ``min -> max`` in ``face``.  Otherwise the
    arc is a new curve drawn inside ``face`` between the corners at walk
    indices ``i < j`` (tails of the half-edges at those indices).
    """

    face: int
    i: int
    j: int
    u: int
    v: int
    existing: bool = False

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.face, self.i, self.j)


def edge_site(g: PlaneGraph, u: int, v: int) -> ArcSite:
    a, b = min(u, v), max(u, v)
    f, k = g.faces.index_of(a, b)
    return ArcSite(f, k, k, a, b, existing=True)


def insert_arc(g: PlaneGraph, u: int, v: int, face: int, i: Optional[int] = None, j: Optional[int] = None) -> PlaneGraph:
    """Splice a new edge ``u-v`` through ``face``.

    ``i``/``j`` select which boundary-walk occurrences of ``u`` and ``v``
    the arc attaches to; they default to the first occurrences.
    """
    if u == v:
        raise PlaneGraphError("arc endpoints must differ")
    walks = g.faces.walks
    if not 0 <= face < len(walks):
        raise PlaneGraphError(f"no face {face}")
    walk = walks[face]
    tails = [a for a, _ in walk]
    if i is None:
        i = tails.index(u) if u in tails else -1
    if j is None:
        j = tails.index(v) if v in tails else -1
    if i < 0 or j < 0 or tails[i] != u or tails[j] != v:
        raise PlaneGraphError(f"vertices {u} and {v} are not co-facial at the given occurrences of face {face}")
    if g.has_edge(u, v):
        raise PlaneGraphError(f"edge ({u}, {v}) already present")
    adjacency = [list(r) for r in g.adjacency]
    for w, k, other in ((u, i, v), (v, j, u)):
        # corner at walk[k] sits between the incoming walk[k-1] and outgoing walk[k]
        pred = walk[k - 1][0]
        rot = adjacency[w]
        rot.insert(rot.index(pred) + 1, other)
    return PlaneGraph(g.n, tuple(map(tuple, adjacency)), g.outer, g.labels)


@dataclass(frozen=True)
class JordanCurve:
    """Closed curve: ``u_path`` (z..u), the arc ``u~v``, ``v_path`` reversed (v..z)."""

    u_path: tuple[int, ...]
    v_path: tuple[int, ...]
    arc: ArcSite

    def __post_init__(self):
        if self.u_path[0] != self.v_path[0]:
            raise PlaneGraphError("curve paths must start at a common vertex")
        cyc = self.cycle
        if len(set(cyc)) != len(cyc):
            raise PlaneGraphError("curve repeats a vertex")

    @property
    def z(self) -> int:
        return self.u_path[0]

    @property
    def u(self) -> int:
        return self.u_path[-1]

    @property
    def v(self) -> int:
        return self.v_path[-1]

    @property
    def cycle(self) -> tuple[int, ...]:
        return tuple(self.u_path) + tuple(reversed(self.v_path[1:]))

    def reversed(self) -> "JordanCurve":
        a = self.arc
        return JordanCurve(self.v_path, self.u_path, ArcSite(a.face, a.i, a.j, a.v, a.u, a.existing))


@dataclass(frozen=True)
class RegionPartition:
    on_curve: frozenset
    interior: frozenset
    exterior: frozenset

    def closed(self, side: str) -> frozenset:
        return self.on_curve | (self.interior if side == "interior" else self.exterior)

    def open(self, side: str) -> frozenset:
        return self.interior if side == "interior" else self.exterior

    def side_of(self, v: int) -> Optional[str]:
        if v in self.interior:
            return "interior"
        if v in self.exterior:
            return "exterior"
        return None


def augment(g: PlaneGraph, curve: JordanCurve) -> PlaneGraph:
    a = curve.arc
    if a.existing:
        return g
    i, j = (a.i, a.j) if g.faces.walks[a.face][a.i][0] == a.u else (a.j, a.i)
    return insert_arc(g, a.u, a.v, a.face, i, j)


def region_partition(g_aug: PlaneGraph, cycle: Sequence[int]) -> RegionPartition:
    """Split vertices by a cycle of ``g_aug`` using a face flood fill.

    The side whose faces include the outer face is the exterior.
    """
    cyc = list(cycle)
    k = len(cyc)
    blocked = set()
    for idx in range(k):
        a, b = cyc[idx], cyc[(idx + 1) % k]
        if not g_aug.has_edge(a, b):
            raise PlaneGraphError(f"curve step ({a}, {b}) is not an edge")
        blocked.add((a, b))
        blocked.add((b, a))
    if k < 3 or len(set(cyc)) != k:
        raise PlaneGraphError("curve is not a simple cycle")
    faces = g_aug.faces
    nf = len(faces.walks)
    comp = [-1] * nf
    adj = [[] for _ in range(nf)]
    for (a, b), (f, _) in faces.location.items():
        if (a, b) not in blocked:
            adj[f].append(faces.face_of(b, a))
    outer = faces.face_of(*g_aug.outer)
    comp[outer] = 0
    queue = deque([outer])
    while queue:
        f = queue.popleft()
        for h in adj[f]:
            if comp[h] < 0:
                comp[h] = 0
                queue.append(h)
    on = set(cyc)
    interior, exterior = set(), set()
    for w in range(g_aug.n):
        if w in on:
            continue
        f = faces.face_of(w, g_aug.adjacency[w][0])
        (exterior if comp[f] == 0 else interior).add(w)
    return RegionPartition(frozenset(on), frozenset(interior), frozenset(exterior))


def curve_partition(g: PlaneGraph, curve: JordanCurve) -> RegionPartition:
    """Partition of ``g``'s vertices by ``curve``, inserting its arc if needed."""
    if len(curve.cycle) == 2:
        # the degenerate two-vertex curve of K2
        return RegionPartition(frozenset(curve.cycle), frozenset(), frozenset())
    return region_partition(augment(g, curve), curve.cycle)
