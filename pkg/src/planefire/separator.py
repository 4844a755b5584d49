"""Balanced Jordan curves from a BFS tree plus one arc.

Every co-facial vertex pair is a candidate arc site, which covers all the
chords a triangulation could add; non-tree edges are candidates too.  Each
candidate closes a fundamental cycle of the tree, and the site minimising
the larger open region wins.

Region sizes are scored without a flood fill per site.  The duals of the
non-tree edges form a spanning tree of the faces (the cotree); a
fundamental cycle cuts exactly one cotree edge, so one of its sides is a
cotree subtree.  Each vertex is charged to the face of its first corner,
so a side's vertex count is a subtree sum minus the curve vertices charged
inside it.

Long faces have quadratically many chord sites, so chords are first given a
vectorised lower bound on the larger region (the subtree sum alone brackets
the true count within the curve length) and only scored exactly while that
bound does not exceed the best value found.  The winner is the same as a
full scan.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .embedding import (
    ArcSite,
    JordanCurve,
    PlaneGraph,
    PlaneGraphError,
    RegionPartition,
    SpanningTree,
    bfs_tree,
    curve_partition,
    edge_site,
)

__all__ = [
    "SeparatorError",
    "BalancedCurve",
    "cofacial_candidates",
    "fundamental_cycle",
    "find_balanced_curve",
    "brute_force_sizes",
    "score_sites",
]


class SeparatorError(RuntimeError):
    """No balanced curve exists; this would contradict the separator lemma."""


@dataclass(frozen=True)
class BalancedCurve:
    curve: JordanCurve
    partition: RegionPartition
    interior_size: int
    exterior_size: int

    @property
    def n(self) -> int:
        p = self.partition
        return len(p.on_curve) + len(p.interior) + len(p.exterior)


@lru_cache(maxsize=256)
def _arc_sites(g: PlaneGraph) -> tuple[ArcSite, ...]:
    out = []
    for f, walk in enumerate(g.faces.walks):
        tails = [a for a, _ in walk]
        for i in range(len(tails)):
            a = tails[i]
            for j in range(i + 1, len(tails)):
                b = tails[j]
                if a != b and not g.has_edge(a, b):
                    out.append(ArcSite(f, i, j, a, b))
    return tuple(out)


def cofacial_candidates(g: PlaneGraph, t: SpanningTree) -> list[ArcSite]:
    """All arc sites: co-facial non-adjacent corner pairs plus non-tree edges.

    Sorted by ``(face, i, j)``.
    """
    sites = list(_arc_sites(g))
    sites.extend(edge_site(g, u, v) for u, v in g.edges() if not t.is_tree_edge(u, v))
    sites.sort(key=lambda s: s.key)
    return sites


def fundamental_cycle(t: SpanningTree, u: int, v: int, site: ArcSite) -> JordanCurve:
    if u == v:
        raise PlaneGraphError("arc endpoints must differ")
    z = t.lca(u, v)
    u_path = t.path_to_root(u)
    u_path = u_path[: u_path.index(z) + 1][::-1]
    v_path = t.path_to_root(v)
    v_path = v_path[: v_path.index(z) + 1][::-1]
    if site.u != u:
        site = ArcSite(site.face, site.i, site.j, u, v, site.existing)
    return JordanCurve(tuple(u_path), tuple(v_path), site)


class _Scorer:
    """Per-(graph, tree) cotree data for O(|curve| log) region counting."""

    def __init__(self, g: PlaneGraph, t: SpanningTree):
        self.g, self.t = g, t
        faces = g.faces
        self.faces = faces
        nf = len(faces.walks)
        root = faces.face_of(*g.outer)
        self.root = root
        self.outer_index = faces.index_of(*g.outer)[1]
        # corner charge: vertex w is charged to the corner of half-edge w -> rot(w)[0]
        self.rep = [faces.index_of(w, g.adjacency[w][0]) for w in range(g.n)]
        charge = [[0] * len(w) for w in faces.walks]
        for f, k in self.rep:
            charge[f][k] += 1
        # cotree over faces via non-tree edges
        nbrs = [[] for _ in range(nf)]
        for f, walk in enumerate(faces.walks):
            for k, (a, b) in enumerate(walk):
                if not t.is_tree_edge(a, b):
                    nbrs[f].append((k, faces.face_of(b, a)))
        parent = [-1] * nf
        parent_index = [-1] * nf  # walk index in f of the half-edge towards the parent
        parent[root] = root
        order = [root]
        stack = [root]
        while stack:
            f = stack.pop()
            for k, h in nbrs[f]:
                if parent[h] < 0:
                    parent[h] = f
                    order.append(h)
                    stack.append(h)
        for f in range(nf):
            if f != root:
                for k, h in nbrs[f]:
                    if h == parent[f]:
                        parent_index[f] = k
        if len(order) != nf:
            raise SeparatorError("non-tree edges do not span the dual; embedding is inconsistent")
        # Euler-tour numbering with children visited in walk order
        children = [[] for _ in range(nf)]
        for f in range(nf):
            for k, h in nbrs[f]:
                if h != root and parent[h] == f and h != parent[f]:
                    children[f].append((k, h))
        tin = [0] * nf
        tout = [0] * nf
        sub = [0] * nf
        clock = 0
        stack = [(root, 0)]
        while stack:
            f, state = stack.pop()
            if state == 0:
                tin[f] = clock
                clock += 1
                stack.append((f, 1))
                for k, h in reversed(children[f]):
                    stack.append((h, 0))
            else:
                tout[f] = clock
                sub[f] = sum(charge[f]) + sum(sub[h] for _, h in children[f])
        self.parent, self.parent_index = parent, parent_index
        self.tin, self.tout, self.sub = tin, tout, sub
        self.child_tins = []
        self.child_index = []
        self.prefix = []
        for f, walk in enumerate(faces.walks):
            val = list(charge[f])
            for k, h in children[f]:
                val[k] += sub[h]
            acc = [0]
            for x in val:
                acc.append(acc[-1] + x)
            self.prefix.append(acc)
            pairs = sorted((tin[h], k) for k, h in children[f])
            self.child_tins.append([p[0] for p in pairs])
            self.child_index.append([p[1] for p in pairs])

    def _in_subtree(self, root_face, f):
        return self.tin[root_face] <= self.tin[f] < self.tout[root_face]

    def sizes(self, site: ArcSite, cycle) -> tuple[int, int]:
        """(interior, exterior) open-region sizes of the fundamental cycle."""
        n = self.g.n
        L = len(cycle)
        if site.existing:
            fa = self.faces.face_of(site.u, site.v)
            fb = self.faces.face_of(site.v, site.u)
            child = fa if self.parent[fa] == fb and fa != self.root else fb
            inside = self.sub[child]
            for w in cycle:
                if self._in_subtree(child, self.rep[w][0]):
                    inside -= 1
            return inside, n - L - inside
        f, i, j = site.face, site.i, site.j
        in_b = self.prefix[f][j] - self.prefix[f][i]
        marker = self.outer_index if f == self.root else self.parent_index[f]
        outer_in_b = i <= marker < j
        total = n if f == self.root else self.sub[f]
        inside = total - in_b if outer_in_b else in_b
        interior_is_b = not outer_in_b
        for w in cycle:
            F, k = self.rep[w]
            if F == f:
                idx = k
            elif F != self.root and self._in_subtree(f, F):
                pos = bisect.bisect_right(self.child_tins[f], self.tin[F]) - 1
                idx = self.child_index[f][pos]
            else:
                continue  # charged on the parent side, which is the exterior
            if (i <= idx < j) == interior_is_b:
                inside -= 1
        return inside, n - L - inside


class _DepthRMQ:
    """Depth of the lowest common ancestor for arrays of vertex pairs."""

    def __init__(self, t: SpanningTree):
        n = len(t.parent)
        children = [[] for _ in range(n)]
        for v in range(n):
            if v != t.root:
                children[t.parent[v]].append(v)
        euler, first = [], [0] * n
        stack = [(t.root, 0)]
        while stack:
            v, k = stack.pop()
            if k == 0:
                first[v] = len(euler)
            euler.append(v)
            if k < len(children[v]):
                stack.append((v, k + 1))
                stack.append((children[v][k], 0))
        dep = np.asarray(t.depth, dtype=np.int64)[euler]
        levels = [dep]
        width = 1
        while 2 * width <= len(dep):
            prev = levels[-1]
            nxt = np.full(len(dep), np.iinfo(np.int64).max, dtype=np.int64)
            nxt[: len(dep) - width] = np.minimum(prev[: len(dep) - width], prev[width:])
            levels.append(nxt)
            width *= 2
        self.table = np.stack(levels)
        self.first = np.asarray(first, dtype=np.int64)

    def lca_depth(self, a, b):
        fa, fb = self.first[a], self.first[b]
        lo, hi = np.minimum(fa, fb), np.maximum(fa, fb)
        k = np.floor(np.log2(hi - lo + 1)).astype(np.int64)
        return np.minimum(self.table[k, lo], self.table[k, hi - (1 << k) + 1])


def _chord_bounds(g: PlaneGraph, t: SpanningTree, scorer: "_Scorer", rmq: _DepthRMQ, edge_codes):
    """Arrays (face, i, j, u, v, lower bound) over every chord site."""
    n = g.n
    depth = np.asarray(t.depth, dtype=np.int64)
    out = []
    for f, walk in enumerate(g.faces.walks):
        d = len(walk)
        if d < 4:
            continue
        tails = np.fromiter((a for a, _ in walk), dtype=np.int64, count=d)
        ii, jj = np.triu_indices(d, 1)
        uu, vv = tails[ii], tails[jj]
        ok = (uu != vv) & ~np.isin(uu * n + vv, edge_codes)
        if not ok.any():
            continue
        ii, jj, uu, vv = ii[ok], jj[ok], uu[ok], vv[ok]
        length = depth[uu] + depth[vv] - 2 * rmq.lca_depth(uu, vv) + 1
        prefix = np.asarray(scorer.prefix[f], dtype=np.int64)
        in_b = prefix[jj] - prefix[ii]
        marker = scorer.outer_index if f == scorer.root else scorer.parent_index[f]
        total = n if f == scorer.root else scorer.sub[f]
        raw = np.where((ii <= marker) & (marker < jj), total - in_b, in_b)
        bound = np.maximum(np.maximum(raw - length, n - length - raw), (n - length + 1) // 2)
        out.append((np.full(len(ii), f, dtype=np.int64), ii, jj, uu, vv, bound))
    if not out:
        return None
    return [np.concatenate(col) for col in zip(*out)]


def score_sites(g: PlaneGraph, t: SpanningTree, sites=None):
    """Yield ``(site, curve, interior_size, exterior_size)`` for each candidate."""
    scorer = _Scorer(g, t)
    if sites is None:
        sites = cofacial_candidates(g, t)
    for s in sites:
        curve = fundamental_cycle(t, s.u, s.v, s)
        yield s, curve, *scorer.sizes(s, curve.cycle)


def brute_force_sizes(g: PlaneGraph, t: SpanningTree):
    """Same as :func:`score_sites` but through explicit arc insertion and flood fill."""
    for s in cofacial_candidates(g, t):
        curve = fundamental_cycle(t, s.u, s.v, s)
        p = curve_partition(g, curve)
        yield s, curve, len(p.interior), len(p.exterior)


def _cycle_vertices(t: SpanningTree, u: int, v: int) -> list[int]:
    parent, depth = t.parent, t.depth
    out = []
    while depth[u] > depth[v]:
        out.append(u)
        u = parent[u]
    while depth[v] > depth[u]:
        out.append(v)
        v = parent[v]
    while u != v:
        out.append(u)
        out.append(v)
        u, v = parent[u], parent[v]
    out.append(u)
    return out


def _full_scan(g: PlaneGraph, t: SpanningTree):
    """Reference selection over every site, without the bound pruning."""
    best = min(score_sites(g, t), key=lambda r: (max(r[2], r[3]), r[0].key))
    return best[0], best[2], best[3]


def _degenerate(g: PlaneGraph, t: SpanningTree) -> BalancedCurve:
    # K2: the only "curve" runs along the single edge
    (child,) = [v for v in range(g.n) if v != t.root]
    curve = JordanCurve((t.root,), (t.root, child), edge_site(g, t.root, child))
    return BalancedCurve(curve, curve_partition(g, curve), 0, 0)


def find_balanced_curve(g: PlaneGraph, t: SpanningTree | None = None, root: int | None = None) -> BalancedCurve:
    """Curve minimising ``max(|interior|, |exterior|)``; ties by ``(face, i, j)``.

    Raises :class:`SeparatorError` when the best curve is not strictly below
    ``2n/3`` on both sides.
    """
    if t is None:
        t = bfs_tree(g, 0 if root is None else root)
    return _find_cached(g, t)


@lru_cache(maxsize=4096)
def _find_cached(g: PlaneGraph, t: SpanningTree) -> BalancedCurve:
    if g.n < 2:
        raise SeparatorError("a balanced curve needs at least two vertices")
    if g.n == 2:
        return _degenerate(g, t)
    scorer = _Scorer(g, t)
    best = None

    def consider(site):
        nonlocal best
        ins, ext = scorer.sizes(site, _cycle_vertices(t, site.u, site.v))
        key = (max(ins, ext), site.key)
        if best is None or key < best[0]:
            best = (key, site, ins, ext)

    for u, v in g.edges():
        if not t.is_tree_edge(u, v):
            consider(edge_site(g, u, v))
    edge_codes = np.array(sorted(a * g.n + b for a in range(g.n) for b in g.adjacency[a]), dtype=np.int64)
    chords = _chord_bounds(g, t, scorer, _DepthRMQ(t), edge_codes)
    if chords is not None:
        face, ii, jj, uu, vv, bound = chords
        for k in np.lexsort((jj, ii, face, bound)):
            if best is not None and bound[k] > best[0][0]:
                break
            consider(ArcSite(int(face[k]), int(ii[k]), int(jj[k]), int(uu[k]), int(vv[k])))
    if best is None:
        raise SeparatorError("no candidate arc sites")
    _, site, ins, ext = best
    curve = fundamental_cycle(t, site.u, site.v, site)
    if 3 * ins >= 2 * g.n or 3 * ext >= 2 * g.n:
        raise SeparatorError(f"best curve has regions {ins}/{ext}, not below 2n/3 for n={g.n}")
    part = curve_partition(g, curve)
    if (len(part.interior), len(part.exterior)) != (ins, ext):
        raise SeparatorError(
            f"fast region count {ins}/{ext} disagrees with flood fill "
            f"{len(part.interior)}/{len(part.exterior)}"
        )
    return BalancedCurve(curve, part, ins, ext)
