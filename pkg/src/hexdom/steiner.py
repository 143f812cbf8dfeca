"""Minimum Steiner trees over the low-degree vertices, and the clean path through them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .plane_graph import EmbeddedGraph, bfs, is_connected

MAX_EXACT_TERMINALS = 12
_UNREACHED = np.iinfo(np.int32).max // 4


class SteinerError(ValueError):
    pass


class DegreeTooHigh(SteinerError):
    pass


class TooManyTerminals(SteinerError):
    pass


class DisconnectedTerminals(SteinerError):
    pass


def deficiency_set(g: EmbeddedGraph) -> frozenset[int]:
    """Vertices of degree below 6."""
    high = [v for v in range(g.n) if g.degree(v) > 6]
    if high:
        raise DegreeTooHigh(f"vertices {high[:10]} have degree above 6")
    U = frozenset(v for v in range(g.n) if g.degree(v) < 6)
    if g.n > 3 and not 4 <= len(U) <= 12:
        raise SteinerError(f"{len(U)} low-degree vertices; a max-degree-6 sphere triangulation has 4..12")
    return U


@dataclass(frozen=True)
class SteinerTree:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]  # each as (min, max)
    terminals: frozenset[int]
    exact: bool = True

    @property
    def size(self) -> int:
        """``n(T)``, the number of vertices."""
        return len(self.vertices)

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def branch_set(self) -> frozenset[int]:
        """Terminals together with every tree vertex whose tree degree is not 2."""
        return self.terminals | frozenset(v for v in self.vertices if self.degree(v) != 2)

    def leaves(self) -> list[int]:
        return sorted(v for v in self.vertices if self.degree(v) <= 1)

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1 or not self.vertices:
            return False
        start = min(self.vertices)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [list(e) for e in sorted(self.edges)],
            "terminals": sorted(self.terminals),
            "size": self.size,
            "exact": self.exact,
        }


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _csr(g: EmbeddedGraph) -> tuple[np.ndarray, np.ndarray]:
    rows = np.repeat(np.arange(g.n), [g.degree(v) for v in range(g.n)])
    cols = np.fromiter((u for r in g.rotations for u in r), dtype=np.int64, count=len(rows))
    return rows, cols


class _Relaxer:
    """Shortest-path relaxation of a whole vertex labelling at once.

    ``relax(d)`` returns ``min_u d[u] + dist(u, v)`` for every ``v`` plus the
    predecessor of ``v`` on a minimizing path (``-1`` when ``v`` keeps its
    own label).  Implemented as Dijkstra from a super-source joined to every
    vertex by an edge of weight ``d[v] + 1``.
    """

    def __init__(self, g: EmbeddedGraph):
        self.n = g.n
        rows, cols = _csr(g)
        self.rows = np.concatenate([rows, np.full(g.n, g.n)])
        self.cols = np.concatenate([cols, np.arange(g.n)])
        self.base = np.ones(len(rows), dtype=np.float64)

    def relax(self, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        finite = d < _UNREACHED
        w = np.where(finite, d + 1.0, 0.0)
        keep = np.concatenate([np.ones(len(self.base), dtype=bool), finite])
        data = np.concatenate([self.base, w])[keep]
        m = csr_matrix((data, (self.rows[keep], self.cols[keep])), shape=(self.n + 1, self.n + 1))
        dist, pred = dijkstra(m, directed=True, indices=self.n, return_predecessors=True)
        dist = dist[: self.n]
        pred = pred[: self.n].astype(np.int32)
        out = np.where(np.isfinite(dist), dist - 1.0, _UNREACHED).astype(np.int64)
        pred[pred == self.n] = -1
        pred[~np.isfinite(dist)] = -1
        # keep own label on ties, so a merge point stays a merge point
        own = d <= out
        pred[own] = -1
        out = np.minimum(out, d)
        return out, pred


def min_steiner_tree(g: EmbeddedGraph, terminals: Iterable[int], allow_approx: bool = False) -> SteinerTree:
    """Minimum-vertex tree containing ``terminals`` (Dreyfus–Wagner).

    ``dp[S][v]`` is the fewest edges of a tree containing ``S ∪ {v}``.  The
    last terminal is used as root, so subsets range over the others.  Ties
    are broken by lowest split subset and lowest vertex id.
    """
    U = sorted(set(terminals))
    if not U:
        raise SteinerError("no terminals")
    if not is_connected(g):
        raise DisconnectedTerminals("graph is disconnected")
    if len(U) > MAX_EXACT_TERMINALS:
        if allow_approx:
            return approx_steiner_tree(g, U)
        raise TooManyTerminals(f"{len(U)} terminals; exact limit is {MAX_EXACT_TERMINALS}")
    if len(U) == 1:
        return SteinerTree(frozenset(U), frozenset(), frozenset(U))

    root, others = U[-1], U[:-1]
    k = len(others)
    n = g.n
    relaxer = _Relaxer(g)
    full = (1 << k) - 1
    dp = np.full((full + 1, n), _UNREACHED, dtype=np.int64)
    split = np.zeros((full + 1, n), dtype=np.int32)  # 0: not a merge point
    pred = np.full((full + 1, n), -1, dtype=np.int32)

    for S in range(1, full + 1):
        if S & (S - 1) == 0:
            start = np.full(n, _UNREACHED, dtype=np.int64)
            start[others[S.bit_length() - 1]] = 0
        else:
            start = np.full(n, _UNREACHED, dtype=np.int64)
            chosen = np.zeros(n, dtype=np.int32)
            low = S & -S
            A = (S - 1) & S
            while A:
                if A & low:
                    cand = dp[A] + dp[S ^ A]
                    better = cand < start
                    start = np.where(better, cand, start)
                    chosen = np.where(better, A, chosen)
                A = (A - 1) & S
            split[S] = chosen
        dp[S], pred[S] = relaxer.relax(start)

    if dp[full][root] >= _UNREACHED:
        raise DisconnectedTerminals("terminals are not connected")
    edges: set[tuple[int, int]] = set()
    verts: set[int] = {root}
    stack = [(full, root)]
    while stack:
        S, v = stack.pop()
        verts.add(v)
        p = int(pred[S][v])
        if p >= 0:
            edges.add(_edge(p, v))
            stack.append((S, p))
        elif S & (S - 1):
            A = int(split[S][v])
            stack += [(A, v), (S ^ A, v)]
    tree = SteinerTree(frozenset(verts), frozenset(edges), frozenset(U))
    if not tree.is_tree() or len(edges) != int(dp[full][root]):
        raise SteinerError("reconstruction did not give a tree of the optimal size")
    return tree


def approx_steiner_tree(g: EmbeddedGraph, terminals: Iterable[int]) -> SteinerTree:
    """Metric-closure MST expanded into paths; within a factor 2 of optimal."""
    U = sorted(set(terminals))
    parents = {t: bfs_parents(g, t) for t in U}
    dist = {t: bfs(g, [t]).dist for t in U}
    in_tree = {U[0]}
    edges: set[tuple[int, int]] = set()
    while len(in_tree) < len(U):
        _, s, t = min((dist[s][t], s, t) for s in sorted(in_tree) for t in U if t not in in_tree)
        v = t
        while v != s:
            p = parents[s][v]
            edges.add(_edge(p, v))
            v = p
        in_tree.add(t)
    verts = {v for e in edges for v in e} | set(U)
    edges = _break_cycles(verts, edges)
    tree = _prune_leaves(SteinerTree(frozenset(verts), frozenset(edges), frozenset(U), exact=False))
    return tree


def bfs_parents(g: EmbeddedGraph, source: int) -> list[int]:
    parent = [-1] * g.n
    parent[source] = source
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for u in sorted(g.rotations[v]):
                if parent[u] < 0:
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    return parent


def _break_cycles(verts: set[int], edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    parent = {v: v for v in verts}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    kept = set()
    for u, v in sorted(edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.add((u, v))
    return kept


def _prune_leaves(tree: SteinerTree) -> SteinerTree:
    verts, edges = set(tree.vertices), set(tree.edges)
    while True:
        deg: dict[int, int] = {v: 0 for v in verts}
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        drop = [v for v in verts if deg[v] <= 1 and v not in tree.terminals]
        if not drop or len(verts) == 1:
            return SteinerTree(frozenset(verts), frozenset(edges), tree.terminals, tree.exact)
        for v in drop:
            verts.discard(v)
            edges = {e for e in edges if v not in e}


@dataclass(frozen=True)
class CleanPath:
    path: tuple[int, ...]  # vertex sequence
    middle: int

    @property
    def length(self) -> int:
        """``|P|``, counted in edges."""
        return len(self.path) - 1


def clean_paths(tree: SteinerTree) -> list[tuple[int, ...]]:
    """The maximal tree paths whose inner vertices avoid the branch set.

    They partition the edges of the tree.  Each is oriented from its smaller
    endpoint.
    """
    B = tree.branch_set
    adj = tree.adjacency
    seen: set[tuple[int, int]] = set()
    out = []
    for s in sorted(B):
        for nxt in adj[s]:
            if _edge(s, nxt) in seen:
                continue
            path = [s, nxt]
            seen.add(_edge(s, nxt))
            while path[-1] not in B:
                v = path[-1]
                (u,) = [x for x in adj[v] if x != path[-2]]
                seen.add(_edge(v, u))
                path.append(u)
            if path[-1] < path[0]:
                path.reverse()
            out.append(tuple(path))
    return sorted(out)


def longest_clean_path(tree: SteinerTree) -> CleanPath:
    """Longest clean path (lexicographically first among equals) and its middle vertex."""
    paths = clean_paths(tree)
    if not paths:
        (v,) = tree.vertices
        return CleanPath((v,), v)
    best = min(paths, key=lambda p: (-len(p), p))
    cp = CleanPath(best, best[(len(best) - 1) // 2])
    if tree.size > 21 * cp.length + 1 and len(tree.branch_set) <= 22:
        raise SteinerError(f"n(T) = {tree.size} exceeds 21|P| + 1 = {21 * cp.length + 1}")
    return cp
