"""Cutting a sphere triangulation open along a tree, and laying the result flat.

Cutting along a tree ``T`` replaces each tree vertex ``v`` by one copy per
wedge between consecutive tree neighbors around ``v``.  Every face of the
original keeps its three corners, now attached to the right copies, so the
cut surface is a disc whose single non-triangular face ``f_T`` runs once
around the tree.  When every vertex off that face has degree 6, the disc
develops into the lattice and pulling the pattern back gives a dominating
set of the original graph.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .domination import DominationFailure, DominationResult, is_dominating
from .generators import from_faces
from .lattice import InconsistentDevelopment, LatticeCoord, develop_triangles, pattern_value
from .plane_graph import EmbeddedGraph, GraphError
from .steiner import SteinerTree

__all__ = [
    "CutDisc",
    "CutValidation",
    "Development",
    "InconsistentDevelopment",
    "NotATree",
    "best_pullback",
    "cut_along_tree",
    "develop",
    "pullback_pattern",
    "validate",
]


class NotATree(GraphError):
    pass


@dataclass(frozen=True)
class CutDisc:
    """The cut-open graph ``G'``.

    ``triangles`` are the 3-faces (oriented like the faces of the original),
    ``boundary`` is the vertex cycle of ``f_T`` and ``copy_map[i]`` is the
    original vertex behind ``G'`` vertex ``i``.  Vertices off the tree keep
    their ids; a tree vertex keeps its id for its first wedge and extra
    copies are numbered from ``n`` upward.
    """

    original_n: int
    copy_map: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    boundary: tuple[int, ...]
    tree_vertices: frozenset[int]

    @property
    def n(self) -> int:
        return len(self.copy_map)

    @property
    def tree_copies(self) -> frozenset[int]:
        """``V_T'``: the copies of tree vertices, all on ``f_T``."""
        return frozenset(i for i, v in enumerate(self.copy_map) if v in self.tree_vertices)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for t in self.triangles:
            for i in range(3):
                a, b = t[i], t[(i + 1) % 3]
                adj[a].add(b)
                adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def graph(self) -> EmbeddedGraph:
        """``G'`` with ``f_T`` as an ordinary face (needs a boundary of length at least 3)."""
        if len(self.boundary) < 3:
            raise GraphError("f_T is a digon; G' has a double edge and no simple rotation system")
        return from_faces(self.n, [*self.triangles, self.boundary])

    def distances_from(self, source: int, limit: int | None = None) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if limit is not None and dist[v] >= limit:
                continue
            for u in self.adjacency[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def to_json(self) -> dict:
        return {
            "original_n": self.original_n,
            "copy_map": list(self.copy_map),
            "triangles": [list(t) for t in self.triangles],
            "boundary": list(self.boundary),
            "tree_vertices": sorted(self.tree_vertices),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CutDisc":
        return cls(
            data["original_n"],
            tuple(data["copy_map"]),
            tuple(tuple(t) for t in data["triangles"]),
            tuple(data["boundary"]),
            frozenset(data["tree_vertices"]),
        )


def _check_tree(g: EmbeddedGraph, t: SteinerTree) -> None:
    for u, v in t.edges:
        if not g.has_edge(u, v):
            raise NotATree(f"tree edge {u}-{v} is not an edge of the graph")
    if t.size < 2:
        raise NotATree("cutting needs a tree with at least one edge")
    if not t.is_tree():
        raise NotATree("edge set is not a spanning tree of its vertices")


def cut_along_tree(g: EmbeddedGraph, t: SteinerTree) -> CutDisc:
    _check_tree(g, t)
    tree_nbrs = t.adjacency
    copy_map = list(range(g.n))
    # corner_copy[v, u]: copy of v owning the corner that starts at neighbor u
    corner_copy: dict[tuple[int, int], int] = {}
    for v in sorted(t.vertices):
        rot = g.rotations[v]
        first = next(i for i, u in enumerate(rot) if u in tree_nbrs[v])
        ids = []
        for step in range(len(rot)):
            u = rot[(first + step) % len(rot)]
            if u in tree_nbrs[v]:
                if not ids:
                    ids.append(v)
                else:
                    ids.append(len(copy_map))
                    copy_map.append(v)
            corner_copy[v, u] = ids[-1]

    def copy_at(v: int, before: int) -> int:
        return corner_copy[v, before] if v in t.vertices else v

    triangles = []
    for face in g.faces:
        if len(face) != 3:
            raise NotATree("the graph is not a triangulation")
        # the corner at v = d[1] lies between d[0] and succ_v(d[0])
        tri = tuple(copy_at(face.darts[i][1], face.darts[i][0]) for i in range(3))
        triangles.append((tri[2], tri[0], tri[1]))

    # every tree edge is split in two, so its darts all face f_T (even for a
    # single-edge tree, where both copies keep their ids and f_T is a digon)
    tree_edges = t.edges
    succ: dict[int, int] = {}
    for t3 in triangles:
        for i in range(3):
            a, b = t3[i], t3[(i + 1) % 3]
            x, y = copy_map[a], copy_map[b]
            if (min(x, y), max(x, y)) not in tree_edges:
                continue
            if b in succ:
                raise NotATree("boundary of the cut is not a simple cycle")
            succ[b] = a
    start = min(succ)
    boundary = [start]
    while succ[boundary[-1]] != start:
        boundary.append(succ[boundary[-1]])
        if len(boundary) > len(succ):
            raise NotATree("boundary of the cut does not close up")
    if len(boundary) != len(succ):
        raise NotATree("cut boundary splits into several cycles")
    return CutDisc(g.n, tuple(copy_map), tuple(triangles), tuple(boundary), t.vertices)


@dataclass
class CutValidation:
    ok: bool
    violations: list[str]

    def __bool__(self) -> bool:
        return self.ok


def validate(g: EmbeddedGraph, cd: CutDisc) -> CutValidation:
    """Check the structural facts the construction promises."""
    bad = []
    k = len(cd.tree_vertices)
    if len(cd.tree_copies) != 2 * k - 2:
        bad.append(f"|V_T'| = {len(cd.tree_copies)}, expected {2 * k - 2}")
    if cd.n != g.n + k - 2:
        bad.append(f"G' has {cd.n} vertices, expected {g.n + k - 2}")
    if len(set(cd.boundary)) != len(cd.boundary):
        bad.append("f_T repeats a vertex")
    if set(cd.boundary) != set(cd.tree_copies):
        bad.append("f_T does not run exactly through V_T'")
    for tri in cd.triangles:
        if len(set(tri)) != 3:
            bad.append(f"degenerate triangle {tri}")
    if len(set(frozenset(tri) for tri in cd.triangles)) != len(cd.triangles):
        bad.append("repeated triangle")
    off_tree = [v for v in range(g.n) if v not in cd.tree_vertices]
    for v in off_tree:
        want = {u for u in g.rotations[v] if u not in cd.tree_vertices}
        have = {u for u in cd.adjacency[v] if cd.copy_map[u] not in cd.tree_vertices}
        if want != have:
            bad.append(f"G' - V_T' differs from G - V(T) at {v}")
            break
    # a digon boundary shares its one edge with itself in the simple adjacency
    edges = sum(len(a) for a in cd.adjacency) // 2 + (len(cd.boundary) == 2)
    if cd.n - edges + len(cd.triangles) != 1:
        bad.append(f"V - E + F = {cd.n - edges + len(cd.triangles)} over the 3-faces, a disc gives 1")
    return CutValidation(not bad, bad)


@dataclass
class Development:
    coords: dict[int, LatticeCoord]
    anchor: tuple[int, int, int]

    def preimages(self) -> dict[LatticeCoord, list[int]]:
        out: dict[LatticeCoord, list[int]] = {}
        for v, p in sorted(self.coords.items()):
            out.setdefault(p, []).append(v)
        return out

    def close_coincidences(self, cd: CutDisc, min_distance: int = 3) -> list[tuple[int, int, int]]:
        """Pairs of distinct vertices with a shared point that lie closer than ``min_distance``."""
        out = []
        for vs in self.preimages().values():
            for i, x in enumerate(vs):
                near = cd.distances_from(x, limit=min_distance - 1)
                for y in vs[i + 1:]:
                    if y in near:
                        out.append((x, y, near[y]))
        return out

    def to_json(self) -> dict:
        return {"anchor": list(self.anchor), "coords": {str(v): list(p) for v, p in sorted(self.coords.items())}}


def _anchor(tri: Sequence[int]) -> tuple[int, int, int]:
    i = tri.index(min(tri))
    return tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]


def develop(cd: CutDisc, order: Sequence[int] | None = None, shuffle_seed: int | None = None) -> Development:
    """Place every vertex of ``G'`` in the lattice.

    The first triangle is anchored with its lowest id at the origin; the
    rest follow by reflection across shared edges.  ``order`` and
    ``shuffle_seed`` change the visiting order only (useful for checking
    that the result does not depend on it).
    """
    on_boundary = set(cd.boundary)
    for v in range(cd.n):
        if v not in on_boundary and len(cd.adjacency[v]) != 6:
            raise InconsistentDevelopment(f"vertex {v} is off f_T but has degree {len(cd.adjacency[v])}")
    anchor = _anchor(cd.triangles[0])
    tris = list(cd.triangles)
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(tris)
    coords = develop_triangles(tris, seed=anchor, order=order)
    if len(coords) != cd.n:
        raise InconsistentDevelopment("some vertices were not reached")
    # adjacent triangles must land on distinct lattice triangles
    apex: dict[frozenset[int], list[int]] = {}
    for t in cd.triangles:
        for i in range(3):
            apex.setdefault(frozenset((t[i], t[(i + 1) % 3])), []).append(t[(i + 2) % 3])
    for e, ps in apex.items():
        if len(ps) == 2 and coords[ps[0]] == coords[ps[1]]:
            raise InconsistentDevelopment(f"faces on both sides of {sorted(e)} fold onto each other")
    return Development(coords, anchor)


@dataclass
class Pullback:
    residue: int
    result: DominationResult
    preimage: list[int]  # pattern vertices of G' off V_T'
    pattern_count: int  # all pattern vertices of G'


def pullback_pattern(g: EmbeddedGraph, cd: CutDisc, dev: Development, residue: int) -> Pullback:
    """Pattern preimage minus the tree copies, plus the tree itself."""
    tree_copies = cd.tree_copies
    pattern = [v for v in range(cd.n) if pattern_value(dev.coords[v]) == residue]
    kept = [v for v in pattern if v not in tree_copies]
    D = sorted({cd.copy_map[v] for v in kept} | set(cd.tree_vertices))
    check = is_dominating(g, D)
    if not check.ok:
        raise DominationFailure(f"pullback with residue {residue} misses {check.uncovered[:10]}")
    k = len(cd.tree_vertices)
    bound = Fraction(g.n, 7) + Fraction(8 * k, 7) - Fraction(2, 7)
    res = DominationResult(tuple(D), True, "pattern-pullback", bound, len(D) <= bound, {"residue": residue})
    if not res.bound_holds:
        raise DominationFailure(f"pullback has {len(D)} vertices, above n/7 + 8n(T)/7 - 2/7 = {bound}")
    return Pullback(residue, res, kept, len(pattern))


def best_pullback(g: EmbeddedGraph, cd: CutDisc, dev: Development) -> tuple[Pullback, list[Pullback]]:
    """All 7 residues; the smallest set wins, lowest residue on ties."""
    runs = [pullback_pattern(g, cd, dev, r) for r in range(7)]
    return min(runs, key=lambda p: (p.result.size, p.residue)), runs


def closed_neighborhood_overlaps(cd: CutDisc, vertices: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs from ``vertices`` whose closed neighborhoods in ``G'`` meet."""
    out = []
    vs = sorted(vertices)
    for i, x in enumerate(vs):
        near = cd.distances_from(x, limit=2)
        for y in vs[i + 1:]:
            if y in near:
                out.append((x, y))
    return out
