"""Embedded planar graphs stored as rotation systems.

A graph is a list of counterclockwise neighbor orders, one per vertex.
Faces are recovered by the usual dart walk: from dart ``(u, v)`` the next
dart is ``(v, w)`` where ``w`` follows ``u`` counterclockwise around ``v``.
With this rule every face is traversed with the face on the *right* of each
dart, so a closed boundary walk of a subgraph traced the same way keeps the
subgraph's exterior on its right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Dart = tuple[int, int]


class GraphError(ValueError):
    """Base class for malformed embedded graphs."""


class BadVertexId(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateNeighbor(GraphError):
    pass


class AsymmetricAdjacency(GraphError):
    pass


class EmptySourceSet(GraphError):
    pass


@dataclass(frozen=True)
class EmbeddedGraph:
    """A simple graph with a fixed rotation system.

    Immutable after construction; use :func:`build` to get a validated one.
    """

    vertex_count: int
    rotations: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.vertex_count

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    @cached_property
    def _position(self) -> tuple[dict[int, int], ...]:
        return tuple({u: i for i, u in enumerate(rot)} for rot in self.rotations)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(rot) for rot in self.rotations)

    def position(self, v: int, u: int) -> int:
        """Index of ``u`` in the rotation at ``v``."""
        return self._position[v][u]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._position[v]

    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.rotations[u] if u < v]

    def darts(self) -> list[Dart]:
        return [(u, v) for u in range(self.n) for v in self.rotations[u]]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        rot = self.rotations[v]
        return v, rot[(self._position[v][u] + 1) % len(rot)]

    def third_vertex(self, u: int, v: int) -> int:
        """Apex of the face to the right of ``u -> v`` (triangulations)."""
        return self.next_dart((u, v))[1]

    @cached_property
    def faces(self) -> tuple["FaceWalk", ...]:
        return tuple(_trace_faces(self))

    @cached_property
    def face_of_dart(self) -> dict[Dart, int]:
        out: dict[Dart, int] = {}
        for fid, face in enumerate(self.faces):
            for d in face.darts:
                out[d] = fid
        return out

    def max_degree(self) -> int:
        return max((len(r) for r in self.rotations), default=0)

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for r in self.rotations:
            hist[len(r)] = hist.get(len(r), 0) + 1
        return dict(sorted(hist.items()))

    def to_json(self) -> dict:
        return {"n": self.n, "rotations": [list(r) for r in self.rotations]}

    @classmethod
    def from_json(cls, data: dict) -> "EmbeddedGraph":
        return build(data["n"], data["rotations"])


@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[Dart, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class DistanceField:
    sources: frozenset[int]
    dist: tuple[int | None, ...]

    def layers(self) -> list[list[int]]:
        top = max((d for d in self.dist if d is not None), default=-1)
        out: list[list[int]] = [[] for _ in range(top + 1)]
        for v, d in enumerate(self.dist):
            if d is not None:
                out[d].append(v)
        return out

    def eccentricity(self) -> int:
        return max(d for d in self.dist if d is not None)


@dataclass
class TriangulationReport:
    ok: bool
    violations: list[str]

    def __bool__(self) -> bool:
        return self.ok


def build(vertex_count: int, rotations: Sequence[Iterable[int]]) -> EmbeddedGraph:
    """Validate a rotation system and wrap it as an :class:`EmbeddedGraph`."""
    rots = tuple(tuple(int(u) for u in r) for r in rotations)
    if len(rots) != vertex_count:
        raise BadVertexId(f"expected {vertex_count} rotations, got {len(rots)}")
    for v, rot in enumerate(rots):
        seen: set[int] = set()
        for u in rot:
            if not 0 <= u < vertex_count:
                raise BadVertexId(f"vertex {v} lists neighbor {u} outside 0..{vertex_count - 1}")
            if u == v:
                raise SelfLoop(f"vertex {v} lists itself as a neighbor")
            if u in seen:
                raise DuplicateNeighbor(f"vertex {v} lists neighbor {u} twice")
            seen.add(u)
    sets = [set(r) for r in rots]
    for v, rot in enumerate(rots):
        for u in rot:
            if v not in sets[u]:
                raise AsymmetricAdjacency(f"edge {v}->{u} has no reverse {u}->{v}")
    return EmbeddedGraph(vertex_count, rots)


def _trace_faces(g: EmbeddedGraph) -> list[FaceWalk]:
    seen: set[Dart] = set()
    faces = []
    for start in g.darts():
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = g.next_dart(d)
        faces.append(FaceWalk(tuple(walk)))
    return faces


def faces(g: EmbeddedGraph) -> list[FaceWalk]:
    return list(g.faces)


def is_connected(g: EmbeddedGraph, vertices: Iterable[int] | None = None) -> bool:
    """Connectivity of ``g`` or of the subgraph induced by ``vertices``."""
    pool = set(range(g.n)) if vertices is None else set(vertices)
    if not pool:
        return True
    start = min(pool)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.rotations[v]:
            if u in pool and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(pool)


def is_sphere_triangulation(g: EmbeddedGraph) -> TriangulationReport:
    violations = []
    if g.n < 3:
        violations.append(f"only {g.n} vertices")
    if not is_connected(g):
        violations.append("graph is disconnected")
    for fid, face in enumerate(g.faces):
        if len(face) != 3:
            violations.append(f"face {fid} has length {len(face)}: {list(face.vertices)}")
    euler = g.n - g.edge_count() + len(g.faces)
    if euler != 2:
        violations.append(f"V - E + F = {euler}, not 2")
    return TriangulationReport(not violations, violations)


def bfs(g: EmbeddedGraph, sources: Iterable[int], within: Iterable[int] | None = None) -> DistanceField:
    """Multi-source unweighted distances, optionally restricted to a vertex set."""
    src = frozenset(sources)
    if not src:
        raise EmptySourceSet("bfs needs at least one source")
    allowed = None if within is None else set(within)
    dist: list[int | None] = [None] * g.n
    queue = deque(sorted(src))
    for s in src:
        dist[s] = 0
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for u in g.rotations[v]:
            if dist[u] is None and (allowed is None or u in allowed):
                dist[u] = dv + 1
                queue.append(u)
    return DistanceField(src, tuple(dist))


def induced_edges(g: EmbeddedGraph, vertices: Iterable[int]) -> set[frozenset[int]]:
    vs = set(vertices)
    return {frozenset((u, v)) for u in vs for v in g.rotations[u] if v in vs and u < v}
