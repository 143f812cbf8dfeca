"""Constructors for the graph families used by the constructions and tests.

Every constructor lists its faces as vertex cycles and hands them to
:func:`from_faces`, which orients them coherently and derives the rotation
system.  Sphere outputs are triangulations; ``hex_patch`` is a disc with
one outer face and ``cylinder_patch`` an annulus with two boundary faces.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Sequence

from .lattice import DIRECTIONS, LatticeCoord, add, ball, ring
from .plane_graph import EmbeddedGraph, GraphError, build


class SpecOutOfRange(ValueError):
    pass


class NonManifoldFaces(GraphError):
    pass


def from_faces(n: int, faces: Sequence[Sequence[int]]) -> EmbeddedGraph:
    """Build a rotation system from the faces of a closed orientable surface.

    Faces may be given in either orientation; the first face fixes the
    global one and the rest are flipped to agree with it.
    """
    if not faces:
        if n == 1:
            return build(1, [[]])
        raise NonManifoldFaces("no faces given")
    faces = [list(f) for f in faces]
    edge_faces: dict[frozenset[int], list[int]] = defaultdict(list)
    for fid, f in enumerate(faces):
        for i in range(len(f)):
            edge_faces[frozenset((f[i], f[(i + 1) % len(f)]))].append(fid)
    for e, fl in edge_faces.items():
        if len(fl) != 2:
            raise NonManifoldFaces(f"edge {sorted(e)} lies on {len(fl)} faces")

    oriented: list[list[int] | None] = [None] * len(faces)
    for root in range(len(faces)):
        if oriented[root] is not None:
            continue
        oriented[root] = faces[root]
        queue = deque([root])
        while queue:
            fid = queue.popleft()
            f = oriented[fid]
            for i in range(len(f)):
                u, v = f[i], f[(i + 1) % len(f)]
                for other in edge_faces[frozenset((u, v))]:
                    if other == fid:
                        continue
                    want = _has_directed(faces[other], v, u)
                    cand = faces[other] if want else faces[other][::-1]
                    if oriented[other] is None:
                        oriented[other] = cand
                        queue.append(other)
                    elif not _has_directed(oriented[other], v, u):
                        raise NonManifoldFaces("faces do not admit a coherent orientation")

    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for f in oriented:
        k = len(f)
        for i in range(k):
            v, nxt, prv = f[i], f[(i + 1) % k], f[i - 1]
            if nxt in succ[v]:
                raise NonManifoldFaces(f"vertex {v} has a repeated corner")
            succ[v][nxt] = prv
    rotations = []
    for v in range(n):
        if not succ[v]:
            rotations.append([])
            continue
        start = min(succ[v])
        rot = [start]
        u = succ[v][start]
        while u != start:
            rot.append(u)
            u = succ[v][u]
        if len(rot) != len(succ[v]):
            raise NonManifoldFaces(f"link of vertex {v} is not a single cycle")
        rotations.append(rot)
    return build(n, rotations)


def _has_directed(face: Sequence[int], u: int, v: int) -> bool:
    k = len(face)
    return any(face[i] == u and face[(i + 1) % k] == v for i in range(k))


def triangle() -> EmbeddedGraph:
    return build(3, [[1, 2], [2, 0], [0, 1]])


def octahedron() -> EmbeddedGraph:
    # 0 = north pole, 5 = south pole, 1..4 the equator
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1), (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)]
    return from_faces(6, faces)


_PHI = (1.0 + math.sqrt(5.0)) / 2.0
_ICOSA_COORDS = [
    (-1, _PHI, 0), (1, _PHI, 0), (-1, -_PHI, 0), (1, -_PHI, 0),
    (0, -1, _PHI), (0, 1, _PHI), (0, -1, -_PHI), (0, 1, -_PHI),
    (_PHI, 0, -1), (_PHI, 0, 1), (-_PHI, 0, -1), (-_PHI, 0, 1),
]
_ICOSA_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def geodesic_sphere(m: int) -> EmbeddedGraph:
    """Icosahedron with every face cut into ``m * m`` triangles.

    Vertices 0..11 are the icosahedron's corners (the degree-5 vertices);
    edge points and face points follow in generation order.
    """
    if m < 1:
        raise SpecOutOfRange("geodesic_sphere needs m >= 1")
    ids: dict[frozenset, int] = {frozenset({(c, m)}): c for c in range(12)}

    def vid(weights: dict[int, int]) -> int:
        key = frozenset((c, w) for c, w in weights.items() if w > 0)
        if key not in ids:
            ids[key] = len(ids)
        return ids[key]

    tris = []
    for A, B, C in _ICOSA_FACES:
        pt = {}
        for a in range(m + 1):
            for b in range(m + 1 - a):
                pt[a, b] = vid({A: m - a - b, B: a, C: b})
        for a in range(m):
            for b in range(m - a):
                tris.append((pt[a, b], pt[a + 1, b], pt[a, b + 1]))
                if a + b + 2 <= m:
                    tris.append((pt[a + 1, b], pt[a + 1, b + 1], pt[a, b + 1]))
    return from_faces(len(ids), tris)


def icosahedron() -> EmbeddedGraph:
    return geodesic_sphere(1)


def band_graph(k: int) -> EmbeddedGraph:
    """The ``n = 6k`` triangulation with no dominating set of size ``n/6``.

    Vertex ``v_j`` of the construction is id ``j - 1``; triangle ``S_i`` is
    ``{3i-3, 3i-2, 3i-1}``.
    """
    if k < 1:
        raise SpecOutOfRange("band_graph needs k >= 1")
    layers = 2 * k

    def a(i: int) -> int:
        return 3 * i - 3

    def b(i: int) -> int:
        return 3 * i - 2

    def c(i: int) -> int:
        return 3 * i - 1

    faces = [(a(1), b(1), c(1)), (a(layers), b(layers), c(layers))]
    for i in range(1, layers):
        faces += [
            (a(i), b(i), b(i + 1)), (a(i), b(i + 1), a(i + 1)),
            (b(i), c(i), c(i + 1)), (b(i), c(i + 1), b(i + 1)),
            (c(i), a(i), a(i + 1)), (c(i), a(i + 1), c(i + 1)),
        ]
    return from_faces(6 * k, faces)


def mt_family(m: int) -> EmbeddedGraph:
    """``m`` disjoint K4s side by side, completed to a triangulation.

    K4 number ``t`` has outer triangle ``4t, 4t+1, 4t+2`` and inner vertex
    ``4t+3``.  Neighboring outer triangles are joined by two triangles and
    the remaining outer polygon is fanned from vertex 0.
    """
    if m < 2:
        raise SpecOutOfRange("mt_family needs m >= 2")

    def p(t): return 4 * t
    def q(t): return 4 * t + 1
    def r(t): return 4 * t + 2
    def s(t): return 4 * t + 3

    faces = []
    for t in range(m):
        faces += [(p(t), q(t), s(t)), (q(t), r(t), s(t)), (r(t), p(t), s(t))]
    for t in range(m - 1):
        faces += [(q(t), p(t + 1), r(t + 1)), (q(t), r(t + 1), r(t))]
    polygon = []
    for t in range(m):
        polygon += [p(t), q(t)]
    polygon += [r(t) for t in reversed(range(m))]
    for i in range(1, len(polygon) - 1):
        faces.append((polygon[0], polygon[i], polygon[i + 1]))
    return from_faces(4 * m, faces)


def hex_patch_coords(r: int) -> list[LatticeCoord]:
    """Lattice position of each vertex of ``hex_patch(r)``, by vertex id."""
    return ball(r)


def hex_patch(r: int) -> EmbeddedGraph:
    """Triangulated hexagon of radius ``r`` (a lattice ball), outer face included."""
    if r < 0:
        raise SpecOutOfRange("hex_patch needs r >= 0")
    pts = ball(r)
    index = {p: i for i, p in enumerate(pts)}
    if r == 0:
        return build(1, [[]])
    faces = []
    for p in pts:
        for d1, d2 in ((DIRECTIONS[0], DIRECTIONS[1]), (DIRECTIONS[1], DIRECTIONS[2])):
            q1, q2 = add(p, d1), add(p, d2)
            if q1 in index and q2 in index:
                faces.append((index[p], index[q1], index[q2]))
    faces.append(tuple(index[p] for p in ring(r)))
    return from_faces(len(pts), faces)


@dataclass(frozen=True)
class CylinderSpec:
    """Width ``w`` ring, ``ell`` ring steps, twist ``k``."""

    w: int
    ell: int
    k: int = 0

    def __post_init__(self):
        if self.w < 3:
            raise SpecOutOfRange(f"cylinder width {self.w} < 3")
        if self.ell < 1:
            raise SpecOutOfRange(f"cylinder length {self.ell} < 1")
        if not 0 <= self.k < self.w:
            raise SpecOutOfRange(f"twist {self.k} outside 0..{self.w - 1}")

    @property
    def vertex_count(self) -> int:
        return self.w * (self.ell + 1)

    def vertex(self, a: int, b: int) -> int:
        """Id of ``z_{a,b}`` in :func:`cylinder_patch` and :func:`cylinder_sphere`."""
        return b * self.w + a % self.w

    def label(self, v: int) -> tuple[int, int]:
        return v % self.w, v // self.w

    def quad_forward(self, a: int) -> bool:
        """Whether quad ``(a, a+1)`` carries the diagonal ``z_{a,b} z_{a+1,b+1}``."""
        return a % self.w < self.k

    def triangles(self) -> list[tuple[int, int, int]]:
        z = self.vertex
        out = []
        for b in range(self.ell):
            for a in range(self.w):
                if self.quad_forward(a):
                    out += [(z(a, b), z(a + 1, b), z(a + 1, b + 1)), (z(a, b), z(a + 1, b + 1), z(a, b + 1))]
                else:
                    out += [(z(a, b), z(a + 1, b), z(a, b + 1)), (z(a + 1, b), z(a + 1, b + 1), z(a, b + 1))]
        return out

    def edges(self) -> set[frozenset[int]]:
        out = set()
        for t in self.triangles():
            for i in range(3):
                out.add(frozenset((t[i], t[(i + 1) % 3])))
        return out


def cylinder_patch(spec: CylinderSpec) -> EmbeddedGraph:
    """The annulus ``z_{a,b}``; both end rings bound non-triangular faces."""
    w, ell = spec.w, spec.ell
    faces = list(spec.triangles())
    faces.append(tuple(spec.vertex(a, 0) for a in range(w)))
    faces.append(tuple(spec.vertex(a, ell) for a in range(w)))
    return from_faces(spec.vertex_count, faces)


def cylinder_sphere(spec: CylinderSpec) -> EmbeddedGraph:
    """Cylinder capped by one apex per end (ids ``w(ell+1)`` and ``w(ell+1)+1``)."""
    if spec.w > 6:
        raise SpecOutOfRange("cylinder_sphere caps need w <= 6 to keep degree <= 6")
    w, ell = spec.w, spec.ell
    bottom, top = spec.vertex_count, spec.vertex_count + 1
    faces = list(spec.triangles())
    for a in range(w):
        faces.append((bottom, spec.vertex(a + 1, 0), spec.vertex(a, 0)))
        faces.append((top, spec.vertex(a, ell), spec.vertex(a + 1, ell)))
    return from_faces(spec.vertex_count + 2, faces)


FAMILIES = ("octahedron", "icosahedron", "geodesic", "band", "mt", "hex", "cylinder", "cylinder-patch", "triangle")
