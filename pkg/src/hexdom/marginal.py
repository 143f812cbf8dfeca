"""Right-degrees, marginal degrees and turns of walks in an embedded graph.

For a step ``v_{i-1}, v_i, v_{i+1}`` the right-degree counts the edges at
``v_i`` strictly counterclockwise after ``v_i v_{i-1}`` and before
``v_i v_{i+1}``; a backtracking step counts all ``deg(v_i) - 1`` other
edges.  The marginal degree is the right-degree minus two.  Boundary walks
are oriented with the subgraph's exterior on the right, which is what the
face-tracing rule of :mod:`hexdom.plane_graph` produces.

The ``verify_*``/layer helpers recompute both sides of the identities and
inequalities for outerplane subgraphs and report them; they never assume
the identity holds.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .plane_graph import EmbeddedGraph, GraphError, bfs, is_connected


class MarginalError(GraphError):
    pass


class NotConnected(MarginalError):
    pass


class NotOuterplane(MarginalError):
    pass


class NotACycle(MarginalError):
    pass


class ChordPresent(MarginalError):
    pass


class EmptyInterior(MarginalError):
    pass


class TurnPreconditionViolated(MarginalError):
    pass


def rdeg(g: EmbeddedGraph, prev: int, v: int, nxt: int) -> int:
    d = g.degree(v)
    return (g.position(v, nxt) - g.position(v, prev) - 1) % d


@dataclass(frozen=True)
class OrientedWalk:
    """A walk ``v_0 .. v_k``; closed walks store the cycle without repeating ``v_0``."""

    host: EmbeddedGraph
    vertices: tuple[int, ...]
    closed: bool = True

    def __len__(self) -> int:
        k = len(self.vertices)
        return k if self.closed else max(k - 1, 0)

    def _steps(self) -> Iterator[tuple[int, int, int]]:
        vs = self.vertices
        k = len(vs)
        if self.closed:
            for i in range(k):
                yield vs[i - 1], vs[i], vs[(i + 1) % k]
        else:
            for i in range(1, k - 1):
                yield vs[i - 1], vs[i], vs[i + 1]

    @property
    def rdeg(self) -> tuple[int, ...]:
        return tuple(rdeg(self.host, a, b, c) for a, b, c in self._steps())

    @property
    def marginal(self) -> tuple[int, ...]:
        return tuple(r - 2 for r in self.rdeg)

    @property
    def total_marginal(self) -> int:
        if not self.closed:
            raise ValueError("marginal degree of a walk is defined for closed walks")
        return sum(self.marginal)

    def turn_signs(self) -> tuple[int, ...]:
        return tuple((m > 0) - (m < 0) for m in self.marginal)

    def turn_census(self) -> tuple[int, int]:
        """``(left turns, right turns)``."""
        signs = self.turn_signs()
        return signs.count(1), signs.count(-1)

    def sharp_turns(self) -> list[int]:
        """Indices where the two walk edges are consecutive around the vertex."""
        out = []
        offset = 0 if self.closed else 1
        for i, (a, b, c) in enumerate(self._steps()):
            d = self.host.degree(b)
            if a != c and (self.host.position(b, c) - self.host.position(b, a)) % d in (1, d - 1):
                out.append(i + offset)
        return out

    def reversed(self) -> "OrientedWalk":
        if self.closed:
            vs = self.vertices
            return OrientedWalk(self.host, (vs[0],) + tuple(reversed(vs[1:])), True)
        return OrientedWalk(self.host, tuple(reversed(self.vertices)), False)

    def is_simple_cycle(self) -> bool:
        return self.closed and len(set(self.vertices)) == len(self.vertices) >= 3

    def edges(self) -> list[frozenset[int]]:
        vs = self.vertices
        k = len(vs)
        if self.closed:
            return [frozenset((vs[i], vs[(i + 1) % k])) for i in range(k)]
        return [frozenset((vs[i], vs[i + 1])) for i in range(k - 1)]


@dataclass(frozen=True)
class Region:
    """Boundary walk of a connected subgraph plus the split of ``g`` it induces."""

    walk: OrientedWalk
    exterior_faces: frozenset[int]
    exterior_vertices: frozenset[int]
    interior_vertices: frozenset[int]


def _face_regions(g: EmbeddedGraph, cut_edges: set[frozenset[int]]) -> list[int]:
    """Connected components of the dual after deleting the duals of ``cut_edges``."""
    region = [-1] * len(g.faces)
    fod = g.face_of_dart
    rid = 0
    for start in range(len(g.faces)):
        if region[start] >= 0:
            continue
        region[start] = rid
        stack = [start]
        while stack:
            f = stack.pop()
            for u, v in g.faces[f].darts:
                if frozenset((u, v)) in cut_edges:
                    continue
                other = fod[(v, u)]
                if region[other] < 0:
                    region[other] = rid
                    stack.append(other)
        rid += 1
    return region


def region_of(
    g: EmbeddedGraph,
    vertices: Iterable[int],
    outer: int,
    edges: Iterable[Iterable[int]] | None = None,
) -> Region:
    """Trace the boundary of the subgraph on ``vertices`` facing face ``outer``.

    ``edges`` defaults to the induced edge set.  The subgraph must be
    connected; every vertex of it must lie on the traced walk.
    """
    H = frozenset(vertices)
    if not H:
        raise NotConnected("empty vertex set")
    if edges is None:
        E = {frozenset((u, v)) for u in H for v in g.rotations[u] if v in H}
    else:
        E = {frozenset(e) for e in edges}
    if not _edge_connected(H, E):
        raise NotConnected(f"subgraph on {sorted(H)} is not connected")
    region = _face_regions(g, E)
    ext_id = region[outer]
    ext_faces = frozenset(f for f, r in enumerate(region) if r == ext_id)
    ext_vertices = frozenset(v for f in ext_faces for v in g.faces[f].vertices)
    if len(H) == 1:
        walk = OrientedWalk(g, tuple(H), True)
    else:
        fod = g.face_of_dart
        start = None
        for u in sorted(H):
            for v in g.rotations[u]:
                if frozenset((u, v)) in E and fod[(u, v)] in ext_faces:
                    start = (u, v)
                    break
            if start:
                break
        if start is None:
            raise NotOuterplane("outer face does not touch the subgraph")
        seq = []
        d = start
        while True:
            seq.append(d[0])
            d = _next_sub_dart(g, E, d)
            if d == start:
                break
        walk = OrientedWalk(g, tuple(seq), True)
        missing = H - set(seq)
        if missing:
            raise NotOuterplane(f"vertices {sorted(missing)} are not on the outer face")
    interior = frozenset(v for v in range(g.n) if v not in H and v not in ext_vertices)
    return Region(walk, ext_faces, ext_vertices - H, interior)


def _next_sub_dart(g: EmbeddedGraph, E: set[frozenset[int]], dart: tuple[int, int]) -> tuple[int, int]:
    u, v = dart
    rot = g.rotations[v]
    i = g.position(v, u)
    d = len(rot)
    for step in range(1, d + 1):
        w = rot[(i + step) % d]
        if frozenset((v, w)) in E:
            return v, w
    raise AssertionError("unreachable: dart has an edge back")


def _edge_connected(H: frozenset[int], E: set[frozenset[int]]) -> bool:
    adj: dict[int, list[int]] = {v: [] for v in H}
    for e in E:
        a, b = tuple(e)
        if a not in adj or b not in adj:
            raise MarginalError(f"edge {sorted(e)} leaves the vertex set")
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(H))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(H)


def far_face(g: EmbeddedGraph, vertices: Iterable[int]) -> int:
    """Lowest-id face at a vertex farthest from ``vertices``; a default exterior."""
    dist = bfs(g, vertices).dist
    best = max(range(g.n), key=lambda v: (dist[v] if dist[v] is not None else -1, -v))
    return min(g.face_of_dart[(best, u)] for u in g.rotations[best])


def boundary_walk(g: EmbeddedGraph, H: Iterable[int], outer: int | None = None) -> OrientedWalk:
    H = frozenset(H)
    if len(H) < 2:
        raise ValueError("boundary_walk needs at least two vertices; use marginal_degree for one")
    if outer is None:
        outer = far_face(g, H)
    return region_of(g, H, outer).walk


def marginal_degree(g: EmbeddedGraph, H: Iterable[int], outer: int | None = None) -> int:
    H = frozenset(H)
    if len(H) == 1:
        return g.degree(next(iter(H)))
    return boundary_walk(g, H, outer).total_marginal


@dataclass
class MarginalIdentityReport:
    marginal: int
    predicted: int
    enclosed: frozenset[int]

    @property
    def holds(self) -> bool:
        return self.marginal == self.predicted


def verify_marginal_identity(g: EmbeddedGraph, H: Iterable[int], outer: int | None = None) -> MarginalIdentityReport:
    """Compare the marginal degree of ``H`` with ``6 - sum(6 - deg)`` over ``H`` and its interior."""
    H = frozenset(H)
    if outer is None:
        outer = far_face(g, H)
    reg = region_of(g, H, outer)
    enclosed = H | reg.interior_vertices
    m = g.degree(next(iter(H))) if len(H) == 1 else reg.walk.total_marginal
    predicted = 6 - sum(6 - g.degree(v) for v in enclosed)
    return MarginalIdentityReport(m, predicted, enclosed)


def _cycle_region(g: EmbeddedGraph, C: Sequence[int], outer: int) -> Region:
    C = tuple(C)
    if len(set(C)) != len(C) or len(C) < 3:
        raise NotACycle(f"{list(C)} is not a simple cycle")
    edges = [frozenset((C[i], C[(i + 1) % len(C)])) for i in range(len(C))]
    for e in edges:
        a, b = tuple(e)
        if not g.has_edge(a, b):
            raise NotACycle(f"{a}-{b} is not an edge")
    return region_of(g, C, outer, edges)


@dataclass
class NeighborLayer:
    cycle: OrientedWalk
    layer: frozenset[int]
    walk: OrientedWalk
    boundary_length: int
    layer_marginal: int
    cycle_marginal: int
    cycle_deficiency: int
    connected: bool

    @property
    def length_holds(self) -> bool:
        return self.boundary_length == len(self.cycle) - self.layer_marginal

    @property
    def marginal_holds(self) -> bool:
        return self.layer_marginal == self.cycle_marginal + self.cycle_deficiency

    @property
    def holds(self) -> bool:
        return self.connected and self.length_holds and self.marginal_holds


def inner_neighbor_layer(g: EmbeddedGraph, C: Sequence[int], outer: int) -> NeighborLayer:
    """Interior neighbors of the cycle ``C``; ``outer`` is a face on its exterior side."""
    reg = _cycle_region(g, C, outer)
    cset = set(C)
    cedges = set(reg.walk.edges())
    fod = g.face_of_dart
    for u in cset:
        for v in g.rotations[u]:
            if v in cset and u < v and frozenset((u, v)) not in cedges:
                if fod[(u, v)] not in reg.exterior_faces or fod[(v, u)] not in reg.exterior_faces:
                    raise ChordPresent(f"chord {u}-{v} lies inside the cycle")
    layer = frozenset(v for v in reg.interior_vertices if any(u in cset for u in g.rotations[v]))
    if not layer:
        raise EmptyInterior("no interior neighbors")
    connected = is_connected(g, layer)
    if connected and len(layer) > 1:
        walk = region_of(g, layer, outer).walk
        lm = walk.total_marginal
    elif connected:
        walk = OrientedWalk(g, tuple(layer), True)
        lm = g.degree(next(iter(layer)))
    else:
        walk = OrientedWalk(g, (), True)
        lm = 0
    blen = 0 if len(layer) == 1 else len(walk)
    return NeighborLayer(
        cycle=reg.walk,
        layer=layer,
        walk=walk,
        boundary_length=blen,
        layer_marginal=lm,
        cycle_marginal=reg.walk.total_marginal,
        cycle_deficiency=sum(6 - g.degree(v) for v in cset),
        connected=connected,
    )


@dataclass
class LayerSizes:
    sizes: list[int]
    marginal: int
    bounds: list[int]

    @property
    def holds(self) -> bool:
        return all(s <= b for s, b in zip(self.sizes, self.bounds))


def layer_sizes(g: EmbeddedGraph, H: Iterable[int], outer: int | None = None) -> LayerSizes:
    """Distance layers from ``H`` into its interior, with the shrinking bound per layer."""
    H = frozenset(H)
    if outer is None:
        outer = far_face(g, H)
    reg = region_of(g, H, outer)
    m = g.degree(next(iter(H))) if len(H) == 1 else reg.walk.total_marginal
    dist = bfs(g, H, within=H | reg.interior_vertices).dist
    top = max(d for d in dist if d is not None)
    sizes = [0] * (top + 1)
    for d in dist:
        if d is not None:
            sizes[d] += 1
    bounds = [max(0, len(H) - i * m) for i in range(len(sizes))]
    return LayerSizes(sizes, m, bounds)


@dataclass
class BoundaryClassification:
    kind: str  # "cycle", "path" or "path-plus-cycle"
    path_length: int
    cycle_length: int
    cycle_marginal: int | None
    walk_length: int

    def consistent(self) -> bool:
        W = self.walk_length
        if self.kind == "cycle":
            return self.cycle_length == W
        if self.kind == "path":
            return 2 * self.path_length == W
        return (
            2 * self.path_length + self.cycle_length == W
            and 0 < self.path_length < W / 2
            and self.cycle_marginal is not None
            and self.cycle_marginal >= 1
        )


def _check_turns(W: OrientedWalk) -> None:
    census = W.turn_census()
    if census not in ((0, 0), (1, 1)):
        raise TurnPreconditionViolated(f"turn census (left, right) = {census}")


def classify_boundary(g: EmbeddedGraph, W: OrientedWalk) -> BoundaryClassification:
    """Shape of the subgraph traced by a closed walk with at most one turn pair."""
    _check_turns(W)
    counts = Counter(W.edges())
    if set(counts.values()) - {1, 2}:
        raise MarginalError("walk uses an edge more than twice")
    singles = [e for e, c in counts.items() if c == 1]
    doubles = [e for e, c in counts.items() if c == 2]
    n_walk = len(W)
    if not doubles:
        if len(set(W.vertices)) != len(W.vertices):
            raise MarginalError("walk repeats a vertex without repeating an edge")
        return BoundaryClassification("cycle", 0, n_walk, W.total_marginal, n_walk)
    if not singles:
        return BoundaryClassification("path", len(doubles), 0, None, n_walk)
    single_set = set(singles)
    vs = W.vertices
    k = len(vs)
    cyc = []
    for i in range(k):
        if frozenset((vs[i], vs[(i + 1) % k])) in single_set:
            cyc.append(vs[i])
    B = OrientedWalk(g, tuple(cyc), True)
    return BoundaryClassification("path-plus-cycle", len(doubles), len(singles), B.total_marginal, n_walk)


def cyclic_match(a: Sequence[int], b: Sequence[int]) -> int | None:
    """Smallest shift ``s`` with ``a[i] == b[(i + s) % n]`` for all ``i``, else None."""
    if len(a) != len(b):
        return None
    n = len(a)
    for s in range(max(n, 1)):
        if all(a[i] == b[(i + s) % n] for i in range(n)):
            return s
    return None


@dataclass
class NextLayer:
    layer: NeighborLayer
    walk: OrientedWalk
    same_length: bool
    pattern_shift: int | None
    is_cycle: bool
    all_degree6: bool

    @property
    def holds(self) -> bool:
        return (
            self.layer.holds
            and self.same_length
            and self.pattern_shift is not None
            and (self.is_cycle or not self.all_degree6)
        )


def next_layer(g: EmbeddedGraph, C: Sequence[int], outer: int) -> NextLayer:
    """Boundary of the interior neighbors of an all-degree-6 cycle with at most one turn pair."""
    if any(g.degree(v) != 6 for v in C):
        raise TurnPreconditionViolated("cycle has a vertex of degree other than 6")
    cyc = _cycle_region(g, C, outer).walk
    _check_turns(cyc)
    layer = inner_neighbor_layer(g, C, outer)
    W = layer.walk
    shift = cyclic_match(cyc.turn_signs(), W.turn_signs()) if len(W) else None
    return NextLayer(
        layer=layer,
        walk=W,
        same_length=len(W) == len(cyc),
        pattern_shift=shift,
        is_cycle=W.is_simple_cycle(),
        all_degree6=all(g.degree(v) == 6 for v in layer.layer),
    )


def outer_face_of_cycle(g: EmbeddedGraph, C: Sequence[int]) -> int:
    """Face to the right of the dart ``C[0] -> C[1]``."""
    return g.face_of_dart[(C[0], C[1])]


@dataclass
class SampledSubgraph:
    vertices: frozenset[int]
    outer: int
    strategy: str


def sample_outerplane_subgraphs(
    g: EmbeddedGraph,
    count: int,
    seed: int,
    max_size: int = 24,
    max_attempts: int | None = None,
) -> list[SampledSubgraph]:
    """Random connected outerplane subgraphs with a chosen exterior face.

    Two growth strategies alternate: grow a set one random frontier vertex
    at a time while it stays outerplane, or grow a random blob and keep its
    outer shell.  Candidates failing connectivity or outerplanarity are
    rejected.  Deterministic for a given seed.
    """
    rng = random.Random(seed)
    out: list[SampledSubgraph] = []
    attempts = 0
    limit = max_attempts if max_attempts is not None else 50 * count
    while len(out) < count and attempts < limit:
        attempts += 1
        strategy = "grow" if attempts % 2 else "shell"
        size = rng.randint(1, max_size)
        start = rng.randrange(g.n)
        if strategy == "grow":
            H = _grow_outerplane(g, start, size, rng)
        else:
            blob = _random_blob(g, start, size + 6, rng)
            H = {v for v in blob if any(u not in blob for u in g.rotations[v])}
        if not H:
            continue
        H = frozenset(H)
        try:
            outer = far_face(g, H)
            region_of(g, H, outer)
        except MarginalError:
            continue
        out.append(SampledSubgraph(H, outer, strategy))
    return out


def _random_blob(g: EmbeddedGraph, start: int, size: int, rng: random.Random) -> set[int]:
    blob = {start}
    frontier = sorted(g.rotations[start])
    while len(blob) < size and frontier:
        v = frontier.pop(rng.randrange(len(frontier)))
        if v in blob:
            continue
        blob.add(v)
        frontier.extend(u for u in g.rotations[v] if u not in blob)
    return blob


def _grow_outerplane(g: EmbeddedGraph, start: int, size: int, rng: random.Random) -> set[int]:
    H = {start}
    tries = 0
    while len(H) < size and tries < 4 * size:
        tries += 1
        frontier = sorted({u for v in H for u in g.rotations[v]} - H)
        if not frontier:
            break
        v = rng.choice(frontier)
        cand = frozenset(H | {v})
        try:
            region_of(g, cand, far_face(g, cand))
        except MarginalError:
            continue
        H.add(v)
    return H
