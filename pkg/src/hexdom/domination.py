"""Dominating-set checks, the exact branch-and-bound oracle, greedy, and the
lattice-pattern construction on triangulated cylinders."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .generators import CylinderSpec, SpecOutOfRange
from .lattice import LatticeCoord, develop_triangles, pattern_value
from .plane_graph import EmbeddedGraph

DEFAULT_EXACT_LIMIT = 60


class DominationError(RuntimeError):
    pass


class InstanceTooLarge(DominationError):
    pass


class DominationFailure(DominationError):
    pass


class LabelMismatch(DominationError):
    pass


@dataclass
class DominationCheck:
    ok: bool
    uncovered: list[int]

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class DominationResult:
    vertices: tuple[int, ...]
    valid: bool
    provenance: str  # exact, greedy, pattern-pullback, cylinder, hybrid
    bound: Fraction | None = None
    bound_holds: bool | None = None
    details: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        out = {
            "set": list(self.vertices),
            "size": self.size,
            "valid": self.valid,
            "provenance": self.provenance,
        }
        if self.bound is not None:
            out["bound"] = str(self.bound)
            out["bound_holds"] = self.bound_holds
        return out


def closed_masks(g: EmbeddedGraph) -> list[int]:
    return [(1 << v) | sum(1 << u for u in g.rotations[v]) for v in range(g.n)]


def is_dominating(g: EmbeddedGraph, vertices: Iterable[int]) -> DominationCheck:
    D = set(vertices)
    covered = set(D)
    for v in D:
        covered.update(g.rotations[v])
    uncovered = [v for v in range(g.n) if v not in covered]
    return DominationCheck(not uncovered, uncovered)


def _result(g: EmbeddedGraph, vertices: Iterable[int], provenance: str, **details) -> DominationResult:
    vs = tuple(sorted(set(vertices)))
    check = is_dominating(g, vs)
    if not check.ok:
        raise DominationFailure(f"{provenance} set misses {check.uncovered[:10]}")
    return DominationResult(vs, True, provenance, details=details)


def greedy(g: EmbeddedGraph) -> DominationResult:
    """Repeatedly take the vertex covering the most undominated vertices (lowest id on ties)."""
    masks = closed_masks(g)
    todo = (1 << g.n) - 1
    chosen = []
    while todo:
        best = max(range(g.n), key=lambda v: (bin(masks[v] & todo).count("1"), -v))
        chosen.append(best)
        todo &= ~masks[best]
    return _result(g, chosen, "greedy")


def exact_gamma(
    g: EmbeddedGraph,
    upper_hint: Iterable[int] | None = None,
    limit: int = DEFAULT_EXACT_LIMIT,
) -> DominationResult:
    """Minimum dominating set by branch and bound.

    Branches on the members of the closed neighborhood of an undominated
    vertex with the fewest candidates.  Prunes with the incumbent (greedy
    or ``upper_hint``) and with ``ceil(undominated / best coverage)``.
    """
    n = g.n
    if n > limit:
        raise InstanceTooLarge(f"n = {n} exceeds the exact limit {limit}")
    if n == 0:
        return DominationResult((), True, "exact")
    masks = closed_masks(g)
    best = list(greedy(g).vertices)
    if upper_hint is not None:
        hint = sorted(set(upper_hint))
        if is_dominating(g, hint).ok and len(hint) < len(best):
            best = hint
    # candidates able to dominate each vertex, in id order
    dominators = [[u for u in range(n) if masks[u] >> v & 1] for v in range(n)]
    max_cover = max(bin(m).count("1") for m in masks)

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def search(todo: int, chosen: list[int]) -> None:
        nonlocal best
        if not todo:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        remaining = len(best) - len(chosen)
        if remaining <= 1:
            return
        cover = max(popcount(masks[u] & todo) for u in range(n)) if popcount(todo) <= max_cover else max_cover
        if math.ceil(popcount(todo) / cover) >= remaining:
            return
        pick, pick_count = -1, n + 1
        t = todo
        while t:
            low = t & -t
            v = low.bit_length() - 1
            t ^= low
            c = len(dominators[v])
            if c < pick_count:
                pick, pick_count = v, c
                if c <= 2:
                    break
        options = sorted(dominators[pick], key=lambda u: (-popcount(masks[u] & todo), u))
        for u in options:
            chosen.append(u)
            search(todo & ~masks[u], chosen)
            chosen.pop()

    search((1 << n) - 1, [])
    return _result(g, best, "exact", gamma=len(best))


# --- cylinders ------------------------------------------------------------


@dataclass
class CylinderCover:
    spec: CylinderSpec
    labels: frozenset[tuple[int, int]]  # (a, b) of chosen z_{a,b}
    residue: int
    offset: int
    mirrored: bool
    sheet_pattern_count: int  # |S_H| of the winning sheet
    folded_count: int  # |S_Z| straight after folding, before pruning and swaps

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def bound(self) -> int:
        return math.ceil(self.spec.ell / 7) * (self.spec.w + 2)


def sheet_triangles(spec: CylinderSpec, offset: int = 0) -> list[tuple[tuple[int, int], tuple[int, int], tuple[int, int]]]:
    """Faces of the sheet: rows ``0 .. w+1``, sheet row ``a`` over cylinder row ``a + offset``."""
    out = []
    for a in range(spec.w + 1):
        forward = spec.quad_forward(a + offset)
        for b in range(spec.ell):
            if forward:
                out += [((a, b), (a + 1, b), (a + 1, b + 1)), ((a, b), (a + 1, b + 1), (a, b + 1))]
            else:
                out += [((a, b), (a + 1, b), (a, b + 1)), ((a + 1, b), (a + 1, b + 1), (a, b + 1))]
    return out


def sheet_coordinates(spec: CylinderSpec, offset: int = 0) -> dict[tuple[int, int], LatticeCoord]:
    """Lattice position of each sheet vertex ``y_{a,b}`` after developing the sheet flat.

    Each row is a straight lattice line and neighboring rows are parallel, so
    developing the first step of the sheet fixes everything.
    """
    tris = [tuple(2 * a + b for a, b in t) for t in sheet_triangles(CylinderSpec(spec.w, 1, spec.k), offset)]
    pos = develop_triangles(tris)
    out = {}
    for a in range(spec.w + 2):
        p0, p1 = pos[2 * a], pos[2 * a + 1]
        dx, dy = p1.x - p0.x, p1.y - p0.y
        for b in range(spec.ell + 1):
            out[a, b] = LatticeCoord(p0.x + b * dx, p0.y + b * dy)
    return out


def _sheet_cover(spec: CylinderSpec, coords, residue: int, offset: int, mirrored: bool) -> tuple[set[tuple[int, int]], int]:
    labels: set[tuple[int, int]] = set()
    count = 0
    for (a, b), p in coords.items():
        if pattern_value((p.y, p.x) if mirrored else p) == residue:
            labels.add(((a + offset) % spec.w, b))
            count += 1
    return labels, count


def cylinder_adjacency(spec: CylinderSpec) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(spec.vertex_count)]
    for e in spec.edges():
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)
    return adj


def interior_dominated(spec: CylinderSpec, labels: Iterable[tuple[int, int]], adj: list[set[int]] | None = None) -> list[tuple[int, int]]:
    """Interior-row labels ``z_{a,b}`` (``1 <= b <= ell-1``) not dominated by ``labels``."""
    adj = adj if adj is not None else cylinder_adjacency(spec)
    covered = set()
    for a, b in labels:
        v = spec.vertex(a, b)
        covered.add(v)
        covered.update(adj[v])
    return [(a, b) for b in range(1, spec.ell) for a in range(spec.w) if spec.vertex(a, b) not in covered]


def cylinder_dominate(spec: CylinderSpec, improve: bool = True) -> CylinderCover:
    """Pattern vertices of the unrolled sheet, folded back onto the cylinder.

    Every placement of the sheet is tried: which cylinder row it starts on,
    which of the two mirror-image embeddings, and which of the 7 residues.
    With ``improve``, each fold first loses members that are redundant for
    the interior rows, and the smallest one then goes through 2-for-1 swaps.
    """
    if spec.ell < 2:
        raise SpecOutOfRange("cylinder_dominate needs ell >= 2")
    adj = cylinder_adjacency(spec)
    interior = {spec.vertex(a, b) for b in range(1, spec.ell) for a in range(spec.w)}
    best = None
    for offset in range(spec.w):
        coords = sheet_coordinates(spec, offset)
        for mirrored in (False, True):
            for residue in range(7):
                folded, count = _sheet_cover(spec, coords, residue, offset, mirrored)
                missing = interior_dominated(spec, folded, adj)
                if missing:
                    raise DominationFailure(f"sheet pattern leaves {missing[:5]} undominated")
                members = {spec.vertex(*lab) for lab in folded}
                if improve:
                    members = _prune(adj, interior, members, spec)
                key = (len(members), offset, mirrored, residue)
                if best is None or key < best[0]:
                    best = (key, members, count, len(folded))
    (_, offset, mirrored, residue), members, count, folded_count = best
    if improve:
        members = _swap_pairs(adj, interior, members)
    labels = frozenset(spec.label(v) for v in members)
    return CylinderCover(spec, labels, residue, offset, mirrored, count, folded_count)


def _hits(adj: list[set[int]], members: set[int]) -> dict[int, int]:
    hits: dict[int, int] = {}
    for v in members:
        for u in (v, *adj[v]):
            hits[u] = hits.get(u, 0) + 1
    return hits


def _prune(adj: list[set[int]], interior: set[int], members: set[int], spec: CylinderSpec) -> set[int]:
    hits = _hits(adj, members)
    kept = set(members)
    # end rows first: what they cover outside the interior is included wholesale anyway
    ends = (0, spec.ell)
    for v in sorted(members, key=lambda v: (spec.label(v)[1] not in ends, spec.label(v)[1], spec.label(v)[0])):
        closed = (v, *adj[v])
        if all(hits[u] > 1 or u not in interior for u in closed):
            kept.remove(v)
            for u in closed:
                hits[u] -= 1
    return kept


def _swap_pairs(adj: list[set[int]], interior: set[int], members: set[int]) -> set[int]:
    """Replace two members by one vertex whenever one closed neighborhood covers what only they covered.

    Such a vertex is within distance 2 of both, so only pairs at distance
    at most 4 are tried.
    """
    members = set(members)
    while True:
        hits = _hits(adj, members)
        swap = None
        for v1 in sorted(members):
            ball2 = {v1}
            for _ in range(4):
                ball2 |= {u for x in ball2 for u in adj[x]}
            n1 = {v1, *adj[v1]}
            for v2 in sorted(members & ball2):
                if v2 <= v1:
                    continue
                n2 = {v2, *adj[v2]}
                need = [u for u in n1 | n2 if u in interior and hits[u] == (u in n1) + (u in n2)]
                cands = set(n1 if not need else {need[0], *adj[need[0]]})
                for u in need[1:]:
                    cands &= {u, *adj[u]}
                if cands:
                    swap = (v1, v2, min(cands))
                    break
            if swap:
                break
        if swap is None:
            return members
        v1, v2, x = swap
        members -= {v1, v2}
        members.add(x)


def cylinder_complete(
    g: EmbeddedGraph,
    spec: CylinderSpec,
    vertex_map: Mapping[tuple[int, int], int] | Sequence[int],
    cover: CylinderCover | None = None,
) -> DominationResult:
    """Cylinder cover plus every vertex of ``g`` outside the interior rows."""
    if isinstance(vertex_map, Mapping):
        zmap = dict(vertex_map)
    else:
        zmap = {spec.label(i): v for i, v in enumerate(vertex_map)}
    for a in range(spec.w):
        for b in range(spec.ell + 1):
            if (a, b) not in zmap:
                raise LabelMismatch(f"no vertex for z_{a},{b}")
    if len(set(zmap.values())) != len(zmap):
        raise LabelMismatch("two labels share a vertex")
    for e in spec.edges():
        x, y = (zmap[spec.label(v)] for v in e)
        if not g.has_edge(x, y):
            raise LabelMismatch(f"cylinder edge {sorted(spec.label(v) for v in e)} missing in the graph")
    if cover is None:
        cover = cylinder_dominate(spec)
    interior = {zmap[a, b] for a in range(spec.w) for b in range(1, spec.ell)}
    chosen = {zmap[lab] for lab in cover.labels} | (set(range(g.n)) - interior)
    bound = Fraction(math.ceil(spec.ell / 7) * (spec.w + 2) + g.n - spec.w * (spec.ell - 1))
    res = _result(g, chosen, "cylinder", residue=cover.residue, offset=cover.offset)
    res.bound = bound
    res.bound_holds = res.size <= bound
    return res
