"""The end-to-end construction of a dominating set with at most ``n/4`` vertices.

Branch 1 cuts the graph open along a minimum Steiner tree of the
low-degree vertices and pulls the lattice pattern back.  Branch 2 runs when
that tree is long: around the middle of the tree's longest clean path the
graph looks like a long flat cylinder, which is dominated row by row with
the folded sheet pattern and completed with everything outside it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .domination import (
    DEFAULT_EXACT_LIMIT,
    CylinderCover,
    DominationError,
    DominationResult,
    LabelMismatch,
    cylinder_complete,
    cylinder_dominate,
    exact_gamma,
    greedy,
    is_dominating,
)
from .generators import CylinderSpec, SpecOutOfRange
from .lattice import DIRECTIONS, LatticeCoord, add, lattice_distance, lattice_norm, ring, sub
from .marginal import OrientedWalk
from .plane_graph import EmbeddedGraph, GraphError, is_sphere_triangulation
from .steiner import CleanPath, SteinerError, SteinerTree, deficiency_set, longest_clean_path, min_steiner_tree
from .surgery import InconsistentDevelopment, NotATree, best_pullback, cut_along_tree, develop

N0 = 4_500_000


class PipelineError(RuntimeError):
    pass


class InvalidInput(PipelineError, ValueError):
    pass


class CaseContradiction(PipelineError):
    pass


class CylinderGrowthFailed(PipelineError):
    pass


# --- local lattice charts ------------------------------------------------


@dataclass(frozen=True)
class Frame:
    """A vertex with the rotation index that points along ``DIRECTIONS[0]``."""

    vertex: int
    offset: int

    def neighbor(self, g: EmbeddedGraph, j: int) -> int:
        return g.rotations[self.vertex][(self.offset + j) % 6]

    def step(self, g: EmbeddedGraph, j: int) -> "Frame":
        if g.degree(self.vertex) != 6:
            raise CaseContradiction(f"vertex {self.vertex} has degree {g.degree(self.vertex)}, cannot step through it")
        u = self.neighbor(g, j)
        return Frame(u, (g.position(u, self.vertex) - (j + 3)) % 6) if g.degree(u) == 6 else Frame(u, -1)


@dataclass
class HexagonReport:
    """Result of growing lattice balls around ``center``.

    ``radius`` is the first ``r`` for which the ball of radius ``r`` is not a
    triangulated hexagon.  ``chart`` maps the points of the lattice ball of
    radius ``radius`` to frames (points past a low-degree vertex are absent).
    """

    center: int
    radius: int
    chart: dict[LatticeCoord, Frame]
    reason: str

    def walk(self) -> list[int]:
        """The closed walk ``W`` of radius-``r`` neighbors, in ring order."""
        return [self.chart[p].vertex for p in ring(self.radius) if p in self.chart]

    def sides(self) -> list[list[int]]:
        """``W_0 .. W_5``, each from one r-corner to the next."""
        pts = ring(self.radius)
        r = self.radius
        return [[self.chart[pts[(s * r + t) % len(pts)]].vertex for t in range(r + 1)] for s in range(6)]


def hexagon_radius(g: EmbeddedGraph, x: int, limit: int | None = None) -> HexagonReport:
    """Smallest ``r`` such that the vertices within ``r`` of ``x`` do not form a triangulated hexagon."""
    limit = g.n if limit is None else limit
    if g.degree(x) != 6:
        return HexagonReport(x, 1, {LatticeCoord(0, 0): Frame(x, 0)}, f"center has degree {g.degree(x)}")
    chart = {LatticeCoord(0, 0): Frame(x, 0)}
    owner = {x: LatticeCoord(0, 0)}
    for r in range(1, limit + 1):
        # extend the chart from ring r-1 to ring r
        for p in ring(r - 1):
            f = chart[p]
            if f.offset < 0:
                return HexagonReport(x, r, chart, f"vertex {f.vertex} at distance {r - 1} has degree {g.degree(f.vertex)}")
            for j in range(6):
                q = add(p, DIRECTIONS[j])
                if lattice_norm(q) != r:
                    continue
                nf = f.step(g, j)
                if q in chart and chart[q] != nf:
                    raise InconsistentDevelopment(f"lattice point {tuple(q)} reached as {chart[q]} and {nf}")
                chart[q] = nf
        reason = ""
        pts = ring(r)
        for i, p in enumerate(pts):
            v = chart[p].vertex
            if v in owner and owner[v] != p:
                reason = f"vertex {v} appears at {tuple(owner[v])} and {tuple(p)}"
                break
            owner[v] = p
        if not reason:
            where = {chart[p].vertex: p for p in pts}
            for p in pts:
                for u in g.rotations[chart[p].vertex]:
                    if u in where and lattice_distance(p, where[u]) > 1:
                        reason = f"edge {chart[p].vertex}-{u} joins non-adjacent points {tuple(p)}, {tuple(where[u])}"
                        break
                if reason:
                    break
        if reason:
            return HexagonReport(x, r, chart, reason)
    raise PipelineError("no radius found within the limit")


@dataclass
class Overlap:
    p: LatticeCoord
    q: LatticeCoord
    kind: str  # "shared" (case ii) or "edge" (case i)
    translation: LatticeCoord
    side_gap: int  # sides of the hexagon between the two overlapping points, 0..3


def _sides_of(r: int, p: LatticeCoord) -> list[int]:
    t = ring(r).index(p)
    sides = [t // r]
    if t % r == 0:
        sides.append((t // r - 1) % 6)
    return sides


def _side_gap(r: int, p: LatticeCoord, q: LatticeCoord) -> int:
    """How many sides apart two points of ``W`` are; a corner may be read as either of its sides."""
    best = 0
    for a in _sides_of(r, p):
        for b in _sides_of(r, q):
            d = (a - b) % 6
            best = max(best, min(d, 6 - d))
    return best


def overlaps(g: EmbeddedGraph, hx: HexagonReport) -> list[Overlap]:
    """Repeated vertices and extra edges along ``W``, each with the lattice translation it implies."""
    r = hx.radius
    pts = [p for p in ring(r) if p in hx.chart]
    out = []
    for i, p in enumerate(pts):
        fp = hx.chart[p]
        for q in pts[i + 1:]:
            fq = hx.chart[q]
            if fp.vertex == fq.vertex:
                if fp.offset != fq.offset:
                    raise CaseContradiction(f"vertex {fp.vertex} is reached with two different frames")
                out.append(Overlap(p, q, "shared", sub(q, p), _side_gap(r, p, q)))
            elif lattice_distance(p, q) > 1 and g.has_edge(fp.vertex, fq.vertex):
                if fp.offset < 0 or fq.offset < 0:
                    raise CaseContradiction("overlap through a vertex of degree other than 6")
                j = [k for k in range(6) if fp.neighbor(g, k) == fq.vertex][0]
                stepped = fp.step(g, j)
                if stepped.offset != fq.offset:
                    raise CaseContradiction(f"edge {fp.vertex}-{fq.vertex} closes a loop with rotation")
                out.append(Overlap(p, q, "edge", sub(q, add(p, DIRECTIONS[j])), _side_gap(r, p, q)))
    return out


def _decompose(t: LatticeCoord) -> tuple[int, int, int]:
    """``t = a * DIRECTIONS[i] + b * DIRECTIONS[i+1]`` with ``a, b >= 0``."""
    for i in range(6):
        d1, d2 = DIRECTIONS[i], DIRECTIONS[(i + 1) % 6]
        det = d1.x * d2.y - d1.y * d2.x
        a = (t.x * d2.y - t.y * d2.x) // det
        b = (d1.x * t.y - d1.y * t.x) // det
        if a >= 0 and b >= 0 and a * d1.x + b * d2.x == t.x and a * d1.y + b * d2.y == t.y and a > 0:
            return i, a, b
    raise ValueError(f"cannot decompose {t}")


@dataclass
class C0Result:
    cycle: tuple[int, ...]
    translation: LatticeCoord
    case: int  # side gap q
    kind: str
    turns: tuple[int, int]  # (left, right)


def find_c0(g: EmbeddedGraph, hx: HexagonReport) -> C0Result:
    """An induced all-degree-6 cycle through ``x`` wrapping once around the cylinder.

    Every overlap must imply the same lattice translation
    ``a d_i + b d_{i+1}``; ``C_0`` is the graph image of a lattice path
    realizing it with at most one bend.
    """
    found = overlaps(g, hx)
    if not found:
        raise CaseContradiction(f"ball stops being a hexagon without an overlap ({hx.reason})")
    shifts = {min(o.translation, LatticeCoord(-o.translation.x, -o.translation.y)) for o in found}
    if len(shifts) > 1:
        raise CaseContradiction(f"overlaps imply different translations {sorted(map(tuple, shifts))}")
    # one wrap shows up on several pairs of sides at once; the case is set by the widest gap
    found.sort(key=lambda o: (-o.side_gap, o.kind, tuple(o.p), tuple(o.q)))
    ov = found[0]
    if ov.side_gap < 3:
        raise CaseContradiction(f"overlaps only between sides {ov.side_gap} apart; needs low-degree vertices near the center")
    i, a, b = _decompose(ov.translation)
    w = a + b
    if w < 3:
        raise CaseContradiction(f"translation {tuple(ov.translation)} is shorter than 3")
    steps = [i] * a + [(i + 1) % 6] * b
    last = None
    for shift in range(w):
        # rotate the step sequence so the bend moves around; the start stays at x
        seq = steps[shift:] + steps[:shift]
        frame = Frame(hx.center, 0)
        cyc = [frame.vertex]
        ok = True
        for j in seq:
            try:
                frame = frame.step(g, j)
            except CaseContradiction as e:
                ok, last = False, str(e)
                break
            cyc.append(frame.vertex)
        if not ok:
            continue
        if cyc[-1] != cyc[0] or frame.offset != 0:
            last = "path does not close up with trivial holonomy"
            continue
        cyc.pop()
        reason = _cycle_problem(g, cyc)
        if reason:
            last = reason
            continue
        census = OrientedWalk(g, tuple(cyc), True).turn_census()
        if census not in ((0, 0), (1, 1)):
            last = f"turn census {census}"
            continue
        return C0Result(tuple(cyc), ov.translation, ov.side_gap, ov.kind, census)
    raise CaseContradiction(f"no valid C_0 for translation {tuple(ov.translation)}: {last}")


def _cycle_problem(g: EmbeddedGraph, cyc: Sequence[int]) -> str:
    w = len(cyc)
    if len(set(cyc)) != w:
        return "walk repeats a vertex"
    if any(g.degree(v) != 6 for v in cyc):
        return "cycle has a vertex of degree other than 6"
    pos = {v: i for i, v in enumerate(cyc)}
    for i, v in enumerate(cyc):
        for u in g.rotations[v]:
            if u in pos and (pos[u] - i) % w not in (1, w - 1):
                return f"chord {v}-{u}"
    return ""


# --- cylinder growth -----------------------------------------------------


def layer_beside(g: EmbeddedGraph, ring_: Sequence[int], right: bool) -> list[int] | None:
    """Neighbors of an all-degree-6 cycle on one side, as a walk in the same direction.

    Returns ``None`` when they do not form a cycle of the same length.
    """
    w = len(ring_)
    seq: list[int] = []
    for i, v in enumerate(ring_):
        prev, nxt = ring_[i - 1], ring_[(i + 1) % w]
        rot = g.rotations[v]
        d = len(rot)
        pp, pn = g.position(v, prev), g.position(v, nxt)
        if right:
            wedge = [rot[(pp + s) % d] for s in range(1, (pn - pp) % d)]
        else:
            wedge = [rot[(pn + s) % d] for s in range(1, (pp - pn) % d)][::-1]
        for u in wedge:
            if not seq or seq[-1] != u:
                seq.append(u)
    while len(seq) > 1 and seq[0] == seq[-1]:
        seq.pop()
    if len(seq) != w or len(set(seq)) != w:
        return None
    if any(not g.has_edge(seq[i], seq[(i + 1) % w]) for i in range(w)):
        return None
    return seq


@dataclass
class GrownCylinder:
    rings: list[list[int]]  # ordered across the cylinder, all running the same way
    center_index: int  # position of C_0 in ``rings``
    stops: tuple[str, str]

    @property
    def width(self) -> int:
        return len(self.rings[0])

    @property
    def length(self) -> int:
        return len(self.rings) - 1


def grow_cylinder(g: EmbeddedGraph, c0: Sequence[int]) -> GrownCylinder:
    """Stack layers on both sides of ``C_0`` until a layer fails or meets a low-degree vertex."""
    used = set(c0)
    sides: dict[bool, list[list[int]]] = {}
    stops = {}
    for right in (True, False):
        rings: list[list[int]] = []
        cur = list(c0)
        while True:
            if any(g.degree(v) != 6 for v in cur):
                stops[right] = "low-degree vertex on the last ring"
                break
            nxt = layer_beside(g, cur, right)
            if nxt is None:
                stops[right] = "next layer is not a cycle of the same length"
                break
            if used & set(nxt):
                stops[right] = "next layer runs into an earlier ring"
                break
            rings.append(nxt)
            used |= set(nxt)
            cur = nxt
        sides[right] = rings
    left = sides[False][::-1]
    return GrownCylinder(left + [list(c0)] + sides[True], len(left), (stops[False], stops[True]))


def label_cylinder(g: EmbeddedGraph, grown: GrownCylinder) -> tuple[CylinderSpec, dict[tuple[int, int], int]]:
    """Match the stacked rings to ``z_{a,b}`` of some ``CylinderSpec``."""
    rings = [list(r) for r in grown.rings]
    w, ell = grown.width, grown.length
    if ell < 1:
        raise LabelMismatch("cylinder has a single ring")
    forward_sets = []
    for b in range(ell):
        lo, hi = rings[b], rings[b + 1]
        chosen = None
        for s in range(w):
            if not all(g.has_edge(lo[a], hi[(a + s) % w]) for a in range(w)):
                continue
            fwd = frozenset(a for a in range(w) if g.has_edge(lo[a], hi[(a + 1 + s) % w]))
            bwd = frozenset(a for a in range(w) if g.has_edge(lo[(a + 1) % w], hi[(a + s) % w]))
            if len(fwd) == w or fwd & bwd or fwd | bwd != frozenset(range(w)):
                continue
            chosen = (s, fwd)
            break
        if chosen is None:
            raise LabelMismatch(f"rings {b} and {b + 1} are not joined like a cylinder")
        s, fwd = chosen
        rings[b + 1] = hi[s:] + hi[:s]
        forward_sets.append(fwd)
    if len(set(forward_sets)) != 1:
        raise LabelMismatch("twist pattern changes along the cylinder")
    fwd = forward_sets[0]
    k = len(fwd)
    start = 0
    if 0 < k:
        starts = [a for a in range(w) if a in fwd and (a - 1) % w not in fwd]
        if len(starts) != 1:
            raise LabelMismatch("forward quads are not contiguous")
        start = starts[0]
    spec = CylinderSpec(w, ell, k)
    zmap = {((a - start) % w, b): rings[b][a] for b in range(ell + 1) for a in range(w)}
    return spec, zmap


# --- the pipeline --------------------------------------------------------


@dataclass
class PipelineOptions:
    force_branch: int | None = None  # 1 or 2
    exact_limit: int = DEFAULT_EXACT_LIMIT


@dataclass
class PipelineReport:
    n: int
    U: list[int]
    tree_size: int | None = None
    tree_exact: bool | None = None
    clean_path: list[int] | None = None
    path_length: int | None = None
    middle: int | None = None
    threshold: Fraction | None = None
    below_threshold: bool | None = None
    branch: str = ""
    branch1: DominationResult | None = None
    branch1_residue: int | None = None
    branch1_error: str | None = None
    branch2_attempted: bool = False
    branch2_error: str | None = None
    hexagon_radius: int | None = None
    hexagon_reason: str | None = None
    case: int | None = None
    c0: list[int] | None = None
    c0_turns: tuple[int, int] | None = None
    cylinder: tuple[int, int, int] | None = None
    rings_each_side: tuple[int, int] | None = None
    cylinder_residue: int | None = None
    cylinder_cover_size: int | None = None
    branch2: DominationResult | None = None
    fallback_sources: list[str] = field(default_factory=list)
    result: DominationResult | None = None
    bound_tree_cut: Fraction | None = None
    bound_cylinder: Fraction | None = None
    bound_quarter: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    def audit(self) -> dict[str, dict]:
        """Each recorded size bound with the size it is compared against."""
        out = {}
        if self.branch1 is not None and self.bound_tree_cut is not None:
            out["tree_cut"] = {"size": self.branch1.size, "bound": str(self.bound_tree_cut), "holds": self.branch1.size <= self.bound_tree_cut}
        if self.branch2 is not None and self.bound_cylinder is not None:
            out["cylinder"] = {"size": self.branch2.size, "bound": str(self.bound_cylinder), "holds": self.branch2.size <= self.bound_cylinder}
        if self.result is not None and self.bound_quarter is not None:
            out["quarter"] = {"size": self.result.size, "bound": str(self.bound_quarter), "holds": self.result.size <= self.bound_quarter}
        return out

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, DominationResult):
                return v.to_json()
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, tuple):
                return list(v)
            return v

        skip = {"branch1", "branch2", "result"}
        out = {k: enc(v) for k, v in self.__dict__.items() if k not in skip}
        out["branch1"] = enc(self.branch1)
        out["branch2"] = enc(self.branch2)
        out["result"] = enc(self.result)
        out["audit"] = self.audit()
        return out


def check_input(g: EmbeddedGraph) -> None:
    if g.n < 4:
        raise InvalidInput(f"need at least 4 vertices, got {g.n}")
    if g.max_degree() > 6:
        raise InvalidInput(f"maximum degree {g.max_degree()} exceeds 6")
    report = is_sphere_triangulation(g)
    if not report:
        raise InvalidInput("; ".join(report.violations[:3]))


def run_branch1(g: EmbeddedGraph, tree: SteinerTree) -> tuple[DominationResult, int]:
    cd = cut_along_tree(g, tree)
    dev = develop(cd)
    best, _ = best_pullback(g, cd, dev)
    return best.result, best.residue


def run_branch2(g: EmbeddedGraph, x: int, report: PipelineReport) -> DominationResult:
    hx = hexagon_radius(g, x)
    report.hexagon_radius, report.hexagon_reason = hx.radius, hx.reason
    c0 = find_c0(g, hx)
    report.case, report.c0, report.c0_turns = c0.case, list(c0.cycle), c0.turns
    grown = grow_cylinder(g, c0.cycle)
    report.rings_each_side = (grown.center_index, grown.length - grown.center_index)
    if grown.length < 2:
        raise CylinderGrowthFailed(f"cylinder has only {grown.length + 1} rings")
    spec, zmap = label_cylinder(g, grown)
    report.cylinder = (spec.w, spec.ell, spec.k)
    cover: CylinderCover = cylinder_dominate(spec)
    report.cylinder_residue, report.cylinder_cover_size = cover.residue, cover.size
    res = cylinder_complete(g, spec, zmap, cover)
    report.bound_cylinder = res.bound
    return res


def quarter_dominating_set(g: EmbeddedGraph, options: PipelineOptions | None = None) -> tuple[DominationResult, PipelineReport]:
    opts = options or PipelineOptions()
    check_input(g)
    U = deficiency_set(g)
    rep = PipelineReport(n=g.n, U=sorted(U), bound_quarter=Fraction(g.n, 4))
    if g.n < N0:
        rep.notes.append(f"n = {g.n} is below the size {N0} the guarantees are stated for")

    tree = min_steiner_tree(g, U, allow_approx=True)
    rep.tree_size, rep.tree_exact = tree.size, tree.exact
    cp: CleanPath = longest_clean_path(tree)
    rep.clean_path, rep.path_length, rep.middle = list(cp.path), cp.length, cp.middle
    rep.threshold = Fraction(3 * g.n, 32) + Fraction(1, 4)
    rep.below_threshold = tree.size <= rep.threshold
    rep.bound_tree_cut = Fraction(g.n, 7) + Fraction(8 * tree.size, 7) - Fraction(2, 7)

    if opts.force_branch != 2:
        try:
            rep.branch1, rep.branch1_residue = run_branch1(g, tree)
        except (DominationError, InconsistentDevelopment, NotATree, GraphError) as e:
            rep.branch1_error = f"{type(e).__name__}: {e}"

    want2 = opts.force_branch == 2 or (opts.force_branch is None and not rep.below_threshold)
    if want2:
        rep.branch2_attempted = True
        try:
            rep.branch2 = run_branch2(g, cp.middle, rep)
        except (PipelineError, DominationError, GraphError, SpecOutOfRange, SteinerError) as e:
            rep.branch2_error = f"{type(e).__name__}: {e}"

    if rep.branch2 is not None and (rep.branch1 is None or rep.branch2.size <= rep.branch1.size):
        rep.branch, result = "cylinder", rep.branch2
    elif rep.branch1 is not None and (rep.branch2 is not None or not rep.branch2_attempted):
        rep.branch, result = "tree-cut", rep.branch1
    else:
        rep.branch = "fallback"
        result = _fallback(g, rep, opts)

    if not is_dominating(g, result.vertices):
        raise PipelineError("final set does not dominate")
    rep.result = result
    return result, rep


def _fallback(g: EmbeddedGraph, rep: PipelineReport, opts: PipelineOptions) -> DominationResult:
    cands: list[tuple[str, DominationResult]] = []
    if rep.branch1 is not None:
        cands.append(("tree-cut", rep.branch1))
    cands.append(("greedy", greedy(g)))
    if g.n <= opts.exact_limit:
        cands.append(("exact", exact_gamma(g, upper_hint=min((c for _, c in cands), key=lambda c: c.size).vertices)))
    rep.fallback_sources = [name for name, _ in cands]
    name, best = min(cands, key=lambda c: (c[1].size, ["exact", "tree-cut", "greedy"].index(c[0])))
    rep.notes.append(f"fallback picked {name}")
    return best
