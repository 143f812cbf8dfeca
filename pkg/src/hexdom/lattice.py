"""The infinite 6-regular triangulation in axial coordinates.

Neighbors of ``(x, y)`` are ``(x±1, y)``, ``(x, y±1)``, ``(x+1, y+1)`` and
``(x-1, y-1)``.  The perfect dominating pattern used throughout is the
residue class ``x + 2y ≡ r (mod 7)``: the seven points of any closed
neighborhood hit the seven residues once each.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence


class LatticeCoord(NamedTuple):
    x: int
    y: int


# counterclockwise, starting east
DIRECTIONS: tuple[LatticeCoord, ...] = (
    LatticeCoord(1, 0),
    LatticeCoord(1, 1),
    LatticeCoord(0, 1),
    LatticeCoord(-1, 0),
    LatticeCoord(-1, -1),
    LatticeCoord(0, -1),
)

PATTERN_MODULUS = 7


def add(a: tuple[int, int], b: tuple[int, int]) -> LatticeCoord:
    return LatticeCoord(a[0] + b[0], a[1] + b[1])


def sub(a: tuple[int, int], b: tuple[int, int]) -> LatticeCoord:
    return LatticeCoord(a[0] - b[0], a[1] - b[1])


def scale(k: int, a: tuple[int, int]) -> LatticeCoord:
    return LatticeCoord(k * a[0], k * a[1])


def lattice_neighbors(c: tuple[int, int]) -> list[LatticeCoord]:
    return [add(c, d) for d in DIRECTIONS]


def lattice_norm(c: tuple[int, int]) -> int:
    """Graph distance from the origin."""
    x, y = c
    if (x >= 0) == (y >= 0):
        return max(abs(x), abs(y))
    return abs(x) + abs(y)


def lattice_distance(a: tuple[int, int], b: tuple[int, int]) -> int:
    return lattice_norm(sub(a, b))


def direction_index(d: tuple[int, int]) -> int:
    return DIRECTIONS.index(LatticeCoord(*d))


def ring(radius: int, center: tuple[int, int] = (0, 0)) -> list[LatticeCoord]:
    """Points at exactly ``radius`` from ``center``, counterclockwise from the east corner."""
    if radius == 0:
        return [LatticeCoord(*center)]
    out = []
    for side in range(6):
        corner = add(center, scale(radius, DIRECTIONS[side]))
        step = DIRECTIONS[(side + 2) % 6]
        for t in range(radius):
            out.append(add(corner, scale(t, step)))
    return out


def ball(radius: int, center: tuple[int, int] = (0, 0)) -> list[LatticeCoord]:
    out: list[LatticeCoord] = []
    for r in range(radius + 1):
        out.extend(ring(r, center))
    return out


def pattern_value(c: tuple[int, int]) -> int:
    return (c[0] + 2 * c[1]) % PATTERN_MODULUS


def in_pattern(c: tuple[int, int], residue: int) -> bool:
    return (c[0] + 2 * c[1] - residue) % PATTERN_MODULUS == 0


@dataclass
class PerfectCodeReport:
    radius: int
    residue: int
    ball_size: int
    pattern_count: int
    interior_checked: int
    multiply_covered: list[LatticeCoord]
    uncovered: list[LatticeCoord]

    @property
    def exactly_once(self) -> bool:
        return not self.multiply_covered and not self.uncovered

    @property
    def density(self) -> float:
        return self.pattern_count / self.ball_size


def verify_perfect_code(radius: int, residue: int) -> PerfectCodeReport:
    """Check that every point within ``radius - 1`` is dominated exactly once."""
    if radius < 2:
        raise ValueError("radius must be at least 2")
    pts = ball(radius)
    pattern = {p for p in pts if in_pattern(p, residue)}
    multi, missing = [], []
    inner = ball(radius - 1)
    for p in inner:
        hits = sum(1 for q in [p, *lattice_neighbors(p)] if q in pattern)
        if hits == 0:
            missing.append(p)
        elif hits > 1:
            multi.append(p)
    return PerfectCodeReport(radius, residue, len(pts), len(pattern), len(inner), multi, missing)


class InconsistentDevelopment(ValueError):
    pass


def develop_triangles(
    triangles: Sequence[tuple[int, int, int]],
    seed: tuple[int, int, int] | None = None,
    order: Sequence[int] | None = None,
) -> dict[int, LatticeCoord]:
    """Lay a triangulated disc flat in the lattice, face by face.

    The seed triangle (default the first) goes to ``(0,0), (1,0), (1,1)``
    in the order given.
    Each face sharing an edge ``ab`` with a placed face ``abc`` gets its
    third vertex at ``a + b - c``.  Faces are visited breadth first; ``order``
    permutes the scan of each face's neighbors, which must not change the
    result.  A vertex reached at two different points raises.
    """
    if not triangles:
        return {}
    tris = [tuple(t) for t in triangles]
    by_edge: dict[frozenset[int], list[int]] = {}
    for i, t in enumerate(tris):
        for j in range(3):
            by_edge.setdefault(frozenset((t[j], t[(j + 1) % 3])), []).append(i)
    if seed is None:
        start, (a, b, c) = 0, tris[0]
    else:
        start = next((i for i, t in enumerate(tris) if set(t) == set(seed)), None)
        if start is None:
            raise ValueError(f"seed {tuple(seed)} is not one of the triangles")
        a, b, c = seed
    pos = {a: LatticeCoord(0, 0), b: LatticeCoord(1, 0), c: LatticeCoord(1, 1)}
    placed = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        t = tris[i]
        sides = range(3) if order is None else [k % 3 for k in order]
        for j in sides:
            u, v, opp = t[j], t[(j + 1) % 3], t[(j + 2) % 3]
            for other in by_edge[frozenset((u, v))]:
                if other == i:
                    continue
                x = next(z for z in tris[other] if z not in (u, v))
                p = LatticeCoord(pos[u].x + pos[v].x - pos[opp].x, pos[u].y + pos[v].y - pos[opp].y)
                if x in pos and pos[x] != p:
                    raise InconsistentDevelopment(f"vertex {x} lands at {tuple(pos[x])} and {tuple(p)}")
                pos[x] = p
                if other not in placed:
                    placed.add(other)
                    queue.append(other)
    return pos
