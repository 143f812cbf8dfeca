"""Diagnostic SVG drawings: lattice placement when known, otherwise a Tutte layout."""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .plane_graph import EmbeddedGraph

Point = tuple[float, float]
_SQRT3_2 = math.sqrt(3) / 2


def lattice_to_plane(c: Sequence[int]) -> Point:
    """Axial lattice coordinates to Euclidean, unit edge length."""
    x, y = c
    return (x - y / 2, y * _SQRT3_2)


def lattice_layout(coords: Mapping[int, Sequence[int]]) -> dict[int, Point]:
    return {v: lattice_to_plane(p) for v, p in coords.items()}


def tutte_layout(g: EmbeddedGraph, outer: Sequence[int] | None = None) -> dict[int, Point]:
    """Barycentric embedding with ``outer`` pinned to a regular polygon.

    Defaults to the longest face (lowest index on ties).  Every other vertex
    sits at the mean of its neighbors, solved as one linear system.
    """
    if g.n == 0:
        return {}
    if outer is None:
        faces = g.faces
        outer = max(faces, key=len).vertices if faces else (0,)
    outer = list(dict.fromkeys(outer))
    pos = np.zeros((g.n, 2))
    k = len(outer)
    for i, v in enumerate(outer):
        # clockwise so the drawing keeps the rotation system's orientation
        t = -2 * math.pi * i / k + math.pi / 2
        pos[v] = (math.cos(t), math.sin(t))
    fixed = set(outer)
    free = [v for v in range(g.n) if v not in fixed]
    if free:
        idx = {v: i for i, v in enumerate(free)}
        A = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for v in free:
            i = idx[v]
            A[i, i] = g.degree(v) or 1
            for u in g.rotations[v]:
                if u in idx:
                    A[i, idx[u]] -= 1
                else:
                    b[i] += pos[u]
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        for v in free:
            pos[v] = sol[idx[v]]
    return {v: (float(pos[v, 0]), float(pos[v, 1])) for v in range(g.n)}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def svg(
    edges: Iterable[tuple[int, int]],
    layout: Mapping[int, Point],
    highlight: Iterable[int] = (),
    size: int = 800,
    labels: bool | None = None,
) -> str:
    """Draw edges and vertices; highlighted vertices are filled red.

    Only vertices present in ``layout`` are drawn.
    """
    if not layout:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"></svg>\n'
    xs = [p[0] for p in layout.values()]
    ys = [p[1] for p in layout.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    margin = 20
    scale = (size - 2 * margin) / span
    x0, y0 = min(xs), min(ys)

    def at(v: int) -> Point:
        x, y = layout[v]
        return (margin + (x - x0) * scale, size - margin - (y - y0) * scale)

    if labels is None:
        labels = len(layout) <= 60
    r = max(2.0, min(8.0, scale * 0.15))
    marked = set(highlight)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<g stroke="#888" stroke-width="1">',
    ]
    for u, v in edges:
        if u in layout and v in layout:
            (x1, y1), (x2, y2) = at(u), at(v)
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")
    out.append('<g stroke="#000" stroke-width="0.5">')
    for v in sorted(layout):
        x, y = at(v)
        fill = "#d33" if v in marked else "#fff"
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{fill}"/>')
    out.append("</g>")
    if labels:
        out.append('<g font-size="9" font-family="monospace" fill="#036">')
        for v in sorted(layout):
            x, y = at(v)
            out.append(f'<text x="{_fmt(x + r)}" y="{_fmt(y - r)}">{v}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
