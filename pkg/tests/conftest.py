from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hexdom import generators as gen  # noqa: E402
from hexdom.generators import CylinderSpec  # noqa: E402


def corpus() -> dict[str, "gen.EmbeddedGraph"]:
    """Named instances shared by the cross-validation tests."""
    out = {
        "triangle": gen.triangle(),
        "octahedron": gen.octahedron(),
        "icosahedron": gen.icosahedron(),
        "hex1": gen.hex_patch(1),
        "hex2": gen.hex_patch(2),
    }
    for k in range(1, 5):
        out[f"band{k}"] = gen.band_graph(k)
    for m in (2, 3, 4):
        out[f"mt{m}"] = gen.mt_family(m)
    for m in (2, 3, 4):
        out[f"geodesic{m}"] = gen.geodesic_sphere(m)
    for w, ell, k in ((3, 3, 0), (3, 3, 1), (4, 2, 0), (4, 3, 2), (5, 2, 1), (6, 2, 0), (6, 20, 0), (5, 30, 2), (4, 12, 1)):
        out[f"cyl{w}-{ell}-{k}"] = gen.cylinder_sphere(CylinderSpec(w, ell, k))
    return out


CORPUS = corpus()


def sphere_corpus(max_degree: int = 6) -> dict:
    from hexdom.plane_graph import is_sphere_triangulation

    return {
        name: g
        for name, g in CORPUS.items()
        if g.n > 3 and g.max_degree() <= max_degree and is_sphere_triangulation(g).ok
    }


@pytest.fixture(scope="session")
def gs4():
    return gen.geodesic_sphere(4)


@pytest.fixture(scope="session")
def cyl6_20():
    return gen.cylinder_sphere(CylinderSpec(6, 20, 0))


ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
