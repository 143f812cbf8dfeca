"""The eleven acceptance criteria, each at its stated tolerance."""

import math
import time
from fractions import Fraction

from conftest import CORPUS, report_criterion, sphere_corpus
from hexdom import generators as gen
from hexdom.domination import cylinder_adjacency, cylinder_dominate, exact_gamma, interior_dominated, is_dominating
from hexdom.generators import CylinderSpec
from hexdom.lattice import verify_perfect_code
from hexdom.marginal import layer_sizes, sample_outerplane_subgraphs, verify_marginal_identity
from hexdom.pipeline import PipelineOptions, quarter_dominating_set
from hexdom.steiner import deficiency_set, min_steiner_tree
from hexdom.surgery import cut_along_tree, develop, validate
from oracles import brute_gamma

SAMPLES, SEED = 200, 7


def lemma_corpus():
    graphs = {
        "geodesic_sphere(4)": gen.geodesic_sphere(4),
        "cylinder_sphere(6,20,0)": gen.cylinder_sphere(CylinderSpec(6, 20, 0)),
    }
    return {name: (g, sample_outerplane_subgraphs(g, SAMPLES, SEED)) for name, g in graphs.items()}


def test_criterion_01_octahedron():
    t = time.perf_counter()
    gamma = exact_gamma(gen.octahedron()).size
    dt = time.perf_counter() - t
    ok = gamma == 2 and dt < 1
    report_criterion(1, ok, f"octahedron γ={gamma} in {dt:.3f}s")
    assert ok


def test_criterion_02_band_proposition():
    t = time.perf_counter()
    rows = []
    for k in range(1, 5):
        g = gen.band_graph(k)
        rows.append((k, g.n, exact_gamma(g).size))
    dt = time.perf_counter() - t
    ok = all(gamma > k and 6 * k == n for k, n, gamma in rows) and dt < 300
    report_criterion(2, ok, "band γ: " + ", ".join(f"k={k} γ={gm}>{k}" for k, _, gm in rows) + f" in {dt:.2f}s")
    assert ok


def test_criterion_03_mt_tightness():
    t = time.perf_counter()
    vals = {m: exact_gamma(gen.mt_family(m)).size for m in (2, 3)}
    dt = time.perf_counter() - t
    ok = all(vals[m] == m for m in vals) and dt < 60
    report_criterion(3, ok, f"mt γ={vals} in {dt:.2f}s")
    assert ok


def test_criterion_04_marginal_identity():
    t = time.perf_counter()
    counts, bad = {}, 0
    for name, (g, samples) in lemma_corpus().items():
        counts[name] = len(samples)
        bad += sum(not verify_marginal_identity(g, s.vertices, s.outer).holds for s in samples)
    dt = time.perf_counter() - t
    ok = all(c >= 100 for c in counts.values()) and bad == 0 and dt < 60
    report_criterion(4, ok, f"samples {counts}, {bad} identity violations, {dt:.2f}s")
    assert ok


def test_criterion_05_layer_bound():
    t = time.perf_counter()
    counts, bad = {}, 0
    for name, (g, samples) in lemma_corpus().items():
        counts[name] = len(samples)
        bad += sum(not layer_sizes(g, s.vertices, s.outer).holds for s in samples)
    dt = time.perf_counter() - t
    ok = all(c >= 100 for c in counts.values()) and bad == 0 and dt < 60
    report_criterion(5, ok, f"samples {counts}, {bad} layer-bound violations, {dt:.2f}s")
    assert ok


def test_criterion_06_perfect_code():
    t = time.perf_counter()
    reps = [verify_perfect_code(10, r) for r in range(7)]
    dt = time.perf_counter() - t
    ok = all(r.exactly_once for r in reps) and dt < 1
    report_criterion(6, ok, f"radius 10, residues 0..6 exactly once: {[r.exactly_once for r in reps]}, {dt:.3f}s")
    assert ok


def test_criterion_07_branch1_guarantee():
    lines, ok = [], True
    for m in range(3, 9):
        g = gen.geodesic_sphere(m)
        t = time.perf_counter()
        _, rep = quarter_dominating_set(g, PipelineOptions(force_branch=1))
        dt = time.perf_counter() - t
        b1 = rep.branch1
        bound = Fraction(g.n, 7) + Fraction(8 * rep.tree_size, 7) - Fraction(2, 7)
        good = b1 is not None and is_dominating(g, b1.vertices).ok and b1.size <= bound and dt < 60
        ok &= good
        lines.append(f"m={m} |D|={b1.size if b1 else None}<={float(bound):.1f} {dt:.1f}s")
    report_criterion(7, ok, "; ".join(lines))
    assert ok


def test_criterion_08_cylinder_sweep():
    t = time.perf_counter()
    checked, bad = 0, []
    for w in range(3, 13):
        for ell in range(7, 51):
            for k in range(w):
                spec = CylinderSpec(w, ell, k)
                cover = cylinder_dominate(spec)
                checked += 1
                if interior_dominated(spec, cover.labels, cylinder_adjacency(spec)) or cover.size > math.ceil(ell / 7) * (w + 2):
                    bad.append((w, ell, k))
    dt = time.perf_counter() - t
    ok = not bad and dt < 300
    report_criterion(8, ok, f"{checked} specs, {len(bad)} violations, {dt:.1f}s")
    assert ok


def test_criterion_09_long_cylinders():
    lines, ok = [], True
    for w in (4, 5, 6):
        ell = 7 * w + 372
        g = gen.cylinder_sphere(CylinderSpec(w, ell, 0))
        t = time.perf_counter()
        res, rep = quarter_dominating_set(g, PipelineOptions(force_branch=2))
        dt = time.perf_counter() - t
        good = rep.branch == "cylinder" and is_dominating(g, res.vertices).ok and 4 * res.size <= g.n and dt < 60
        ok &= good
        lines.append(f"w={w} ℓ={ell} n={g.n} |D|={res.size}<=n/4={g.n / 4} {dt:.1f}s")
    report_criterion(9, ok, "; ".join(lines))
    assert ok


def test_criterion_10_oracle_cross_validation():
    t = time.perf_counter()
    small = {name: g for name, g in CORPUS.items() if g.n <= 20}
    bad = [name for name, g in small.items() if exact_gamma(g).size != brute_gamma(g)[0]]
    dt = time.perf_counter() - t
    ok = not bad and len(small) >= 10 and dt < 300
    report_criterion(10, ok, f"{len(small)} instances with n<=20, mismatches {bad}, {dt:.1f}s")
    assert ok


def test_criterion_11_development_soundness():
    t = time.perf_counter()
    discs, bad = 0, []
    for name, g in sphere_corpus().items():
        discs += 1
        try:
            cd = cut_along_tree(g, min_steiner_tree(g, deficiency_set(g)))
            if not validate(g, cd).ok:
                bad.append((name, "cut invalid"))
                continue
            dev = develop(cd)
            if any(develop(cd, shuffle_seed=s).coords != dev.coords for s in range(3)):
                bad.append((name, "order dependent"))
            if dev.close_coincidences(cd, 3):
                bad.append((name, "close preimages"))
        except Exception as e:  # any failure to develop is a violation
            bad.append((name, f"{type(e).__name__}: {e}"))
    dt = time.perf_counter() - t
    ok = not bad
    report_criterion(11, ok, f"{discs} cut discs, violations {bad}, {dt:.1f}s")
    assert ok
