"""``hexdom`` command line."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import generators as gen
from .domination import (
    DEFAULT_EXACT_LIMIT,
    DominationError,
    InstanceTooLarge,
    exact_gamma,
    greedy,
    is_dominating,
)
from .lattice import InconsistentDevelopment
from .marginal import MarginalError, layer_sizes, sample_outerplane_subgraphs, verify_marginal_identity
from .pipeline import InvalidInput, PipelineError, PipelineOptions, quarter_dominating_set
from .plane_graph import EmbeddedGraph, GraphError
from .render import lattice_layout, svg, tutte_layout
from .steiner import SteinerError, deficiency_set, min_steiner_tree
from .surgery import CutDisc, cut_along_tree, develop, validate

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

# parameters each family takes, in call order
FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "triangle": (),
    "octahedron": (),
    "icosahedron": (),
    "geodesic": ("m",),
    "band": ("k",),
    "mt": ("m",),
    "hex": ("r",),
    "cylinder": ("w", "ell", "twist"),
    "cylinder-patch": ("w", "ell", "twist"),
}


class UsageError(Exception):
    pass


def make_graph(family: str, params: dict[str, int]) -> EmbeddedGraph:
    if family not in FAMILY_PARAMS:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILY_PARAMS)}")
    missing = [p for p in FAMILY_PARAMS[family] if params.get(p) is None and p != "twist"]
    if missing:
        raise UsageError(f"family {family} needs --{' --'.join(missing)}")
    if family == "triangle":
        return gen.triangle()
    if family == "octahedron":
        return gen.octahedron()
    if family == "icosahedron":
        return gen.icosahedron()
    if family == "geodesic":
        return gen.geodesic_sphere(params["m"])
    if family == "band":
        return gen.band_graph(params["k"])
    if family == "mt":
        return gen.mt_family(params["m"])
    if family == "hex":
        return gen.hex_patch(params["r"])
    spec = gen.CylinderSpec(params["w"], params["ell"], params.get("twist") or 0)
    return gen.cylinder_sphere(spec) if family == "cylinder" else gen.cylinder_patch(spec)


# --- io ------------------------------------------------------------------


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=_encode) + "\n"


def _encode(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def emit(data: Any, out: str | None) -> None:
    text = dumps(data)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not JSON: {e}") from None


def load_graph(path: str) -> EmbeddedGraph:
    data = load_json(path)
    try:
        return EmbeddedGraph.from_json(data)
    except (KeyError, TypeError, GraphError) as e:
        raise UsageError(f"{path} is not a graph file: {e}") from None


def load_disc(path: str) -> CutDisc:
    data = load_json(path)
    try:
        return CutDisc.from_json(data)
    except (KeyError, TypeError) as e:
        raise UsageError(f"{path} is not a cut-disc file: {e}") from None


def int_range(text: str) -> list[int]:
    """``3``, ``1..4`` (inclusive) or ``2,5,7``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A..B or a comma list, got {text!r}") from None


# --- subcommands ---------------------------------------------------------


def cmd_generate(args: argparse.Namespace) -> int:
    params = {p: getattr(args, p) for p in ("m", "k", "r", "w", "ell", "twist")}
    g = make_graph(args.family, params)
    emit(g.to_json(), args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.exact:
        try:
            res = exact_gamma(g, limit=args.limit)
        except InstanceTooLarge as e:
            raise UsageError(str(e)) from None
    else:
        res = greedy(g)
    if args.format == "json":
        emit({"n": g.n, "gamma" if args.exact else "size": res.size, "result": res.to_json()}, None)
    else:
        label = "γ" if args.exact else "greedy"
        print(f"{label}={res.size}")
        print("set: " + " ".join(map(str, res.vertices)))
    return EXIT_OK if is_dominating(g, res.vertices).ok else EXIT_VIOLATION


def cmd_construct(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    opts = PipelineOptions(force_branch=args.force_branch, exact_limit=args.exact_limit)
    try:
        res, rep = quarter_dominating_set(g, opts)
    except (InvalidInput, SteinerError) as e:
        raise UsageError(f"input rejected: {e}") from None
    except PipelineError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    data = rep.to_json()
    if args.json:
        emit(data, args.json)
    audit = rep.audit()
    own = {"tree-cut": "tree_cut", "cylinder": "cylinder"}.get(rep.branch)
    ok = res.valid and (own is None or audit.get(own, {}).get("holds", True))
    if args.format == "json":
        emit(data, None)
    else:
        print(f"n={g.n} branch={rep.branch} size={res.size} n/4={Fraction(g.n, 4)} valid={res.valid}")
        for name, a in sorted(audit.items()):
            print(f"  {name}: {a['size']} <= {a['bound']}: {a['holds']}")
        for note in rep.notes:
            print(f"  note: {note}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify_lemmas(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    samples = sample_outerplane_subgraphs(g, args.samples, args.seed, max_size=args.max_size)
    identity_bad, layer_bad = [], []
    for i, s in enumerate(samples):
        try:
            rep = verify_marginal_identity(g, s.vertices, s.outer)
            ls = layer_sizes(g, s.vertices, s.outer)
        except MarginalError as e:
            identity_bad.append({"sample": i, "error": str(e)})
            continue
        if not rep.holds:
            identity_bad.append({"sample": i, "marginal": rep.marginal, "predicted": rep.predicted})
        if not ls.holds:
            layer_bad.append({"sample": i, "sizes": ls.sizes, "bounds": ls.bounds})
    short = len(samples) < args.samples
    data = {
        "requested": args.samples,
        "samples": len(samples),
        "seed": args.seed,
        "identity_violations": identity_bad,
        "layer_violations": layer_bad,
    }
    if args.format == "json":
        emit(data, None)
    else:
        print(f"samples={len(samples)} seed={args.seed}")
        print(f"marginal identity: {len(samples) - len(identity_bad)}/{len(samples)} hold")
        print(f"layer bound: {len(samples) - len(layer_bad)}/{len(samples)} hold")
        if short:
            print(f"only {len(samples)} of {args.samples} samples could be drawn")
    return EXIT_VIOLATION if identity_bad or layer_bad or short else EXIT_OK


def cmd_cut(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    try:
        tree = min_steiner_tree(g, deficiency_set(g), allow_approx=True)
        cd = cut_along_tree(g, tree)
    except (SteinerError, GraphError) as e:
        raise UsageError(f"cannot cut this graph: {e}") from None
    check = validate(g, cd)
    data = cd.to_json()
    data["tree"] = tree.to_json()
    data["validation"] = {"ok": check.ok, "violations": check.violations}
    emit(data, args.out)
    return EXIT_OK if check.ok else EXIT_VIOLATION


def cmd_develop(args: argparse.Namespace) -> int:
    cd = load_disc(args.disc)
    try:
        dev = develop(cd, shuffle_seed=args.seed)
    except InconsistentDevelopment as e:
        print(f"development failed: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    close = dev.close_coincidences(cd)
    data = dev.to_json()
    data["close_coincidences"] = [list(c) for c in close]
    emit(data, args.out)
    return EXIT_VIOLATION if close else EXIT_OK


def _highlight(path: str | None) -> list[int]:
    if path is None:
        return []
    data = load_json(path)
    if isinstance(data, dict):
        for key in ("set", "vertices"):
            if key in data:
                return list(data[key])
        if isinstance(data.get("result"), dict):
            return list(data["result"].get("set", []))
        raise UsageError(f"{path} holds no vertex set")
    return list(data)


def cmd_render(args: argparse.Namespace) -> int:
    data = load_json(args.input)
    mark = _highlight(args.highlight)
    if "copy_map" in data:
        cd = load_disc(args.input)
        edges = [(u, v) for u in range(cd.n) for v in cd.adjacency[u] if u < v]
        try:
            layout = lattice_layout(develop(cd).coords)
        except InconsistentDevelopment as e:
            print(f"development failed: {e}", file=sys.stderr)
            return EXIT_VIOLATION
        mark = [v for v in range(cd.n) if cd.copy_map[v] in set(mark)]
    else:
        g = load_graph(args.input)
        edges = g.edges()
        layout = tutte_layout(g)
    text = svg(edges, layout, highlight=mark, size=args.size)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return EXIT_OK


def stats_rows(family: str, grid: dict[str, list[int]], exact_limit: int) -> list[dict]:
    names = FAMILY_PARAMS.get(family)
    if names is None:
        raise UsageError(f"unknown family {family!r}")
    axes = [grid.get(p) or [0 if p == "twist" else None] for p in names]
    rows = []
    for combo in itertools.product(*axes):
        params = dict(zip(names, combo))
        g = make_graph(family, params)
        row: dict[str, Any] = {
            "family": family,
            "params": ",".join(f"{k}={v}" for k, v in params.items()),
            "n": g.n,
            "n/4": str(Fraction(g.n, 4)),
            "n/6": str(Fraction(g.n, 6)),
        }
        if g.n <= exact_limit:
            row["gamma"], row["gamma_kind"] = exact_gamma(g, limit=exact_limit).size, "exact"
        else:
            row["gamma"], row["gamma_kind"] = greedy(g).size, "upper"
        row["gamma>n/6"] = row["gamma_kind"] == "exact" and 6 * row["gamma"] > g.n
        try:
            res, rep = quarter_dominating_set(g, PipelineOptions(exact_limit=exact_limit))
            row["pipeline"], row["branch"] = res.size, rep.branch
        except (InvalidInput, SteinerError) as e:
            row["pipeline"], row["branch"] = None, f"rejected: {type(e).__name__}"
        rows.append(row)
    return rows


STATS_COLUMNS = ("family", "params", "n", "gamma", "gamma_kind", "pipeline", "n/4", "n/6", "gamma>n/6", "branch")


def cmd_stats(args: argparse.Namespace) -> int:
    grid = {p: getattr(args, p) for p in ("m", "k", "r", "w", "ell", "twist") if getattr(args, p) is not None}
    rows = stats_rows(args.family, grid, args.exact_limit)
    if args.format == "json":
        emit(rows, None)
    else:
        print("\t".join(STATS_COLUMNS))
        for row in rows:
            print("\t".join("-" if row[c] is None else str(row[c]) for c in STATS_COLUMNS))
    return EXIT_OK


# --- parser --------------------------------------------------------------


def _family_args(p: argparse.ArgumentParser, ranged: bool) -> None:
    kind = int_range if ranged else int
    for name, helptext in (
        ("m", "subdivision / copy count"),
        ("k", "band parameter"),
        ("r", "hexagon radius"),
        ("w", "cylinder width"),
        ("ell", "cylinder length"),
        ("twist", "cylinder twist"),
    ):
        p.add_argument(f"--{name}", type=kind, help=helptext)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hexdom", description="Dominating sets in max-degree-6 triangulations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a family member as graph JSON")
    p.add_argument("family", choices=sorted(FAMILY_PARAMS))
    _family_args(p, ranged=False)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="greedy or exact dominating set")
    p.add_argument("--graph", required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--limit", type=int, default=DEFAULT_EXACT_LIMIT, help="largest n the exact solver accepts")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("construct", help="run the two-branch construction")
    p.add_argument("--graph", required=True)
    p.add_argument("--force-branch", type=int, choices=(1, 2))
    p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
    p.add_argument("--json", help="also write the full report here")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-lemmas", help="check the marginal identity and layer bound on random subgraphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=24)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("cut", help="cut a triangulation along its Steiner tree")
    p.add_argument("--graph", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("develop", help="place a cut disc in the lattice")
    p.add_argument("disc")
    p.add_argument("--seed", type=int, help="shuffle the triangle order")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser("render", help="SVG drawing of a graph or cut disc")
    p.add_argument("input")
    p.add_argument("-o", "--out")
    p.add_argument("--highlight", help="JSON file with a vertex set to mark")
    p.add_argument("--size", type=int, default=800)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("stats", help="table of γ and construction sizes over a family")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_PARAMS))
    _family_args(p, ranged=True)
    p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, gen.SpecOutOfRange) as e:
        parser.error(str(e))
    except DominationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_USAGE  # unreachable; parser.error exits


if __name__ == "__main__":
    sys.exit(main())
