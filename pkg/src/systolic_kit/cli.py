"""Command line front end.

Every command prints one report.  By default the report is rendered as
``key: value`` lines; ``--json`` prints a single JSON record instead
(command echo, instance hash, results, timing), which is what sweeps
stream.  Exit status is 0 when the checked property holds or the
requested object was produced, 1 when it fails (or cannot be verified),
and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .complex import is_flag, is_k_large, is_locally_k_large
from .disc import TriangulatedDisc, defects, embed_in_hex_plane, is_flat
from .errors import InvalidInput, NoPath, SearchLimit
from .filling import fill_cycle_minimal
from .gen import Instance, corpus, hex_disc, random_disc, seven_systolic_disc, simplex_with_facets
from .helly import ConvexFamily, find_witness, reduce_triangle, search_counterexample, theorem_sweep
from .metric import interval
from .surfaces import build_sphere, digonal_surface, find_ball_filling, triangular_surface
from .topology import Verdict, is_k_systolic, is_simply_connected

__all__ = ["RunReport", "run", "main"]

SEED_ENV = "SYSTOLIC_KIT_SEED"


@dataclass
class RunReport:
    command: list
    instance_hash: str | None = None
    results: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "instance_hash": self.instance_hash,
            "results": self.results,
            "timing": self.timing,
        }


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", ",").split(",") if t]
    except ValueError:
        raise InvalidInput(f"{what}: expected comma separated vertex ids, got {text!r}") from None


def _vertex(inst: Instance, v: int) -> int:
    if not 0 <= v < inst.complex.vertex_count:
        raise InvalidInput(f"vertex {v} is not in the instance")
    return v


def _render(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)) and all(isinstance(x, int) for x in value):
        return " ".join(map(str, value)) if value else "[]"
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    return str(value)


# -- commands -------------------------------------------------------------------
# Each returns (exit code, results dict); the instance, when loaded, is stored on
# the namespace so the driver can hash it.


def _load(args) -> Instance:
    args.loaded = io.load_instance(args.instance)
    return args.loaded


def cmd_check(args):
    inst = _load(args)
    X, k = inst.complex, args.k
    if k < 4:
        raise InvalidInput("k must be at least 4")
    verdict = is_k_systolic(X, k, budget=args.budget)
    res = {
        "flag": is_flag(X),
        f"{k}-large": is_k_large(X, k),
        f"locally {k}-large": is_locally_k_large(X, k),
        "simply connected": is_simply_connected(X, budget=args.budget).value,
        f"{k}-systolic": verdict.value,
    }
    return (0 if verdict is Verdict.TRUE else 1), res


def cmd_dist(args):
    inst = _load(args)
    u, v = _vertex(inst, args.u), _vertex(inst, args.v)
    try:
        dag = interval(inst.complex, u, v)
    except NoPath:
        return 1, {"distance": None, "geodesics": 0}
    paths = []
    for g in dag.geodesics():
        if len(paths) >= args.list:
            break
        paths.append(list(g))
    return 0, {"distance": dag.length, "geodesics": dag.count(), "listed": paths}


def cmd_fill(args):
    inst = _load(args)
    if args.cycle is not None:
        cycle = _ints(args.cycle, "--cycle")
    elif inst.boundary_cycle is not None:
        cycle = inst.boundary_cycle
    else:
        raise InvalidInput("no --cycle given and the instance has no boundary_cycle")
    surf = fill_cycle_minimal(inst.complex, cycle, args.area_bound)
    if surf is None:
        return 1, {"area": None, "area_bound": args.area_bound}
    dv = defects(surf.domain)
    return 0, {
        "area": surf.area,
        "flat": is_flat(surf.domain),
        "defects": list(dv.defect),
        "surface": surf.to_json(),
    }


def cmd_triangle(args):
    inst = _load(args)
    a, b, c = (_vertex(inst, v) for v in _ints(args.vertices, "--vertices")[:3])
    surf = triangular_surface(inst.complex, a, b, c, area_bound=args.area_bound)
    res = surf.summary()
    res["assignment"] = list(surf.assignment)
    return 0, res


def cmd_digon(args):
    inst = _load(args)
    g0, g1 = _ints(args.g0, "--g0"), _ints(args.g1, "--g1")
    ds = digonal_surface(inst.complex, g0, g1, area_bound=args.area_bound)
    res = ds.summary()
    flat = [is_flat(p.surface.domain) for p in ds.pieces if p.surface is not None]
    res["pieces flat"] = all(flat)
    res["assignment"] = list(ds.assignment)
    return (0 if all(flat) else 1), res


def cmd_sphere(args):
    inst = _load(args)
    pts = [_vertex(inst, v) for v in _ints(args.vertices, "--vertices")]
    if len(pts) != 4:
        raise InvalidInput("--vertices needs four vertex ids")
    sm = build_sphere(inst.complex, *pts, area_bound=args.area_bound)
    res = sm.summary()
    code = 0 if sm.status == "sphere" else 1
    if args.ball and sm.status == "sphere":
        try:
            found = find_ball_filling(sm.sphere, sm.assignment, inst.complex)
        except SearchLimit as exc:
            res["ball"] = f"skipped: {exc}"
            code = 1
        else:
            res["ball"] = None if found is None else {"tetrahedra": len(found[0].maximal_simplices)}
            code = 0 if found is not None else 1
    return code, res


def cmd_helly_verify(args):
    inst = _load(args)
    names = [n for n in args.family.replace(" ", ",").split(",") if n]
    missing = [n for n in names if n not in inst.subcomplexes]
    if missing:
        raise InvalidInput(f"unknown subcomplex names {missing}; known: {sorted(inst.subcomplexes)}")
    fam = ConvexFamily.from_vertex_sets(inst.complex, {n: inst.subcomplexes[n] for n in names})
    w = find_witness(fam, args.max_dim)
    res = {
        "witness": None if w is None else list(w.simplex),
        "witness dim": None if w is None else w.dim,
        "convex": fam.convexity(),
        "pairwise intersecting": fam.intersects(2),
    }
    if len(names) == 3 and fam.intersects(2):
        try:
            cfg = reduce_triangle(fam)
        except InvalidInput as exc:
            res["reduction"] = {"outcome": "not-applicable", "reason": str(exc)}
        else:
            res["reduction"] = {"outcome": cfg.outcome, "iterations": cfg.iterations, "trace": list(cfg.trace)}
    return (0 if w is not None else 1), res


def cmd_helly_search(args):
    found = search_counterexample(args.max_side)
    if found is None:
        return 1, {"result": None}
    inst = found["complex"]
    names = found["member_names"]
    if any(n is None for n in names):
        subs = {f"X{i + 1}": m for i, m in enumerate(found["members"])}
        inst = Instance(inst.complex, subs, inst.boundary_cycle, inst.coordinates, inst.metadata)
        names = list(subs)
    args.loaded = inst
    res = {
        "result": found["instance"],
        "members": names,
        "pairwise intersections": found["pairwise_intersections"],
    }
    if args.output:
        io.save_instance(inst, args.output)
        res["written"] = str(args.output)
    return 0, res


def cmd_helly_sweep(args):
    k = 7 if args.theorem == "A" else 6
    pool = []
    for name, inst in corpus(args.scale):
        X = inst.complex
        if X.vertex_count < args.min_vertices:
            continue
        if is_k_systolic(X, k) is Verdict.TRUE:
            pool.append((name, inst))
    out = theorem_sweep(pool, args.theorem, args.per_instance, args.seed, args.jobs)
    out["seed"] = args.seed
    return (0 if out["witness_rate"] == 1.0 else 1), out


_GEN_KINDS = ("hex_disc", "simplex_with_facets", "seven_systolic_disc", "random_disc")


def cmd_gen(args):
    kind = args.kind
    if kind == "hex_disc":
        params = {"triangle": {"side": args.side}, "hexagon": {"radius": args.radius},
                  "parallelogram": {"a": args.a, "b": args.b}}.get(args.region)
        if params is None:
            raise InvalidInput(f"unknown region {args.region!r}")
        inst = hex_disc(args.region, **params)
    elif kind == "simplex_with_facets":
        inst = simplex_with_facets(args.n)
    elif kind == "seven_systolic_disc":
        inst = seven_systolic_disc(args.degree, args.depth, seed=args.seed, extra=args.extra)
    else:
        inst = random_disc(
            args.triangles,
            interior_defect=(args.defect_lo, args.defect_hi),
            boundary_defect_min=args.boundary_min,
            k=args.k,
            seed=args.seed,
        )
    args.loaded = inst
    res = {
        "kind": kind,
        "seed": args.seed,
        "vertices": inst.complex.vertex_count,
        "maximal simplices": len(inst.complex.maximal_simplices),
        "certificate": inst.certificate,
    }
    if args.output:
        io.save_instance(inst, args.output)
        res["written"] = str(args.output)
    else:
        res["instance"] = io.instance_to_json(inst)
    return 0, res


def cmd_diagram(args):
    if args.import_coords:
        try:
            coords = json.loads(Path(args.import_coords).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"{args.import_coords}: {exc}") from None
        if isinstance(coords, dict):
            coords = coords.get("coordinates")
        if not isinstance(coords, list):
            raise InvalidInput(f"{args.import_coords}: expected a list of [x, y] pairs")
        X = io.coordinates_to_complex(coords)
        try:
            disc = TriangulatedDisc.from_complex(X)
            X = X.with_certificate("disc")
            boundary = list(disc.boundary_cycle)
        except InvalidInput:
            boundary = None
        inst = Instance(X, {}, boundary, [tuple(p) for p in coords], {"kind": "lattice_coordinates"})
        args.loaded = inst
        res = {"vertices": X.vertex_count, "maximal simplices": len(X.maximal_simplices)}
        if args.output:
            io.save_instance(inst, args.output)
            res["written"] = str(args.output)
        else:
            res["instance"] = io.instance_to_json(inst)
        return 0, res
    if not args.instance:
        raise InvalidInput("diagram needs --instance or --import-coords")
    inst = _load(args)
    X = inst.complex
    coords = inst.coordinates
    if args.style == "coords" and coords is None:
        try:
            pos = embed_in_hex_plane(TriangulatedDisc.from_complex(X))
        except InvalidInput:
            pos = None
        if pos is None:
            return 1, {"coordinates": None, "reason": "not a flat disc"}
        coords = [pos[v] for v in range(X.vertex_count)]
    if args.style == "dot":
        text = io.to_dot(X, coords)
    else:
        text = json.dumps({"coordinates": [list(p) for p in coords]}) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        return 0, {"written": str(args.output), "style": args.style}
    return 0, {"style": args.style, "diagram": text}


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="systolic-kit", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print one JSON record instead of key: value lines")
    sub = p.add_subparsers(dest="command", required=True)

    def with_instance(sp, required=True):
        sp.add_argument("--instance", required=required, help="instance JSON file")
        return sp

    s = with_instance(sub.add_parser("check", help="flag, k-large, simply connected, k-systolic"))
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--budget", type=int, default=10_000, help="rewriting budget for the simple connectivity test")
    s.set_defaults(func=cmd_check)

    s = with_instance(sub.add_parser("dist", help="distance and geodesics between two vertices"))
    s.add_argument("--u", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--list", type=int, default=1, help="how many geodesics to print")
    s.set_defaults(func=cmd_dist)

    s = with_instance(sub.add_parser("fill", help="minimal filling of a cycle"))
    s.add_argument("--cycle", help="comma separated vertex ids (default: the boundary cycle)")
    s.add_argument("--area-bound", type=int, default=24)
    s.set_defaults(func=cmd_fill)

    s = with_instance(sub.add_parser("triangle", help="minimal triangular surface on three vertices"))
    s.add_argument("--vertices", required=True)
    s.add_argument("--area-bound", type=int, default=24)
    s.set_defaults(func=cmd_triangle)

    s = with_instance(sub.add_parser("digon", help="minimal digonal surface on two geodesics"))
    s.add_argument("--g0", required=True)
    s.add_argument("--g1", required=True)
    s.add_argument("--area-bound", type=int, default=24)
    s.set_defaults(func=cmd_digon)

    s = with_instance(sub.add_parser("sphere", help="glue four triangles and six digons into a sphere"))
    s.add_argument("--vertices", required=True, help="four vertex ids A,B,C,D")
    s.add_argument("--area-bound", type=int, default=24)
    s.add_argument("--ball", action="store_true", help="also search for a ball filling")
    s.set_defaults(func=cmd_sphere)

    h = sub.add_parser("helly", help="Helly witnesses, counterexample search and sweeps")
    hs = h.add_subparsers(dest="helly_command", required=True)
    s = with_instance(hs.add_parser("verify"))
    s.add_argument("--family", required=True, help="comma separated subcomplex names")
    s.add_argument("--max-dim", type=int, default=None)
    s.set_defaults(func=cmd_helly_verify)
    s = hs.add_parser("search-counterexample")
    s.add_argument("--max-side", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_helly_search)
    s = hs.add_parser("sweep")
    s.add_argument("--theorem", choices=("A", "B"), default="A")
    s.add_argument("--per-instance", type=int, default=20)
    s.add_argument("--min-vertices", type=int, default=8)
    s.add_argument("--scale", choices=("default", "small"), default="default")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_helly_sweep)

    s = sub.add_parser("gen", help="generate an instance file")
    s.add_argument("kind", choices=_GEN_KINDS)
    s.add_argument("-o", "--output")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--region", default="triangle", choices=("triangle", "hexagon", "parallelogram"))
    s.add_argument("--side", type=int, default=3)
    s.add_argument("--radius", type=int, default=1)
    s.add_argument("--a", type=int, default=2)
    s.add_argument("--b", type=int, default=2)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--degree", type=int, default=7)
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--extra", type=float, default=0.0)
    s.add_argument("--triangles", type=int, default=20)
    s.add_argument("--defect-lo", type=int, default=-3)
    s.add_argument("--defect-hi", type=int, default=0)
    s.add_argument("--boundary-min", type=int, default=None)
    s.add_argument("--k", type=int, default=None)
    s.set_defaults(func=cmd_gen)

    s = with_instance(sub.add_parser("diagram", help="DOT or lattice coordinates; --import-coords reverses"), False)
    s.add_argument("--style", choices=("dot", "coords"), default="dot")
    s.add_argument("--import-coords", help="JSON list of lattice points to turn back into an instance")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_diagram)
    return p


def run(argv=None, out=None, err=None) -> int:
    """Parse ``argv``, run the command, print its report and return the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.loaded = None
    start = time.perf_counter()
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code, results = args.func(args)
    except (InvalidInput, NoPath, SearchLimit) as exc:
        print(f"systolic-kit: error: {exc}", file=err)
        return 2 if isinstance(exc, InvalidInput) else 1
    if caught:
        results["warnings"] = [str(w.message) for w in caught]
    echo = list(argv)
    if getattr(args, "seed", None) is not None and "--seed" not in argv:
        echo += ["--seed", str(args.seed)]
    report = RunReport(
        command=echo,
        instance_hash=None if args.loaded is None else io.instance_hash(args.loaded),
        results=results,
        timing={"seconds": round(time.perf_counter() - start, 6)},
    )
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True), file=out)
    else:
        for key, value in results.items():
            if key in ("instance", "diagram"):
                text = value if isinstance(value, str) else json.dumps(value, indent=1, sort_keys=True)
                print(text.rstrip("\n"), file=out)
            else:
                print(f"{key}: {_render(value)}", file=out)
    return code


def main() -> None:
    sys.exit(run())
