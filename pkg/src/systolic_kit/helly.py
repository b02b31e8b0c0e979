"""Helly-type experiments for convex subcomplexes.

The drivers here check two statements on concrete instances: pairwise
intersecting convex triples in 7-systolic complexes are met by a simplex of
dimension at most 2, and triple-wise intersecting convex quadruples in
systolic complexes by a simplex of dimension at most 3.  The side-3 lattice
triangle with its three sides shows that pairwise intersection alone is not
enough in general.
"""
from __future__ import annotations

import itertools
import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complex import SimplicialComplex
from .errors import InvalidInput
from .metric import Subcomplex, convex_hull, distance_matrix, interval, is_convex
from .topology import Verdict, is_k_systolic

__all__ = [
    "ConvexFamily",
    "HellyWitness",
    "TriangleConfiguration",
    "reduce_triangle",
    "find_witness",
    "TheoremReport",
    "verify_theorem_A",
    "verify_theorem_B",
    "extremal_points",
    "triangle_shape",
    "search_counterexample",
    "pentagon_violations",
    "link_claim_violations",
    "sample_convex_triples",
    "sample_convex_quadruples",
    "theorem_sweep",
    "helly_dimension",
]


@dataclass(frozen=True)
class ConvexFamily:
    parent: SimplicialComplex
    members: dict  # name -> Subcomplex

    @classmethod
    def from_vertex_sets(cls, parent: SimplicialComplex, sets) -> ConvexFamily:
        if isinstance(sets, dict):
            items = sets.items()
        else:
            items = ((f"X{i + 1}", s) for i, s in enumerate(sets))
        return cls(parent, {name: Subcomplex.induced(parent, vs) for name, vs in items})

    @property
    def names(self) -> list[str]:
        return list(self.members)

    def vertex_sets(self) -> list[frozenset]:
        return [m.vertices for m in self.members.values()]

    def convexity(self) -> dict:
        return {name: is_convex(m) for name, m in self.members.items()}

    def intersects(self, arity: int) -> bool:
        """Every ``arity`` members share a vertex."""
        sets = self.vertex_sets()
        return all(frozenset.intersection(*c) for c in itertools.combinations(sets, arity))


@dataclass(frozen=True)
class HellyWitness:
    simplex: tuple[int, ...]
    touched: dict  # member name -> least vertex of simplex in that member

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1


def find_witness(family: ConvexFamily, max_dim: int | None = None) -> HellyWitness | None:
    """First simplex meeting every member, by dimension then lexicographically."""
    X = family.parent
    if max_dim is None:
        max_dim = X.dim
    sets = family.vertex_sets()
    if not sets:
        return None
    masks = np.zeros((len(sets), X.vertex_count), dtype=bool)
    for i, s in enumerate(sets):
        masks[i, list(s)] = True
    for s in X.ordered_simplices:
        if len(s) - 1 > max_dim:
            break
        if masks[:, list(s)].any(axis=1).all():
            touched = {
                name: min(v for v in s if v in m.vertices) for name, m in family.members.items()
            }
            return HellyWitness(s, touched)
    return None


# -- the triangle reduction ---------------------------------------------------------


@dataclass(frozen=True)
class TriangleConfiguration:
    """Points ``A in X1&X2``, ``B in X1&X3``, ``C in X2&X3`` and geodesics
    ``g1: A->B`` in ``X1``, ``g2: A->C`` in ``X2``, ``g3: B->C`` in ``X3``."""

    A: int
    B: int
    C: int
    g1: tuple[int, ...]
    g2: tuple[int, ...]
    g3: tuple[int, ...]
    outcome: str  # "embedded-circle" or "common-point"
    common: int | None
    trace: tuple = ()

    @property
    def iterations(self) -> int:
        return len(self.trace)


def _geodesic_in(X, u, v, member: frozenset):
    g = interval(X, u, v).first_geodesic(within=member)
    if g is None:
        raise InvalidInput(f"no geodesic from {u} to {v} inside the member")
    return g


def reduce_triangle(family: ConvexFamily) -> TriangleConfiguration:
    """Shrink a geodesic triangle between pairwise intersections until it
    is an embedded circle or its three sides share a vertex.

    Whenever two sides meet away from their shared corner, that corner is
    moved to the common vertex farthest from it, which cuts both sides.
    """
    if len(family.members) != 3:
        raise InvalidInput("reduce_triangle needs exactly three members")
    X = family.parent
    s1, s2, s3 = family.vertex_sets()
    pair = {"A": s1 & s2, "B": s1 & s3, "C": s2 & s3}
    for name, s in pair.items():
        if not s:
            raise InvalidInput(f"members do not intersect pairwise (no {name})")
    D = distance_matrix(X)
    A, B, C = min(pair["A"]), min(pair["B"]), min(pair["C"])
    for u, v in ((A, B), (A, C), (B, C)):
        if D[u, v] < 0:
            raise InvalidInput("members lie in different components")
    g1 = _geodesic_in(X, A, B, s1)
    g2 = _geodesic_in(X, A, C, s2)
    g3 = _geodesic_in(X, B, C, s3)
    trace = []
    while True:
        common = set(g1) & set(g2) & set(g3)
        if common:
            return TriangleConfiguration(A, B, C, g1, g2, g3, "common-point", min(common), tuple(trace))
        # (corner name, geodesic from that corner, other geodesic from it)
        moved = False
        for corner in ("A", "B", "C"):
            if corner == "A":
                p, q = g1, g2
            elif corner == "B":
                p, q = g1[::-1], g3
            else:
                p, q = g2[::-1], g3[::-1]
            shared = [i for i in range(1, min(len(p), len(q))) if p[i] == q[i]]
            if not shared:
                continue
            i = shared[-1]
            new = p[i]
            old = {"A": A, "B": B, "C": C}[corner]
            if corner == "A":
                A, g1, g2 = new, g1[i:], g2[i:]
            elif corner == "B":
                B, g1, g3 = new, g1[: len(g1) - i], g3[i:]
            else:
                C, g2, g3 = new, g2[: len(g2) - i], g3[: len(g3) - i]
            trace.append({"moved": corner, "from": old, "to": new,
                          "length": len(g1) + len(g2) + len(g3) - 3})
            moved = True
            break
        if not moved:
            return TriangleConfiguration(A, B, C, g1, g2, g3, "embedded-circle", None, tuple(trace))


# -- theorem drivers -------------------------------------------------------------


@dataclass
class TheoremReport:
    theorem: str
    max_dim: int
    witness: HellyWitness | None
    hypotheses: dict
    warnings: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.witness is not None and self.witness.dim <= self.max_dim

    def to_json(self) -> dict:
        w = self.witness
        return {
            "theorem": self.theorem,
            "ok": self.ok,
            "witness": None if w is None else {"simplex": list(w.simplex), "dim": w.dim, "touched": w.touched},
            "hypotheses": self.hypotheses,
            "warnings": list(self.warnings),
            "details": self.details,
        }


def _hypotheses(family: ConvexFamily, k: int, arity: int, check_systolic: bool) -> tuple[dict, list]:
    X = family.parent
    conv = family.convexity()
    hyp = {"convex": conv, f"{arity}-wise intersecting": family.intersects(arity)}
    if check_systolic:
        hyp[f"{k}-systolic"] = is_k_systolic(X, k).value
    notes = []
    bad = [n for n, c in conv.items() if not c]
    if bad:
        notes.append(f"members {bad} are not convex; results are exploratory")
    if not hyp[f"{arity}-wise intersecting"]:
        notes.append(f"members are not {arity}-wise intersecting")
    if check_systolic and hyp[f"{k}-systolic"] != Verdict.TRUE.value:
        notes.append(f"complex is not certified {k}-systolic ({hyp[f'{k}-systolic']})")
    for n in notes:
        warnings.warn(n, stacklevel=3)
    return hyp, notes


def verify_theorem_A(X: SimplicialComplex, members, check_systolic: bool = True) -> TheoremReport:
    """Pairwise intersecting convex triple in a 7-systolic complex: look for a witness of dim <= 2."""
    family = members if isinstance(members, ConvexFamily) else ConvexFamily.from_vertex_sets(X, members)
    if len(family.members) != 3:
        raise InvalidInput("theorem A concerns exactly three members")
    hyp, notes = _hypotheses(family, 7, 2, check_systolic)
    report = TheoremReport("A", 2, find_witness(family, 2), hyp, notes)
    if hyp["2-wise intersecting"]:
        try:
            cfg = reduce_triangle(family)
        except InvalidInput as exc:  # non-convex members need not contain the geodesics
            report.details["reduction"] = {"outcome": "not-applicable", "reason": str(exc)}
        else:
            report.details["reduction"] = {
                "outcome": cfg.outcome,
                "points": [cfg.A, cfg.B, cfg.C],
                "iterations": cfg.iterations,
                "trace": list(cfg.trace),
            }
    return report


def extremal_points(family: ConvexFamily):
    """``A in X1X2X3, B in X1X2X4, C in X1X3X4, D in X2X3X4`` with least total pairwise distance."""
    s = family.vertex_sets()
    groups = [s[0] & s[1] & s[2], s[0] & s[1] & s[3], s[0] & s[2] & s[3], s[1] & s[2] & s[3]]
    if not all(groups):
        return None
    Dm = distance_matrix(family.parent).astype(np.int64)
    Dm = np.where(Dm < 0, 10 ** 6, Dm)
    idx = [np.array(sorted(g)) for g in groups]
    a, b, c, d = idx
    total = (
        Dm[np.ix_(a, b)][:, :, None, None]
        + Dm[np.ix_(a, c)][:, None, :, None]
        + Dm[np.ix_(a, d)][:, None, None, :]
        + Dm[np.ix_(b, c)][None, :, :, None]
        + Dm[np.ix_(b, d)][None, :, None, :]
        + Dm[np.ix_(c, d)][None, None, :, :]
    )
    # argmin over C-order flattening picks the lexicographically least optimum
    flat = int(np.argmin(total))
    pos = np.unravel_index(flat, total.shape)
    pts = tuple(int(idx[k][pos[k]]) for k in range(4))
    return pts, int(total[pos])


def verify_theorem_B(X: SimplicialComplex, members, check_systolic: bool = True) -> TheoremReport:
    """Triple-wise intersecting convex quadruple in a systolic complex: witness of dim <= 3."""
    family = members if isinstance(members, ConvexFamily) else ConvexFamily.from_vertex_sets(X, members)
    if len(family.members) != 4:
        raise InvalidInput("theorem B concerns exactly four members")
    hyp, notes = _hypotheses(family, 6, 3, check_systolic)
    report = TheoremReport("B", 3, find_witness(family, 3), hyp, notes)
    ext = extremal_points(family)
    if ext is not None:
        report.details["extremal_points"] = list(ext[0])
        report.details["distance_sum"] = ext[1]
    return report


def triangle_shape(X: SimplicialComplex, A: int, B: int, C: int, area_bound: int = 12) -> dict:
    """Shape of a minimal geodesic triangle: is its core at most one 2-simplex?"""
    from .surfaces import triangular_surface

    surf = triangular_surface(X, A, B, C, area_bound=area_bound)
    out = surf.summary()
    core = surf.domain.core
    out["interior_vertices"] = 0 if core is None else len(core.interior_vertices)
    out["single_simplex"] = surf.kind in ("segment", "tripod") or surf.core_area == 1
    return out


# -- counterexample search ------------------------------------------------------------


def _hull_candidates(X: SimplicialComplex) -> list[frozenset]:
    seen = {}
    for u, v in itertools.combinations_with_replacement(range(X.vertex_count), 2):
        h = convex_hull(X, (u, v)).vertices
        seen.setdefault(h, None)
    return sorted(seen, key=lambda s: (-len(s), sorted(s)))


def search_counterexample(max_side: int = 3, extra_instances=()) -> dict | None:
    """First pairwise intersecting convex triple with no witness simplex at all.

    Instances are lattice triangles of side ``1..max_side`` followed by any
    ``extra_instances`` (``(name, Instance)`` pairs).  Candidate members are
    convex hulls of vertex pairs, larger hulls first.
    """
    from .gen import hex_triangle

    pool = [(f"hex_triangle_{s}", hex_triangle(s)) for s in range(1, max_side + 1)]
    pool.extend(extra_instances)
    for name, inst in pool:
        X = inst.complex
        cands = _hull_candidates(X)
        for trip in itertools.combinations(cands, 3):
            if not all(a & b for a, b in itertools.combinations(trip, 2)):
                continue
            if frozenset.intersection(*trip):
                continue
            fam = ConvexFamily.from_vertex_sets(X, trip)
            if find_witness(fam) is None:
                names = {}
                for sub, verts in inst.subcomplexes.items():
                    names[frozenset(verts)] = sub
                return {
                    "instance": name,
                    "members": [sorted(t) for t in trip],
                    "member_names": [names.get(t) for t in trip],
                    "pairwise_intersections": [sorted(a & b) for a, b in itertools.combinations(trip, 2)],
                    "complex": inst,
                }
    return None


# -- combinatorial facts used in the proofs -------------------------------------------


def _five_cycles(X: SimplicialComplex):
    adj = X.adjacency
    n = X.vertex_count
    for v0 in range(n):
        for v1 in adj[v0]:
            if v1 <= v0:
                continue
            for v2 in adj[v1]:
                if v2 <= v0 or v2 == v1:
                    continue
                for v3 in adj[v2]:
                    if v3 <= v0 or v3 in (v1, v2):
                        continue
                    for v4 in adj[v3] & adj[v0]:
                        if v4 <= v0 or v4 in (v1, v2, v3):
                            continue
                        if v1 < v4:  # one orientation per cycle
                            yield (v0, v1, v2, v3, v4)


def pentagon_violations(X: SimplicialComplex) -> list[tuple[int, ...]]:
    """5-cycles with no vertex adjacent to both of its opposite vertices."""
    adj = X.adjacency
    bad = []
    for cyc in _five_cycles(X):
        if not any(cyc[(i + 2) % 5] in adj[cyc[i]] and cyc[(i + 3) % 5] in adj[cyc[i]] for i in range(5)):
            bad.append(cyc)
    return bad


def link_claim_violations(L: SimplicialComplex, limit: int | None = None) -> tuple[int, list]:
    """Brute-force the six-vertex configuration around a vertex link.

    ``L`` stands for the link of the degenerate corner.  Configurations are
    closed walks ``a1 a2 b1 b2 c1 c2`` where ``a1~a2``, ``b1~b2``,
    ``c1~c2`` may also be equalities and every other step is an edge; no
    other coincidences are allowed.  Whenever ``a2`` and ``b1`` have a
    common neighbour among ``a1, b2, c1, c2``, some choice of one vertex
    from each pair must be pairwise adjacent.  Returns
    ``(configurations checked, violations)``.
    """
    adj = L.adjacency
    n = L.vertex_count

    def near(x):  # neighbours or x itself
        return adj[x] | {x}

    def ok(x, y):
        return x == y or y in adj[x]

    checked = 0
    bad = []
    for a2 in range(n):
        for b1 in adj[a2]:
            for a1 in near(a2):
                if a1 == b1:
                    continue
                for b2 in near(b1):
                    if b2 in (a1, a2):
                        continue
                    for c1 in adj[b2]:
                        if c1 in (a1, a2, b1):
                            continue
                        for c2 in near(c1) & adj[a1]:
                            if c2 in (a2, b1, b2):
                                continue
                            checked += 1
                            ws = [w for w in (a1, b2, c1, c2) if w not in (a2, b1)]
                            if not any(a2 in adj[w] and b1 in adj[w] for w in ws):
                                continue
                            found = any(
                                ok(x, y) and ok(x, z) and ok(y, z)
                                for x in {a1, a2} for y in {b1, b2} for z in {c1, c2}
                            )
                            if not found:
                                bad.append((a1, a2, b1, b2, c1, c2))
                                if limit is not None and len(bad) >= limit:
                                    return checked, bad
    return checked, bad


# -- family samplers and sweeps -----------------------------------------------------------


def _hull(X, pts, extra):
    return convex_hull(X, list(pts) + list(extra)).vertices


def _corners(X: SimplicialComplex, rng: random.Random, k: int) -> list[int]:
    """``k`` distinct vertices: uniform, inside one maximal simplex, or within distance 2 of a vertex."""
    n = X.vertex_count
    mode = rng.random()
    if mode < 1 / 3:
        return rng.sample(range(n), k)
    if mode < 2 / 3:
        big = [s for s in X.maximal_simplices if len(s) >= k]
        if big:
            return rng.sample(list(rng.choice(big)), k)
    v = rng.randrange(n)
    row = distance_matrix(X)[v]
    near = [int(u) for u in np.flatnonzero((row > 0) & (row <= 2))]
    if len(near) < k - 1:
        return rng.sample(range(n), k)
    return [v] + rng.sample(near, k - 1)


def sample_convex_triples(X: SimplicialComplex, count: int, seed: int = 0, max_tries: int | None = None):
    """Pairwise intersecting convex triples ``hull(A,B), hull(A,C), hull(B,C)``.

    Corners are random distinct vertices (see :func:`_corners`); with probability 1/3 a member
    also absorbs one extra random vertex.  Duplicates are skipped.
    """
    rng = random.Random(seed)
    n = X.vertex_count
    out, seen = [], set()
    tries = 0
    max_tries = max_tries or 50 * count
    while len(out) < count and tries < max_tries and n >= 3:
        tries += 1
        A, B, C = _corners(X, rng, 3)
        extras = [[rng.randrange(n)] if rng.random() < 1 / 3 else [] for _ in range(3)]
        fam = (_hull(X, (A, B), extras[0]), _hull(X, (A, C), extras[1]), _hull(X, (B, C), extras[2]))
        if fam in seen:
            continue
        seen.add(fam)
        out.append(fam)
    return out


def sample_convex_quadruples(X: SimplicialComplex, count: int, seed: int = 0, max_tries: int | None = None):
    """Triple-wise intersecting quadruples ``hull(ABC), hull(ABD), hull(ACD), hull(BCD)``."""
    rng = random.Random(seed)
    n = X.vertex_count
    out, seen = [], set()
    tries = 0
    max_tries = max_tries or 50 * count
    while len(out) < count and tries < max_tries and n >= 4:
        tries += 1
        A, B, C, D = _corners(X, rng, 4)
        extras = [[rng.randrange(n)] if rng.random() < 1 / 4 else [] for _ in range(4)]
        fam = (
            _hull(X, (A, B, C), extras[0]),
            _hull(X, (A, B, D), extras[1]),
            _hull(X, (A, C, D), extras[2]),
            _hull(X, (B, C, D), extras[3]),
        )
        if fam in seen:
            continue
        seen.add(fam)
        out.append(fam)
    return out


def _sweep_job(args):
    name, X, theorem, count, seed = args
    if theorem == "A":
        fams = sample_convex_triples(X, count, seed)
    else:
        fams = sample_convex_quadruples(X, count, seed)
    max_dim = 2 if theorem == "A" else 3
    rows = []
    for fam in fams:
        w = find_witness(ConvexFamily.from_vertex_sets(X, fam), max_dim)
        rows.append((None if w is None else w.dim, bool(frozenset.intersection(*fam))))
    return name, rows


def theorem_sweep(instances, theorem: str = "A", per_instance: int = 20, seed: int = 0, jobs: int = 1) -> dict:
    """Run the witness search over sampled families of every instance.

    Results are aggregated in instance order regardless of ``jobs``.
    """
    if theorem not in ("A", "B"):
        raise InvalidInput("theorem must be 'A' or 'B'")
    tasks = [(name, inst.complex, theorem, per_instance, seed + i) for i, (name, inst) in enumerate(instances)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_job, tasks))
    else:
        results = [_sweep_job(t) for t in tasks]
    per = {name: rows for name, rows in results}
    dims = [d for rows in per.values() for d, _ in rows]
    failures = [(name, i) for name, rows in per.items() for i, (d, _) in enumerate(rows) if d is None]
    histogram: dict = {}
    for d in dims:
        histogram[str(d)] = histogram.get(str(d), 0) + 1
    return {
        "theorem": theorem,
        "instances": len(per),
        "families": len(dims),
        "min_families_per_instance": min((len(r) for r in per.values()), default=0),
        "without_common_vertex": sum(1 for rows in per.values() for _, c in rows if not c),
        "witness_rate": (len(dims) - len(failures)) / len(dims) if dims else 1.0,
        "max_witness_dim": max((d for d in dims if d is not None), default=None),
        "dimension_histogram": dict(sorted(histogram.items())),
        "failures": failures,
    }


def helly_dimension(X: SimplicialComplex, pool=None, cap: int = 5, max_families: int = 200_000) -> dict:
    """Least ``d`` such that every ``(d+1)``-wise intersecting family drawn from
    ``pool`` (default: hulls of vertex pairs) with at most ``cap`` members
    has a witness simplex.  The cap makes this a lower estimate of the
    unrestricted quantity.
    """
    pool = _hull_candidates(X) if pool is None else [frozenset(p) for p in pool]
    checked = 0
    for d in range(0, cap):
        good = True
        for size in range(d + 2, cap + 1):
            for fam in itertools.combinations(pool, size):
                checked += 1
                if checked > max_families:
                    return {"dimension": None, "cap": cap, "checked": checked, "complete": False}
                if not all(frozenset.intersection(*c) for c in itertools.combinations(fam, d + 1)):
                    continue
                if frozenset.intersection(*fam):
                    continue
                if find_witness(ConvexFamily.from_vertex_sets(X, fam)) is None:
                    good = False
                    break
            if not good:
                break
        if good:
            return {"dimension": d, "cap": cap, "checked": checked, "complete": True}
    return {"dimension": cap, "cap": cap, "checked": checked, "complete": True}
