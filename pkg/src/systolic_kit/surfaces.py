"""Triangular and digonal surfaces, the glued sphere, and ball fillings.

Surfaces here are bookkeeping on top of :mod:`systolic_kit.filling`: a
triangular surface is a minimal filling of the core of a geodesic triangle
with the common prefixes of its sides attached as horns, and a digonal
surface is a chain of minimal fillings of the simple digons between two
geodesics.  :func:`build_sphere` glues four triangular and six digonal
surfaces into a sphere mapping to ``X``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .complex import SimplicialComplex
from .disc import TriangulatedDisc, TriangulatedSphere, defects, is_flat
from .errors import InvalidInput, SearchLimit
from .filling import DEFAULT_AREA_CAP, SurfaceMap, fill_cycle_minimal
from .metric import distance_matrix, interval, is_geodesic

__all__ = [
    "HornedTriangleDomain",
    "TriangularSurface",
    "triangular_surface",
    "DigonPiece",
    "DigonDomain",
    "DigonalSurface",
    "digonal_surface",
    "extend_digon_to_disc",
    "check_simple_digon_flat",
    "SphereMap",
    "build_sphere",
    "BallCheck",
    "verify_ball_filling",
    "find_ball_filling",
]


# -- triangular surfaces ------------------------------------------------------


@dataclass(frozen=True)
class HornedTriangleDomain:
    """Core disc (possibly absent) with up to three horns.

    Vertex ids of the core filling are kept; horn vertices come after them.
    ``sides[i]`` runs from top ``x_i`` to top ``x_{i+1}`` and ``horns[i]``
    from top ``x_i`` down to bottom ``x'_i``.
    """

    complex: SimplicialComplex
    core: TriangulatedDisc | None
    tops: tuple[int, int, int]
    bottoms: tuple[int, int, int]
    horns: tuple[tuple[int, ...], ...]
    sides: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TriangularSurface:
    kind: str  # "segment", "tripod" or "horned-triangle"
    corners: tuple[int, int, int]
    geodesics: tuple[tuple[int, ...], ...]
    domain: HornedTriangleDomain
    assignment: tuple[int, ...]
    core_area: int
    equilateral: bool
    candidates: int = 0
    truncated: bool = False

    @property
    def area(self) -> int:
        f = self.assignment
        return sum(1 for a, b, c in self.domain.complex.triangles if len({f[a], f[b], f[c]}) == 3)

    @property
    def horn_lengths(self) -> tuple[int, int, int]:
        return tuple(len(h) - 1 for h in self.domain.horns)

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "corners": list(self.corners),
            "geodesics": [list(g) for g in self.geodesics],
            "core_area": self.core_area,
            "area": self.area,
            "equilateral": self.equilateral,
            "horn_lengths": list(self.horn_lengths),
            "candidates": self.candidates,
            "truncated": self.truncated,
        }


def _tree_domain(corners, centre, horn_paths) -> tuple[HornedTriangleDomain, tuple]:
    """Domain of a tripod (or segment): horns ``v_i -> centre`` glued at the centre."""
    label = [centre]
    horns = []
    for path in horn_paths:
        ids = []
        for x in path[:-1]:
            ids.append(len(label))
            label.append(x)
        ids.append(0)
        horns.append(tuple(ids))
    edges = [(h[i], h[i + 1]) for h in horns for i in range(len(h) - 1)]
    Y = SimplicialComplex.from_simplices(edges, len(label))
    sides = tuple(tuple(horns[i]) + tuple(reversed(horns[(i + 1) % 3]))[1:] for i in range(3))
    tops = tuple(h[0] for h in horns)
    dom = HornedTriangleDomain(Y, None, tops, (0, 0, 0), tuple(horns), sides)
    return dom, tuple(label)


def _first_geodesic(X, u, v) -> tuple[int, ...]:
    return interval(X, u, v).first_geodesic()


def _common_prefix(p, q) -> int:
    n = 0
    for a, b in zip(p, q):
        if a != b:
            break
        n += 1
    return n


def _is_equilateral(core: SurfaceMap, corner_positions) -> bool:
    if not is_flat(core.domain):
        return False
    dv = defects(core.domain).defect
    corners = {core.domain.boundary_cycle[p] for p in corner_positions}
    if len(corners) != 3:
        return False
    for v in core.domain.boundary_cycle:
        if dv[v] != (2 if v in corners else 0):
            return False
    return True


def triangular_surface(
    X: SimplicialComplex,
    v0: int,
    v1: int,
    v2: int,
    area_bound: int = DEFAULT_AREA_CAP,
    max_triples: int = 20_000,
) -> TriangularSurface:
    """A minimal triangular surface spanned on three distinct vertices.

    Segments and tripods are detected from distances alone.  Otherwise all
    geodesic triangles (up to ``max_triples`` in lexicographic order) are
    split into horns, the maximal common prefixes at each corner, and a
    core cycle; cores are filled minimally and the least core area wins,
    ties going to the shorter core and then to the lexicographically least
    triple of sides.
    """
    corners = (int(v0), int(v1), int(v2))
    if len(set(corners)) != 3:
        raise InvalidInput("triangle corners must be distinct")
    for v in corners:
        if not 0 <= v < X.vertex_count:
            raise InvalidInput(f"vertex {v} is not in the complex")
    D = distance_matrix(X)
    if min(D[a, b] for a, b in itertools.combinations(corners, 2)) < 0:
        raise InvalidInput("corners lie in different components")

    # segment: one corner on a geodesic between the other two
    for i in range(3):
        a, b, c = corners[i], corners[(i + 1) % 3], corners[(i + 2) % 3]
        if D[b, a] + D[a, c] == D[b, c]:
            return _tree_surface("segment", X, corners, a)
    # tripod: some vertex on a geodesic between every pair
    a, b, c = corners
    mask = (D[a] + D[b] == D[a, b]) & (D[b] + D[c] == D[b, c]) & (D[c] + D[a] == D[c, a]) & (D[a] >= 0)
    hits = np.nonzero(mask)[0]
    if hits.size:
        return _tree_surface("tripod", X, corners, int(hits[0]))

    ivs = [interval(X, corners[i], corners[(i + 1) % 3]) for i in range(3)]
    cores = {}
    examined = 0
    truncated = False
    for g01 in ivs[0].geodesics():
        for g12 in ivs[1].geodesics():
            for g20 in ivs[2].geodesics():
                examined += 1
                if examined > max_triples:
                    truncated = True
                    break
                gs = (g01, g12, g20)
                p = [_common_prefix(gs[i], gs[(i - 1) % 3][::-1]) - 1 for i in range(3)]
                parts = []
                ok = True
                for i in range(3):
                    g = gs[i]
                    lo, hi = p[i], len(g) - 1 - p[(i + 1) % 3]
                    if lo > hi:
                        ok = False
                        break
                    parts.append(g[lo:hi + 1])
                if not ok:
                    continue
                loop = parts[0][:-1] + parts[1][:-1] + parts[2][:-1]
                if len(loop) < 3 or len(set(loop)) != len(loop):
                    continue
                cores.setdefault((len(loop), gs), (loop, p, [len(q) - 1 for q in parts]))
            if truncated:
                break
        if truncated:
            break

    best = None
    for (perim, gs), (loop, p, lens) in sorted(cores.items()):
        if best is not None and perim - 2 > best[0]:
            break
        bound = area_bound if best is None else best[0] - 1
        fill = fill_cycle_minimal(X, loop, bound)
        if fill is None:
            continue
        best = (fill.domain_area, gs, p, lens, fill)
    if best is None:
        raise SearchLimit(f"no geodesic triangle core fills within area {area_bound}")
    _, gs, p, lens, fill = best
    return _horned_surface(corners, gs, p, lens, fill, len(cores), truncated)


def _tree_surface(kind, X, corners, centre) -> TriangularSurface:
    paths = [_first_geodesic(X, v, centre) for v in corners]
    dom, label = _tree_domain(corners, centre, paths)
    gs = tuple(tuple(label[x] for x in side) for side in dom.sides)
    return TriangularSurface(kind, corners, gs, dom, label, 0, False)


def _horned_surface(corners, gs, p, lens, fill: SurfaceMap, candidates, truncated) -> TriangularSurface:
    m = len(fill.domain.boundary_cycle)
    bottom_pos = (0, lens[0], lens[0] + lens[1])
    label = list(fill.assignment)
    triangles = list(fill.domain.complex.triangles)
    edges = []
    horns = []
    for i in range(3):
        bottom = bottom_pos[i]
        prefix = gs[i][: p[i] + 1]  # v_i ... x'_i
        ids = []
        for x in prefix[:-1]:
            ids.append(len(label))
            label.append(x)
        ids.append(bottom)
        horns.append(tuple(ids))
        edges.extend((ids[k], ids[k + 1]) for k in range(len(ids) - 1))
    Y = SimplicialComplex.from_simplices(triangles + edges, len(label))
    sides = []
    for i in range(3):
        j = (i + 1) % 3
        start, length = bottom_pos[i], lens[i]
        arc = tuple((start + k) % m for k in range(length + 1))
        sides.append(horns[i][:-1] + arc + tuple(reversed(horns[j]))[1:])
    dom = HornedTriangleDomain(
        Y,
        fill.domain,
        tuple(h[0] for h in horns),
        bottom_pos,
        tuple(horns),
        tuple(sides),
    )
    eq = lens[0] == lens[1] == lens[2] and _is_equilateral(fill, bottom_pos)
    return TriangularSurface(
        "horned-triangle", corners, gs, dom, tuple(label), fill.domain_area, eq, candidates, truncated
    )


# -- digonal surfaces -------------------------------------------------------------


def _check_geodesic_pair(X, g0, g1):
    g0 = tuple(int(v) for v in g0)
    g1 = tuple(int(v) for v in g1)
    for g in (g0, g1):
        if not g or any(not 0 <= v < X.vertex_count for v in g):
            raise InvalidInput("geodesic uses a vertex outside the complex")
    if g0[0] != g1[0] or g0[-1] != g1[-1]:
        raise InvalidInput("geodesics must share both endpoints")
    if g0[0] == g0[-1]:
        raise InvalidInput("digon endpoints must be distinct")
    for g in (g0, g1):
        if not is_geodesic(X, g):
            raise InvalidInput(f"{list(g)} is not a geodesic")
    return g0, g1


@dataclass(frozen=True)
class DigonPiece:
    kind: str  # "segment" or "simple-digon"
    start: int  # index along the geodesics
    end: int
    surface: SurfaceMap | None = None


@dataclass(frozen=True)
class DigonDomain:
    """Chain of segment and simple-digon pieces glued at cut vertices.

    ``sides[0]`` and ``sides[1]`` are the domain paths mapped onto the two
    geodesics; ``cut_vertices`` are the domain vertices where consecutive
    pieces meet.
    """

    complex: SimplicialComplex
    sides: tuple[tuple[int, ...], tuple[int, ...]]
    cut_vertices: tuple[int, ...]
    piece_vertices: tuple[frozenset, ...]


@dataclass(frozen=True)
class DigonalSurface:
    kind: str  # "segment", "simple-digon" or "chain"
    geodesics: tuple[tuple[int, ...], tuple[int, ...]]
    pieces: tuple[DigonPiece, ...]
    domain: DigonDomain
    assignment: tuple[int, ...]

    @property
    def area(self) -> int:
        f = self.assignment
        return sum(1 for a, b, c in self.domain.complex.triangles if len({f[a], f[b], f[c]}) == 3)

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "geodesics": [list(g) for g in self.geodesics],
            "pieces": [
                {"kind": p.kind, "start": p.start, "end": p.end,
                 "area": p.surface.domain_area if p.surface else 0}
                for p in self.pieces
            ],
            "area": self.area,
        }


def digonal_surface(X: SimplicialComplex, g0, g1, area_bound: int = DEFAULT_AREA_CAP) -> DigonalSurface:
    """Minimal digonal surface spanned by two geodesics with common endpoints.

    The geodesics are cut at their common vertices (which sit at equal
    positions, both being geodesics from the same source).  Maximal runs of
    shared edges become segment pieces; every other stretch is a simple
    digon and gets a minimal filling.
    """
    g0, g1 = _check_geodesic_pair(X, g0, g1)
    d = len(g0) - 1
    common = [i for i in range(d + 1) if g0[i] == g1[i]]
    if any(set(g0[i:i + 1]) & set(g1) and g0[i] != g1[i] for i in range(d + 1)):
        raise AssertionError("geodesics met at different positions")

    ids1 = {}
    label = list(g0)
    for i in range(d + 1):
        if g1[i] == g0[i]:
            ids1[i] = i
        else:
            ids1[i] = len(label)
            label.append(g1[i])
    side0 = tuple(range(d + 1))
    side1 = tuple(ids1[i] for i in range(d + 1))

    pieces = []
    simplices = []
    piece_vertices = []
    for a, b in zip(common, common[1:]):
        if b == a + 1:
            if pieces and pieces[-1].kind == "segment" and pieces[-1].end == a:
                pieces[-1] = DigonPiece("segment", pieces[-1].start, b)
            else:
                pieces.append(DigonPiece("segment", a, b))
            simplices.append((a, b))
            continue
        cycle = list(g0[a:b + 1]) + [g1[i] for i in range(b - 1, a, -1)]
        fill = fill_cycle_minimal(X, cycle, area_bound)
        if fill is None:
            raise SearchLimit(f"simple digon between positions {a} and {b} needs area > {area_bound}")
        ring = list(range(a, b + 1)) + [ids1[i] for i in range(b - 1, a, -1)]
        local = {}
        for k, v in enumerate(fill.domain.boundary_cycle):
            local[v] = ring[k]
        for v in range(fill.domain.complex.vertex_count):
            if v not in local:
                local[v] = len(label)
                label.append(fill.assignment[v])
        for t in fill.domain.complex.triangles:
            simplices.append(tuple(local[v] for v in t))
        pieces.append(DigonPiece("simple-digon", a, b, fill))
        piece_vertices.append(frozenset(local.values()))
    # vertex sets of the merged segment runs
    all_pieces = []
    it = iter(piece_vertices)
    for p in pieces:
        if p.kind == "segment":
            all_pieces.append(frozenset(range(p.start, p.end + 1)))
        else:
            all_pieces.append(next(it))
    cuts = tuple(p.end for p in pieces[:-1])
    Y = SimplicialComplex.from_simplices(simplices, len(label))
    if len(pieces) == 1:
        kind = "segment" if pieces[0].kind == "segment" else "simple-digon"
    else:
        kind = "chain"
    dom = DigonDomain(Y, (side0, side1), cuts, tuple(all_pieces))
    return DigonalSurface(kind, (g0, g1), tuple(pieces), dom, tuple(label))


def extend_digon_to_disc(ds: DigonalSurface):
    """Turn a digonal domain into an honest disc by collapsed squares.

    Every common vertex strictly inside the geodesics is doubled; the copy
    sits on the second side and is joined to the original by degenerate
    triangles.  Returns ``(disc, assignment, sides, collapse)`` where
    ``collapse`` maps each copy to its original, or None when the digon is
    a single shared edge and no disc exists.
    """
    g0, g1 = ds.geodesics
    d = len(g0) - 1
    Y = ds.domain.complex
    label = list(ds.assignment)
    side0, side1 = ds.domain.sides
    twin = {}
    for i in range(1, d):
        if side0[i] == side1[i]:
            twin[i] = len(label)
            label.append(label[side0[i]])
    new1 = tuple(twin.get(i, side1[i]) for i in range(d + 1))
    triangles = list(Y.triangles)
    for p in ds.pieces:
        if p.kind == "segment":
            for c in range(p.start, p.end):
                q0, q1 = side0[c], side0[c + 1]
                r0, r1 = new1[c], new1[c + 1]
                if r1 != q1:
                    triangles.append((q0, q1, r1))
                if r0 != q0:
                    triangles.append((q0, r1, r0) if r1 != q1 else (q0, q1, r0))
        else:
            if p.start in twin:
                triangles.append((side0[p.start], new1[p.start], side1[p.start + 1]))
            if p.end in twin:
                triangles.append((side0[p.end], side1[p.end - 1], new1[p.end]))
    if not triangles:
        return None
    Z = SimplicialComplex.from_simplices(triangles, len(label), "disc")
    boundary = list(side0) + list(reversed(new1))[1:-1]
    disc = TriangulatedDisc.from_complex(Z, boundary=boundary)
    collapse = {twin[i]: side0[i] for i in twin}
    return disc, tuple(label), (side0, new1), collapse


def check_simple_digon_flat(X: SimplicialComplex, g0, g1, area_bound: int = DEFAULT_AREA_CAP) -> bool:
    """Fill ``g0 * g1`` minimally and test the domain for flatness."""
    g0, g1 = _check_geodesic_pair(X, g0, g1)
    if set(g0[1:-1]) & set(g1[1:-1]) or len(g0) < 3:
        raise InvalidInput("geodesics must meet only at their endpoints")
    cycle = list(g0) + list(reversed(g1))[1:-1]
    fill = fill_cycle_minimal(X, cycle, area_bound)
    if fill is None:
        raise SearchLimit(f"digon needs area > {area_bound}")
    return is_flat(fill.domain)


# -- the glued sphere ---------------------------------------------------------------


@dataclass
class SphereMap:
    """Result of :func:`build_sphere`.

    ``inclusions`` maps a piece name (``"ABC"`` style corner triples and
    ``"AB"`` style pairs, written with vertex ids) to the sphere vertex of
    each domain vertex of that piece.
    """

    status: str  # "sphere" or "degenerate"
    target: SimplicialComplex
    complex: SimplicialComplex | None
    sphere: TriangulatedSphere | None
    assignment: tuple[int, ...]
    inclusions: dict
    triangular: dict
    digonal: dict
    diagnostics: list = field(default_factory=list)

    def summary(self) -> dict:
        out = {"status": self.status, "diagnostics": list(self.diagnostics)}
        if self.complex is not None:
            out["vertices"] = self.complex.vertex_count
            out["triangles"] = len(self.complex.triangles)
            out["euler_characteristic"] = self.complex.euler_characteristic()
        return out


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def build_sphere(X: SimplicialComplex, A: int, B: int, C: int, D: int, area_bound: int = DEFAULT_AREA_CAP) -> SphereMap:
    """Glue four minimal triangular and six digonal surfaces into a sphere.

    For each pair ``u, v`` the two triangles containing it supply two
    geodesics, which span the digonal surface ``D_uv`` (extended to a disc
    where possible).  Each side of each triangular domain is identified,
    vertex by vertex, with the side of ``D_uv`` carrying the same geodesic.
    The quotient is then checked against the sphere invariants; when the
    check fails the map is reported as degenerate with the reasons.
    """
    pts = tuple(int(v) for v in (A, B, C, D))
    if len(set(pts)) != 4:
        raise InvalidInput("build_sphere needs four distinct vertices")
    tri = {}
    for t in itertools.combinations(range(4), 3):
        tri[t] = triangular_surface(X, *(pts[i] for i in t), area_bound=area_bound)

    label: list[int] = []
    triangles: list[tuple] = []
    offsets = {}
    sides = {}  # (triple, i, j) -> domain path oriented pts[i] -> pts[j]

    def add_piece(name, n_vertices, assignment, simplices):
        off = len(label)
        offsets[name] = (off, n_vertices)
        label.extend(assignment)
        for s in simplices:
            if len(s) == 3:
                triangles.append(tuple(off + v for v in s))
        return off

    for t, surf in tri.items():
        off = add_piece(t, surf.domain.complex.vertex_count, surf.assignment, surf.domain.complex.triangles)
        for k in range(3):
            i, j = t[k], t[(k + 1) % 3]
            path = tuple(off + v for v in surf.domain.sides[k])
            sides[(t, i, j)] = path
            sides[(t, j, i)] = path[::-1]

    digonal = {}
    uf_pairs = []
    diagnostics = []
    for i, j in itertools.combinations(range(4), 2):
        t0, t1 = [t for t in tri if i in t and j in t]
        p0, p1 = sides[(t0, i, j)], sides[(t1, i, j)]
        g0 = tuple(label[v] for v in p0)
        g1 = tuple(label[v] for v in p1)
        ds = digonal_surface(X, g0, g1, area_bound)
        digonal[(i, j)] = ds
        ext = extend_digon_to_disc(ds)
        if ext is None:
            dom_n, assign, simp = ds.domain.complex.vertex_count, ds.assignment, ds.domain.complex.triangles
            s0, s1 = ds.domain.sides
        else:
            disc, assign, (s0, s1), _ = ext
            dom_n, simp = disc.complex.vertex_count, disc.complex.triangles
        off = add_piece((i, j), dom_n, assign, simp)
        for p, s in ((p0, s0), (p1, s1)):
            uf_pairs.extend(zip(p, (off + v for v in s)))

    uf = _UnionFind(len(label))
    for a, b in uf_pairs:
        uf.union(a, b)
    roots = sorted({uf.find(v) for v in range(len(label))})
    index = {r: k for k, r in enumerate(roots)}
    cls = [index[uf.find(v)] for v in range(len(label))]
    assignment = [None] * len(roots)
    for v, c in enumerate(cls):
        if assignment[c] is None:
            assignment[c] = label[v]
        elif assignment[c] != label[v]:
            diagnostics.append(f"class {c} glues vertices mapped to {assignment[c]} and {label[v]}")
    quotient = []
    seen = set()
    for t in triangles:
        q = tuple(sorted(cls[v] for v in t))
        if len(set(q)) < 3:
            diagnostics.append(f"triangle {t} collapses to {q} under the gluing")
            continue
        if q in seen:
            diagnostics.append(f"two triangles are identified as {q}")
            continue
        seen.add(q)
        quotient.append(q)
    used = {v for q in quotient for v in q}
    loose = [c for c in range(len(roots)) if c not in used]
    if loose:
        diagnostics.append(
            "vertex classes " + ", ".join(f"{c}->{assignment[c]}" for c in loose[:6]) + " lie in no triangle"
        )

    inclusions = {}
    for name, (off, n) in offsets.items():
        key = "".join(str(pts[i]) + "," for i in name).rstrip(",")
        inclusions[key] = tuple(cls[off + v] for v in range(n))

    Z = sphere = None
    if quotient and not diagnostics:
        Z = SimplicialComplex.from_simplices(quotient, len(roots))
        try:
            sphere = TriangulatedSphere.from_complex(Z)
        except InvalidInput as exc:
            diagnostics.append(str(exc))
    elif quotient:
        try:
            Z = SimplicialComplex.from_simplices(quotient, max(used) + 1)
        except InvalidInput:
            Z = None
    status = "sphere" if sphere is not None else "degenerate"
    if not quotient:
        diagnostics.append("no two-dimensional piece: every surface is a segment or tripod")
    return SphereMap(
        status,
        X,
        Z,
        sphere,
        tuple(assignment),
        inclusions,
        {tuple(pts[i] for i in t): s for t, s in tri.items()},
        {(pts[i], pts[j]): s for (i, j), s in digonal.items()},
        diagnostics,
    )


# -- ball fillings -----------------------------------------------------------------


@dataclass(frozen=True)
class BallCheck:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _ball_faces(B: SimplicialComplex):
    count: dict = {}
    for t in B.maximal_simplices:
        for k in range(4):
            f = t[:k] + t[k + 1:]
            count[f] = count.get(f, 0) + 1
    return count


def verify_ball_filling(B: SimplicialComplex, sphere: TriangulatedSphere, f, target: SimplicialComplex, F) -> BallCheck:
    """Check that ``F: B -> target`` fills ``f: sphere -> target`` without internal vertices.

    Sphere vertex ``v`` is taken to be vertex ``v`` of ``B``.
    """
    from .topology import _looks_like_ball

    reasons = []
    S = sphere.complex
    if B.vertex_count < S.vertex_count:
        reasons.append("B has fewer vertices than the sphere")
        return BallCheck(False, tuple(reasons))
    if not _looks_like_ball(B):
        reasons.append("B is not a triangulated 3-ball")
    count = _ball_faces(B) if B.dim == 3 else {}
    boundary = sorted(t for t, c in count.items() if c == 1)
    if boundary != sorted(S.triangles):
        reasons.append("boundary of B differs from the sphere")
    on_boundary = {v for t in boundary for v in t}
    inner = [v for v in range(B.vertex_count) if v not in on_boundary]
    if inner:
        reasons.append(f"B has internal vertices {inner[:6]}")
    if len(F) != B.vertex_count:
        reasons.append("F does not assign every vertex of B")
    else:
        bad = [v for v in range(S.vertex_count) if F[v] != f[v]]
        if bad:
            reasons.append(f"F disagrees with f at {bad[:6]}")
        for s in B.maximal_simplices:
            img = tuple(sorted({F[v] for v in s}))
            if img not in target.simplices:
                reasons.append(f"image of {s} is not a simplex of the target")
                break
    return BallCheck(not reasons, tuple(reasons))


def find_ball_filling(
    sphere: TriangulatedSphere, f, target: SimplicialComplex, max_vertices: int = 16, node_limit: int = 200_000
):
    """Search for a 3-ball without internal vertices filling ``f``.

    Tetrahedra are added on the lexicographically first open face, with
    the apex ranging over sphere vertices whose images keep the
    tetrahedron's image a simplex.  Returns ``(B, F)`` or None when the
    search space is exhausted.
    """
    S = sphere.complex
    n = S.vertex_count
    if n > max_vertices:
        raise SearchLimit(f"ball search is limited to spheres with at most {max_vertices} vertices")
    simp = target.simplices
    count = {t: 1 for t in S.triangles}
    tets: list = []
    nodes = [0]

    def open_faces():
        return sorted(t for t, c in count.items() if c == 1)

    def dfs():
        front = open_faces()
        if not front:
            return True
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise SearchLimit("ball search exceeded its node limit")
        t = front[0]
        for v in range(n):
            if v in t:
                continue
            tet = tuple(sorted(t + (v,)))
            if tet in tets:
                continue
            if tuple(sorted({f[x] for x in tet})) not in simp:
                continue
            fs = [tet[:k] + tet[k + 1:] for k in range(4)]
            if any(count.get(x, 0) >= 2 for x in fs):
                continue
            for x in fs:
                count[x] = count.get(x, 0) + 1
            tets.append(tet)
            if dfs():
                return True
            tets.pop()
            for x in fs:
                count[x] -= 1
                if count[x] == 0:
                    del count[x]
        return False

    if not dfs():
        return None
    B = SimplicialComplex.from_simplices(tets, n, "ball")
    check = verify_ball_filling(B, sphere, f, target, tuple(f))
    return (B, tuple(f)) if check else None
