"""Deterministic generators for the instance corpus.

Every generator returns an :class:`Instance`: a complex carrying a
simple-connectivity certificate where one is known, plus optional named
subcomplexes, lattice coordinates and expected-property metadata.  Output is
a pure function of the arguments (``random.Random(seed)`` is the only RNG).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .complex import SimplicialComplex, is_flag, is_locally_k_large
from .disc import TriangulatedDisc, defects
from .errors import InvalidInput

__all__ = [
    "Instance",
    "hex_region",
    "hex_disc",
    "hex_triangle",
    "hex_hexagon",
    "simplex_with_facets",
    "seven_systolic_disc",
    "random_disc",
    "random_sphere",
    "random_chordal",
    "tetrahedron_boundary",
    "octahedron",
    "flat_torus",
    "corpus",
]


@dataclass
class Instance:
    complex: SimplicialComplex
    subcomplexes: dict[str, list[int]] = field(default_factory=dict)
    boundary_cycle: list[int] | None = None
    coordinates: list[tuple[int, int]] | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def certificate(self) -> str | None:
        return self.complex.certificate


# -- triangular lattice regions -------------------------------------------


def hex_region(xmin, xmax, ymin, ymax, smin, smax) -> Instance:
    """Full subcomplex of the triangular lattice on a lattice-convex region.

    The region is ``{(x, y) : xmin<=x<=xmax, ymin<=y<=ymax, smin<=x+y<=smax}``;
    vertices are numbered in ``(y, x)`` order.
    """
    pts = [
        (x, y)
        for y in range(ymin, ymax + 1)
        for x in range(xmin, xmax + 1)
        if smin <= x + y <= smax
    ]
    if not pts:
        raise InvalidInput("empty lattice region")
    index = {p: i for i, p in enumerate(pts)}
    simplices = []
    for (x, y), i in index.items():
        for d in ((1, 0), (0, 1), (-1, 1)):
            j = index.get((x + d[0], y + d[1]))
            if j is not None:
                simplices.append((i, j))
        for tri in (((1, 0), (0, 1)), ((1, 0), (1, -1))):
            js = [index.get((x + d[0], y + d[1])) for d in tri]
            if None not in js:
                simplices.append((i, *js))
    X = SimplicialComplex.from_simplices(simplices, len(pts))
    inst = Instance(X, coordinates=pts)
    try:
        disc = TriangulatedDisc.from_complex(X)
    except InvalidInput:
        if X.dim <= 1 and X.is_connected() and len(X.edges) == X.vertex_count - 1:
            inst.metadata["tree"] = True
        return inst
    inst.complex = X.with_certificate("disc")
    inst.boundary_cycle = list(disc.boundary_cycle)
    return inst


def hex_triangle(side: int) -> Instance:
    """Equilateral lattice triangle with corners (0,0), (side,0), (0,side).

    Named subcomplexes ``s1`` (y = 0), ``s2`` (x + y = side) and ``s3``
    (x = 0) are its three sides.
    """
    if side < 1:
        raise InvalidInput("side must be positive")
    inst = hex_region(0, side, 0, side, 0, side)
    pts = inst.coordinates
    inst.subcomplexes = {
        "s1": [i for i, (x, y) in enumerate(pts) if y == 0],
        "s2": [i for i, (x, y) in enumerate(pts) if x + y == side],
        "s3": [i for i, (x, y) in enumerate(pts) if x == 0],
    }
    inst.metadata.update(kind="hex_disc", region="triangle", side=side)
    return inst


def hex_hexagon(radius: int) -> Instance:
    inst = hex_region(-radius, radius, -radius, radius, -radius, radius)
    inst.metadata.update(kind="hex_disc", region="hexagon", radius=radius)
    return inst


def hex_disc(region: str = "triangle", **params) -> Instance:
    """Dispatch on a region name: triangle(side), hexagon(radius),
    parallelogram(a, b) or box(xmin, ..., smax)."""
    if region == "triangle":
        return hex_triangle(params["side"])
    if region == "hexagon":
        return hex_hexagon(params["radius"])
    if region == "parallelogram":
        a, b = params["a"], params["b"]
        inst = hex_region(0, a, 0, b, 0, a + b)
        inst.metadata.update(kind="hex_disc", region="parallelogram", a=a, b=b)
        return inst
    if region == "box":
        keys = ("xmin", "xmax", "ymin", "ymax", "smin", "smax")
        inst = hex_region(*(params[k] for k in keys))
        inst.metadata.update(kind="hex_disc", region="box", **{k: params[k] for k in keys})
        return inst
    raise InvalidInput(f"unknown region {region!r}")


# -- simplices --------------------------------------------------------------


def simplex_with_facets(n: int) -> Instance:
    """The n-simplex with its n+1 codimension-1 faces as a convex family."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    X = SimplicialComplex(n + 1, (tuple(range(n + 1)),), "cone")
    facets = {f"f{i}": [v for v in range(n + 1) if v != i] for i in range(n + 1)}
    meta = {
        "kind": "simplex_with_facets",
        "n": n,
        "expected": {
            "every_n_subfamily_intersects": True,
            "whole_family_intersects": False,
            "witness": list(range(n + 1)),
        },
    }
    return Instance(X, subcomplexes=facets, metadata=meta)


def tetrahedron_boundary() -> Instance:
    X = SimplicialComplex.from_simplices(itertools.combinations(range(4), 3))
    return Instance(X, metadata={"kind": "sphere", "name": "tetrahedron"})


def octahedron() -> Instance:
    """Boundary of the octahedron; opposite pairs are (0,1), (2,3), (4,5)."""
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    X = SimplicialComplex.from_simplices(tris)
    return Instance(X, metadata={"kind": "sphere", "name": "octahedron"})


def flat_torus(n: int = 7) -> Instance:
    """The n-by-n quotient of the triangular lattice (a flat torus)."""
    if n < 3:
        raise InvalidInput("n must be at least 3 for a simplicial torus")

    def vid(i, j):
        return (i % n) + n * (j % n)

    tris = []
    for i in range(n):
        for j in range(n):
            tris.append((vid(i, j), vid(i + 1, j), vid(i, j + 1)))
            tris.append((vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)))
    X = SimplicialComplex.from_simplices(tris, n * n)
    return Instance(X, metadata={"kind": "torus", "n": n})


# -- growing discs ----------------------------------------------------------


class _DiscBuilder:
    """Mutable disc grown by boundary moves, always a valid triangulated disc."""

    def __init__(self):
        self.tris: list[tuple[int, int, int]] = [(0, 1, 2)]
        self.boundary: list[int] = [0, 1, 2]
        self.count = [1, 1, 1]
        self.nbrs: list[set] = [{1, 2}, {0, 2}, {0, 1}]

    def _new_vertex(self) -> int:
        self.count.append(0)
        self.nbrs.append(set())
        return len(self.count) - 1

    def _add_triangle(self, a, b, c):
        self.tris.append((a, b, c))
        for x, y in ((a, b), (b, c), (a, c)):
            self.nbrs[x].add(y)
            self.nbrs[y].add(x)
        for x in (a, b, c):
            self.count[x] += 1

    def grow(self, i: int) -> int:
        """Attach a triangle with a new vertex to boundary edge (i, i+1)."""
        a = self.boundary[i]
        b = self.boundary[(i + 1) % len(self.boundary)]
        w = self._new_vertex()
        self._add_triangle(a, b, w)
        self.boundary.insert(i + 1, w)
        return w

    def can_close(self, i: int) -> bool:
        m = len(self.boundary)
        if m <= 3:
            return False
        a, c = self.boundary[i - 1], self.boundary[(i + 1) % m]
        return c not in self.nbrs[a]

    def close(self, i: int):
        """Fill the boundary angle at position i, making that vertex interior."""
        m = len(self.boundary)
        a, b, c = self.boundary[i - 1], self.boundary[i], self.boundary[(i + 1) % m]
        self._add_triangle(a, b, c)
        del self.boundary[i]

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_simplices(self.tris, len(self.count), "disc")


def _wheel(builder: _DiscBuilder, degree: int):
    """Turn the initial triangle into a wheel whose centre has ``degree`` triangles."""
    b = builder
    centre = 0
    while b.count[centre] < degree - 1:
        i = b.boundary.index(centre)
        b.grow(i)
    b.close(b.boundary.index(centre))


def seven_systolic_disc(degree: int = 7, depth: int = 1, seed: int = 0, extra: float = 0.0) -> Instance:
    """Flag disc all of whose interior vertices lie in at least 7 triangles.

    ``depth`` 0 is a single triangle and ``depth`` 1 a wheel with ``degree``
    spokes.  Each further level adds a ring of triangles around the current
    boundary so every old boundary vertex becomes interior with at least 7
    triangles; ``extra`` is the probability of one spare spoke per vertex.
    """
    if degree < 7 or depth < 0:
        raise InvalidInput("need degree >= 7 and depth >= 0")
    rng = random.Random(seed)
    b = _DiscBuilder()
    if depth >= 1:
        _wheel(b, degree)
    for _ in range(depth - 1):
        old = list(b.boundary)
        for v in old:
            need = 7 + (1 if rng.random() < extra else 0)
            # grow until v has need-1 triangles, then close it
            while b.count[v] < need - 1:
                b.grow(b.boundary.index(v))
            i = b.boundary.index(v)
            if not b.can_close(i):
                b.grow(i)
                i = b.boundary.index(v)
            b.close(i)
    X = b.complex()
    if not is_locally_k_large(X, 7):
        raise RuntimeError("seven_systolic_disc produced a complex that is not locally 7-large")
    disc = TriangulatedDisc.from_complex(X)
    meta = {"kind": "seven_systolic_disc", "degree": degree, "depth": depth, "seed": seed}
    return Instance(X, boundary_cycle=list(disc.boundary_cycle), metadata=meta)


def _random_disc_once(rng, triangles, lo, hi, p_close):
    b = _DiscBuilder()
    min_deg, max_deg = 6 - hi, 6 - lo
    while len(b.tris) < triangles:
        room = triangles - len(b.tris)
        if rng.random() < p_close:
            i = rng.randrange(len(b.boundary))
            v = b.boundary[i]
            want = rng.randint(max(min_deg, b.count[v] + 1), max(max_deg, b.count[v] + 1))
            if want > max_deg or want - b.count[v] > room:
                continue
            while b.count[v] < want - 1:
                i = b.boundary.index(v)
                b.grow(i if rng.random() < 0.5 else i - 1)
            i = b.boundary.index(v)
            if b.can_close(i):
                b.close(i)
        else:
            b.grow(rng.randrange(len(b.boundary)))
    return b


def random_disc(
    triangles: int = 20,
    interior_defect: tuple[int, int] = (-3, 0),
    boundary_defect_min: int | None = None,
    k: int | None = None,
    seed: int = 0,
    p_close: float = 0.4,
    max_tries: int = 200,
) -> Instance:
    """Random triangulated disc grown by boundary moves.

    Interior vertices are created only by closing a boundary angle, and only
    when the resulting defect lies in ``interior_defect``.  Samples violating
    ``boundary_defect_min`` or (when ``k`` is given) local ``k``-largeness
    are rejected and redrawn from the same seeded stream.
    """
    lo, hi = interior_defect
    if lo > hi or lo > 3:
        raise InvalidInput(f"infeasible interior defect bounds {interior_defect}")
    if boundary_defect_min is not None and boundary_defect_min > 2:
        raise InvalidInput("boundary defects never exceed 2")
    if triangles < 1:
        raise InvalidInput("need at least one triangle")
    if k is not None and 6 - hi < k and hi >= 0 and k > 6:
        raise InvalidInput(f"interior defect bound {hi} allows degrees below {k}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        b = _random_disc_once(rng, triangles, lo, hi, p_close)
        X = b.complex()
        if not is_flag(X) and (k is not None):
            continue
        disc = TriangulatedDisc.from_complex(X)
        dv = defects(disc).defect
        if boundary_defect_min is not None and any(dv[v] < boundary_defect_min for v in disc.boundary_cycle):
            continue
        if k is not None and not is_locally_k_large(X, k):
            continue
        meta = {
            "kind": "random_disc",
            "triangles": triangles,
            "interior_defect": [lo, hi],
            "boundary_defect_min": boundary_defect_min,
            "k": k,
            "seed": seed,
        }
        return Instance(X, boundary_cycle=list(disc.boundary_cycle), metadata=meta)
    raise InvalidInput(f"no disc satisfying the bounds after {max_tries} samples")


def random_sphere(triangles: int = 20, seed: int = 0) -> Instance:
    """Cone over the boundary of a random disc: a triangulated 2-sphere."""
    inst = random_disc(triangles, interior_defect=(-3, 3), seed=seed)
    X = inst.complex
    apex = X.vertex_count
    ring = inst.boundary_cycle
    tris = list(X.triangles) + [
        (apex, ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))
    ]
    S = SimplicialComplex.from_simplices(tris, apex + 1)
    return Instance(S, metadata={"kind": "random_sphere", "triangles": triangles, "seed": seed})


def random_chordal(vertices: int = 12, max_clique: int = 4, seed: int = 0) -> Instance:
    """Clique complex of a random chordal graph.

    Each new vertex is joined to a random nonempty part of a random existing
    maximal clique, so the reversed insertion order is a perfect elimination
    order.  Such complexes are flag with chordal links, hence locally
    ``k``-large for every ``k``, and they collapse to a point.
    """
    if vertices < 1 or max_clique < 1:
        raise InvalidInput("need at least one vertex and max_clique >= 1")
    rng = random.Random(seed)
    first = min(max_clique, vertices)
    cliques = [tuple(range(first))]
    for v in range(first, vertices):
        base = rng.choice(cliques)
        size = rng.randint(1, min(len(base), max_clique - 1)) if max_clique > 1 else 0
        part = sorted(rng.sample(base, size))
        cliques.append(tuple(part) + (v,))
    X = SimplicialComplex.from_simplices(cliques, vertices)
    meta = {"kind": "random_chordal", "vertices": vertices, "max_clique": max_clique, "seed": seed}
    return Instance(X, metadata=meta)


# -- corpus -------------------------------------------------------------------


def corpus(scale: str = "default") -> list[tuple[str, Instance]]:
    """Named instance list used by sweeps and the acceptance suite.

    Contents: lattice triangles, hexagons and parallelograms; 7-systolic
    wheels and two-level rings; seeded random 6- and 7-systolic discs;
    clique complexes of random chordal graphs (dimension up to 4); and
    single simplices of dimension 1..4.
    """
    out: list[tuple[str, Instance]] = []
    for s in range(1, 7):
        out.append((f"hex_triangle_{s}", hex_triangle(s)))
    for r in (1, 2, 3):
        out.append((f"hex_hexagon_{r}", hex_hexagon(r)))
    for a, b in ((1, 1), (2, 1), (2, 2), (3, 2), (4, 2), (3, 3), (5, 3)):
        out.append((f"hex_parallelogram_{a}x{b}", hex_disc("parallelogram", a=a, b=b)))
    for d in (7, 8, 9, 10):
        out.append((f"seven_wheel_{d}", seven_systolic_disc(d, 1)))
    out.append(("seven_ring_7", seven_systolic_disc(7, 2, seed=0)))
    for seed in (1, 2, 3):
        out.append((f"seven_ring_7_{seed}", seven_systolic_disc(7, 2, seed=seed, extra=0.3)))
    n_random = 40 if scale == "default" else 10
    for seed in range(n_random):
        tri = 8 + (seed * 7) % 28
        out.append(
            (f"random6_{seed}", random_disc(tri, interior_defect=(-2, 0), k=6, seed=1000 + seed))
        )
    for seed in range(n_random + n_random // 4):
        tri = 8 + (seed * 5) % 26
        out.append(
            (f"random7_{seed}", random_disc(tri, interior_defect=(-3, -1), k=7, seed=2000 + seed))
        )
    for seed in range(n_random // 2):
        out.append((f"chordal_{seed}", random_chordal(10 + seed % 11, 3 + seed % 3, seed=3000 + seed)))
    for n in (1, 2, 3, 4):
        out.append((f"simplex_{n}", simplex_with_facets(n)))
    return out
