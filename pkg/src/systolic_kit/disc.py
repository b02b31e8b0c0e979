"""Triangulated discs and spheres: defects, Gauss-Bonnet and flatness."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .complex import SimplicialComplex
from .errors import InvalidInput

__all__ = [
    "HEX_DIRECTIONS",
    "lattice_distance",
    "TriangulatedDisc",
    "TriangulatedSphere",
    "DefectVector",
    "defects",
    "gauss_bonnet",
    "is_flat",
    "embed_in_hex_plane",
]

# Axial coordinates on the equilaterally triangulated plane, in cyclic order.
HEX_DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def lattice_distance(p, q) -> int:
    dx, dy = q[0] - p[0], q[1] - p[1]
    return max(abs(dx), abs(dy), abs(dx + dy))


def _edge_triangle_counts(X: SimplicialComplex) -> Counter:
    count = Counter()
    for a, b, c in X.triangles:
        count[(a, b)] += 1
        count[(a, c)] += 1
        count[(b, c)] += 1
    return count


def _vertex_link_graph(X: SimplicialComplex, v: int) -> dict:
    adj: dict = {}
    for t in X.triangles:
        if v in t:
            a, b = (x for x in t if x != v)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return adj


def _is_path_or_cycle(adj: dict, cycle: bool) -> bool:
    if not adj:
        return False
    degs = Counter(len(n) for n in adj.values())
    if cycle:
        if set(degs) != {2}:
            return False
    elif not (set(degs) <= {1, 2} and degs[1] == 2):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _check_surface(X: SimplicialComplex) -> Counter:
    if X.vertex_count == 0 or any(len(m) != 3 for m in X.maximal_simplices):
        raise InvalidInput("not a pure 2-dimensional complex")
    if not X.is_connected():
        raise InvalidInput("surface is disconnected")
    counts = _edge_triangle_counts(X)
    bad = [e for e, c in counts.items() if c > 2]
    if bad:
        raise InvalidInput(f"edge {bad[0]} lies in more than two triangles")
    return counts


def _same_cycle(a, b) -> bool:
    if len(a) != len(b) or set(a) != set(b):
        return False
    i = b.index(a[0])
    rot = list(b[i:]) + list(b[:i])
    return rot == list(a) or [rot[0]] + rot[1:][::-1] == list(a)


@dataclass(frozen=True)
class TriangulatedDisc:
    """A combinatorial 2-disc with its boundary cycle in cyclic order."""

    complex: SimplicialComplex
    boundary_cycle: tuple[int, ...]

    @classmethod
    def from_complex(cls, X: SimplicialComplex, boundary=None) -> TriangulatedDisc:
        counts = _check_surface(X)
        bedges = [e for e, c in counts.items() if c == 1]
        if not bedges:
            raise InvalidInput("surface has no boundary")
        badj: dict = {}
        for a, b in bedges:
            badj.setdefault(a, []).append(b)
            badj.setdefault(b, []).append(a)
        if any(len(n) != 2 for n in badj.values()):
            raise InvalidInput("boundary is not a disjoint union of cycles")
        start = min(badj)
        cycle = [start]
        prev, cur = start, min(badj[start])
        while cur != start:
            cycle.append(cur)
            a, b = badj[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(cycle) != len(badj):
            raise InvalidInput("boundary has more than one component")
        if X.euler_characteristic() != 1:
            raise InvalidInput("Euler characteristic differs from 1")
        on_boundary = set(cycle)
        for v in range(X.vertex_count):
            if not _is_path_or_cycle(_vertex_link_graph(X, v), cycle=v not in on_boundary):
                raise InvalidInput(f"vertex {v} has a non-manifold link")
        if boundary is not None:
            boundary = tuple(int(v) for v in boundary)
            if not _same_cycle(boundary, cycle):
                raise InvalidInput("given boundary_cycle does not match the boundary")
            cycle = list(boundary)
        return cls(X, tuple(cycle))

    @property
    def interior_vertices(self) -> frozenset:
        return frozenset(range(self.complex.vertex_count)) - set(self.boundary_cycle)

    @property
    def area(self) -> int:
        return len(self.complex.triangles)


@dataclass(frozen=True)
class TriangulatedSphere:
    """A combinatorial 2-sphere."""

    complex: SimplicialComplex

    @classmethod
    def from_complex(cls, X: SimplicialComplex) -> TriangulatedSphere:
        counts = _check_surface(X)
        if any(c != 2 for c in counts.values()):
            raise InvalidInput("some edge is not in exactly two triangles")
        if X.euler_characteristic() != 2:
            raise InvalidInput("Euler characteristic differs from 2")
        for v in range(X.vertex_count):
            if not _is_path_or_cycle(_vertex_link_graph(X, v), cycle=True):
                raise InvalidInput(f"vertex {v} has a non-manifold link")
        return cls(X)

    @property
    def boundary_cycle(self) -> tuple[int, ...]:
        return ()

    @property
    def interior_vertices(self) -> frozenset:
        return frozenset(range(self.complex.vertex_count))


@dataclass(frozen=True)
class DefectVector:
    triangle_count: tuple[int, ...]
    defect: tuple[int, ...]

    def total(self) -> int:
        return sum(self.defect)


def defects(D) -> DefectVector:
    """``6 - chi(v)`` at interior vertices, ``3 - chi(v)`` on the boundary."""
    if not isinstance(D, (TriangulatedDisc, TriangulatedSphere)):
        raise InvalidInput("defects need a TriangulatedDisc or TriangulatedSphere")
    X = D.complex
    chi = [0] * X.vertex_count
    for t in X.triangles:
        for v in t:
            chi[v] += 1
    boundary = set(D.boundary_cycle)
    dv = tuple((3 if v in boundary else 6) - chi[v] for v in range(X.vertex_count))
    return DefectVector(tuple(chi), dv)


def gauss_bonnet(M) -> tuple[int, int]:
    """``(sum of defects, 6 * Euler characteristic)``; equal on every surface."""
    return defects(M).total(), 6 * M.complex.euler_characteristic()


def is_flat(D: TriangulatedDisc) -> bool:
    """Defect criterion for flatness of a disc.

    Interior defects vanish, no boundary defect is below -1, and walking
    around the boundary every two negative vertices have a positive one
    between them.
    """
    dv = defects(D).defect
    if any(dv[v] != 0 for v in D.interior_vertices):
        return False
    ring = [dv[v] for v in D.boundary_cycle]
    if min(ring) < -1:
        return False
    signs = [d for d in ring if d != 0]
    if sum(1 for d in signs if d < 0) < 2:
        return True
    return not any(a < 0 and b < 0 for a, b in zip(signs, signs[1:] + signs[:1]))


def _third_points(p, q):
    """The two lattice points forming a unit triangle with edge ``pq``."""
    d = (q[0] - p[0], q[1] - p[1])
    k = HEX_DIRECTIONS.index(d)
    a = HEX_DIRECTIONS[(k - 1) % 6]
    b = HEX_DIRECTIONS[(k + 1) % 6]
    return (p[0] + a[0], p[1] + a[1]), (p[0] + b[0], p[1] + b[1])


def _graph_distances(X: SimplicialComplex, s: int) -> list[int]:
    dist = [-1] * X.vertex_count
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in X.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def embed_in_hex_plane(D: TriangulatedDisc) -> dict | None:
    """Isometric embedding of the disc's 1-skeleton into the triangular lattice.

    Placing one triangle fixes the whole development, because adjacent
    triangles determine each other's third vertex; the result is then
    unique up to lattice symmetries.  Returns ``{vertex: (x, y)}`` or
    ``None`` when the development folds, overlaps or fails to be isometric.
    """
    X = D.complex
    tris = X.triangles
    by_edge: dict = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            by_edge.setdefault(e, []).append(t)
    a, b, c = tris[0]
    pos = {a: (0, 0), b: (1, 0), c: (0, 1)}
    placed = {tris[0]}
    queue = deque([tris[0]])
    while queue:
        t = queue.popleft()
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            (w,) = [x for x in t if x not in e]
            for s in by_edge[e]:
                if s in placed:
                    continue
                (u,) = [x for x in s if x not in e]
                p1, p2 = _third_points(pos[e[0]], pos[e[1]])
                target = p2 if pos[w] == p1 else p1
                if pos.setdefault(u, target) != target:
                    return None
                placed.add(s)
                queue.append(s)
    if len(pos) != X.vertex_count or len(set(pos.values())) != len(pos):
        return None
    for s in range(X.vertex_count):
        ds = _graph_distances(X, s)
        for v in range(X.vertex_count):
            if ds[v] != lattice_distance(pos[s], pos[v]):
                return None
    return dict(sorted(pos.items()))
