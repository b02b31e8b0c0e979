"""Minimal spanning surfaces for cycles.

A filling of a cycle ``gamma`` in ``X`` is a simplicial map from a
triangulated disc whose boundary goes isomorphically onto ``gamma``.  The
search below is exact: it minimises the number of domain triangles by
branch-and-bound over partial discs.

The state is the boundary loop of the still-unfilled region, given by the
target labels of its vertices, together with the loop pairs that are
already joined by a domain edge outside the region (a chord between them
would duplicate that edge).  The lowest-indexed boundary edge of the
canonical loop lies in exactly one triangle, whose third vertex is either
another loop vertex (the loop splits in two) or a fresh interior vertex
(the loop grows by one).  A loop of length ``m`` needs at least ``m - 2``
triangles, which bounds the depth.  States are memoised up to rotation and
reflection of the loop.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex import SimplicialComplex
from .disc import TriangulatedDisc
from .errors import InvalidInput

__all__ = ["SurfaceMap", "fill_cycle_minimal", "normalize_cycle", "minimal_filling_area"]

DEFAULT_AREA_CAP = 24


@dataclass(frozen=True)
class SurfaceMap:
    """Simplicial map ``domain -> target`` given by a vertex assignment."""

    domain: TriangulatedDisc
    target: SimplicialComplex
    assignment: tuple[int, ...]

    @property
    def domain_area(self) -> int:
        return len(self.domain.complex.triangles)

    @property
    def area(self) -> int:
        """Number of domain triangles on which the map is injective."""
        f = self.assignment
        return sum(1 for a, b, c in self.domain.complex.triangles if len({f[a], f[b], f[c]}) == 3)

    def image(self, simplex) -> tuple[int, ...]:
        return tuple(sorted({self.assignment[v] for v in simplex}))

    def is_simplicial(self) -> bool:
        return all(self.image(s) in self.target.simplices for s in self.domain.complex.maximal_simplices)

    def boundary_image(self) -> tuple[int, ...]:
        return tuple(self.assignment[v] for v in self.domain.boundary_cycle)

    def to_json(self) -> dict:
        return {
            "domain": {
                "vertices": self.domain.complex.vertex_count,
                "maximal_simplices": [list(s) for s in self.domain.complex.maximal_simplices],
                "boundary_cycle": list(self.domain.boundary_cycle),
            },
            "assignment": list(self.assignment),
        }


def normalize_cycle(X: SimplicialComplex, gamma) -> tuple[int, ...]:
    """Validate a simple closed edge path; a repeated final vertex is dropped."""
    cyc = [int(v) for v in gamma]
    if len(cyc) > 1 and cyc[0] == cyc[-1]:
        cyc.pop()
    if len(cyc) < 3:
        raise InvalidInput("a cycle needs at least three vertices")
    if len(set(cyc)) != len(cyc):
        raise InvalidInput("cycle repeats a vertex")
    for v in cyc:
        if not 0 <= v < X.vertex_count:
            raise InvalidInput(f"vertex {v} is not in the complex")
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if not X.adjacent(a, b):
            raise InvalidInput(f"({a}, {b}) is not an edge")
    return tuple(cyc)


# -- loop states ------------------------------------------------------------


def _canonical(labels: tuple, forb: frozenset):
    """Least (labels, chords) image under the dihedral group; also the position map."""
    m = len(labels)
    best = None
    for r in range(m):
        for sign in (1, -1):
            perm = [(r + sign * i) % m for i in range(m)]
            inv = {p: i for i, p in enumerate(perm)}
            lab = tuple(labels[p] for p in perm)
            fb = tuple(sorted(tuple(sorted((inv[p], inv[q]))) for p, q in forb))
            key = (lab, fb)
            if best is None or key < best[0]:
                best = (key, perm)
    return best


def _sub_forbidden(positions: list, forb) -> frozenset:
    """Chords of ``forb`` between non-consecutive members of the loop ``positions``."""
    idx = {p: i for i, p in enumerate(positions)}
    m = len(positions)
    out = set()
    for p, q in forb:
        if p in idx and q in idx:
            i, j = sorted((idx[p], idx[q]))
            if j - i not in (1, m - 1):
                out.add((i, j))
    return frozenset(out)


def _children(X: SimplicialComplex, labels: tuple, forb: frozenset):
    """Ways to fill the triangle on loop edge (0, 1).

    Yields ``(w, j, subloops)``; ``j`` is the loop position of the apex or
    ``None`` for a fresh interior vertex.  Each subloop is a list of old
    loop positions (``-1`` for the fresh vertex) with its chord set.
    """
    m = len(labels)
    a, b = labels[0], labels[1]
    for w in X.edge_cofaces.get((min(a, b), max(a, b)), ()):
        for j in range(2, m):
            if labels[j] != w:
                continue
            if j != 2 and (1, j) in forb:
                continue
            if j != m - 1 and (0, j) in forb:
                continue
            subs = []
            for pos in (list(range(1, j + 1)), list(range(j, m)) + [0]):
                if len(pos) >= 3:
                    subs.append((pos, _sub_forbidden(pos, forb)))
            yield w, j, subs
        pos = [0, -1] + list(range(1, m))
        chords = set(_sub_forbidden(pos, forb))
        chords.add((0, 2))
        yield w, None, [(pos, frozenset(chords))]


class _Solver:
    def __init__(self, X: SimplicialComplex):
        self.X = X
        self.exact: dict = {}
        self.lower: dict = {}

    @staticmethod
    def sub_state(labels, pos, chords, w):
        lab = tuple(w if p < 0 else labels[p] for p in pos)
        return lab, chords

    def solve(self, labels: tuple, forb: frozenset, cap: int):
        """Least triangle count filling the loop, or None if above ``cap``."""
        m = len(labels)
        if m < 3:
            return 0
        if m - 2 > cap:
            return None
        key, perm = _canonical(labels, forb)
        if key in self.exact:
            v = self.exact[key]
            return v if v <= cap else None
        if self.lower.get(key, -1) >= cap:
            return None
        clab, cforb = key[0], frozenset(key[1])
        best = None
        limit = cap
        for w, _, subs in _children(self.X, clab, cforb):
            states = [self.sub_state(clab, pos, ch, w) for pos, ch in subs]
            bounds = [max(len(s[0]) - 2, 0) for s in states]
            total = 1
            ok = True
            for i, (lab, ch) in enumerate(states):
                rest = sum(bounds[i + 1:])
                v = self.solve(lab, ch, limit - total - rest)
                if v is None:
                    ok = False
                    break
                total += v
            if ok and total <= limit:
                best = total
                limit = total - 1
                if best == m - 2:
                    break
        if best is None:
            self.lower[key] = max(self.lower.get(key, -1), cap)
            return None
        self.exact[key] = best
        return best


def _solver_for(X: SimplicialComplex) -> _Solver:
    solver = X._cache.get("fill_solver")
    if solver is None:
        solver = X._cache["fill_solver"] = _Solver(X)
    return solver


def minimal_filling_area(X: SimplicialComplex, gamma, area_bound: int = DEFAULT_AREA_CAP) -> int | None:
    """Least number of triangles in a filling of ``gamma``, or None above the bound."""
    cyc = normalize_cycle(X, gamma)
    return _solver_for(X).solve(cyc, frozenset(), area_bound)


def fill_cycle_minimal(X: SimplicialComplex, gamma, area_bound: int = DEFAULT_AREA_CAP) -> SurfaceMap | None:
    """A filling of least area for the cycle ``gamma``, or None if every filling exceeds ``area_bound``.

    Only fillings by non-degenerate triangles are considered, so the
    injective area equals the domain triangle count.  Among minimal
    fillings the first one in search order (apex label ascending, boundary
    apex before interior apex) is returned, which makes the output
    deterministic.
    """
    cyc = normalize_cycle(X, gamma)
    solver = _solver_for(X)
    total = solver.solve(cyc, frozenset(), area_bound)
    if total is None:
        return None

    label = list(cyc)
    edges = {tuple(sorted((i, (i + 1) % len(cyc)))) for i in range(len(cyc))}
    triangles = []

    def chords_of(loop):
        m = len(loop)
        out = set()
        for i in range(m):
            for j in range(i + 2, m):
                if (i, j) != (0, m - 1) and tuple(sorted((loop[i], loop[j]))) in edges:
                    out.add((i, j))
        return frozenset(out)

    def build(loop: list, target: int):
        if len(loop) < 3:
            return
        labels = tuple(label[v] for v in loop)
        forb = chords_of(loop)
        key, perm = _canonical(labels, forb)
        cl = [loop[p] for p in perm]
        clab, cforb = key[0], frozenset(key[1])
        for w, j, subs in _children(X, clab, cforb):
            states = [solver.sub_state(clab, pos, ch, w) for pos, ch in subs]
            vals = []
            budget = target - 1
            for lab, ch in states:
                v = solver.solve(lab, ch, budget)
                if v is None:
                    break
                vals.append(v)
                budget -= v
            if len(vals) != len(states) or 1 + sum(vals) != target:
                continue
            if j is None:
                apex = len(label)
                label.append(w)
            else:
                apex = cl[j]
            tri = (cl[0], cl[1], apex)
            triangles.append(tuple(sorted(tri)))
            for x, y in ((cl[0], cl[1]), (cl[0], apex), (cl[1], apex)):
                edges.add(tuple(sorted((x, y))))
            for (pos, _), v in zip(subs, vals):
                build([apex if p < 0 else cl[p] for p in pos], v)
            return
        raise AssertionError("filling reconstruction lost the optimum")

    build(list(range(len(cyc))), total)
    Y = SimplicialComplex.from_simplices(triangles, len(label), "disc")
    domain = TriangulatedDisc.from_complex(Y, boundary=range(len(cyc)))
    return SurfaceMap(domain, X, tuple(label))
