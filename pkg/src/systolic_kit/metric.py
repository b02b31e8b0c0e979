"""Combinatorial distances, geodesic intervals and convexity of subcomplexes."""
from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex, _graph_of, _link_in, simplex_link
from .errors import InvalidInput, NoPath

__all__ = [
    "distance_matrix",
    "distance",
    "Geodesic",
    "IntervalDag",
    "interval",
    "Subcomplex",
    "is_full",
    "is_3_convex",
    "is_locally_3_convex",
    "is_convex",
    "is_geodesically_convex",
    "convex_hull",
    "is_geodesic",
]

UNREACHABLE = -1


def distance_matrix(X: SimplicialComplex) -> np.ndarray:
    """All-pairs BFS distances in the 1-skeleton; ``-1`` marks no path."""
    if "dist" in X._cache:
        return X._cache["dist"]
    n = X.vertex_count
    D = np.full((n, n), UNREACHABLE, dtype=np.int64)
    adj = X.adjacency
    for s in range(n):
        row = D[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if row[w] < 0:
                    row[w] = row[u] + 1
                    queue.append(w)
    D.setflags(write=False)
    X._cache["dist"] = D
    return D


def distance(X: SimplicialComplex, u: int, v: int) -> int:
    d = int(distance_matrix(X)[u, v])
    if d < 0:
        raise NoPath(f"no path between {u} and {v}")
    return d


Geodesic = tuple[int, ...]


def is_geodesic(X: SimplicialComplex, path: Iterable[int]) -> bool:
    path = tuple(path)
    if not path:
        return False
    if any(not X.adjacent(a, b) for a, b in zip(path, path[1:])):
        return False
    return int(distance_matrix(X)[path[0], path[-1]]) == len(path) - 1


@dataclass(frozen=True)
class IntervalDag:
    """All geodesics between two vertices, layered by distance from the source.

    ``preds[x]`` lists the neighbours of ``x`` one layer closer to the
    source; maximal source-to-target paths are exactly the geodesics.
    """

    source: int
    target: int
    layers: tuple[tuple[int, ...], ...]
    preds: dict

    @property
    def length(self) -> int:
        return len(self.layers) - 1

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for layer in self.layers for v in layer)

    def successors(self, x: int) -> list[int]:
        i = self._layer_of(x)
        if i + 1 >= len(self.layers):
            return []
        return [y for y in self.layers[i + 1] if x in self.preds[y]]

    def _layer_of(self, x: int) -> int:
        for i, layer in enumerate(self.layers):
            if x in layer:
                return i
        raise KeyError(x)

    def count(self) -> int:
        ways = {self.source: 1}
        for layer in self.layers[1:]:
            for y in layer:
                ways[y] = sum(ways[p] for p in self.preds[y])
        return ways[self.target]

    def geodesics(self, within: frozenset | None = None) -> Iterator[Geodesic]:
        """Geodesics in lexicographic order, optionally confined to ``within``."""
        succ = {x: [] for layer in self.layers for x in layer}
        for layer in self.layers[1:]:
            for y in layer:
                for p in self.preds[y]:
                    succ[p].append(y)
        for x in succ:
            succ[x].sort()
        if within is not None and (self.source not in within or self.target not in within):
            return
        path = [self.source]

        def walk():
            x = path[-1]
            if x == self.target:
                yield tuple(path)
                return
            for y in succ[x]:
                if within is not None and y not in within:
                    continue
                path.append(y)
                yield from walk()
                path.pop()

        yield from walk()

    def first_geodesic(self, within: frozenset | None = None) -> Geodesic | None:
        return next(self.geodesics(within), None)


def interval(X: SimplicialComplex, u: int, v: int) -> IntervalDag:
    """The geodesic interval between ``u`` and ``v`` as a layered DAG."""
    D = distance_matrix(X)
    d = int(D[u, v])
    if d < 0:
        raise NoPath(f"no path between {u} and {v}")
    on = np.nonzero((D[u] >= 0) & (D[u] + D[v] == d))[0]
    layers: list[list[int]] = [[] for _ in range(d + 1)]
    for x in on:
        layers[int(D[u, x])].append(int(x))
    preds = {u: ()}
    for i in range(1, d + 1):
        prev = set(layers[i - 1])
        for y in layers[i]:
            preds[y] = tuple(sorted(prev & X.adjacency[y]))
    return IntervalDag(u, v, tuple(tuple(sorted(layer)) for layer in layers), preds)


@dataclass(frozen=True)
class Subcomplex:
    """A subcomplex of ``parent`` given by a vertex set.

    By default the subcomplex is the full (induced) one.  ``explicit`` lets
    callers hand in an arbitrary downward-closed simplex list instead, which
    is what :func:`is_full` exists to validate.
    """

    parent: SimplicialComplex
    vertices: frozenset
    explicit: frozenset | None = None

    @classmethod
    def induced(cls, parent: SimplicialComplex, vertices: Iterable[int]) -> Subcomplex:
        vs = frozenset(int(v) for v in vertices)
        if any(v < 0 or v >= parent.vertex_count for v in vs):
            raise InvalidInput("subcomplex vertex outside the parent complex")
        return cls(parent, vs)

    @classmethod
    def from_simplices(cls, parent: SimplicialComplex, simplices: Iterable[Iterable[int]]) -> Subcomplex:
        from .complex import _closure_of

        simp = _closure_of(tuple(sorted(s)) for s in simplices)
        bad = [s for s in simp if s not in parent.simplices]
        if bad:
            raise InvalidInput(f"{bad[0]} is not a simplex of the parent")
        return cls(parent, frozenset(v for s in simp for v in s), simp)

    @property
    def simplices(self) -> frozenset:
        if self.explicit is not None:
            return self.explicit
        return self.parent.induced(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        g = _graph_of(self.simplices)
        g.add_nodes_from(self.vertices)
        import networkx as nx

        return nx.is_connected(g)


def is_full(A: Subcomplex) -> bool:
    """Every parent simplex spanned by vertices of ``A`` lies in ``A``."""
    if A.explicit is None:
        return True
    return A.parent.induced(A.vertices) <= A.explicit


def _midpoints_closed(adj: dict, inside: frozenset) -> bool:
    """No outside vertex is the midpoint of a length-2 geodesic between inside ones."""
    for m, nbrs in adj.items():
        if m in inside:
            continue
        ins = [x for x in nbrs if x in inside]
        for x, y in itertools.combinations(ins, 2):
            if y not in adj[x]:
                return False
    return True


def is_3_convex(A: Subcomplex) -> bool:
    """Full, and contains the middle vertex of each length-2 geodesic between its vertices."""
    if not is_full(A):
        return False
    X = A.parent
    adj = {v: X.adjacency[v] for v in range(X.vertex_count)}
    return _midpoints_closed(adj, A.vertices)


def _is_3_convex_in(sub: frozenset, amb: frozenset) -> bool:
    verts = frozenset(s[0] for s in sub if len(s) == 1)
    for s in amb:
        if verts.issuperset(s) and s not in sub:
            return False
    adj: dict = {}
    for s in amb:
        if len(s) == 1:
            adj.setdefault(s[0], set())
        elif len(s) == 2:
            adj.setdefault(s[0], set()).add(s[1])
            adj.setdefault(s[1], set()).add(s[0])
    return _midpoints_closed(adj, verts)


def is_locally_3_convex(A: Subcomplex) -> bool:
    """``A`` is full and ``lk_A(s)`` is 3-convex in ``lk_X(s)`` for every simplex ``s`` of ``A``."""
    if not is_full(A):
        return False
    simp = A.simplices
    for s in sorted(simp, key=lambda t: (len(t), t)):
        if not _is_3_convex_in(_link_in(simp, [s]), simplex_link(A.parent, s)):
            return False
    return True


def is_convex(A: Subcomplex) -> bool:
    """Connected and locally 3-convex; empty sets and points count as convex."""
    if len(A.vertices) <= 1:
        return is_full(A)
    return A.is_connected() and is_locally_3_convex(A)


def is_geodesically_convex(A: Subcomplex) -> bool:
    """Every geodesic of the parent between two vertices of ``A`` stays in ``A``."""
    X = A.parent
    verts = sorted(A.vertices)
    if len(verts) <= 1:
        return True
    simp = A.simplices
    for a, b in itertools.combinations(verts, 2):
        if X.adjacent(a, b) and (a, b) not in simp:
            return False
    D = distance_matrix(X)
    idx = np.array(verts)
    outside = np.ones(X.vertex_count, dtype=bool)
    outside[idx] = False
    for x in verts:
        dx = D[x, idx]
        ok = dx >= 0
        hit = (D[x][None, :] + D[idx[ok]] == dx[ok][:, None]) & (D[x][None, :] >= 0)
        if (hit[:, outside]).any():
            return False
    return True


def convex_hull(X: SimplicialComplex, seed: Iterable[int]) -> Subcomplex:
    """Least geodesically convex full subcomplex containing ``seed``."""
    S = set(int(v) for v in seed)
    if not S:
        return Subcomplex.induced(X, ())
    D = distance_matrix(X)
    first = next(iter(S))
    if any(D[first, v] < 0 for v in S):
        raise InvalidInput("seed spans several connected components")
    while True:
        idx = np.array(sorted(S))
        grown = np.zeros(X.vertex_count, dtype=bool)
        for x in idx:
            hit = D[x][None, :] + D[idx] == D[x, idx][:, None]
            grown |= hit.any(axis=0) & (D[x] >= 0)
        new = set(np.nonzero(grown)[0].tolist())
        if new <= S:
            return Subcomplex.induced(X, S)
        S |= new
