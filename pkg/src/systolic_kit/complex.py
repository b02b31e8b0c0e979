"""Finite abstract simplicial complexes and their local combinatorics.

A complex is stored by its maximal simplices over dense vertex ids
``0..n-1``.  Everything else (face lattice, 1-skeleton, links) is derived
lazily and cached on the instance, which is otherwise immutable.

Simplices are plain ascending tuples of ints, and sets of simplices are
frozensets of such tuples.  The neighbourhood operators follow the usual
conventions:

* ``closure(X, S)`` -- every face of every member of ``S``;
* ``star(X, S)`` -- every simplex containing a (nonempty) face of a member;
* ``link(X, S)`` -- ``closure(star(S)) - star(closure(S))``, literally.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .errors import InvalidInput

Simplex = tuple[int, ...]
SimplexSet = frozenset

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "as_simplex",
    "faces",
    "closure",
    "star",
    "link",
    "simplex_link",
    "is_flag",
    "clique_complex",
    "induced_cycles_up_to",
    "is_k_large",
    "is_locally_k_large",
]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Normalise a vertex collection to an ascending tuple."""
    s = tuple(sorted(vertices))
    if not s:
        raise InvalidInput("a simplex must have at least one vertex")
    if len(set(s)) != len(s):
        raise InvalidInput(f"repeated vertex in simplex {s}")
    return s


def faces(s: Simplex) -> list[Simplex]:
    """All nonempty faces of ``s`` (including ``s``)."""
    out = []
    for r in range(1, len(s) + 1):
        out.extend(itertools.combinations(s, r))
    return out


def _reduce_to_maximal(simplices: Iterable[Simplex]) -> list[Simplex]:
    by_size = sorted(set(simplices), key=lambda s: (-len(s), s))
    kept: list[Simplex] = []
    kept_sets: list[frozenset] = []
    for s in by_size:
        fs = frozenset(s)
        if any(fs <= k for k in kept_sets):
            continue
        kept.append(s)
        kept_sets.append(fs)
    return sorted(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite simplicial complex given by its maximal simplices.

    ``certificate`` optionally records how the complex was built
    (``"disc"``, ``"ball"`` or ``"cone"``); it is a claim that
    :func:`systolic_kit.topology.is_simply_connected` re-verifies before
    trusting it.
    """

    vertex_count: int
    maximal_simplices: tuple[Simplex, ...]
    certificate: str | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InvalidInput("vertex_count must be non-negative")
        norm = tuple(sorted(as_simplex(s) for s in self.maximal_simplices))
        object.__setattr__(self, "maximal_simplices", norm)
        covered = set()
        for s in norm:
            if s[0] < 0 or s[-1] >= n:
                raise InvalidInput(f"simplex {s} uses a vertex outside 0..{n - 1}")
            covered.update(s)
        if len(covered) != n:
            missing = sorted(set(range(n)) - covered)
            raise InvalidInput(f"vertices {missing[:8]} lie in no maximal simplex")
        if _reduce_to_maximal(norm) != list(norm):
            raise InvalidInput("maximal_simplices contains a face of another listed simplex")
        if self.certificate not in (None, "disc", "ball", "cone"):
            raise InvalidInput(f"unknown certificate {self.certificate!r}")

    @classmethod
    def from_simplices(
        cls,
        simplices: Iterable[Iterable[int]],
        vertex_count: int | None = None,
        certificate: str | None = None,
    ) -> SimplicialComplex:
        """Build a complex from any generating family of simplices.

        Non-maximal members are dropped and vertices ``< vertex_count``
        not covered by any simplex become isolated 0-simplices.
        """
        gen = [as_simplex(s) for s in simplices]
        if vertex_count is None:
            vertex_count = 1 + max((s[-1] for s in gen), default=-1)
        covered = {v for s in gen for v in s}
        gen.extend((v,) for v in range(vertex_count) if v not in covered)
        return cls(vertex_count, tuple(_reduce_to_maximal(gen)), certificate)

    def with_certificate(self, certificate: str | None) -> SimplicialComplex:
        return SimplicialComplex(self.vertex_count, self.maximal_simplices, certificate)

    # -- derived structure -------------------------------------------------

    @cached_property
    def simplices(self) -> frozenset:
        out = set()
        for m in self.maximal_simplices:
            out.update(faces(m))
        return frozenset(out)

    @cached_property
    def ordered_simplices(self) -> list[Simplex]:
        """All simplices, by dimension then lexicographically."""
        return sorted(self.simplices, key=lambda s: (len(s), s))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        nbrs: list[set] = [set() for _ in range(self.vertex_count)]
        for m in self.maximal_simplices:
            for a, b in itertools.combinations(m, 2):
                nbrs[a].add(b)
                nbrs[b].add(a)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def edges(self) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == 2)

    @cached_property
    def triangles(self) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == 3)

    @cached_property
    def edge_cofaces(self) -> dict[Simplex, tuple[int, ...]]:
        """For each edge, the sorted vertices spanning a 2-simplex with it."""
        out: dict[Simplex, set] = {e: set() for e in self.edges}
        for t in self.triangles:
            a, b, c = t
            out[(a, b)].add(c)
            out[(a, c)].add(b)
            out[(b, c)].add(a)
        return {e: tuple(sorted(v)) for e, v in out.items()}

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.maximal_simplices), default=0) - 1

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self.simplices

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def components(self) -> list[frozenset]:
        return sorted(
            (frozenset(c) for c in nx.connected_components(self.graph())), key=min
        )

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector()))

    def induced(self, vertices: Iterable[int]) -> frozenset:
        """Simplex set of the full subcomplex spanned by ``vertices``."""
        vs = frozenset(vertices)
        return frozenset(s for s in self.simplices if vs.issuperset(s))


# -- neighbourhood operators on simplex sets -------------------------------


def _check_members(X: SimplicialComplex, S) -> frozenset:
    S = frozenset(tuple(sorted(s)) for s in S)
    for s in S:
        if s not in X.simplices:
            raise InvalidInput(f"{s} is not a simplex of the complex")
    return S


def _closure_of(S: Iterable[Simplex]) -> frozenset:
    out = set()
    for s in S:
        out.update(faces(s))
    return frozenset(out)


def _star_in(simplices: Iterable[Simplex], S: Iterable[Simplex]) -> frozenset:
    targets = [frozenset(f) for f in _closure_of(S)]
    return frozenset(s for s in simplices if any(t.issubset(s) for t in targets))


def _link_in(simplices: frozenset, S: Iterable[Simplex]) -> frozenset:
    S = list(S)
    return _closure_of(_star_in(simplices, S)) - _star_in(simplices, _closure_of(S))


def closure(X: SimplicialComplex, S) -> frozenset:
    """Smallest subcomplex of ``X`` containing every simplex of ``S``."""
    return _closure_of(_check_members(X, S))


def star(X: SimplicialComplex, S) -> frozenset:
    """Simplices of ``X`` containing some nonempty face of a member of ``S``."""
    return _star_in(X.simplices, _check_members(X, S))


def link(X: SimplicialComplex, S) -> frozenset:
    """``closure(star(S)) - star(closure(S))`` inside ``X``."""
    return _link_in(X.simplices, _check_members(X, S))


def simplex_link(X: SimplicialComplex, s: Simplex) -> frozenset:
    """Cached link of a single simplex."""
    cache = X._cache.setdefault("links", {})
    s = tuple(sorted(s))
    if s not in cache:
        cache[s] = link(X, [s])
    return cache[s]


# -- flagness and cycles ---------------------------------------------------


def _graph_of(simplices: Iterable[Simplex]) -> nx.Graph:
    g = nx.Graph()
    for s in simplices:
        if len(s) == 1:
            g.add_node(s[0])
        elif len(s) == 2:
            g.add_edge(*s)
    return g


def _is_flag_simplices(simplices: frozenset) -> bool:
    g = _graph_of(simplices)
    return all(tuple(sorted(c)) in simplices for c in nx.find_cliques(g))


def is_flag(X: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton spans a simplex."""
    if "flag" not in X._cache:
        X._cache["flag"] = _is_flag_simplices(X.simplices)
    return X._cache["flag"]


def clique_complex(X: SimplicialComplex) -> SimplicialComplex:
    """Flag complex of the 1-skeleton of ``X``."""
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(X.graph())]
    return SimplicialComplex.from_simplices(cliques, X.vertex_count)


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    rev = [rot[0]] + rot[1:][::-1]
    return tuple(min(rot, rev))


def _induced_cycles(g: nx.Graph, max_len: int) -> list[tuple[int, ...]]:
    found = set()
    for c in nx.chordless_cycles(g, length_bound=max_len):
        if len(c) > 3:
            found.add(_canonical_cycle(list(c)))
    return sorted(found, key=lambda c: (len(c), c))


def induced_cycles_up_to(X: SimplicialComplex, max_len: int) -> list[tuple[int, ...]]:
    """Chordless cycles of length ``4..max_len``, one per rotation/reflection class."""
    if max_len < 4:
        raise InvalidInput("max_len must be at least 4")
    return _induced_cycles(X.graph(), max_len)


def _is_k_large_simplices(simplices: frozenset, k: int) -> bool:
    if not _is_flag_simplices(simplices):
        return False
    if k <= 4:
        return True
    return not _induced_cycles(_graph_of(simplices), k - 1)


def is_k_large(X: SimplicialComplex, k: int) -> bool:
    """Flag, and every cycle of length ``3 < |c| < k`` has a diagonal."""
    if k < 4:
        raise InvalidInput("k must be at least 4")
    return _is_k_large_simplices(X.simplices, k)


def is_locally_k_large(X: SimplicialComplex, k: int, vertices_only: bool = False) -> bool:
    """Every simplex link (or only every vertex link) is ``k``-large."""
    if k < 4:
        raise InvalidInput("k must be at least 4")
    key = ("locally_large", k, vertices_only)
    if key not in X._cache:
        pool = [(v,) for v in range(X.vertex_count)] if vertices_only else X.ordered_simplices
        X._cache[key] = all(
            _is_k_large_simplices(simplex_link(X, s), k) for s in pool
        )
    return X._cache[key]
