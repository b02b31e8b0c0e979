"""Simple connectivity and the systolicity predicate.

Simple connectivity is undecidable in general, so the answer is three-valued.
A generator-supplied certificate is re-checked and trusted; a nonzero
``H_1(X; Z)`` refutes; a bounded Tietze reduction of the edge-path group
presentation proves.  Anything else is reported as unknown.
"""
from __future__ import annotations

import enum
from collections import deque

from .complex import SimplicialComplex, is_locally_k_large
from .errors import InvalidInput

__all__ = [
    "Verdict",
    "first_homology",
    "check_certificate",
    "trivialize_edge_path_group",
    "is_simply_connected",
    "is_k_systolic",
]


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> Verdict:
        return cls.TRUE if flag else cls.FALSE


def _spanning_tree_edges(X: SimplicialComplex) -> set:
    tree = set()
    seen = [False] * X.vertex_count
    for root in range(X.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(X.adjacency[u]):
                if not seen[w]:
                    seen[w] = True
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    return tree


def _presentation(X: SimplicialComplex):
    """Generators (non-tree edges) and triangle relators as signed words."""
    tree = _spanning_tree_edges(X)
    gens = [e for e in X.edges if e not in tree]
    index = {e: i + 1 for i, e in enumerate(gens)}

    def letter(u, v):
        if u < v:
            g = index.get((u, v))
            return None if g is None else g
        g = index.get((v, u))
        return None if g is None else -g

    relators = []
    for a, b, c in X.triangles:
        word = [x for x in (letter(a, b), letter(b, c), letter(c, a)) if x is not None]
        relators.append(word)
    return gens, relators


def first_homology(X: SimplicialComplex) -> tuple[int, bool]:
    """Return ``(betti_1, trivial)`` for integral first homology.

    ``trivial`` is true iff ``H_1(X; Z) = 0`` (rank zero and no torsion).
    Works by integer row reduction of the triangle relation matrix over
    the non-tree edges: the relation lattice is all of ``Z^g`` iff every
    column acquires a unit pivot.
    """
    gens, relators = _presentation(X)
    g = len(gens)
    rows = []
    for word in relators:
        row: dict[int, int] = {}
        for x in word:
            row[abs(x) - 1] = row.get(abs(x) - 1, 0) + (1 if x > 0 else -1)
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)

    pivots = []
    pool = rows
    for col in range(g):
        active = [r for r in pool if r.get(col)]
        rest = [r for r in pool if not r.get(col)]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                for c, v in p.items():
                    nv = r.get(c, 0) - q * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
                (nxt if r.get(col) else rest).append(r)
            active = nxt
        if active:
            pivots.append(abs(active[0][col]))
        pool = rest
    betti = g - len(pivots)
    return betti, betti == 0 and all(p == 1 for p in pivots)


def _free_reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def trivialize_edge_path_group(
    X: SimplicialComplex, budget: int = 10_000, max_word: int = 12
) -> bool | None:
    """Try to kill every generator of the edge-path group by Tietze moves.

    Returns True when the presentation collapses to the trivial group and
    None when the budget (number of eliminations) runs out or no move
    applies.  Never returns False: failure to simplify proves nothing.
    """
    gens, relators = _presentation(X)
    alive = set(range(1, len(gens) + 1))
    rels = [_free_reduce(w) for w in relators]
    steps = 0
    while alive:
        if steps >= budget:
            return None
        target = None
        for w in sorted((w for w in rels if w), key=len):
            counts: dict[int, int] = {}
            for x in w:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            single = [g for g, c in counts.items() if c == 1]
            if single:
                target = (w, min(single))
                break
        if target is None:
            return None
        w, g = target
        i = next(i for i, x in enumerate(w) if abs(x) == g)
        # w = u g^e v = 1  =>  g = (v u)^(-e) after rotating g to the front
        rot = w[i:] + w[:i]
        e = 1 if rot[0] > 0 else -1
        rest = rot[1:]
        repl = [-x for x in reversed(rest)] if e == 1 else list(rest)
        new_rels = []
        for r in rels:
            out = []
            for x in r:
                if abs(x) == g:
                    out.extend(repl if x > 0 else [-y for y in reversed(repl)])
                else:
                    out.append(x)
            out = _free_reduce(out)
            if len(out) > max_word:
                return None
            new_rels.append(out)
        rels = new_rels
        alive.discard(g)
        steps += 1
    return True


def check_certificate(X: SimplicialComplex) -> bool:
    """Re-verify the structural claim behind ``X.certificate``."""
    cert = X.certificate
    if cert is None:
        return False
    if cert == "cone":
        common = set(range(X.vertex_count))
        for m in X.maximal_simplices:
            common &= set(m)
        return bool(common)
    if cert == "disc":
        from .disc import TriangulatedDisc

        try:
            TriangulatedDisc.from_complex(X)
        except InvalidInput:
            return False
        return True
    if cert == "ball":
        return _looks_like_ball(X)
    return False


def _looks_like_ball(X: SimplicialComplex) -> bool:
    from .disc import TriangulatedSphere

    if X.dim != 3 or any(len(m) != 4 for m in X.maximal_simplices):
        return False
    if not X.is_connected() or X.euler_characteristic() != 1:
        return False
    count: dict = {}
    for t in X.maximal_simplices:
        for i in range(4):
            f = t[:i] + t[i + 1:]
            count[f] = count.get(f, 0) + 1
    if any(c > 2 for c in count.values()):
        return False
    boundary = [f for f, c in count.items() if c == 1]
    verts = sorted({v for f in boundary for v in f})
    relabel = {v: i for i, v in enumerate(verts)}
    try:
        TriangulatedSphere.from_complex(
            SimplicialComplex.from_simplices([[relabel[v] for v in f] for f in boundary])
        )
    except InvalidInput:
        return False
    return True


def is_simply_connected(X: SimplicialComplex, budget: int = 10_000) -> Verdict:
    """Three-valued simple-connectivity test for a connected complex."""
    if not X.is_connected():
        raise InvalidInput("simple connectivity is only defined here for connected complexes")
    if check_certificate(X):
        return Verdict.TRUE
    _, trivial = first_homology(X)
    if not trivial:
        return Verdict.FALSE
    if trivialize_edge_path_group(X, budget=budget):
        return Verdict.TRUE
    return Verdict.UNKNOWN


def is_k_systolic(X: SimplicialComplex, k: int, budget: int = 10_000) -> Verdict:
    """Connected, simply connected and locally ``k``-large."""
    if X.vertex_count == 0 or not X.is_connected():
        return Verdict.FALSE
    if not is_locally_k_large(X, k):
        return Verdict.FALSE
    return is_simply_connected(X, budget=budget)
