"""Naive re-implementations used as test oracles.

Nothing here imports package internals beyond the complex's list of
maximal simplices; every routine enumerates by brute force.
"""
from __future__ import annotations

import itertools
from collections import deque


def all_simplices(maximal):
    out = set()
    for m in maximal:
        for r in range(1, len(m) + 1):
            out.update(itertools.combinations(sorted(m), r))
    return out


def naive_closure(S):
    out = set()
    for s in S:
        for r in range(1, len(s) + 1):
            out.update(itertools.combinations(sorted(s), r))
    return out


def naive_star(simplices, S):
    faces = naive_closure(S)
    return {t for t in simplices if any(set(f) <= set(t) for f in faces)}


def naive_link(simplices, S):
    return naive_closure(naive_star(simplices, S)) - naive_star(simplices, naive_closure(S))


def adjacency(simplices, n):
    adj = {v: set() for v in range(n)}
    for s in simplices:
        if len(s) == 2:
            a, b = s
            adj[a].add(b)
            adj[b].add(a)
    return adj


def naive_clique_simplices(simplices, n):
    """Every vertex set that is pairwise adjacent (exponential; small n only)."""
    adj = adjacency(simplices, n)
    verts = sorted({s[0] for s in simplices if len(s) == 1})
    out = set()
    for r in range(1, len(verts) + 1):
        found = False
        for c in itertools.combinations(verts, r):
            if all(b in adj[a] for a, b in itertools.combinations(c, 2)):
                out.add(c)
                found = True
        if not found:
            break
    return out


def bfs(adj, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def all_shortest_paths(adj, u, v):
    """All shortest u-v paths by DFS over simple paths of the right length."""
    d = bfs(adj, u).get(v)
    if d is None:
        return []
    out = []

    def walk(path):
        if len(path) == d + 1:
            if path[-1] == v:
                out.append(tuple(path))
            return
        for y in sorted(adj[path[-1]]):
            if y not in path:
                walk(path + [y])

    walk([u])
    return out


def naive_geodesically_convex(adj, A):
    A = set(A)
    for u, v in itertools.combinations(A, 2):
        for p in all_shortest_paths(adj, u, v):
            if not set(p) <= A:
                return False
    return True


def naive_witness(simplices, members, max_dim=None):
    """Least simplex (by size, then lexicographic) meeting every member."""
    best = None
    for s in simplices:
        if max_dim is not None and len(s) - 1 > max_dim:
            continue
        if all(set(s) & set(m) for m in members):
            key = (len(s), s)
            if best is None or key < best:
                best = key
    return None if best is None else best[1]


def simple_cycles_of_length(adj, L):
    """Each simple cycle of length L once, as a tuple starting at its least vertex."""
    out = set()
    for s in adj:
        def walk(path):
            if len(path) == L:
                if s in adj[path[-1]]:
                    c = path
                    if c[1] < c[-1]:
                        out.add(tuple(c))
                return
            for y in adj[path[-1]]:
                if y > s and y not in path:
                    walk(path + [y])
        walk([s])
    return sorted(out)


def incident_triangles(maximal, n):
    count = [0] * n
    for s in maximal:
        if len(s) == 3:
            for v in s:
                count[v] += 1
    return count
