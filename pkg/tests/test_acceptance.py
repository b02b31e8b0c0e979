"""Acceptance suite: one test per criterion, each timed against its budget.

Every test records a single PASS/FAIL line; ``conftest.py`` prints them
together at the end of the run.  Corpus construction is shared and timed
separately.
"""
import itertools
import random
import time

import pytest

from oracles import (
    adjacency,
    all_simplices,
    naive_closure,
    naive_geodesically_convex,
    naive_link,
    naive_star,
    naive_witness,
)
from systolic_kit.complex import closure, is_k_large, link, star
from systolic_kit.disc import (
    TriangulatedDisc,
    TriangulatedSphere,
    embed_in_hex_plane,
    gauss_bonnet,
    is_flat,
)
from systolic_kit.errors import InvalidInput
from systolic_kit.filling import fill_cycle_minimal
from systolic_kit.gen import corpus, hex_triangle, random_disc, random_sphere, simplex_with_facets
from systolic_kit.helly import (
    ConvexFamily,
    find_witness,
    pentagon_violations,
    theorem_sweep,
    triangle_shape,
)
from systolic_kit.metric import Subcomplex, interval, is_convex, is_geodesically_convex
from systolic_kit.surfaces import check_simple_digon_flat
from systolic_kit.topology import Verdict, is_k_systolic

RESULTS = {}


def record(n, ok, elapsed, limit, detail):
    ok = bool(ok) and elapsed < limit
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s / {limit:g}s  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


@pytest.fixture(scope="module")
def instances():
    t = time.perf_counter()
    pool = corpus()
    RESULTS[0] = f"corpus: {len(pool)} instances built in {time.perf_counter() - t:.2f}s"
    return pool


@pytest.fixture(scope="module")
def certified(instances):
    """``(name, instance, k)`` for corpus instances certified 7- or else 6-systolic."""
    out = []
    for name, inst in instances:
        for k in (7, 6):
            if is_k_systolic(inst.complex, k) is Verdict.TRUE:
                out.append((name, inst, k))
                break
    return out


def _cycles(X, max_len, limit):
    adj = X.adjacency
    out = []
    for L in range(4, max_len + 1):
        for s in range(X.vertex_count):
            stack = [[s]]
            while stack:
                p = stack.pop()
                if len(p) == L:
                    if s in adj[p[-1]] and p[1] < p[-1]:
                        out.append(tuple(p))
                        if len(out) >= limit:
                            return out
                    continue
                for y in sorted(adj[p[-1]], reverse=True):
                    if y > s and y not in p:
                        stack.append(p + [y])
    return out


def test_criterion_01_gauss_bonnet():
    t = time.perf_counter()
    bad = 0
    for seed in range(1000):
        tri = 1 + seed % 40
        D = TriangulatedDisc.from_complex(random_disc(tri, interior_defect=(-3, 3), seed=seed).complex)
        total, six_chi = gauss_bonnet(D)
        bad += total != six_chi
    for seed in range(50):
        S = TriangulatedSphere.from_complex(random_sphere(4 + seed % 30, seed=seed).complex)
        total, six_chi = gauss_bonnet(S)
        bad += total != six_chi
    assert record(1, bad == 0, time.perf_counter() - t, 10, f"1000 discs + 50 spheres, {bad} mismatches")


def test_criterion_02_flatness_oracle(instances):
    t = time.perf_counter()
    checked = flat = bad = 0
    for name, inst in instances:
        X = inst.complex
        if X.dim != 2 or len(X.triangles) > 30:
            continue
        try:
            D = TriangulatedDisc.from_complex(X)
        except InvalidInput:
            continue
        f = is_flat(D)
        checked += 1
        flat += f
        bad += f != (embed_in_hex_plane(D) is not None)
    ok = bad == 0 and checked > 0 and 0 < flat < checked
    assert record(2, ok, time.perf_counter() - t, 60, f"{checked} discs ({flat} flat), {bad} disagreements")


def test_criterion_03_minimal_fillings(certified):
    t = time.perf_counter()
    filled = bad = over_cap = 0
    for name, inst, k in certified:
        X = inst.complex
        for cyc in _cycles(X, 8, 12):
            S = fill_cycle_minimal(X, cyc, area_bound=12)
            if S is None:
                over_cap += 1
                continue
            filled += 1
            D = S.domain
            if D.complex.certificate != "disc" or is_k_systolic(D.complex, k) is not Verdict.TRUE:
                bad += 1
    detail = f"{filled} cycles filled, {bad} non-systolic fillings, {over_cap} over area cap"
    assert record(3, filled >= 200 and bad == 0, time.perf_counter() - t, 300, detail)


def test_criterion_04_digons(certified):
    t = time.perf_counter()
    checked = bad = 0
    for name, inst, k in certified:
        X = inst.complex
        rng = random.Random(name)
        pairs = [(u, v) for u, v in itertools.combinations(range(X.vertex_count), 2)]
        rng.shuffle(pairs)
        found = 0
        for u, v in pairs:
            dag = interval(X, u, v)
            if dag.length < 2 or dag.count() > 200:
                continue
            gs = list(dag.geodesics())
            for g0, g1 in itertools.combinations(gs, 2):
                if set(g0[1:-1]) & set(g1[1:-1]):
                    continue
                checked += 1
                found += 1
                bad += not check_simple_digon_flat(X, g0, g1)
                break
            if found >= 3:
                break
    detail = f"{checked} geodesic pairs, {bad} non-flat fillings"
    assert record(4, checked >= 100 and bad == 0, time.perf_counter() - t, 120, detail)


def _sweep_pool(instances, k):
    return [
        (name, inst)
        for name, inst in instances
        if inst.complex.vertex_count >= 8 and is_k_systolic(inst.complex, k) is Verdict.TRUE
    ]


def test_criterion_05_theorem_A(instances):
    t = time.perf_counter()
    pool = _sweep_pool(instances, 7)
    r = theorem_sweep(pool, "A", per_instance=20, seed=0)
    ok = r["instances"] >= 50 and r["min_families_per_instance"] >= 20 and r["witness_rate"] == 1.0
    detail = (f"{r['instances']} instances, {r['families']} triples, {r['without_common_vertex']} without "
              f"common vertex, rate {r['witness_rate']}, max dim {r['max_witness_dim']}")
    assert record(5, ok, time.perf_counter() - t, 600, detail)


def test_criterion_06_theorem_B(instances):
    t = time.perf_counter()
    pool = _sweep_pool(instances, 6)
    r = theorem_sweep(pool, "B", per_instance=20, seed=0)
    ok = r["instances"] >= 50 and r["min_families_per_instance"] >= 20 and r["witness_rate"] == 1.0
    detail = (f"{r['instances']} instances, {r['families']} quadruples, {r['without_common_vertex']} without "
              f"common vertex, rate {r['witness_rate']}, max dim {r['max_witness_dim']}")
    assert record(6, ok, time.perf_counter() - t, 600, detail)


def test_criterion_07_counterexample():
    t = time.perf_counter()
    inst = hex_triangle(3)
    X = inst.complex
    members = [inst.subcomplexes[k] for k in ("s1", "s2", "s3")]
    pairwise = [sorted(set(a) & set(b)) for a, b in itertools.combinations(members, 2)]
    fam = ConvexFamily.from_vertex_sets(X, members)
    none_found = find_witness(fam) is None and naive_witness(X.simplices, members) is None
    convex = all(fam.convexity().values())
    elapsed = time.perf_counter() - t
    small = hex_triangle(2)
    side2 = find_witness(ConvexFamily.from_vertex_sets(
        small.complex, [small.subcomplexes[k] for k in ("s1", "s2", "s3")]))
    ok = none_found and convex and all(len(p) == 1 for p in pairwise) and side2 is not None
    detail = f"side 3 pairwise {pairwise}, witness none; side 2 witness {side2 and side2.simplex}"
    assert record(7, ok, elapsed, 1, detail)


def test_criterion_08_simplex_with_facets():
    t = time.perf_counter()
    ok = True
    for n in range(1, 5):
        inst = simplex_with_facets(n)
        X = inst.complex
        facets = [set(v) for v in inst.subcomplexes.values()]
        top = set(range(n + 1))
        ok &= tuple(sorted(top)) in X.simplices
        ok &= all(set.intersection(*sub) for sub in itertools.combinations(facets, n))
        ok &= not set.intersection(*facets)
        ok &= all(top & f for f in facets)
        ok &= find_witness(ConvexFamily.from_vertex_sets(X, facets)) is not None
    assert record(8, ok, time.perf_counter() - t, 1, "n = 1..4, top simplex meets every facet")


def test_criterion_09_triangle_shape(certified):
    # Cores are always flat with no interior vertex, but side-2 equilateral
    # cores (area 4) do occur in 7-systolic discs, so this criterion fails.
    t = time.perf_counter()
    checked = bad = with_interior = 0
    areas = {}
    for name, inst, k in certified:
        if k != 7 or inst.complex.vertex_count < 3:
            continue
        X = inst.complex
        rng = random.Random(name)
        for _ in range(4):
            A, B, C = rng.sample(range(X.vertex_count), 3)
            r = triangle_shape(X, A, B, C, area_bound=40)
            checked += 1
            bad += not r["single_simplex"]
            with_interior += r["interior_vertices"] > 0
            a = r.get("core_area") or 0
            areas[a] = areas.get(a, 0) + 1
    detail = (f"{checked} triples, {bad} with a core larger than one simplex, "
              f"{with_interior} cores with interior vertices, core areas {dict(sorted(areas.items()))}")
    assert record(9, checked >= 100 and bad == 0, time.perf_counter() - t, 300, detail)


def test_criterion_10_convexity(certified):
    t = time.perf_counter()
    checked = convex = bad = 0
    for name, inst, k in certified:
        X = inst.complex
        if X.vertex_count > 40:
            continue
        rng = random.Random(name)
        adj = adjacency(X.simplices, X.vertex_count)
        seen = set()
        for _ in range(40):
            # grow a connected vertex set from a random start
            size = rng.randint(1, min(8, X.vertex_count))
            S = {rng.randrange(X.vertex_count)}
            while len(S) < size:
                S.add(rng.choice(sorted(set().union(*(adj[v] for v in S)) - S or S)))
            key = frozenset(S)
            if key in seen:
                continue
            seen.add(key)
            A = Subcomplex.induced(X, S)
            if not A.is_connected():
                continue
            c = is_convex(A)
            checked += 1
            convex += c
            bad += c != is_geodesically_convex(A) or c != naive_geodesically_convex(adj, S)
    detail = f"{checked} subcomplexes ({convex} convex), {bad} disagreements"
    assert record(10, checked >= 500 and bad == 0 and convex > 0, time.perf_counter() - t, 300, detail)


def test_criterion_11_pentagons(instances):
    t = time.perf_counter()
    count = bad = 0
    for name, inst in instances:
        X = inst.complex
        if X.vertex_count > 12 or not is_k_large(X, 6):
            continue
        count += 1
        bad += len(pentagon_violations(X))
    assert record(11, count > 0 and bad == 0, time.perf_counter() - t, 30, f"{count} instances, {bad} bad 5-cycles")


def test_criterion_12_oracle_agreement(instances):
    t = time.perf_counter()
    count = bad = fams = 0
    for name, inst in instances:
        X = inst.complex
        if X.vertex_count > 12:
            continue
        count += 1
        full = all_simplices(X.maximal_simplices)
        bad += set(X.simplices) != full
        simp = sorted(full)
        queries = [[s] for s in simp] + [list(p) for p in itertools.combinations(simp, 2)][:60]
        for S in queries:
            bad += set(closure(X, S)) != naive_closure(S)
            bad += set(star(X, S)) != naive_star(full, S)
            bad += set(link(X, S)) != naive_link(full, S)
        rng = random.Random(name)
        for _ in range(30):
            members = [rng.sample(range(X.vertex_count), rng.randint(1, min(3, X.vertex_count)))
                       for _ in range(rng.randint(2, 4))]
            w = find_witness(ConvexFamily.from_vertex_sets(X, members))
            bad += (None if w is None else w.simplex) != naive_witness(full, members)
            fams += 1
    detail = f"{count} instances, {fams} families, {bad} disagreements"
    assert record(12, count > 0 and bad == 0, time.perf_counter() - t, 30, detail)
