"""End-to-end acceptance checks, one test per criterion.

Each test collects every failure before asserting, records a one-line
verdict that the terminal summary prints, and echoes it to stdout (visible
with ``pytest -s`` or when the file is run directly).
"""

import math
import statistics
import time
from itertools import combinations

import pytest
from conftest import ACCEPTANCE
from oracles import isomorphism_classes, pdim_canonical

from prodim.degenerate import DegenerateParams, encode_degenerate
from prodim.encoding import Encoding, is_valid, is_well_begun, verify_encoding
from prodim.exact import SearchBudget, pdim_exact
from prodim.forest import (
    DEFAULT_EPSILON,
    SplitKind,
    base_case_encode,
    encode_forest,
    find_split_vertex,
)
from prodim.generators import random_forest, random_graph, random_k_degenerate, random_partial_ktree
from prodim.graph import (
    Graph,
    complete_graph,
    disjoint_cliques,
    empty_graph,
    induced_subgraph,
    path_graph,
)
from prodim.latin import BadOrder, choose_ols_order, encode_triple_clique, mols, mols_problems
from prodim.treedecomp import decompose_heuristic, find_split_bag, normalize, validate
from prodim.treewidth import encode_treewidth


def report(num, failures, detail):
    ok = not failures
    line = detail if ok else f"{detail}; {len(failures)} failure(s), first: {failures[0]}"
    ACCEPTANCE[num] = (ok, line)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {line}")
    assert ok, line


def test_criterion_1_base_table():
    table = [
        (Graph([4]), {4: (0, 0, 4)}),
        (Graph([2, 5]), {2: (0, 0, 2), 5: (0, 0, 5)}),
        (Graph([2, 5], [(2, 5)]), {2: (0, 0, 2), 5: (1, 1, 5)}),
        (Graph([1, 2, 3]), {1: (0, 0, 1), 2: (0, 0, 2), 3: (0, 0, 3)}),
        (Graph([1, 2, 3], [(1, 3)]), {1: (0, 0, 1), 2: (0, 1, 2), 3: (1, 1, 3)}),
        (Graph([1, 2, 3], [(1, 2), (2, 3)]), {1: (0, 0, 1), 2: (1, 1, 2), 3: (0, 0, 3)}),
    ]
    failures = []
    for g, codes in table:
        e = base_case_encode(g)
        if e.codes != codes:
            failures.append(f"{sorted(g.edges)}: got {e.codes}")
        if not (is_valid(g, e) and is_well_begun(g, e, 2)):
            failures.append(f"{sorted(g.edges)}: not a well-begun encoding")
        if any(code[2] != v for v, code in e.codes.items()):
            failures.append(f"{sorted(g.edges)}: third coordinate is not the vertex id")
    report(1, failures, "six forests on <= 3 vertices reproduce the fixed table")


def test_criterion_2_path_dimensions():
    failures = []
    timings = {}
    for n, want in ((4, 2), (5, 2), (9, 3)):
        t0 = time.perf_counter()
        l, w = pdim_exact(path_graph(n), SearchBudget(deadline_ms=60_000))
        timings[n] = time.perf_counter() - t0
        if l != want or not is_valid(path_graph(n), w):
            failures.append(f"P_{n}: got {l}, expected {want}")
    if timings[9] > 60:
        failures.append(f"P_9 took {timings[9]:.1f}s")
    report(2, failures, f"P_4=2, P_5=2, P_9=3 (P_9 in {timings[9] * 1000:.0f} ms)")


def test_criterion_3_forest_bound():
    failures = []
    worst = {}
    slowest = 0.0
    for n in (10, 100, 1000, 10_000):
        bound = 1.441 * math.log2(n) + 3
        for seed in range(20):
            t = random_forest(n, seed)
            t0 = time.perf_counter()
            e = encode_forest(t)
            dt = time.perf_counter() - t0
            if n == 10_000:
                slowest = max(slowest, dt)
                if dt > 1.0:
                    failures.append(f"n={n} seed={seed}: {dt:.2f}s")
            if not is_valid(t, e):
                failures.append(f"n={n} seed={seed}: invalid")
            if e.length > bound:
                failures.append(f"n={n} seed={seed}: length {e.length} > {bound:.2f}")
            worst[n] = max(worst.get(n, 0), e.length)
    detail = ", ".join(f"n={n} max {worst[n]} <= {1.441 * math.log2(n) + 3:.2f}" for n in worst)
    report(3, failures, f"{detail}; slowest 10k forest {slowest:.2f}s")


def test_criterion_4_treewidth_bound():
    failures = []
    worst = {}
    uncertified = 0
    slowest = 0.0
    for t in (1, 2, 3):
        for n in (16, 64, 256):
            for seed in range(10):
                g = random_partial_ktree(n, t, seed)
                t0 = time.perf_counter()
                r = encode_treewidth(g)
                dt = time.perf_counter() - t0
                if n == 256:
                    slowest = max(slowest, dt)
                    if dt > 30:
                        failures.append(f"t={t} n={n} seed={seed}: {dt:.1f}s")
                if not is_valid(g, r.encoding):
                    failures.append(f"t={t} n={n} seed={seed}: invalid")
                if not r.bound_certified:
                    uncertified += 1
                    continue
                if r.dimension > (r.width + 2) * (math.log2(n) + 1):
                    failures.append(f"t={t} n={n} seed={seed}: {r.dimension} over the width-{r.width} bound")
                # also against the generating width, which can only be tighter
                if r.dimension > (t + 2) * (math.log2(n) + 1):
                    failures.append(f"t={t} n={n} seed={seed}: {r.dimension} over the t={t} bound")
                key = (t, n)
                worst[key] = max(worst.get(key, 0), r.dimension / ((t + 2) * (math.log2(n) + 1)))
    ratio = max(worst.values())
    report(
        4,
        failures,
        f"90 instances valid, max length/bound {ratio:.2f}, {uncertified} uncertified, "
        f"slowest n=256 {slowest:.2f}s",
    )


def test_criterion_5_degenerate_bound():
    failures = []
    retries = []
    slowest = 0.0
    for k in (1, 2, 3):
        for n in (64, 256, 1024):
            want = math.ceil(8.317 * k * math.log2(n)) + 1
            for seed in range(20):
                g = random_k_degenerate(n, k, seed)
                t0 = time.perf_counter()
                r = encode_degenerate(g, DegenerateParams(k=k, seed=seed))
                dt = time.perf_counter() - t0
                retries.append(r.retries)
                if n == 1024:
                    slowest = max(slowest, dt)
                    if dt > 5:
                        failures.append(f"k={k} n={n} seed={seed}: {dt:.2f}s")
                if r.dimension != want:
                    failures.append(f"k={k} n={n} seed={seed}: length {r.dimension} != {want}")
                if not verify_encoding(g, r.encoding, cap=0).valid:
                    failures.append(f"k={k} n={n} seed={seed}: invalid")
    med = statistics.median(retries)
    if med > 2:
        failures.append(f"median retries {med}")
    report(
        5,
        failures,
        f"180 instances exact length, median retries {med}, max {max(retries)}, slowest n=1024 {slowest:.2f}s",
    )


def test_criterion_6_mols_suite():
    failures = []
    orders = [m for m in range(1, 65) if m >= 3 and m % 4 != 2]
    for m in orders:
        problems = mols_problems(mols(m))
        a, b = mols(m).a.cells.tolist(), mols(m).b.cells.tolist()
        if len({(a[i][j], b[i][j]) for i in range(m) for j in range(m)}) != m * m:
            problems.append("fewer than m^2 ordered pairs")
        if problems:
            failures.append(f"order {m}: {problems}")
    for m in [2] + list(range(6, 65, 4)):
        try:
            mols(m)
            failures.append(f"order {m} was not rejected")
        except BadOrder:
            pass
    for c, want in ((2, 3), (6, 7), (10, 11)):
        if choose_ols_order(c) != want:
            failures.append(f"choose_ols_order({c}) = {choose_ols_order(c)}")
    for t in (3, 4, 5, 7, 8, 9, 12):
        code = encode_triple_clique(t)
        e = Encoding(t, {i * t + j: code.word(i, j) for i in range(3) for j in range(t)})
        if not is_valid(disjoint_cliques(3, t), e):
            failures.append(f"3K_{t} code invalid")
    report(6, failures, f"{len(orders)} constructible orders sound, 2 mod 4 rejected and bumped, 3K_t codes valid")


def _applicable(g):
    out = {"treewidth": encode_treewidth(g).encoding, "degenerate": encode_degenerate(g).encoding}
    if g.is_forest():
        out["forest"] = encode_forest(g)
    return out


def test_criterion_7_oracle_cross_validation():
    failures = []
    classes = isomorphism_classes(4)
    graphs = [Graph.from_edges(n, edges) for n, edges in classes]
    graphs += [random_graph(5, 0.2 + 0.6 * (i % 10) / 9, 500 + i) for i in range(200)]
    # all 34 classes on exactly five vertices as well
    graphs += [Graph.from_edges(n, edges) for n, edges in isomorphism_classes(5) if n == 5]
    for g in graphs:
        form = (g.n, tuple(sorted(g.edges)))
        l, w = pdim_exact(g)
        if l != pdim_canonical(form):
            failures.append(f"{form}: exact {l} != brute force {pdim_canonical(form)}")
        for v in g.vertices:
            if g.n > 1 and pdim_exact(induced_subgraph(g, set(g.vertices) - {v}))[0] > l:
                failures.append(f"{form}: deleting {v} raises the dimension")
        for name, e in _applicable(g).items():
            if not is_valid(g, e) or e.length < l:
                failures.append(f"{form}: {name} gave length {e.length} vs optimum {l}")
    for n in range(2, 8):
        if pdim_exact(complete_graph(n))[0] != 1:
            failures.append(f"K_{n} not 1")
        if pdim_exact(empty_graph(n))[0] != 2:
            failures.append(f"{n}K_1 not 2")
    report(
        7,
        failures,
        f"{len(classes)} classes on <= 4 vertices, 34 on 5, 200 random 5-vertex graphs agree with brute force",
    )


def _is_balanced_split(t, res):
    parts = res.parts
    if set().union(*parts) != set(t.vertices) - {res.v} or sum(map(len, parts)) != t.n - 1:
        return False
    if any(t.has_edge(u, w) for a, b in combinations(parts, 2) for u in a for w in b):
        return False
    frac = 0.5 + res.epsilon if res.kind is SplitKind.TWO else 0.5 - res.epsilon
    return len(parts) == res.kind.value and all(len(p) <= frac * t.n + 1e-9 for p in parts)


def test_criterion_8_split_totality():
    failures = []
    for i in range(1000):
        t = random_forest(1 + i % 200, 10_000 + i, attach=0.9)
        for eps in (0, 0.05, DEFAULT_EPSILON, 0.2):
            if not _is_balanced_split(t, find_split_vertex(t, eps)):
                failures.append(f"forest {i} eps={eps}")
    for i in range(500):
        n, k = 5 + i % 120, 1 + i % 3
        g = random_partial_ktree(n, k, 20_000 + i)
        d = decompose_heuristic(g)
        ntd = normalize(g, d)
        if not (ntd.normalized and validate(g, ntd).valid and ntd.width == d.width):
            failures.append(f"partial {k}-tree {i}: bad normalization")
            continue
        s = find_split_bag(g, ntd)
        cap = (n - len(s.bag) + 1) / 2
        if len(s.parts) > 3 or any(len(p) > cap for p in s.parts):
            failures.append(f"partial {k}-tree {i}: parts {[len(p) for p in s.parts]} cap {cap}")
        if set().union(*s.parts) != set(g.vertices) - s.bag:
            failures.append(f"partial {k}-tree {i}: parts do not cover")
    report(8, failures, "1000 forests x 4 eps split, 500 partial k-trees split and normalize")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
