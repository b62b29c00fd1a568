from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import treewidth_bruteforce

from prodim.generators import random_graph, random_partial_ktree
from prodim.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    induced_subgraph,
    path_graph,
)
from prodim.treedecomp import (
    InvalidInput,
    TooLarge,
    TreeDecomposition,
    decompose_exact,
    decompose_heuristic,
    find_split_bag,
    from_elimination_order,
    min_fill_order,
    minor_min_width,
    normalize,
    restrict,
    validate,
)


def td(bags, tree, **kw):
    return TreeDecomposition({i: frozenset(b) for i, b in enumerate(bags)}, frozenset(tree), **kw)


def test_validate_accepts_path_decomposition():
    assert validate(path_graph(4), td([{0, 1}, {1, 2}, {2, 3}], [(0, 1), (1, 2)])).valid


@pytest.mark.parametrize(
    "bags, tree, fragment",
    [
        ([{0, 1}, {2, 3}], [(0, 1)], "edge (1, 2)"),
        ([{0, 1}, {1, 2}], [(0, 1)], "vertex 3"),
        ([{0, 1}, {2, 3}, {1, 2}], [(0, 1), (1, 2)], "not connected"),
        ([{0, 1}, {1, 2}, {2, 3}], [(0, 1)], "not a tree"),
        ([{0, 1, 9}, {1, 2}, {2, 3}], [(0, 1), (1, 2)], "unknown vertices"),
    ],
)
def test_validate_reports(bags, tree, fragment):
    rep = validate(path_graph(4), td(bags, tree))
    assert not rep.valid
    assert any(fragment in v for v in rep.violations)


def test_validate_normalized_claims():
    g = path_graph(2)
    ok = td([{0}, {0, 1}], [(0, 1)], root=0, normalized=True)
    assert validate(g, ok).valid
    bad = td([{0, 1}], [], root=0, normalized=True)
    assert not validate(g, bad).valid


@pytest.mark.parametrize("seed", range(40))
def test_exact_matches_oracle(seed):
    g = random_graph(8, 0.25 + 0.015 * seed, seed)
    d = decompose_exact(g)
    assert validate(g, d).valid
    assert d.width == treewidth_bruteforce(g)


def test_exact_known_values():
    assert decompose_exact(cycle_graph(10)).width == 2
    assert decompose_exact(complete_graph(6)).width == 5
    assert decompose_exact(path_graph(12)).width == 1
    assert decompose_exact(empty_graph(4)).width == 0
    with pytest.raises(TooLarge):
        decompose_exact(path_graph(30))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_exact_on_partial_ktrees(k):
    for seed in range(5):
        g = random_partial_ktree(22, k, seed)
        assert decompose_exact(g).width <= k


def test_lower_bound_below_width():
    for seed in range(20):
        g = random_graph(9, 0.4, seed)
        assert minor_min_width(g) <= treewidth_bruteforce(g)


@pytest.mark.parametrize("seed", range(20))
def test_heuristic_valid(seed):
    g = random_partial_ktree(80, 1 + seed % 3, seed)
    d = decompose_heuristic(g)
    assert validate(g, d).valid
    assert sorted(min_fill_order(g)) == list(g.vertices)


def test_elimination_order_width():
    g = cycle_graph(6)
    assert from_elimination_order(g, list(range(6))).width == 2


def check_normalized(g, d):
    n = normalize(g, d)
    assert n.normalized and validate(g, n).valid
    assert n.width == d.width
    return n


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(1, 3), st.integers(0, 10**6))
def test_normalize_properties(n, k, seed):
    g = random_partial_ktree(n, k, seed)
    check_normalized(g, decompose_heuristic(g))


def test_normalize_disconnected_and_edgeless():
    g = Graph.from_edges(6, [(0, 1), (3, 4)])
    check_normalized(g, decompose_heuristic(g))
    check_normalized(empty_graph(3), decompose_heuristic(empty_graph(3)))


def test_normalize_rejects_invalid():
    with pytest.raises(InvalidInput):
        normalize(path_graph(3), td([{0, 1}], []))


def test_restrict():
    g = random_partial_ktree(40, 2, 7)
    d = decompose_heuristic(g)
    keep = set(range(0, 40, 3))
    r = restrict(g, d, keep)
    assert validate(induced_subgraph(g, keep), r).valid
    assert r.width <= d.width


def split_ok(g, ntd, s):
    cap = (g.n - len(s.bag) + 1) / 2
    union = set().union(*s.parts) if s.parts else set()
    assert union == set(g.vertices) - s.bag
    assert sum(map(len, s.parts)) == len(union)
    assert 1 <= len(s.parts) <= 3
    assert all(len(p) <= cap for p in s.parts)
    for a, b in combinations(s.parts, 2):
        assert not any(g.has_edge(u, w) for u in a for w in b)
    assert s.bag == ntd.bags[s.l]


@settings(max_examples=80, deadline=None)
@given(st.integers(5, 120), st.integers(1, 3), st.integers(0, 10**6))
def test_split_bag_cap(n, k, seed):
    g = random_partial_ktree(n, k, seed)
    ntd = normalize(g, decompose_heuristic(g))
    split_ok(g, ntd, find_split_bag(g, ntd))


def test_split_bag_needs_normalized():
    g = path_graph(6)
    with pytest.raises(InvalidInput):
        find_split_bag(g, decompose_heuristic(g))
