from itertools import combinations

import pytest
from hypothesis import given, settings

from ccfcanon.clique_tree import (
    CliqueTree,
    MaxCliqueSet,
    build_clique_tree,
    clique_path,
    enumerate_max_cliques,
    is_fork_clique,
    is_spanning_triple,
    is_star_clique,
    leaves,
    root_at,
    spanned_clique,
    twin_classes,
    validate_clique_tree,
)
from ccfcanon.errors import StructuralError
from ccfcanon.graph_core import Graph, brute_force_max_cliques, is_connected

from fixtures import C4, FORK, FORK_CLIQUES, K3, P3, U, V, W, A1
from strategies import class_graphs, relabeled

P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def _all_clique_trees(g, cliques):
    """Every spanning tree on the cliques whose vertex-sets M_v are connected (oracle)."""
    k = len(cliques)
    sets = [set(c) for c in cliques]
    candidates = [(a, b) for a, b in combinations(range(k), 2) if sets[a] & sets[b]]
    found = []
    for edges in combinations(candidates, k - 1):
        adj = {a: set() for a in range(k)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)

        def connected(ids):
            ids = set(ids)
            start = next(iter(ids))
            seen, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for y in adj[x] & ids:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            return seen == ids

        if connected(range(k)) and all(
            connected([i for i in range(k) if v in sets[i]]) for v in range(g.n)
        ):
            found.append(frozenset(edges))
    return found


def _id(cliques, c):
    return cliques.index(tuple(sorted(c)))


def fork_tree():
    return build_clique_tree(FORK)


class TestSpanningTriples:
    def test_triangle(self):
        assert is_spanning_triple(K3, (0, 1, 2))

    def test_path_center_repeated(self):
        assert not is_spanning_triple(P3, (1, 1, 1))

    def test_path_end_and_center(self):
        # {0,1} lies in exactly one maximal clique of P3 per the brute-force enumerator
        assert [c for c in brute_force_max_cliques(P3) if {0, 1} <= set(c)] == [(0, 1)]
        assert is_spanning_triple(P3, (0, 1, 1))

    def test_non_clique_triple(self):
        assert not is_spanning_triple(P3, (0, 2, 2))

    def test_spanned_clique(self):
        assert spanned_clique(K3, (0, 1, 2)) == (0, 1, 2)
        assert spanned_clique(P3, (0, 1, 1)) == (0, 1)
        assert spanned_clique(FORK, (U, V, W)) == (U, V, W)

    def test_rejects_non_spanning(self):
        with pytest.raises(ValueError):
            spanned_clique(P3, (1, 1, 1))

    @given(class_graphs(max_tree_nodes=6, max_paths=8))
    @settings(max_examples=40)
    def test_spanning_iff_unique_clique(self, g):
        cliques = brute_force_max_cliques(g)
        for t in combinations(range(g.n), 3):
            holders = [c for c in cliques if set(t) <= set(c)]
            assert is_spanning_triple(g, t) == (len(holders) == 1)
            if len(holders) == 1:
                assert spanned_clique(g, t) == holders[0]


class TestEnumeration:
    def test_examples(self):
        assert enumerate_max_cliques(K3).cliques == ((0, 1, 2),)
        assert enumerate_max_cliques(P3).cliques == ((0, 1), (1, 2))
        assert list(enumerate_max_cliques(FORK).cliques) == FORK_CLIQUES

    def test_per_vertex(self):
        m = enumerate_max_cliques(P3)
        assert m.per_vertex == ((0,), (0, 1), (1,))

    def test_twin_classes(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        assert twin_classes(g) == [0b011, 0b100, 0b1000]

    @given(class_graphs())
    @settings(max_examples=80)
    def test_matches_brute_force(self, g):
        m = enumerate_max_cliques(g)
        assert list(m.cliques) == brute_force_max_cliques(g)
        assert len(m) <= g.n**3


class TestCliqueTree:
    def test_path(self):
        t = build_clique_tree(P3)
        assert t.edges == frozenset({(0, 1)})

    def test_triangle(self):
        t = build_clique_tree(K3)
        assert len(t) == 1 and not t.edges

    def test_fork_graph_is_star(self):
        t = fork_tree()
        b = _id(t.cliques.cliques, (U, V, W))
        assert t.degree(b) == 3
        assert all(b in e for e in t.edges)
        assert [t.edges] == _all_clique_trees(FORK, FORK_CLIQUES)

    def test_non_tree_signals_structural_error(self):
        with pytest.raises(StructuralError):
            build_clique_tree(C4)

    def test_validator_rejects_wrong_tree(self):
        t = fork_tree()
        m = t.cliques
        leaves_ = [a for a in range(4) if t.degree(a) == 1]
        bad = CliqueTree(m, frozenset(
            {(min(a, b), max(a, b)) for a, b in [(leaves_[0], leaves_[1]), (leaves_[1], leaves_[2])]}
            | {(min(leaves_[2], x), max(leaves_[2], x)) for x in range(4) if x not in leaves_}
        ))
        with pytest.raises(StructuralError):
            validate_clique_tree(FORK, bad)

    @given(class_graphs(max_tree_nodes=7, max_paths=8))
    @settings(max_examples=40)
    def test_unique_and_equal_to_oracle(self, g):
        t = build_clique_tree(g)
        validate_clique_tree(g, t)
        if len(t) <= 7:
            assert _all_clique_trees(g, list(t.cliques.cliques)) == [t.edges]

    @given(relabeled(class_graphs()))
    @settings(max_examples=40)
    def test_same_tree_after_relabeling(self, pair):
        g, perm = pair
        h = g.relabel(perm)
        tg, th = build_clique_tree(g), build_clique_tree(h)
        inv = {v: u for u, v in enumerate(perm)}
        back = [tuple(sorted(inv[x] for x in c)) for c in th.cliques.cliques]
        mapped = {frozenset((back[a], back[b])) for a, b in th.edges}
        ours = {frozenset((tg.cliques.cliques[a], tg.cliques.cliques[b])) for a, b in tg.edges}
        assert mapped == ours

    def test_clique_path_order(self):
        t = build_clique_tree(P4)
        assert clique_path(t, 1) in ([0, 1], [1, 0])
        assert clique_path(t, 0) == [0]


class TestClassification:
    def test_leaf_of_path_is_star(self):
        assert is_star_clique(build_clique_tree(P3), 0)

    def test_fork_center(self):
        t = fork_tree()
        b = _id(t.cliques.cliques, (U, V, W))
        assert not is_star_clique(t, b)
        assert is_fork_clique(t, b)

    def test_fork_leaf(self):
        t = fork_tree()
        a = _id(t.cliques.cliques, (A1, U, W))
        assert is_star_clique(t, a)
        assert not is_fork_clique(t, a)

    def test_middle_of_path_not_fork(self):
        t = build_clique_tree(P4)
        middle = [a for a in range(len(t)) if t.degree(a) == 2]
        assert middle and not any(is_fork_clique(t, a) for a in middle)

    def test_star_with_three_pendants(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
        t = build_clique_tree(g)
        b = _id(t.cliques.cliques, (0, 1, 2))
        assert is_star_clique(t, b) and not is_fork_clique(t, b)


class TestRooting:
    def test_path(self):
        r = root_at(build_clique_tree(P3), 0)
        assert r.root == 0 and r.children[0] == (1,) and r.parent == (None, 0)

    def test_single_node(self):
        r = root_at(build_clique_tree(K3), 0)
        assert r.children == ((),) and r.parent == (None,)

    def test_fork_graph(self):
        t = fork_tree()
        cl = t.cliques.cliques
        a1, b = _id(cl, (A1, U, W)), _id(cl, (U, V, W))
        r = root_at(t, a1)
        assert r.children[a1] == (b,)
        assert sorted(r.children[b]) == sorted(x for x in range(4) if x not in (a1, b))
        assert list(r.children[b]) == sorted(r.children[b])

    def test_rejects_inner_root(self):
        t = fork_tree()
        with pytest.raises(ValueError):
            root_at(t, _id(t.cliques.cliques, (U, V, W)))

    def test_leaves(self):
        assert leaves(build_clique_tree(P3)) == [0, 1]
        assert leaves(build_clique_tree(K3)) == [0]
        t = fork_tree()
        assert [t.cliques.cliques[a] for a in leaves(t)] == [
            c for c in FORK_CLIQUES if c != (U, V, W)
        ]


def test_max_clique_set_lexicographic_ids():
    m = MaxCliqueSet.from_cliques(4, [(2, 3), (0, 1, 2)])
    assert m.cliques == ((0, 1, 2), (2, 3))
    assert m.per_vertex == ((0,), (0,), (0, 1), (1,))


@given(class_graphs())
@settings(max_examples=30)
def test_every_corpus_tree_connected_input(g):
    assert is_connected(g)
    t = build_clique_tree(g)
    for a in range(len(t)):
        if t.degree(a) >= 3:
            assert is_star_clique(t, a) or is_fork_clique(t, a)
