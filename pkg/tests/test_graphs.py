"""Graph constructions, oracles, text format, and the tree catalog."""
from itertools import product

import pytest

from dpnull.errors import FormatError, NotUniquelyColorable
from dpnull import graphs as G


def bfs_distance_edges(n, k):
    """Independent construction of cycle-power edges via BFS distances in C_n."""
    ring = {v: {v % n + 1, (v - 2) % n + 1} for v in range(1, n + 1)}
    edges = set()
    for s in range(1, n + 1):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in ring[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        for v, d in dist.items():
            if 0 < d <= k and s < v:
                edges.add((s, v))
    return edges


def exhaustive_chromatic(g, kmax):
    """Independent chromatic oracle by raw product enumeration (tiny n only)."""
    for k in range(1, kmax + 1):
        for assign in product(range(k), repeat=g.n):
            if all(assign[i - 1] != assign[j - 1] for i, j in g.edges):
                return k
    return None


def test_family_examples():
    assert len(G.cycle_power(6, 2).edges) == 12
    g = G.complete_bipartite_minus_matching(4, 4, 2)
    assert (g.n, len(g.edges)) == (8, 14)
    cone4 = G.cone(G.cycle(4))
    assert (cone4.n, len(cone4.edges)) == (5, 8)


def test_family_validation():
    with pytest.raises(G.GraphError):
        G.cycle(2)
    with pytest.raises(G.GraphError):
        G.complete_bipartite_minus_matching(2, 2, 3)
    with pytest.raises(G.GraphError):
        G.from_edges(3, [(1, 1)])
    with pytest.raises(G.GraphError):
        G.Graph(3, ((1, 2), (1, 2)))


def test_make_family_dispatch():
    assert G.make_family("cycle_power", 6, 2).edges == G.cycle_power(6, 2).edges
    with pytest.raises(G.GraphError):
        G.make_family("moebius", 5)


@pytest.mark.parametrize("n", range(4, 13))
@pytest.mark.parametrize("k", (1, 2, 3))
def test_cycle_power_matches_bfs_closure(n, k):
    assert set(G.cycle_power(n, k).edges) == bfs_distance_edges(n, k)


def test_parse_graph_name():
    assert G.parse_graph_name("c6sq").edges == G.cycle_power(6, 2).edges
    assert G.parse_graph_name("C9^2").edges == G.cycle_power(9, 2).edges
    assert G.parse_graph_name("k4,4-m2").edges == G.complete_bipartite_minus_matching(4, 4, 2).edges
    assert G.parse_graph_name("join(e2,p5)").edges == G.join(G.empty_graph(2), G.path(5)).edges
    assert G.parse_graph_name("cone(c4)").edges == G.cone(G.cycle(4)).edges
    assert G.parse_graph_name("frob99") is None


def test_join_vertex_order():
    g = G.join(G.empty_graph(2), G.path(5))
    # the two independent vertices come first, the path is 3..7
    assert (g.n, len(g.edges)) == (7, 14)
    assert (1, 2) not in g.edges
    assert all((i, j) in set(g.edges) for i in (1, 2) for j in range(3, 8))
    assert {(3, 4), (4, 5), (5, 6), (6, 7)} <= set(g.edges)


def union_find_acyclic_spanning(g, tree):
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in tree:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    roots = {find(v) for v in range(1, g.n + 1)}
    return len(roots) == len(g.components())


@pytest.mark.parametrize(
    "g,want",
    [
        (G.cycle(4), 3),
        (G.complete_bipartite_minus_matching(4, 4, 2), 7),
        (G.empty_graph(3), 0),
        (G.from_edges(5, [(1, 2), (3, 4)]), 2),
    ],
)
def test_spanning_tree_sizes(g, want):
    tree = G.spanning_tree(g)
    assert len(tree) == want
    assert union_find_acyclic_spanning(g, tree)


def test_chromatic_number_examples():
    assert G.chromatic_number(G.cycle_power(5, 2), 6) == 5
    assert G.chromatic_number(G.cycle_power(6, 2), 6) == 3
    assert G.chromatic_number(G.cycle_power(7, 2), 6) == 4
    assert G.chromatic_number(G.cycle(5), 2) is None


def test_chromatic_number_budget_is_explicit():
    from dpnull.budget import Budget, BudgetExceeded

    with pytest.raises(BudgetExceeded):
        G.chromatic_number(G.cycle_power(7, 2), 7, Budget(3))


@pytest.mark.parametrize(
    "g", [G.path(4), G.cycle(5), G.complete(4), G.cycle_power(6, 2), G.complete_bipartite(2, 3)]
)
def test_chromatic_number_against_product_oracle(g):
    assert G.chromatic_number(g, g.n) == exhaustive_chromatic(g, g.n)


def count_colorings_oracle(g, lists):
    total = 0
    for assign in product(*(lists[v] for v in range(1, g.n + 1))):
        if all(assign[i - 1] != assign[j - 1] for i, j in g.edges):
            total += 1
    return total


def test_count_colorings_examples():
    assert G.count_colorings(G.path(3), {1: (0,), 2: (0, 1), 3: (0, 1)}) == 1
    assert G.count_colorings(G.complete(3), {1: (0,), 2: (0, 1), 3: (0, 1, 2)}) == 1
    assert G.count_colorings(G.path(2), {1: (0,), 2: (0,)}) == 0


def test_count_colorings_against_product_oracle():
    import random

    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 5)
        edges = [e for e in G.complete(n).edges if rng.random() < 0.6]
        g = G.from_edges(n, edges)
        lists = {v: tuple(sorted(rng.sample(range(3), rng.randint(1, 3)))) for v in range(1, n + 1)}
        assert G.count_colorings(g, lists) == count_colorings_oracle(g, lists)


def test_unique_k_analysis_k2p5():
    g = G.join(G.empty_graph(2), G.path(5))
    stats = G.unique_k_analysis(g, 3)
    assert set(map(frozenset, stats.classes)) == {
        frozenset({1, 2}),       # the two joined vertices
        frozenset({4, 6}),       # the second and fourth path vertices
        frozenset({3, 5, 7}),    # the odd path vertices
    }
    assert sum(stats.sizes) == g.n
    assert sum(stats.cross.values()) == len(g.edges)


def test_unique_k_analysis_c4_bipartition():
    stats = G.unique_k_analysis(G.cycle(4), 2)
    assert stats.classes == ((1, 3), (2, 4))
    assert stats.cross == {(1, 2): 4}


def test_unique_k_analysis_rejects_non_unique():
    with pytest.raises(NotUniquelyColorable):
        G.unique_k_analysis(G.cycle(6), 3)
    with pytest.raises(NotUniquelyColorable):
        G.unique_k_analysis(G.path(2), 1)  # zero partitions


def test_graph_text_round_trip():
    g = G.complete_bipartite_minus_matching(4, 4, 2)
    text = G.write_graph(g)
    again = G.read_graph(text)
    assert again.edges == g.edges and again.n == g.n
    assert G.write_graph(again) == text  # bit-exact


def test_graph_text_accepts_comments():
    text = "# hello\np 3 1\n\ne 1 3\n"
    g = G.read_graph(text)
    assert g.n == 3 and g.edges == ((1, 3),)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("e 1 2\n", "line 1"),
        ("p 3 2\ne 1 2\n", "promised 2"),
        ("p 3 1\ne 3 1\n", "line 2"),
        ("p 3 1\nq 1 2\n", "unknown record"),
        ("p x y\n", "line 1"),
    ],
)
def test_graph_text_errors_carry_line_numbers(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        G.read_graph(text)


def test_tree_catalog_counts_match_known_sequence():
    # numbers of non-isomorphic trees on 1..10 vertices
    cat = G.tree_catalog(10)
    by_n = {}
    for t in cat:
        by_n[t.n] = by_n.get(t.n, 0) + 1
    assert [by_n[n] for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


def test_tree_catalog_members_are_trees():
    for t in G.tree_catalog(7):
        assert len(t.edges) == t.n - 1
        assert t.is_connected()


def test_orientation_degrees():
    g = G.cycle(4)  # edges in lex order: (1,2), (1,4), (2,3), (3,4)
    d = G.Orientation(g, (1, 0, 1, 1))  # 1->2->3->4->1
    assert d.outdegrees() == (1, 1, 1, 1)
    assert d.indegrees() == (1, 1, 1, 1)
    assert set(d.arcs()) == {(1, 2), (2, 3), (3, 4), (4, 1)}
