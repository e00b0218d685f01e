"""Covers: validation, classification, the transversal oracle, renaming,
explicit constructions, and the exhaustive cover-space searches."""
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from dpnull.budget import Budget
from dpnull.errors import FormatError, PreconditionError
from dpnull.ff import make_field
from dpnull import cover as C
from dpnull import graphs as G


def identity_cover(g, t):
    return C.cover_from_pattern(g, t)


def all_partial_injective_maps(t):
    """Every partial injective map on [0, t) as a dict (34 of them for t=3)."""
    from itertools import combinations, permutations

    out = [{}]
    els = list(range(t))
    for k in range(1, t + 1):
        for dom in combinations(els, k):
            for img in permutations(els, k):
                out.append(dict(zip(dom, img)))
    return out


# ---------------------------------------------------------------------------
# validation and classification

def test_validate_identity_cover_ok():
    assert C.validate(identity_cover(G.cycle(3), 3)) == []


def test_validate_catches_injectivity():
    cov = C.Cover(G.path(2), 3, ((0, 1, 2), (0, 1, 2)), {(1, 2): {0: 1, 1: 1}})
    assert any("not injective" in v for v in C.validate(cov))


def test_validate_catches_locality():
    cov = C.Cover(G.path(3), 3, ((0,), (0,), (0,)), {(1, 3): {0: 0}})
    assert any("locality" in v for v in C.validate(cov))


def test_validate_catches_label_range():
    cov = C.Cover(G.path(2), 3, ((0, 5), (0,)), {})
    assert any("outside" in v for v in C.validate(cov))


def test_classify_examples():
    full = tuple(range(3))
    mk = lambda sigma: C.Cover(G.path(2), 3, (full, full), {(1, 2): sigma})
    assert C.classify_saturation(mk({0: 0, 1: 1, 2: 2}), (1, 2)) == C.Saturation("good-diff", 0)
    assert C.classify_saturation(mk({0: 1, 1: 0, 2: 2}), (1, 2)) == C.Saturation("bad-sum", 1)
    assert C.classify_saturation(mk({0: 1, 1: 2, 2: 0}), (1, 2)) == C.Saturation("good-diff", 2)
    empty = C.Cover(G.path(2), 3, (full, full), {})
    assert C.classify_saturation(empty, (1, 2)) == C.Saturation("good-diff", 0)


def test_classify_never_bad_over_f3():
    full = tuple(range(3))
    maps = all_partial_injective_maps(3)
    assert len(maps) == 34
    for sigma in maps:
        cov = C.Cover(G.path(2), 3, (full, full), {(1, 2): dict(sigma)} if sigma else {})
        assert C.classify_saturation(cov, (1, 2)).kind != C.BAD


def test_bad_class_possible_over_f4():
    full = tuple(range(4))
    # 0 -> 0, 1 -> 2: differences 0, 3; sums 0, 3 -- neither constant
    cov = C.Cover(G.path(2), 4, (full, full), {(1, 2): {0: 0, 1: 2}})
    assert C.classify_saturation(cov, (1, 2)).kind == C.BAD


def test_two_fold_matchings_always_good():
    full = (0, 1)
    for sigma in all_partial_injective_maps(2):
        cov = C.Cover(G.path(2), 2, (full, full), {(1, 2): dict(sigma)} if sigma else {})
        assert C.classify_saturation(cov, (1, 2)).is_good


# ---------------------------------------------------------------------------
# the oracle

def oracle_by_product(cov):
    g = cov.graph
    for choice in product(*(cov.labels_of(v) for v in range(1, g.n + 1))):
        if C.is_valid_transversal(cov, choice):
            return choice
    return None


def test_h_coloring_examples():
    assert C.h_coloring_search(C.uncolorable_cover_c3k_square(2)) is None
    assert C.h_coloring_search(identity_cover(G.cycle(5), 2)) is None
    found = C.h_coloring_search(identity_cover(G.cycle(5), 3))
    assert found is not None and C.is_valid_transversal(identity_cover(G.cycle(5), 3), found)


def test_h_coloring_returns_lexicographically_least():
    cov = identity_cover(G.cycle(5), 3)
    best = None
    for choice in product(*(cov.labels_of(v) for v in range(1, 6))):
        if C.is_valid_transversal(cov, choice):
            best = choice
            break
    assert C.h_coloring_search(cov) == best


def test_oracle_matches_list_coloring_on_random_lists():
    rng = random.Random(4242)
    for _ in range(60):
        n = rng.randint(2, 6)
        edges = [e for e in G.complete(n).edges if rng.random() < 0.5]
        g = G.from_edges(n, edges)
        lists = {v: tuple(sorted(rng.sample(range(3), rng.randint(1, 3)))) for v in range(1, n + 1)}
        cov = C.cover_from_lists(g, lists, 3)
        via_cover = C.h_coloring_search(cov) is not None
        via_lists = G.count_colorings(g, lists) > 0
        assert via_cover == via_lists


def test_cover_from_lists_examples():
    k2 = C.cover_from_lists(G.path(2), {1: (0, 1), 2: (0, 1)}, 2)
    assert C.count_transversals(k2) == 2
    c4 = C.cover_from_lists(G.cycle(4), {v: (0, 1) for v in range(1, 5)}, 2)
    assert C.h_coloring_search(c4) is not None
    c3 = C.cover_from_lists(G.cycle(3), {v: (0, 1) for v in range(1, 4)}, 2)
    assert C.h_coloring_search(c3) is None


def test_cover_from_pattern_examples():
    g = G.path(2)
    ident = C.cover_from_pattern(G.cycle(3), 3)
    assert all(sigma == {0: 0, 1: 1, 2: 2} for sigma in ident.matchings.values())
    plus2 = C.cover_from_pattern(g, 3, {(1, 2): 1}, {(1, 2): 2})
    assert plus2.matchings[(1, 2)] == {0: 2, 1: 1, 2: 0}
    with pytest.raises(PreconditionError):
        C.cover_from_pattern(g, 4, {(1, 2): 1}, {(1, 2): 0})
    with pytest.raises(PreconditionError):
        C.cover_from_pattern(g, 3, {(1, 2): 2}, {(1, 2): 0})


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pattern_round_trips_through_classification(data):
    g = G.cycle(4)
    signs = {e: data.draw(st.sampled_from((-1, 1)), label=f"sign{e}") for e in g.edges}
    offsets = {e: data.draw(st.integers(0, 2), label=f"beta{e}") for e in g.edges}
    cov = C.cover_from_pattern(g, 3, signs, offsets)
    for e in g.edges:
        sat = C.classify_saturation(cov, e)
        assert sat.kind == (C.GOOD_DIFF if signs[e] == -1 else C.BAD_SUM)
        assert sat.beta == offsets[e]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 100_000))
def test_deleting_matched_pairs_never_loses_transversals(seed):
    rng = random.Random(seed)
    g = G.cycle(4)
    cov = C.cover_from_pattern(
        g, 3,
        {e: rng.choice((-1, 1)) for e in g.edges},
        {e: rng.randrange(3) for e in g.edges},
    )
    before = C.count_transversals(cov)
    e = rng.choice(g.edges)
    sigma = dict(cov.matchings[e])
    sigma.pop(rng.choice(list(sigma)))
    thinner = C.Cover(g, 3, cov.labels, {**cov.matchings, e: sigma})
    assert C.count_transversals(thinner) >= before


# ---------------------------------------------------------------------------
# renaming

def all_perfect_covers(g, m):
    """Every cover of g with full labels [0, m) and perfect matchings."""
    from itertools import permutations

    labels = tuple(tuple(range(m)) for _ in range(g.n))
    perms = list(permutations(range(m)))
    for assignment in product(perms, repeat=len(g.edges)):
        matchings = {
            e: {a: p[a] for a in range(m)} for e, p in zip(g.edges, assignment)
        }
        yield C.Cover(g, m, labels, matchings)


@pytest.mark.parametrize("g", [G.path(3), G.path(4)], ids=("P3", "P4"))
def test_tree_normalize_preserves_counts_exhaustively(g):
    for cov in all_perfect_covers(g, 3):
        renamed, maps = C.tree_normalize(cov)
        assert all(
            C.classify_saturation(renamed, e) == C.Saturation("good-diff", 0)
            for e in g.edges
        )
        assert C.count_transversals(renamed) == C.count_transversals(cov)


def test_tree_normalize_keeps_cotree_matchings_honest():
    g = G.cycle(4)
    rng = random.Random(5)
    for _ in range(20):
        cov = C.cover_from_pattern(
            g, 3,
            {e: rng.choice((-1, 1)) for e in g.edges},
            {e: rng.randrange(3) for e in g.edges},
        )
        renamed, _ = C.tree_normalize(cov)
        assert C.count_transversals(renamed) == C.count_transversals(cov)
        tree = set(G.spanning_tree(g))
        for e in tree:
            assert C.classify_saturation(renamed, e) == C.Saturation("good-diff", 0)


def test_tree_normalize_rejects_imperfect_forest_matchings():
    g = G.path(3)
    cov = C.Cover(
        g, 3,
        tuple(tuple(range(3)) for _ in range(3)),
        {(1, 2): {0: 0, 1: 1, 2: 2}, (2, 3): {0: 0}},
    )
    with pytest.raises(PreconditionError, match="perfect"):
        C.tree_normalize(cov)


def test_is_good_cover_two_fold_always_good():
    rng = random.Random(9)
    g = G.cycle(4)
    for _ in range(10):
        perms = [rng.choice(((0, 1), (1, 0))) for _ in g.edges]
        cov = C.Cover(
            g, 2,
            tuple(tuple(range(2)) for _ in range(4)),
            {e: {0: p[0], 1: p[1]} for e, p in zip(g.edges, perms)},
        )
        assert C.is_good_cover(cov) is not None


def test_is_good_cover_shift_construction_good():
    witness = C.is_good_cover(C.uncolorable_cover_c3k_square(2))
    assert witness is not None


def test_is_good_cover_odd_triangle_absent():
    tri = G.cycle(3)
    m = {(1, 2): {0: 0, 1: 1, 2: 2}, (2, 3): {0: 0, 1: 1, 2: 2}, (1, 3): {0: 1, 1: 0, 2: 2}}
    cov = C.Cover(tri, 3, tuple(tuple(range(3)) for _ in range(3)), m)
    assert C.is_good_cover(cov) is None


def test_is_good_cover_budget_is_explicit():
    tri = G.cycle(3)
    m = {(1, 2): {0: 0, 1: 1, 2: 2}, (2, 3): {0: 0, 1: 1, 2: 2}, (1, 3): {0: 1, 1: 0, 2: 2}}
    cov = C.Cover(tri, 3, tuple(tuple(range(3)) for _ in range(3)), m)
    from dpnull.budget import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        C.is_good_cover(cov, Budget(2))


def test_is_good_cover_witness_renames_to_all_good():
    tri = G.cycle(3)
    m = {(1, 2): {0: 1, 1: 2, 2: 0}, (2, 3): {0: 0, 1: 1, 2: 2}, (1, 3): {0: 2, 1: 0, 2: 1}}
    cov = C.Cover(tri, 3, tuple(tuple(range(3)) for _ in range(3)), m)
    witness = C.is_good_cover(cov)
    assert witness is not None
    renamed = C.apply_relabeling(cov, witness)
    assert all(C.classify_saturation(renamed, e).is_good for e in tri.edges)
    assert C.count_transversals(renamed) == C.count_transversals(cov)


# ---------------------------------------------------------------------------
# explicit constructions

@pytest.mark.parametrize("k", (2, 3))
def test_uncolorable_c3k_square_cover(k):
    cov = C.uncolorable_cover_c3k_square(k)
    assert C.validate(cov) == []
    assert all(C.classify_saturation(cov, e).is_good for e in cov.graph.edges)
    assert C.h_coloring_search(cov) is None


def test_uncolorable_c3k_special_edges_are_shifts():
    cov = C.uncolorable_cover_c3k_square(2)
    assert C.classify_saturation(cov, (4, 6)) == C.Saturation("good-diff", 2)
    assert C.classify_saturation(cov, (5, 6)) == C.Saturation("good-diff", 2)


def test_emptying_matchings_can_restore_colorability():
    # removing constraints can only help; for most (not all) non-special
    # edges the oracle then finds a coloring
    cov = C.uncolorable_cover_c3k_square(2)
    weakened = C.Cover(cov.graph, 3, cov.labels, {**cov.matchings, (1, 3): {}})
    assert C.h_coloring_search(weakened) is not None
    # dropping (1, 2) leaves x1 != x2 implied through v5, so no coloring appears
    still = C.Cover(cov.graph, 3, cov.labels, {**cov.matchings, (1, 2): {}})
    assert C.h_coloring_search(still) is None


def test_uncolorable_c3k_rejects_k1():
    with pytest.raises(PreconditionError):
        C.uncolorable_cover_c3k_square(1)


# ---------------------------------------------------------------------------
# exhaustive searches

def test_exact_dp_chromatic_trees():
    for t in G.tree_catalog(6):
        if t.n < 2:
            continue
        res = C.exact_dp_chromatic(t, 4)
        assert (res.status, res.value) == ("exact", 2)


def test_exact_dp_chromatic_cycles():
    for n in (3, 4, 5, 6):
        assert C.exact_dp_chromatic(G.cycle(n), 4).value == 3


def test_exact_dp_chromatic_c6sq_exceeds_3():
    res = C.exact_dp_chromatic(G.cycle_power(6, 2), 3, Budget(50_000_000))
    assert res.status == "greater"
    assert res.counterexample is not None
    assert C.h_coloring_search(res.counterexample) is None


def test_exact_dp_chromatic_edgeless_and_disconnected():
    assert C.exact_dp_chromatic(G.empty_graph(3), 2).value == 1
    two_comps = G.from_edges(5, [(1, 2), (3, 4), (4, 5), (3, 5)])
    assert C.exact_dp_chromatic(two_comps, 4).value == 3  # triangle component


def test_exact_dp_chromatic_at_least_chromatic_number():
    for g in (G.path(4), G.cycle(5), G.complete(3)):
        res = C.exact_dp_chromatic(g, 4)
        assert res.value >= G.chromatic_number(g, 4)


def test_exact_dp_chromatic_budget_returns_unknown():
    res = C.exact_dp_chromatic(G.cycle_power(6, 2), 4, Budget(50))
    assert res.status == "unknown"


def test_f_dp_exhaustive_examples():
    assert C.f_dp_exhaustive(G.path(2), {1: 1, 2: 1}).status == "counterexample"
    assert C.f_dp_exhaustive(G.path(4), {1: 1, 2: 2, 3: 2, 4: 2}).status == "all_colorable"


def test_f_dp_exhaustive_counterexample_is_verified():
    res = C.f_dp_exhaustive(G.cycle(3), {1: 2, 2: 2, 3: 2})
    assert res.status == "counterexample"
    assert C.h_coloring_search(res.counterexample) is None


def test_f_dp_exhaustive_unknown_on_tiny_budget():
    res = C.f_dp_exhaustive(G.cycle(4), {v: 3 for v in range(1, 5)}, Budget(5))
    assert res.status == "unknown"


def test_f_dp_quotient_never_flips_the_verdict():
    # the quotient applies when f(v1) <= f(v2) and not otherwise; both
    # orderings of the same size multiset must agree
    g = G.cycle(3)
    res_a = C.f_dp_exhaustive(g, {1: 2, 2: 2, 3: 3})
    res_b = C.f_dp_exhaustive(g, {1: 3, 2: 2, 3: 2})
    assert res_a.status == res_b.status == "all_colorable"


@pytest.mark.parametrize("g", [G.path(3), G.cycle(3), G.cycle(4), G.cycle(5)],
                         ids=("P3", "C3", "C4", "C5"))
@pytest.mark.parametrize("m", (2, 3))
def test_f_dp_uniform_agrees_with_exact_search(g, m):
    """Two independent enumerations must agree: uniform f-covers are all
    colorable exactly when chi_DP <= m."""
    verdict = C.f_dp_exhaustive(g, {v: m for v in range(1, g.n + 1)})
    exact = C.exact_dp_chromatic(g, 4).value
    want = "all_colorable" if exact <= m else "counterexample"
    assert verdict.status == want


# ---------------------------------------------------------------------------
# level labels

def cone_cover(universal_maps, inner_matchings, l, m):
    """Cover of the cone over C_4 with given universal and cycle matchings."""
    g = G.cone(G.cycle(4))
    labels = (tuple(range(l)),) + tuple(tuple(range(m)) for _ in range(4))
    matchings = {}
    for v in range(2, 6):
        matchings[(1, v)] = dict(universal_maps[v])
    for e, sigma in inner_matchings.items():
        matchings[e] = dict(sigma)
    return C.Cover(g, C.smallest_prime_power(m), labels, matchings)


def test_level_vertices_identity_cone_all_level():
    ident3 = {a: a for a in range(3)}
    univ = {v: {0: 0, 1: 1} for v in range(2, 6)}
    inner = {e: ident3 for e in G.cone(G.cycle(4)).edges if e[0] != 1}
    cov = cone_cover(univ, inner, 2, 3)
    assert C.level_vertices(cov) == (0, 1)


def test_level_vertices_bad_closing_matching_at_most_one():
    # path edges identity, cycle-closing edge (2, 5) carries the twisted map
    ident3 = {a: a for a in range(3)}
    univ = {v: {0: 0, 1: 1} for v in range(2, 6)}
    inner = {(2, 3): ident3, (3, 4): ident3, (4, 5): ident3, (2, 5): {0: 0, 1: 2, 2: 1}}
    cov = cone_cover(univ, inner, 2, 3)
    levels = C.level_vertices(cov)
    assert len(levels) <= 1
    assert levels == (0,)


def test_level_vertices_rejects_unsaturated_universal_matching():
    ident3 = {a: a for a in range(3)}
    univ = {v: {0: 0, 1: 1} for v in range(2, 6)}
    univ[2] = {}  # empty matching from the apex breaks the setup
    inner = {e: ident3 for e in G.cone(G.cycle(4)).edges if e[0] != 1}
    cov = cone_cover(univ, inner, 2, 3)
    with pytest.raises(PreconditionError, match="saturate"):
        C.level_vertices(cov)


def test_level_vertices_rejects_non_cone():
    cov = identity_cover(G.cycle(4), 3)
    with pytest.raises(PreconditionError, match="cone"):
        C.level_vertices(cov)


# ---------------------------------------------------------------------------
# text format

def test_cover_round_trip_bit_exact():
    cov = C.uncolorable_cover_c3k_square(2)
    text = C.write_cover(cov)
    again = C.read_cover(text)
    assert C.write_cover(again) == text
    assert again.matchings == cov.matchings
    assert again.labels == cov.labels


def test_cover_read_accepts_comments_and_validates():
    text = "# a cover\ncover t=3\nL 1 0 1\nL 2 0 1 2\nM 1 2 0->2 1->0\n"
    cov = C.read_cover(text)
    assert cov.labels == ((0, 1), (0, 1, 2))
    assert cov.matchings == {(1, 2): {0: 2, 1: 0}}


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("L 1 0\n", "before header"),
        ("cover t=3\nL 1 0\nM 2 1 0->0\n", "i < j"),
        ("cover t=3\nL 1 0\nL 1 1\n", "duplicate"),
        ("cover t=3\nL 1 0\nL 2 0\nM 1 2 0->0 0->1\n", "matched twice"),
        ("cover t=3\nL 1 5\nL 2 0\nM 1 2 5->0\n", "outside"),
        ("cover t=3\n", "no label records"),
    ],
)
def test_cover_read_rejects_malformed(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        C.read_cover(text)
