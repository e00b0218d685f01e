"""DP-covers: the pair (L, H) of label sets and per-edge partial matchings.

A cover of a graph G assigns each vertex v a label set L(v) that is a subset
of F_t (t a prime power) and each edge (i, j), i < j, a partial injective map
sigma from labels of v_i to labels of v_j; the pair (a, sigma(a)) is the
matching edge between (v_i, a) and (v_j, sigma(a)) in the cover graph H.
An H-coloring is a transversal choosing one label per vertex that avoids
every matched pair.

This module owns the ground-truth oracle (transversal backtracking), the
saturation-function classification and renaming machinery, the explicit
uncolorable covers for squares of cycles of length 3k, and the exhaustive
cover-space searches used to pin down exact DP-chromatic numbers at desk
scale.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .budget import Budget, BudgetExceeded, ensure_budget
from .errors import FormatError, PreconditionError
from .ff import FieldSpec, make_field
from .graphs import Edge, Graph, chromatic_number, cycle_power, from_edges, spanning_tree

GOOD_DIFF = "good-diff"
BAD_SUM = "bad-sum"
BAD = "bad"

_PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def smallest_prime_power(at_least: int) -> int:
    for t in _PRIME_POWERS:
        if t >= at_least:
            return t
    raise PreconditionError(f"no supported prime power >= {at_least}")


@dataclass(frozen=True)
class Saturation:
    """Classification of one edge's matching: good-diff means a - sigma(a) is
    the constant beta; bad-sum means not good but a + sigma(a) = beta; bad is
    neither (impossible over F_3)."""

    kind: str
    beta: int | None

    @property
    def is_good(self) -> bool:
        return self.kind == GOOD_DIFF


@dataclass
class Cover:
    """Cover of `graph` over F_t.  labels[v - 1] is the sorted label tuple of
    vertex v; matchings maps each edge (i, j), i < j, to a dict a -> b.
    Treated as immutable after validation."""

    graph: Graph
    t: int
    labels: tuple[tuple[int, ...], ...]
    matchings: dict[Edge, dict[int, int]]

    @property
    def field(self) -> FieldSpec:
        return make_field(self.t)

    def labels_of(self, v: int) -> tuple[int, ...]:
        return self.labels[v - 1]

    def matching(self, i: int, j: int) -> dict[int, int]:
        return self.matchings.get((i, j), {})

    def size_function(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.labels)


def validate(cover: Cover) -> list[str]:
    """Check label ranges, matching injectivity and edge locality; returns a
    list of violation descriptions (empty when the cover is well formed)."""
    out = []
    t = cover.t
    g = cover.graph
    if len(cover.labels) != g.n:
        out.append(f"expected {g.n} label sets, found {len(cover.labels)}")
        return out
    for v in range(1, g.n + 1):
        ls = cover.labels_of(v)
        if not ls:
            out.append(f"vertex {v}: empty label set")
        if len(set(ls)) != len(ls):
            out.append(f"vertex {v}: repeated label")
        for a in ls:
            if not (0 <= a < t):
                out.append(f"vertex {v}: label {a} outside F_{t}")
    edge_set = set(g.edges)
    for (i, j), sigma in sorted(cover.matchings.items()):
        if (i, j) not in edge_set:
            out.append(f"locality: matching on non-edge ({i}, {j})")
            continue
        li = set(cover.labels_of(i))
        lj = set(cover.labels_of(j))
        seen = set()
        for a, b in sorted(sigma.items()):
            if a not in li:
                out.append(f"edge ({i}, {j}): matched label {a} not in L(v_{i})")
            if b not in lj:
                out.append(f"edge ({i}, {j}): image label {b} not in L(v_{j})")
            if b in seen:
                out.append(f"edge ({i}, {j}): not injective, {b} hit twice")
            seen.add(b)
    return out


def classify_saturation(cover: Cover, edge: Edge) -> Saturation:
    """Exact classification; an empty matching is good-diff with beta 0.
    Over F_3 the result is never `bad`."""
    sigma = cover.matching(*edge)
    if not sigma:
        return Saturation(GOOD_DIFF, 0)
    fld = cover.field
    diffs = {fld.sub(a, b) for a, b in sigma.items()}
    if len(diffs) == 1:
        return Saturation(GOOD_DIFF, diffs.pop())
    sums = {fld.add(a, b) for a, b in sigma.items()}
    if len(sums) == 1:
        return Saturation(BAD_SUM, sums.pop())
    return Saturation(BAD, None)


def h_coloring_search(cover: Cover, budget: Budget | None = None) -> tuple[int, ...] | None:
    """Lexicographically least H-coloring as a label-per-vertex tuple, or
    None when the cover admits no transversal.  This backtracking search is
    the ground-truth oracle behind every certifier."""
    budget = ensure_budget(budget, 100_000_000, "searching for an H-coloring")
    g = cover.graph
    n = g.n
    # per vertex: list of (earlier vertex index, forbidden-label map)
    constraints: list[list[tuple[int, dict[int, int]]]] = [[] for _ in range(n + 1)]
    for (i, j), sigma in cover.matchings.items():
        if sigma:
            constraints[j].append((i, sigma))
    chosen = [0] * (n + 1)

    def backtrack(v: int) -> bool:
        if v > n:
            return True
        for a in cover.labels_of(v):
            budget.tick()
            ok = True
            for u, sigma in constraints[v]:
                if sigma.get(chosen[u]) == a:
                    ok = False
                    break
            if ok:
                chosen[v] = a
                if backtrack(v + 1):
                    return True
        return False

    if backtrack(1):
        return tuple(chosen[1:])
    return None


def is_valid_transversal(cover: Cover, choice) -> bool:
    """True when `choice` picks a label of every vertex and avoids every
    matched pair."""
    g = cover.graph
    if len(choice) != g.n:
        return False
    for v in range(1, g.n + 1):
        if choice[v - 1] not in cover.labels_of(v):
            return False
    for (i, j), sigma in cover.matchings.items():
        if sigma.get(choice[i - 1]) == choice[j - 1]:
            return False
    return True


def count_transversals(cover: Cover) -> int:
    """Exhaustive transversal count (used by renaming-invariance checks)."""
    g = cover.graph
    count = 0
    for choice in product(*(cover.labels_of(v) for v in range(1, g.n + 1))):
        if is_valid_transversal(cover, choice):
            count += 1
    return count


# ---------------------------------------------------------------------------
# constructions

def cover_from_lists(g: Graph, lists: dict[int, tuple[int, ...]], t: int | None = None) -> Cover:
    """Cover encoding a list-coloring instance: labels are the lists and each
    edge matches equal colors, so H-colorings are exactly proper list
    colorings."""
    top = max((c for l in lists.values() for c in l), default=0)
    size = max((len(l) for l in lists.values()), default=1)
    if t is None:
        t = smallest_prime_power(max(top + 1, size, 2))
    labels = tuple(tuple(sorted(set(lists[v]))) for v in range(1, g.n + 1))
    matchings = {}
    for i, j in g.edges:
        shared = set(labels[i - 1]) & set(labels[j - 1])
        matchings[(i, j)] = {a: a for a in sorted(shared)}
    cov = Cover(g, t, labels, matchings)
    bad = validate(cov)
    if bad:
        raise PreconditionError("; ".join(bad))
    return cov


def cover_from_pattern(
    g: Graph,
    t: int,
    signs: dict[Edge, int] | None = None,
    offsets: dict[Edge, int] | None = None,
) -> Cover:
    """Full-label cover realizing a sign/offset description: a sign -1 edge
    gets sigma(a) = a - beta (good-diff) and a sign +1 edge gets
    sigma(a) = beta - a (bad-sum; only meaningful over F_3)."""
    fld = make_field(t)
    signs = signs or {e: -1 for e in g.edges}
    offsets = offsets or {e: 0 for e in g.edges}
    if set(signs) != set(g.edges) or set(offsets) != set(g.edges):
        raise PreconditionError("signs and offsets must cover exactly the edge set")
    labels = tuple(tuple(range(t)) for _ in range(g.n))
    matchings = {}
    for e in g.edges:
        s = signs[e]
        beta = fld.check(offsets[e])
        if s == -1:
            matchings[e] = {a: fld.sub(a, beta) for a in range(t)}
        elif s == 1:
            if t != 3:
                raise PreconditionError(
                    f"sign +1 (sum-constant) matchings require order 3, got t={t}"
                )
            matchings[e] = {a: fld.sub(beta, a) for a in range(t)}
        else:
            raise PreconditionError(f"edge {e}: sign must be +/-1, got {s}")
    return Cover(g, t, labels, matchings)


def uncolorable_cover_c3k_square(k: int) -> Cover:
    """3-fold cover of the square of C_{3k} with no H-coloring: identity
    matchings except the two edges into v_{3k}, which shift labels by one.
    Every saturation function is good, yet no transversal exists."""
    if k < 2:
        raise PreconditionError("the construction needs k >= 2")
    n = 3 * k
    g = cycle_power(n, 2)
    labels = tuple(tuple(range(3)) for _ in range(n))
    special = {(n - 2, n), (n - 1, n)}
    matchings = {}
    for e in g.edges:
        if e in special:
            matchings[e] = {a: (a + 1) % 3 for a in range(3)}
        else:
            matchings[e] = {a: a for a in range(3)}
    return Cover(g, 3, labels, matchings)


# ---------------------------------------------------------------------------
# renaming

def _relabel_cover(cover: Cover, maps: dict[int, dict[int, int]]) -> Cover:
    labels = []
    for v in range(1, cover.graph.n + 1):
        rho = maps.get(v)
        if rho is None:
            labels.append(cover.labels_of(v))
        else:
            labels.append(tuple(sorted(rho[a] for a in cover.labels_of(v))))
    matchings = {}
    for (i, j), sigma in cover.matchings.items():
        ri = maps.get(i)
        rj = maps.get(j)
        matchings[(i, j)] = {
            (ri[a] if ri else a): (rj[b] if rj else b) for a, b in sigma.items()
        }
    return Cover(cover.graph, cover.t, tuple(labels), matchings)


def apply_relabeling(cover: Cover, maps: dict[int, dict[int, int]]) -> Cover:
    """Rename labels per vertex (an isomorphism of H; colorability and the
    number of transversals are preserved)."""
    for v, rho in maps.items():
        ls = set(cover.labels_of(v))
        if set(rho) != ls:
            raise PreconditionError(f"relabeling of vertex {v} must be defined on L(v_{v})")
        img = list(rho.values())
        if len(set(img)) != len(img) or any(not (0 <= b < cover.t) for b in img):
            raise PreconditionError(f"relabeling of vertex {v} is not injective into F_{cover.t}")
    return _relabel_cover(cover, maps)


def tree_normalize(cover: Cover) -> tuple[Cover, dict[int, dict[int, int]]]:
    """Rename labels, propagating from a BFS root per component, so that
    every spanning-forest matching becomes the identity.  Requires uniform
    label size m >= 2 and perfect matchings on the forest edges."""
    g = cover.graph
    sizes = set(cover.size_function())
    if len(sizes) != 1 or sizes.pop() < 2:
        raise PreconditionError("tree_normalize needs a uniform label size m >= 2")
    m = len(cover.labels_of(1))
    forest = set(spanning_tree(g))
    for (i, j) in sorted(forest):
        sigma = cover.matching(i, j)
        if len(sigma) != m or set(sigma) != set(cover.labels_of(i)):
            raise PreconditionError(
                f"forest edge ({i}, {j}) does not carry a perfect matching"
            )
    adj = {v: [] for v in range(1, g.n + 1)}
    for i, j in forest:
        adj[i].append(j)
        adj[j].append(i)
    maps: dict[int, dict[int, int]] = {}
    for comp in g.components():
        root = comp[0]
        maps[root] = {a: a for a in cover.labels_of(root)}
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in sorted(adj[u]):
                if w in maps:
                    continue
                if u < w:
                    sigma = cover.matching(u, w)  # L(u) -> L(w)
                    maps[w] = {b: maps[u][a] for a, b in sigma.items()}
                else:
                    sigma = cover.matching(w, u)  # L(w) -> L(u)
                    maps[w] = {a: maps[u][b] for a, b in sigma.items()}
                queue.append(w)
    renamed = _relabel_cover(cover, maps)
    for e in sorted(forest):
        sat = classify_saturation(renamed, e)
        assert sat.kind == GOOD_DIFF and sat.beta == 0
    return renamed, maps


def _injections(domain: tuple[int, ...], t: int):
    for img in permutations(range(t), len(domain)):
        yield dict(zip(domain, img))


def is_good_cover(cover: Cover, budget: Budget | None = None) -> dict[int, dict[int, int]] | None:
    """Search for a per-vertex relabeling under which every saturation
    function classifies good-diff; None after exhausting the search space.

    Vertices are processed in BFS order so each non-root is constrained by
    at least one earlier edge; candidates for a constrained vertex are
    generated from one such edge (a shift choice plus an arbitrary injective
    extension) instead of all injections.
    """
    budget = ensure_budget(budget, 20_000_000, "searching for a good renaming")
    g = cover.graph
    t = cover.t
    fld = cover.field
    order = [v for comp in g.components() for v in _bfs_order(g, comp[0])]
    pos = {v: k for k, v in enumerate(order)}

    def renamed_good(i, j, sigma, rho_i, rho_j) -> bool:
        diffs = {fld.sub(rho_i[a], rho_j[b]) for a, b in sigma.items()}
        return len(diffs) <= 1

    def candidates(v, maps):
        anchor = None
        for u in order[: pos[v]]:
            e = (u, v) if u < v else (v, u)
            sigma = cover.matchings.get(e)
            if sigma:
                anchor = (u, e, sigma)
                break
        if anchor is None:
            yield from _injections(cover.labels_of(v), t)
            return
        u, e, sigma = anchor
        rho_u = maps[u]
        lv = cover.labels_of(v)
        if e == (u, v):
            # sigma: L(u) -> L(v); good means rho_v(sigma(a)) = rho_u(a) - beta
            pinned_src = {b: rho_u[a] for a, b in sigma.items()}
        else:
            # sigma: L(v) -> L(u); good means rho_v(a) = rho_u(sigma(a)) + beta
            pinned_src = {a: rho_u[b] for a, b in sigma.items()}
        for beta in range(t):
            rho = {}
            ok = True
            for lbl, base in pinned_src.items():
                val = fld.sub(base, beta) if e == (u, v) else fld.add(base, beta)
                if val in rho.values():
                    ok = False
                    break
                rho[lbl] = val
            if not ok:
                continue
            free = [lbl for lbl in lv if lbl not in rho]
            used = set(rho.values())
            avail = tuple(x for x in range(t) if x not in used)
            for img in permutations(avail, len(free)):
                cand = dict(rho)
                cand.update(zip(free, img))
                yield cand

    maps: dict[int, dict[int, int]] = {}

    def backtrack(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for rho in candidates(v, maps):
            budget.tick()
            ok = True
            for u in order[:k]:
                e = (u, v) if u < v else (v, u)
                sigma = cover.matchings.get(e)
                if not sigma:
                    continue
                if e == (u, v):
                    good = renamed_good(u, v, sigma, maps[u], rho)
                else:
                    good = renamed_good(v, u, sigma, rho, maps[u])
                if not good:
                    ok = False
                    break
            if ok:
                maps[v] = rho
                if backtrack(k + 1):
                    return True
                del maps[v]
        return False

    if backtrack(0):
        witness = dict(maps)
        renamed = _relabel_cover(cover, witness)
        assert all(classify_saturation(renamed, e).is_good for e in cover.graph.edges)
        return witness
    return None


def _bfs_order(g: Graph, root: int) -> list[int]:
    seen = {root}
    queue = [root]
    out = []
    while queue:
        v = queue.pop(0)
        out.append(v)
        for w in sorted(g.adjacency[v]):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return out


# ---------------------------------------------------------------------------
# exhaustive cover-space searches

@dataclass(frozen=True)
class DpExactResult:
    """Outcome of the exact DP-chromatic search.

    status is 'exact' (value holds chi_DP), 'greater' (every m <= mmax has an
    uncolorable cover), or 'unknown' (budget ran out; m_reached/covers_tested
    report progress).  counterexample holds an uncolorable cover for the last
    m that failed, when one was found.
    """

    status: str
    value: int | None
    covers_tested: int
    m_reached: int
    counterexample: Cover | None = field(default=None, compare=False)


def exact_dp_chromatic(g: Graph, mmax: int, budget: Budget | None = None) -> DpExactResult:
    """Exact chi_DP by exhausting m-fold covers for m = chi(G)..mmax.

    Only full-label, perfect-matching covers with spanning-tree matchings
    pinned to the identity are enumerated; both reductions lose no
    generality (smaller matchings only add transversals, and renaming makes
    tree matchings the identity while preserving colorability).
    """
    budget = ensure_budget(budget, 10_000_000, "enumerating covers for exact chi_DP")
    comps = g.components()
    total_tested = 0
    overall = 0
    m_reached = 0
    witness = None
    for comp in comps:
        sub = g.subgraph(comp)
        try:
            res = _exact_dp_component(sub, mmax, budget)
        except BudgetExceeded:
            return DpExactResult("unknown", None, total_tested, m_reached)
        total_tested += res.covers_tested
        m_reached = max(m_reached, res.m_reached)
        if res.status != "exact":
            return DpExactResult(res.status, None, total_tested, res.m_reached,
                                 res.counterexample)
        if res.value > overall:
            overall = res.value
            witness = res.counterexample
    return DpExactResult("exact", overall, total_tested, m_reached, witness)


def _exact_dp_component(g: Graph, mmax: int, budget: Budget) -> DpExactResult:
    if not g.edges:
        return DpExactResult("exact", 1, 0, 1)
    start = chromatic_number(g, mmax, budget)
    if start is None:
        return DpExactResult("greater", None, 0, mmax)
    tree = spanning_tree(g)
    cotree = [e for e in g.edges if e not in set(tree)]
    tested = 0
    last_bad = None
    for m in range(start, mmax + 1):
        t = smallest_prime_power(m)
        labels = tuple(tuple(range(m)) for _ in range(g.n))
        base = {e: {a: a for a in range(m)} for e in tree}
        perms = list(permutations(range(m)))
        found_bad = None
        try:
            for assignment in product(perms, repeat=len(cotree)):
                budget.tick()
                matchings = dict(base)
                for e, perm in zip(cotree, assignment):
                    matchings[e] = {a: perm[a] for a in range(m)}
                cov = Cover(g, t, labels, matchings)
                tested += 1
                if h_coloring_search(cov, budget) is None:
                    found_bad = cov
                    break
        except BudgetExceeded:
            return DpExactResult("unknown", None, tested, m, last_bad)
        if found_bad is None:
            return DpExactResult("exact", m, tested, m, last_bad)
        last_bad = found_bad
    return DpExactResult("greater", None, tested, mmax, last_bad)


@dataclass(frozen=True)
class FDpResult:
    """Outcome of the exhaustive f-cover check: status is 'all_colorable',
    'counterexample' (with the oracle-verified uncolorable cover), or
    'unknown' on budget exhaustion."""

    status: str
    covers_tested: int
    counterexample: Cover | None = field(default=None, compare=False)


def _maximal_matchings(a_labels: tuple[int, ...], b_labels: tuple[int, ...]):
    """All maximal partial injective maps between two label sets (those
    saturating the smaller side), as dicts in a deterministic order."""
    if len(a_labels) <= len(b_labels):
        for img in permutations(b_labels, len(a_labels)):
            yield dict(zip(a_labels, img))
    else:
        for dom in permutations(a_labels, len(b_labels)):
            yield dict(zip(dom, b_labels))


def f_dp_exhaustive(g: Graph, f: dict[int, int], budget: Budget | None = None) -> FDpResult:
    """Check every f-cover of g for colorability, up to two reductions:
    only maximal matchings are enumerated (sub-matchings only gain
    transversals) and relabelings of the lowest-index matched vertex are
    quotiented out when its first matching saturates its label set.

    Walks the edges depth-first carrying the set of still-valid transversals;
    an empty set proves every completion uncolorable, and the first such
    completion is returned after an oracle re-check.
    """
    budget = ensure_budget(budget, 50_000_000, "exhausting f-covers")
    for v in range(1, g.n + 1):
        if f.get(v, 0) < 1:
            raise PreconditionError(f"size function must be >= 1 at vertex {v}")
    t = smallest_prime_power(max([2] + [f[v] for v in range(1, g.n + 1)]))
    labels = tuple(tuple(range(f[v])) for v in range(1, g.n + 1))
    edges = list(g.edges)
    if not edges:
        return FDpResult("all_colorable", 1)

    candidates = []
    for idx, (i, j) in enumerate(edges):
        cands = [
            (frozenset(sig.items()), sig)
            for sig in _maximal_matchings(labels[i - 1], labels[j - 1])
        ]
        if idx == 0 and f[i] <= f[j]:
            # quotient by relabelings of L(v_i): keep image-sorted representatives
            cands = [
                (fs, sig)
                for fs, sig in cands
                if list(sig.values()) == sorted(sig.values())
            ]
        candidates.append(cands)

    start = [tuple(choice) for choice in product(*labels)]
    tested = 0
    chosen: list[dict[int, int]] = []

    def assemble(depth: int) -> Cover:
        matchings = {}
        for d, e in enumerate(edges):
            if d < depth:
                matchings[e] = chosen[d]
            else:
                matchings[e] = candidates[d][0][1]
        return Cover(g, t, labels, matchings)

    def rec(depth: int, valid) -> Cover | None:
        nonlocal tested
        budget.tick()
        if not valid:
            return assemble(depth)
        if depth == len(edges):
            tested += 1
            return None
        i, j = edges[depth]
        ii, jj = i - 1, j - 1
        for fs, sig in candidates[depth]:
            chosen.append(sig)
            sub = [x for x in valid if (x[ii], x[jj]) not in fs]
            bad = rec(depth + 1, sub)
            chosen.pop()
            if bad is not None:
                return bad
        return None

    try:
        bad = rec(0, start)
    except BudgetExceeded:
        return FDpResult("unknown", tested)
    if bad is not None:
        if h_coloring_search(bad, budget) is not None:
            raise AssertionError("counterexample failed oracle re-check")
        return FDpResult("counterexample", tested, bad)
    return FDpResult("all_colorable", tested)


# ---------------------------------------------------------------------------
# level labels of a cone cover

def level_vertices(cover: Cover, universal: int = 1) -> tuple[int, ...]:
    """Labels (v_1, j) of the universal vertex whose closed-neighborhood
    removal leaves the maximum possible number |E(G)|(m - 1) of cross-edges
    among the non-universal parts.

    Requires the cone shape: the universal vertex is adjacent to every other
    vertex, the other label sets share one size m, and every matching from
    the universal vertex saturates its label set.
    """
    g = cover.graph
    if universal != 1:
        raise PreconditionError("the universal vertex must be v_1 in this representation")
    others = [v for v in range(2, g.n + 1)]
    if any(not g.has_edge(1, v) for v in others):
        raise PreconditionError("not a cone: v_1 must be adjacent to every other vertex")
    sizes = {len(cover.labels_of(v)) for v in others}
    if len(sizes) != 1:
        raise PreconditionError("non-universal label sets must share one size")
    m = sizes.pop()
    l_univ = cover.labels_of(1)
    if len(l_univ) > m:
        raise PreconditionError("the universal label set may not exceed the others")
    partners = {}
    for v in others:
        sigma = cover.matching(1, v)
        if len(sigma) != len(l_univ) or set(sigma) != set(l_univ):
            raise PreconditionError(
                f"matching from v_1 to v_{v} must saturate L(v_1) "
                f"(|E_H(L(v_1), L(v))| = {len(l_univ)})"
            )
        partners[v] = sigma
    inner_edges = [e for e in g.edges if e[0] != 1]
    target = len(inner_edges) * (m - 1)
    out = []
    for j in l_univ:
        count = 0
        for (u, w) in inner_edges:
            pu = partners[u][j]
            pw = partners[w][j]
            count += sum(1 for a, b in cover.matching(u, w).items() if a != pu and b != pw)
        if count == target:
            out.append(j)
    return tuple(out)


# ---------------------------------------------------------------------------
# text format: '#' comments, "cover t=<t>", "L <v> <a>...", and
# "M <i> <j> <a>-><b> ..." for each edge with a nonempty matching

def write_cover(cover: Cover) -> str:
    lines = [f"cover t={cover.t}"]
    for v in range(1, cover.graph.n + 1):
        lines.append("L " + " ".join(str(a) for a in (v,) + cover.labels_of(v)))
    for (i, j) in sorted(cover.matchings):
        sigma = cover.matchings[(i, j)]
        if not sigma:
            continue
        pairs = " ".join(f"{a}->{b}" for a, b in sorted(sigma.items()))
        lines.append(f"M {i} {j} {pairs}")
    return "\n".join(lines) + "\n"


def read_cover(text: str) -> Cover:
    """Parse a cover file.  The base graph is inferred from the M records, so
    edges carrying an empty matching are not represented (they constrain
    nothing)."""
    t = None
    labels: dict[int, tuple[int, ...]] = {}
    matchings: dict[Edge, dict[int, int]] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "cover":
            if t is not None:
                raise FormatError("duplicate cover header", ln)
            if len(parts) != 2 or not parts[1].startswith("t="):
                raise FormatError("header must be 'cover t=<t>'", ln)
            try:
                t = int(parts[1][2:])
            except ValueError:
                raise FormatError("order t must be an integer", ln) from None
        elif parts[0] == "L":
            if t is None:
                raise FormatError("label record before header", ln)
            try:
                v = int(parts[1])
                ls = tuple(int(x) for x in parts[2:])
            except (ValueError, IndexError):
                raise FormatError("label record must be 'L <v> <a1> <a2> ...'", ln) from None
            if v in labels:
                raise FormatError(f"duplicate label record for vertex {v}", ln)
            labels[v] = tuple(sorted(ls))
        elif parts[0] == "M":
            if t is None:
                raise FormatError("matching record before header", ln)
            try:
                i, j = int(parts[1]), int(parts[2])
            except (ValueError, IndexError):
                raise FormatError("matching record must be 'M <i> <j> <a>-><b> ...'", ln) from None
            if not i < j:
                raise FormatError(f"matching endpoints must satisfy i < j, got {i}, {j}", ln)
            sigma = {}
            for tok in parts[3:]:
                if "->" not in tok:
                    raise FormatError(f"bad pair {tok!r}, expected '<a>-><b>'", ln)
                a_s, b_s = tok.split("->", 1)
                try:
                    a, b = int(a_s), int(b_s)
                except ValueError:
                    raise FormatError(f"bad pair {tok!r}, labels must be integers", ln) from None
                if a in sigma:
                    raise FormatError(f"label {a} matched twice on edge ({i}, {j})", ln)
                sigma[a] = b
            if not sigma:
                raise FormatError("matching record with no pairs", ln)
            if (i, j) in matchings:
                raise FormatError(f"duplicate matching record for edge ({i}, {j})", ln)
            matchings[(i, j)] = sigma
    if t is None:
        raise FormatError("missing 'cover t=<t>' header")
    if not labels:
        raise FormatError("cover has no label records")
    n = max(labels)
    missing = [v for v in range(1, n + 1) if v not in labels]
    if missing:
        raise FormatError(f"missing label records for vertices {missing}")
    g = from_edges(n, sorted(matchings))
    cov = Cover(g, t, tuple(labels[v] for v in range(1, n + 1)), matchings)
    bad = validate(cov)
    if bad:
        raise FormatError("; ".join(bad))
    return cov
