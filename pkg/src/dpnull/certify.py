"""Nullstellensatz-based colorability certificates for DP-covers.

The certifiers tie the polynomial side to the cover side:

* a good prime cover of order t is colorable when some monomial with
  exponents below the label sizes has nonzero coefficient in the offset
  polynomial prod (x_i - x_j - beta_ij) over F_t;
* over F_3 the same works for arbitrary covers with the signed polynomial
  prod (x_i + B*x_j - beta_ij), B = -1 on good-diff edges and +1 on
  bad-sum edges;
* sweeping every sign pattern over F_3 certifies chi_DP(G) <= 3 outright,
  optionally with spanning-tree edges pinned to -1;
* a unique proper list coloring, or the structure of cones over certain
  bipartite / uniquely 3-colorable graphs, certifies whole families of
  good prime covers at once.

Every positive whole-cover certificate carries a witness transversal that
has been re-validated against the cover, so a second implementation can
replay the claim.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .budget import Budget, BudgetExceeded, ensure_budget
from .errors import MethodDisagreement, PreconditionError
from .ff import make_field
from .graphs import (
    Graph,
    chromatic_number,
    cone,
    cycle_power,
    proper_list_colorings,
    relabel,
    spanning_tree,
    unique_k_analysis,
)
from .poly import (
    Factor,
    Grid,
    apply_factor_packed,
    coefficient_at,
    find_qualifying_monomial,
    from_graph,
    unpack_exponents,
)
from .cover import (
    BAD,
    GOOD_DIFF,
    Cover,
    classify_saturation,
    h_coloring_search,
    is_valid_transversal,
    uncolorable_cover_c3k_square,
    exact_dp_chromatic,
    validate,
)


@dataclass(frozen=True)
class Certificate:
    """A replayable colorability claim: the qualifying monomial and its
    nonzero coefficient, plus the sign pattern / offsets of the polynomial
    it was read from and, for whole-cover certificates, a witness
    transversal that passed validation."""

    kind: str
    t: int
    n: int
    monomial: tuple[int, ...]
    coefficient: int
    pattern: tuple[int, ...] | None = None
    offsets: tuple[int, ...] | None = None
    witness: tuple[int, ...] | None = None
    verified: bool | None = None
    work: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class FailureReport:
    """Sign patterns for which every qualifying coefficient vanishes."""

    mode: str
    failing_patterns: tuple[tuple[int, ...], ...]
    patterns_tested: int


@dataclass(frozen=True)
class Dp3Result:
    mode: str
    patterns_tested: int
    certificates: tuple[Certificate, ...]
    failure: FailureReport | None

    @property
    def passed(self) -> bool:
        return self.failure is None


# ---------------------------------------------------------------------------
# whole-cover certificates

def _certify_cover(cover: Cover, signs, betas, kind: str, budget: Budget) -> Certificate | None:
    g = cover.graph
    fld = cover.field
    poly = from_graph(g, fld, signs=signs, offsets=betas)
    caps = tuple(len(cover.labels_of(v)) - 1 for v in range(1, g.n + 1))
    found = find_qualifying_monomial(poly, caps, budget)
    if found is None:
        return None
    monomial, coeff = found
    witness = None
    points = 0
    for point in product(*(cover.labels_of(v) for v in range(1, g.n + 1))):
        points += 1
        budget.tick()
        if poly.evaluate(point) != 0:
            witness = point
            break
    if witness is None:
        raise AssertionError(
            "no nonzero point on the label grid despite a qualifying monomial"
        )
    if not is_valid_transversal(cover, witness):
        raise AssertionError("extracted witness is not a valid transversal")
    edge_order = g.edges
    return Certificate(
        kind=kind,
        t=cover.t,
        n=g.n,
        monomial=monomial,
        coefficient=coeff,
        pattern=tuple(signs[e] for e in edge_order),
        offsets=tuple(betas[e] for e in edge_order),
        witness=witness,
        verified=True,
        work={"grid_points": points},
    )


def certify_good_cover(cover: Cover, budget: Budget | None = None) -> Certificate | None:
    """Certificate for a cover whose saturation functions are all good-diff
    under the current naming (apply is_good_cover first to rename if
    needed).  None means no qualifying monomial exists; the cover may still
    be colorable."""
    budget = ensure_budget(budget, 200_000_000, "certifying a good cover")
    bad = validate(cover)
    if bad:
        raise PreconditionError("; ".join(bad))
    signs = {}
    betas = {}
    for e in cover.graph.edges:
        sat = classify_saturation(cover, e)
        if sat.kind != GOOD_DIFF:
            raise PreconditionError(
                f"edge {e} classifies {sat.kind}, not good-diff; rename with "
                "is_good_cover or use certify_order3_cover"
            )
        signs[e] = -1
        betas[e] = sat.beta
    return _certify_cover(cover, signs, betas, "good-cover", budget)


def certify_order3_cover(cover: Cover, budget: Budget | None = None) -> Certificate | None:
    """Certificate for an arbitrary order-3 cover under its current naming,
    using the signed polynomial with B = -1 on good-diff edges and +1 on
    bad-sum edges."""
    budget = ensure_budget(budget, 200_000_000, "certifying an order-3 cover")
    if cover.t != 3:
        raise PreconditionError(f"the signed certifier needs order 3, got t={cover.t}")
    bad = validate(cover)
    if bad:
        raise PreconditionError("; ".join(bad))
    signs = {}
    betas = {}
    for e in cover.graph.edges:
        sat = classify_saturation(cover, e)
        assert sat.kind != BAD  # impossible over F_3
        signs[e] = -1 if sat.kind == GOOD_DIFF else 1
        betas[e] = sat.beta
    return _certify_cover(cover, signs, betas, "order3-cover", budget)


# ---------------------------------------------------------------------------
# sign-pattern sweep: chi_DP <= 3

def _sweep_signs(n, all_edges, fixed_edges, var_edges, prefix, collect, budget=None):
    """Depth-first sweep over sign assignments for var_edges (prefix fixed),
    sharing the expansion of common factor prefixes.

    Returns (passes, failures, patterns) where passes are
    (pattern, monomial, coefficient) triples in pattern-lex order
    (-1 before +1) and failures are bare patterns.
    """
    fld = make_field(3)
    caps = (2,) * n
    cur = {0: 1}
    for e in fixed_edges:
        cur = apply_factor_packed(cur, Factor(e[0], e[1], -1, 0), caps, fld)
    for e, s in zip(var_edges, prefix):
        cur = apply_factor_packed(cur, Factor(e[0], e[1], s, 0), caps, fld)
    passes = []
    failures = []
    signs = dict.fromkeys(all_edges, -1)
    for e, s in zip(var_edges, prefix):
        signs[e] = s
    rest = var_edges[len(prefix):]

    def rec(cur, idx):
        if budget is not None:
            budget.tick(max(len(cur), 1))
        if idx == len(rest):
            pattern = tuple(signs[e] for e in all_edges)
            if cur:
                if collect:
                    best_key = max(cur, key=lambda k: unpack_exponents(k, n))
                    passes.append((pattern, unpack_exponents(best_key, n), cur[best_key]))
                else:
                    passes.append((pattern, None, None))
            else:
                failures.append(pattern)
            return
        e = rest[idx]
        for s in (-1, 1):
            signs[e] = s
            rec(apply_factor_packed(cur, Factor(e[0], e[1], s, 0), caps, fld), idx + 1)
        signs[e] = -1

    rec(cur, 0)
    return passes, failures


def _sweep_worker(args):
    n, all_edges, fixed_edges, var_edges, prefix, collect = args
    return _sweep_signs(n, all_edges, fixed_edges, var_edges, prefix, collect)


def certify_dp3(
    g: Graph,
    use_spanning_tree: bool = False,
    jobs: int = 1,
    budget: Budget | None = None,
    collect_certificates: bool = True,
) -> Dp3Result:
    """Sweep sign patterns over F_3; if every pattern's polynomial has a
    monomial with exponents <= 2 and nonzero coefficient, chi_DP(G) <= 3.

    With use_spanning_tree (connected graphs containing a cycle only),
    spanning-tree edges are pinned to -1 and only the 2^(|E|-|V|+1) co-tree
    patterns are swept; the verdict is the same.

    The budget is enforced on the sequential path; with jobs > 1 the sweep
    is split into sign-prefix blocks over a process pool and merged in
    prefix order, so results are identical to the sequential run.
    """
    if not g.edges:
        raise PreconditionError("the sweep needs a graph with at least one edge")
    if use_spanning_tree:
        if not g.is_connected() or not g.contains_cycle():
            raise PreconditionError(
                "spanning-tree mode needs a connected graph containing a cycle"
            )
        fixed = spanning_tree(g)
        var_edges = tuple(e for e in g.edges if e not in set(fixed))
        mode = "spanning-tree"
    else:
        fixed = ()
        var_edges = g.edges
        mode = "all-edges"
    budget = ensure_budget(budget, 2_000_000_000, "sweeping sign patterns")

    if jobs <= 1 or len(var_edges) < 4:
        passes, failures = _sweep_signs(
            g.n, g.edges, fixed, var_edges, (), collect_certificates, budget
        )
    else:
        depth = max(2, math.ceil(math.log2(4 * jobs)))
        depth = min(depth, len(var_edges) - 1)
        prefixes = list(product((-1, 1), repeat=depth))
        tasks = [
            (g.n, g.edges, fixed, var_edges, p, collect_certificates) for p in prefixes
        ]
        passes = []
        failures = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for ps, fs in pool.map(_sweep_worker, tasks):
                passes.extend(ps)
                failures.extend(fs)

    patterns_tested = 1 << len(var_edges)
    certs = ()
    if collect_certificates:
        certs = tuple(
            Certificate(
                kind="dp3-pattern",
                t=3,
                n=g.n,
                monomial=mono,
                coefficient=coeff,
                pattern=pattern,
            )
            for pattern, mono, coeff in passes
        )
    failure = None
    if failures:
        failure = FailureReport(mode, tuple(sorted(failures)), patterns_tested)
    return Dp3Result(mode, patterns_tested, certs, failure)


# ---------------------------------------------------------------------------
# family certificates via the grid sum

def certify_unique_list(g: Graph, lists: dict[int, tuple[int, ...]], t: int) -> Certificate:
    """If the list assignment has exactly one proper coloring and the list
    sizes sum to |V| + |E|, the top coefficient of the graph polynomial on
    the list grid is nonzero, so every good prime cover of order t with the
    same size function is colorable."""
    fld = make_field(t)
    sets = {}
    for v in range(1, g.n + 1):
        if v not in lists or not lists[v]:
            raise PreconditionError(f"missing or empty list at vertex {v}")
        pts = tuple(sorted(set(lists[v])))
        for c in pts:
            fld.check(c)
        sets[v] = pts
    total = sum(len(sets[v]) for v in sets)
    if total != g.n + len(g.edges):
        raise PreconditionError(
            f"list sizes sum to {total}, need |V| + |E| = {g.n + len(g.edges)}"
        )
    colorings = proper_list_colorings(g, sets, limit=2)
    if len(colorings) != 1:
        raise PreconditionError(
            f"need exactly one proper list coloring, found "
            f"{'none' if not colorings else 'several'}"
        )
    point = colorings[0]
    poly = from_graph(g, fld)
    grid = Grid(fld, tuple(sets[v] for v in range(1, g.n + 1)))
    coeff = grid.coefficient(poly)
    # the grid sum collapses to the unique coloring's term
    n_inv = 1
    for pos, tbl in enumerate(grid.weight_tables()):
        n_inv = fld.mul(n_inv, fld.inv(tbl[point[pos]]))
    single = fld.mul(n_inv, poly.evaluate(point))
    if coeff != single:
        raise MethodDisagreement(f"grid sum {coeff} != single-point value {single}")
    assert coeff != 0
    monomial = tuple(len(sets[v]) - 1 for v in range(1, g.n + 1))
    return Certificate(
        kind="unique-list",
        t=t,
        n=g.n,
        monomial=monomial,
        coefficient=coeff,
        witness=point,
        verified=is_valid_transversal_for_lists(g, sets, point),
        work={"grid_points": math.prod(len(sets[v]) for v in sets)},
    )


def is_valid_transversal_for_lists(g: Graph, sets, point) -> bool:
    if any(point[v - 1] not in sets[v] for v in range(1, g.n + 1)):
        return False
    return all(point[i - 1] != point[j - 1] for i, j in g.edges)


def certify_cone_bipartite(g: Graph) -> Certificate:
    """For connected bipartite g with |V| = |E|: the cone K_1 + g (parts
    listed X then Y, X holding g's lowest vertex) has top coefficient
    2 * (-1)^{|X|} over F_3 for the monomial with exponent 0 on the apex
    and 2 elsewhere; every good prime cover of order 3 with one apex label
    and three labels elsewhere is therefore colorable.

    The vertex order matters: sorting the parts is what makes the closed
    form hold, and the colorability conclusion is order-independent.
    """
    if not g.is_connected():
        raise PreconditionError("the graph must be connected")
    parts = g.bipartition()
    if parts is None:
        raise PreconditionError("the graph must be bipartite")
    if g.n != len(g.edges):
        raise PreconditionError(
            f"need |V| = |E|, got |V|={g.n}, |E|={len(g.edges)}"
        )
    xs, ys = parts
    sorted_g = relabel(g, xs + ys)
    gp = cone(sorted_g)
    fld = make_field(3)
    poly = from_graph(gp, fld)
    target = (0,) + (2,) * sorted_g.n
    coeff = coefficient_at(poly, target, method="both")
    m = len(xs)
    expected = 2 if m % 2 == 0 else 1  # 2 * (-1)^m in F_3
    if coeff != expected:
        raise AssertionError(f"coefficient {coeff} != closed form {expected}")
    return Certificate(
        kind="cone-bipartite",
        t=3,
        n=gp.n,
        monomial=target,
        coefficient=coeff,
        work={"part_size": m},
    )


_CONGRUENCES = ((2, (1, 3), 0), (3, (1, 2), 1), (1, (2, 3), 2))


def certify_cone_unique3(g: Graph, class_order: tuple[int, int, int] | None = None) -> Certificate:
    """For uniquely 3-colorable g with 2|V| = |E| whose class sizes n_i and
    cross-edge counts m_{i,j} satisfy n_2 + m_{1,3} = 0, n_3 + m_{1,2} = 1
    and n_1 + m_{2,3} = 2 (mod 3) under some ordering of the classes: the
    cone K_1 + g has top coefficient 1 over F_4 for the monomial with
    exponent 0 on the apex and 3 elsewhere, so every good prime cover of
    order 4 with one apex label and four labels elsewhere is colorable.

    class_order, when given, pins which stored class plays each role
    (0-based indices into the unique partition); otherwise all six
    assignments are tried.
    """
    stats = unique_k_analysis(g, 3)
    if 2 * g.n != len(g.edges):
        raise PreconditionError(f"need 2|V| = |E|, got 2*{g.n} != {len(g.edges)}")
    orders = [class_order] if class_order is not None else [
        (0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)
    ]
    chosen = None
    last_failures = []
    for order in orders:
        ns = {role + 1: stats.sizes[order[role]] for role in range(3)}
        ms = {}
        for a in range(3):
            for b in range(a + 1, 3):
                key = tuple(sorted((order[a], order[b])))
                ms[(a + 1, b + 1)] = stats.cross.get((key[0] + 1, key[1] + 1), 0)
        failures = []
        for n_role, m_roles, want in _CONGRUENCES:
            got = (ns[n_role] + ms[m_roles]) % 3
            if got != want:
                failures.append(
                    f"n_{n_role} + m_{m_roles[0]},{m_roles[1]} = {got} != {want} (mod 3)"
                )
        if not failures:
            chosen = order
            break
        last_failures = failures
    if chosen is None:
        raise PreconditionError(
            "class congruences fail for every ordering; last tried: "
            + "; ".join(last_failures)
        )
    fld = make_field(4)
    gp = cone(g)
    poly = from_graph(gp, fld)
    target = (0,) + (3,) * g.n
    coeff = coefficient_at(poly, target, method="both")
    if coeff != 1:
        raise AssertionError(f"coefficient {coeff} != closed form 1")
    return Certificate(
        kind="cone-unique3",
        t=4,
        n=gp.n,
        monomial=target,
        coefficient=coeff,
        work={"class_order": chosen},
    )


# ---------------------------------------------------------------------------
# bounds report

@dataclass(frozen=True)
class DpBounds:
    lower: int
    upper: int
    exact: int | None
    notes: tuple[str, ...]


def dp_chromatic_bounds(
    g: Graph,
    budget: Budget | None = None,
    try_exact: bool = True,
    exact_cap: int = 20_000,
) -> DpBounds:
    """Lower/upper bounds on chi_DP with an exact value when they meet or an
    affordable exhaustive search resolves the gap.

    Lower bounds: the chromatic number, 3 for any graph containing a cycle,
    and 4 for squares of cycles of length 3k >= 6 via the explicit
    uncolorable cover (re-checked by the oracle).  Upper bounds: n for
    complete components, 3 for cycle components, otherwise the smaller of
    the maximum degree and the coloring number.
    """
    if g.n == 0:
        raise PreconditionError("the graph must have at least one vertex")
    budget = ensure_budget(budget, 100_000_000, "bounding chi_DP")
    lower = 1
    upper = 1
    notes = []
    exact_parts = []
    for ci, comp in enumerate(g.components(), start=1):
        sub = g.subgraph(comp)
        tag = f"component {ci} ({sub.n} vertices)"
        try:
            chi = chromatic_number(sub, sub.n, budget)
        except BudgetExceeded:
            notes.append(f"{tag}: chromatic number not resolved within budget")
            chi = 1
        lo = chi or 1
        notes.append(f"{tag}: chromatic number {lo}")
        if sub.contains_cycle() and lo < 3:
            lo = 3
            notes.append(f"{tag}: contains a cycle, lower bound 3")
        if sub.n % 3 == 0 and sub.n >= 6 and sub.edges == cycle_power(sub.n, 2).edges:
            cov = uncolorable_cover_c3k_square(sub.n // 3)
            if not validate(cov) and h_coloring_search(cov, budget) is None:
                lo = max(lo, 4)
                notes.append(f"{tag}: uncolorable 3-fold cover of C_{sub.n}^2, lower bound 4")
        if not sub.edges:
            up = 1
        elif sub.is_complete():
            up = sub.n
            notes.append(f"{tag}: complete, upper bound {up}")
        elif sub.is_cycle_graph():
            up = 3
            notes.append(f"{tag}: cycle, upper bound 3")
        else:
            up = min(sub.max_degree(), sub.coloring_number())
            notes.append(f"{tag}: upper bound min(max degree, coloring number) = {up}")
        part_exact = lo if lo == up else None
        if part_exact is None and try_exact and sub.edges:
            cotree = len(sub.edges) - sub.n + 1
            estimate = sum(math.factorial(m) ** cotree for m in range(lo, up))
            if estimate <= exact_cap:
                res = exact_dp_chromatic(sub, up, budget)
                if res.status == "exact":
                    part_exact = res.value
                    lo = up = res.value
                    notes.append(
                        f"{tag}: exact search over {res.covers_tested} covers gives {res.value}"
                    )
        exact_parts.append(part_exact)
        lower = max(lower, lo)
        upper = max(upper, up)
    exact = None
    if lower == upper:
        exact = lower
    elif all(e is not None for e in exact_parts):
        exact = max(exact_parts)
        lower = upper = exact
    return DpBounds(lower, upper, exact, tuple(notes))
