"""Edge-product polynomials over F_t and their coefficient extraction.

A polynomial here is a product of factors (x_i + b*x_j - beta) with
b in {+1, -1}, one factor per edge of a graph (b = -1, beta = 0 gives the
plain graph polynomial prod (x_i - x_j)).  Coefficients of target monomials
are computed by two independent routes:

* sparse expansion: distribute factors over a map from exponent vectors to
  coefficients, discarding exponents that exceed per-variable caps (sound,
  exponents only grow);
* grid sum: the quantitative form of the Combinatorial Nullstellensatz,
  coefficient = sum over a product grid of N(p)^{-1} * f(p) where N is the
  product of pairwise differences within each coordinate's point set.

Exponent maps are keyed by packed base-16 digits (each exponent < 16),
little-endian in the variable index.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .budget import Budget, ensure_budget
from .errors import MethodDisagreement, PreconditionError
from .ff import FieldSpec
from .graphs import Graph, GraphError, Orientation

PACK_BITS = 4
PACK_MASK = 15
DEFAULT_MAX_TERMS = 2_000_000


class ExpansionLimitError(RuntimeError):
    """The sparse exponent map outgrew its size limit."""

    def __init__(self, size: int, limit: int):
        super().__init__(f"expansion map reached {size} terms (limit {limit})")
        self.size = size
        self.limit = limit


@dataclass(frozen=True)
class Factor:
    """One factor x_i + sign*x_j - beta with 1-based i < j, sign in {+1, -1}."""

    i: int
    j: int
    sign: int = -1
    beta: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise PreconditionError(f"factor sign must be +/-1, got {self.sign}")
        if not self.i < self.j:
            raise PreconditionError(f"factor needs i < j, got ({self.i}, {self.j})")


@dataclass(frozen=True)
class EdgeProductPolynomial:
    field: FieldSpec
    n: int
    factors: tuple[Factor, ...]

    def __post_init__(self):
        for f in self.factors:
            if not (1 <= f.i < f.j <= self.n):
                raise PreconditionError(f"factor ({f.i}, {f.j}) references bad variables")
            self.field.check(f.beta)

    @property
    def degree(self) -> int:
        return len(self.factors)

    def evaluate(self, point) -> int:
        """Value at a point of F_t^n (point is indexed 0..n-1)."""
        fld = self.field
        t = fld.order
        mul = fld.mul_table
        add = fld.add_table
        neg = fld.neg_table
        out = 1
        for f in self.factors:
            xj = point[f.j - 1]
            term = add[point[f.i - 1] * t + (xj if f.sign > 0 else neg[xj])]
            term = add[term * t + neg[f.beta]]
            if term == 0:
                return 0
            out = mul[out * t + term]
        return out


def from_graph(
    g: Graph,
    field: FieldSpec,
    signs: dict | None = None,
    offsets: dict | None = None,
) -> EdgeProductPolynomial:
    """Edge-product polynomial of g, factors in the graph's (i<j, lex) edge
    order.  Defaults sign = -1 and beta = 0 give the graph polynomial; when
    given, `signs`/`offsets` must cover exactly E(g)."""
    for given, label in ((signs, "signs"), (offsets, "offsets")):
        if given is not None and set(given) != set(g.edges):
            raise GraphError(f"{label} must cover exactly the edge set of the graph")
    factors = []
    for e in g.edges:
        s = signs[e] if signs is not None else -1
        b = offsets[e] if offsets is not None else 0
        factors.append(Factor(e[0], e[1], s, field.check(b)))
    return EdgeProductPolynomial(field, g.n, tuple(factors))


# ---------------------------------------------------------------------------
# packed exponent helpers

def pack_exponents(exps) -> int:
    key = 0
    for pos, e in enumerate(exps):
        if e < 0 or e > PACK_MASK:
            raise PreconditionError(f"exponent {e} out of the packed range 0..{PACK_MASK}")
        key |= e << (PACK_BITS * pos)
    return key


def unpack_exponents(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (PACK_BITS * pos)) & PACK_MASK for pos in range(n))


def apply_factor_packed(
    cur: dict[int, int],
    factor: Factor,
    caps,
    field: FieldSpec,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> dict[int, int]:
    """Distribute one factor over a packed exponent map, dropping exponents
    that exceed caps.  Stored coefficients are always nonzero."""
    t = field.order
    addt = field.add_table
    mult = field.mul_table
    si = PACK_BITS * (factor.i - 1)
    sj = PACK_BITS * (factor.j - 1)
    cap_i = caps[factor.i - 1]
    cap_j = caps[factor.j - 1]
    inc_i = 1 << si
    inc_j = 1 << sj
    sign_elt = 1 if factor.sign > 0 else field.neg_table[1]
    neg_beta = field.neg_table[factor.beta]
    out: dict[int, int] = {}
    get = out.get
    for key, c in cur.items():
        if (key >> si) & PACK_MASK < cap_i:
            k = key + inc_i
            v = get(k, 0)
            s = addt[v * t + c]
            if s:
                out[k] = s
            elif v:
                del out[k]
        if (key >> sj) & PACK_MASK < cap_j:
            cj = mult[sign_elt * t + c]
            k = key + inc_j
            v = get(k, 0)
            s = addt[v * t + cj]
            if s:
                out[k] = s
            elif v:
                del out[k]
        if neg_beta:
            cb = mult[neg_beta * t + c]
            v = get(key, 0)
            s = addt[v * t + cb]
            if s:
                out[key] = s
            elif v:
                del out[key]
    if len(out) > max_terms:
        raise ExpansionLimitError(len(out), max_terms)
    return out


def expand_packed(
    poly: EdgeProductPolynomial,
    caps,
    budget: Budget | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> dict[int, int]:
    if len(caps) != poly.n:
        raise PreconditionError(f"caps must have length {poly.n}")
    budget = ensure_budget(budget, 500_000_000, "expanding an edge-product polynomial")
    cur = {0: 1}
    for f in poly.factors:
        budget.tick(max(len(cur), 1))
        cur = apply_factor_packed(cur, f, caps, poly.field, max_terms)
    return cur


def expand_coefficients(
    poly: EdgeProductPolynomial,
    caps,
    budget: Budget | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> dict[tuple[int, ...], int]:
    """All monomials with nonzero coefficient and exponents within caps."""
    packed = expand_packed(poly, caps, budget, max_terms)
    return {unpack_exponents(k, poly.n): v for k, v in packed.items()}


def find_qualifying_monomial(
    poly: EdgeProductPolynomial,
    caps,
    budget: Budget | None = None,
) -> tuple[tuple[int, ...], int] | None:
    """Lexicographically greatest exponent vector within caps whose total
    degree equals deg(poly) and whose coefficient is nonzero, with that
    coefficient; None when no such monomial exists."""
    packed = expand_packed(poly, caps, budget)
    deg = poly.degree
    best = None
    best_val = 0
    for key, val in packed.items():
        exps = unpack_exponents(key, poly.n)
        if sum(exps) != deg:
            continue
        if best is None or exps > best:
            best = exps
            best_val = val
    if best is None:
        return None
    return best, best_val


# ---------------------------------------------------------------------------
# grid-sum coefficient extraction

@dataclass(frozen=True)
class Grid:
    """Per-variable point sets P_1..P_n with the weight N(p) = prod of
    pairwise differences within each coordinate's set."""

    field: FieldSpec
    point_sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for pos, pts in enumerate(self.point_sets):
            if not pts:
                raise PreconditionError(f"grid point set {pos + 1} is empty")
            if len(set(pts)) != len(pts):
                raise PreconditionError(f"grid point set {pos + 1} repeats an element")
            for p in pts:
                self.field.check(p)

    @classmethod
    def for_target(cls, field: FieldSpec, target) -> "Grid":
        """Default grid: the first target_i + 1 field elements per variable."""
        sets = []
        for pos, ti in enumerate(target):
            if ti + 1 > field.order:
                raise PreconditionError(
                    f"target exponent {ti} at variable {pos + 1} needs {ti + 1} grid "
                    f"points but F_{field.order} has only {field.order}; "
                    "use the expand method instead"
                )
            sets.append(tuple(range(ti + 1)))
        return cls(field, tuple(sets))

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(p) - 1 for p in self.point_sets)

    def weight_tables(self) -> list[dict[int, int]]:
        """Per coordinate: point -> prod over other points eps of (point - eps)."""
        fld = self.field
        tables = []
        for pts in self.point_sets:
            tbl = {}
            for p in pts:
                w = 1
                for eps in pts:
                    if eps != p:
                        w = fld.mul(w, fld.sub(p, eps))
                tbl[p] = w
            tables.append(tbl)
        return tables

    def coefficient(self, poly: EdgeProductPolynomial, budget: Budget | None = None) -> int:
        """Coefficient of prod x_i^{d_i} (d_i = |P_i| - 1) in poly, which must
        have degree at most sum d_i."""
        if len(self.point_sets) != poly.n:
            raise PreconditionError("grid and polynomial disagree on variable count")
        if poly.degree > sum(self.degrees()):
            raise PreconditionError(
                f"polynomial degree {poly.degree} exceeds the grid degree sum "
                f"{sum(self.degrees())}"
            )
        budget = ensure_budget(budget, 500_000_000, "summing over a coefficient grid")
        fld = self.field
        tables = self.weight_tables()
        inv_w = [{p: fld.inv(w) for p, w in tbl.items()} for tbl in tables]
        total = 0
        for point in product(*self.point_sets):
            budget.tick()
            val = poly.evaluate(point)
            if val == 0:
                continue
            n_inv = 1
            for pos, p in enumerate(point):
                n_inv = fld.mul(n_inv, inv_w[pos][p])
            total = fld.add(total, fld.mul(n_inv, val))
        return total


def coefficient_at(
    poly: EdgeProductPolynomial,
    target,
    method: str = "both",
    budget: Budget | None = None,
) -> int:
    """Coefficient of prod x_i^{target_i} by 'expand', 'grid', or 'both'.

    The grid route requires sum(target) == deg(poly) and target_i + 1 <= t;
    'both' cross-checks the two routes and raises on disagreement.
    """
    target = tuple(target)
    if len(target) != poly.n:
        raise PreconditionError(f"target must have length {poly.n}")
    if method not in ("expand", "grid", "both"):
        raise PreconditionError(f"unknown method {method!r}")
    results = {}
    if method in ("expand", "both"):
        packed = expand_packed(poly, target, budget)
        results["expand"] = packed.get(pack_exponents(target), 0)
    if method in ("grid", "both"):
        if sum(target) != poly.degree:
            raise PreconditionError(
                f"grid method needs sum(target) == degree ({poly.degree}), "
                f"got {sum(target)}"
            )
        results["grid"] = Grid.for_target(poly.field, target).coefficient(poly, budget)
    if method == "both" and results["expand"] != results["grid"]:
        raise MethodDisagreement(
            f"expand gave {results['expand']} but grid gave {results['grid']} "
            f"for target {target}"
        )
    return results[method if method != "both" else "expand"]


# ---------------------------------------------------------------------------
# circulation counting

def alon_tarsi_diff(orientation: Orientation, budget: Budget | None = None) -> int:
    """|# even - # odd| circulations (spanning subdigraphs with in-degree
    equal to out-degree everywhere), by a Gray-code walk over edge subsets
    with incremental degree deltas."""
    arcs = orientation.arcs()
    m = len(arcs)
    if m > 30:
        raise PreconditionError(f"{m} edges is beyond the 2^m circulation sweep")
    budget = ensure_budget(budget, 200_000_000, "enumerating circulations")
    n = orientation.graph.n
    balance = [0] * (n + 1)
    unbalanced = 0
    in_set = [False] * m
    even = 1  # the empty circulation
    odd = 0
    size = 0
    for step in range(1, 1 << m):
        budget.tick()
        e = (step & -step).bit_length() - 1
        tail, head = arcs[e]
        delta = -1 if in_set[e] else 1
        in_set[e] = not in_set[e]
        size += delta
        for v, d in ((tail, delta), (head, -delta)):
            was = balance[v]
            balance[v] = was + d
            if was == 0:
                unbalanced += 1
            elif balance[v] == 0:
                unbalanced -= 1
        if unbalanced == 0:
            if size % 2 == 0:
                even += 1
            else:
                odd += 1
    return abs(even - odd)
