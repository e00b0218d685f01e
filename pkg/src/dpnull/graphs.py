"""Simple undirected graphs with a fixed 1-based vertex order.

The vertex order is part of a graph's identity here: it fixes the sign of
every factor (x_i - x_j) in the edge-product polynomials, so constructions
document their numbering (cycles are numbered cyclically, joins put the
left operand first, bipartite graphs list one part before the other).

Also houses the brute-force chromatic utilities that serve as oracles for
the certifiers, and a small catalog generator for trees.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .budget import Budget, ensure_budget
from .errors import FormatError, NotUniquelyColorable


class GraphError(ValueError):
    """Invalid graph construction parameters."""


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices v_1..v_n; every edge (i, j) has i < j."""

    n: int
    edges: tuple[Edge, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        seen = set()
        for e in self.edges:
            i, j = e
            if not (1 <= i < j <= self.n):
                raise GraphError(f"edge {e} violates 1 <= i < j <= {self.n}")
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency.get(i, frozenset())

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(1, self.n + 1)), default=0)

    def components(self) -> list[tuple[int, ...]]:
        seen = set()
        comps = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            queue = [start]
            seen.add(start)
            comp = []
            while queue:
                v = queue.pop(0)
                comp.append(v)
                for w in sorted(self.adjacency[v]):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def contains_cycle(self) -> bool:
        return len(self.edges) > self.n - len(self.components())

    def is_cycle_graph(self) -> bool:
        return (
            self.n >= 3
            and self.is_connected()
            and all(self.degree(v) == 2 for v in range(1, self.n + 1))
        )

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def bipartition(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """(X, Y) with X holding the lowest vertex of each component, or None."""
        side = {}
        for comp in self.components():
            root = comp[0]
            side[root] = 0
            queue = [root]
            while queue:
                v = queue.pop(0)
                for w in sorted(self.adjacency[v]):
                    if w not in side:
                        side[w] = 1 - side[v]
                        queue.append(w)
                    elif side[w] == side[v]:
                        return None
        xs = tuple(v for v in range(1, self.n + 1) if side[v] == 0)
        ys = tuple(v for v in range(1, self.n + 1) if side[v] == 1)
        return xs, ys

    def coloring_number(self) -> int:
        """1 + degeneracy, via repeated minimum-degree removal."""
        if self.n == 0:
            return 0
        deg = {v: self.degree(v) for v in range(1, self.n + 1)}
        alive = set(deg)
        best = 0
        while alive:
            v = min(alive, key=lambda u: (deg[u], u))
            best = max(best, deg[v])
            alive.discard(v)
            for w in self.adjacency[v]:
                if w in alive:
                    deg[w] -= 1
        return best + 1

    def subgraph(self, vertices: tuple[int, ...]) -> "Graph":
        """Induced subgraph, vertices renumbered 1..k in the given order."""
        index = {v: i + 1 for i, v in enumerate(vertices)}
        keep = set(vertices)
        edges = []
        for i, j in self.edges:
            if i in keep and j in keep:
                a, b = index[i], index[j]
                edges.append((a, b) if a < b else (b, a))
        return Graph(len(vertices), tuple(edges))


def from_edges(n: int, edges, name: str = "") -> Graph:
    norm = []
    for i, j in edges:
        if i == j:
            raise GraphError(f"loop at vertex {i}")
        norm.append((i, j) if i < j else (j, i))
    return Graph(n, tuple(norm), name)


def empty_graph(n: int) -> Graph:
    return Graph(n, (), f"E{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs at least 1 vertex")
    return Graph(n, tuple((i, i + 1) for i in range(1, n)), f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle length must be at least 3")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return from_edges(n, edges, f"C{n}")


def cycle_power(n: int, k: int) -> Graph:
    """C_n^k: vertices in cyclic order, edges between cyclic distance <= k."""
    if n < 3 or k < 1:
        raise GraphError("cycle power needs n >= 3, k >= 1")
    edges = []
    for i, j in combinations(range(1, n + 1), 2):
        d = min(j - i, n - (j - i))
        if d <= k:
            edges.append((i, j))
    return Graph(n, tuple(edges), f"C{n}^{k}")


def complete(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(1, n + 1), 2)), f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both parts need at least one vertex")
    edges = tuple((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1))
    return Graph(a + b, edges, f"K{a},{b}")


def complete_bipartite_minus_matching(a: int, b: int, size: int) -> Graph:
    """K_{a,b} minus the matching (1, a+1), ..., (size, a+size)."""
    if size < 0 or size > min(a, b):
        raise GraphError(f"matching size {size} does not fit in K_{a},{b}")
    removed = {(i, a + i) for i in range(1, size + 1)}
    g = complete_bipartite(a, b)
    return Graph(g.n, tuple(e for e in g.edges if e not in removed), f"K{a},{b}-M{size}")


def join(g1: Graph, g2: Graph) -> Graph:
    """Join: g1's vertices first, then g2's, plus all cross edges."""
    edges = list(g1.edges)
    for i, j in g2.edges:
        edges.append((i + g1.n, j + g1.n))
    for i in range(1, g1.n + 1):
        for j in range(1, g2.n + 1):
            edges.append((i, j + g1.n))
    name = ""
    if g1.name and g2.name:
        name = f"{g1.name}+{g2.name}"
    return Graph(g1.n + g2.n, tuple(edges), name)


def cone(g: Graph) -> Graph:
    """K_1 joined with g; the universal vertex is v_1."""
    out = join(Graph(1, (), "K1"), g)
    return Graph(out.n, out.edges, f"cone({g.name})" if g.name else "")


def relabel(g: Graph, order: tuple[int, ...]) -> Graph:
    """Graph with vertex order[i]-1 ... renumbered so order[k] becomes v_{k+1}."""
    if sorted(order) != list(range(1, g.n + 1)):
        raise GraphError("relabel order must be a permutation of the vertices")
    return g.subgraph(order)


_FAMILIES = {
    "path": path,
    "cycle": cycle,
    "cycle_power": cycle_power,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "complete_bipartite_minus_matching": complete_bipartite_minus_matching,
    "empty": empty_graph,
}


def make_family(tag: str, *params: int) -> Graph:
    """Dispatch to a named construction; see also parse_graph_name for CLI text."""
    try:
        ctor = _FAMILIES[tag]
    except KeyError:
        raise GraphError(f"unknown family {tag!r}; known: {sorted(_FAMILIES)}") from None
    return ctor(*params)


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_graph_name(text: str) -> Graph | None:
    """Parse compact family names like p5, c6sq, c9^2, k4, k4,4-m2, e2,
    cone(c4), join(e2,p5).  Returns None when the text matches no family."""
    s = text.strip().lower()
    m = re.fullmatch(r"p(\d+)", s)
    if m:
        return path(int(m.group(1)))
    m = re.fullmatch(r"c(\d+)sq", s)
    if m:
        return cycle_power(int(m.group(1)), 2)
    m = re.fullmatch(r"c(\d+)\^(\d+)", s)
    if m:
        return cycle_power(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"c(\d+)", s)
    if m:
        return cycle(int(m.group(1)))
    m = re.fullmatch(r"k(\d+),(\d+)-m(\d+)", s)
    if m:
        return complete_bipartite_minus_matching(*(int(x) for x in m.groups()))
    m = re.fullmatch(r"k(\d+),(\d+)", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"k(\d+)", s)
    if m:
        return complete(int(m.group(1)))
    m = re.fullmatch(r"e(\d+)", s)
    if m:
        return empty_graph(int(m.group(1)))
    m = re.fullmatch(r"cone\((.+)\)", s)
    if m:
        inner = parse_graph_name(m.group(1))
        return cone(inner) if inner is not None else None
    m = re.fullmatch(r"join\((.+)\)", s)
    if m:
        parts = _split_top_level(m.group(1))
        if len(parts) == 2:
            g1 = parse_graph_name(parts[0])
            g2 = parse_graph_name(parts[1])
            if g1 is not None and g2 is not None:
                return join(g1, g2)
    return None


# ---------------------------------------------------------------------------
# orientations

@dataclass(frozen=True)
class Orientation:
    """One direction per edge: bit 1 means i -> j for the stored edge (i, j)."""

    graph: Graph
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != len(self.graph.edges):
            raise GraphError("need exactly one direction bit per edge")

    def outdegrees(self) -> tuple[int, ...]:
        d = [0] * self.graph.n
        for (i, j), b in zip(self.graph.edges, self.bits):
            d[(i if b else j) - 1] += 1
        return tuple(d)

    def indegrees(self) -> tuple[int, ...]:
        d = [0] * self.graph.n
        for (i, j), b in zip(self.graph.edges, self.bits):
            d[(j if b else i) - 1] += 1
        return tuple(d)

    def arcs(self) -> tuple[Edge, ...]:
        return tuple((i, j) if b else (j, i) for (i, j), b in zip(self.graph.edges, self.bits))


# ---------------------------------------------------------------------------
# spanning structure and coloring oracles

def spanning_tree(g: Graph) -> tuple[Edge, ...]:
    """Deterministic spanning forest: BFS from the lowest vertex per component."""
    tree = []
    for comp in g.components():
        root = comp[0]
        seen = {root}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in sorted(g.adjacency[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
                    tree.append((v, w) if v < w else (w, v))
    return tuple(sorted(tree))


def chromatic_number(g: Graph, kmax: int, budget: Budget | None = None) -> int | None:
    """Least k <= kmax with a proper k-coloring, or None when all fail.

    Backtracking with saturation-degree vertex selection (ties by index) and
    new-color symmetry breaking.
    """
    budget = ensure_budget(budget, 50_000_000, "computing the chromatic number")
    if g.n == 0:
        return 0
    adj = g.adjacency

    def colorable(k: int) -> bool:
        colors = {}
        neighbor_colors = {v: set() for v in range(1, g.n + 1)}

        def backtrack(used: int) -> bool:
            budget.tick()
            if len(colors) == g.n:
                return True
            v = max(
                (u for u in range(1, g.n + 1) if u not in colors),
                key=lambda u: (len(neighbor_colors[u]), len(adj[u]), -u),
            )
            for c in range(min(used + 1, k)):
                if c in neighbor_colors[v]:
                    continue
                colors[v] = c
                touched = [w for w in adj[v] if w not in colors and c not in neighbor_colors[w]]
                for w in touched:
                    neighbor_colors[w].add(c)
                if backtrack(max(used, c + 1)):
                    return True
                for w in touched:
                    neighbor_colors[w].discard(c)
                del colors[v]
            return False

        return backtrack(0)

    for k in range(1, kmax + 1):
        if colorable(k):
            return k
    return None


def count_colorings(g: Graph, lists: dict[int, tuple[int, ...]]) -> int:
    """Exact number of proper colorings with per-vertex allowed color sets."""
    return len(_colorings(g, lists, limit=None))


def proper_list_colorings(
    g: Graph, lists: dict[int, tuple[int, ...]], limit: int | None = None
) -> list[tuple[int, ...]]:
    """Proper list colorings in lexicographic order, at most `limit` of them."""
    return _colorings(g, lists, limit)


def _colorings(g, lists, limit: int | None):
    """Collect proper list colorings by backtracking, stopping at `limit`."""
    earlier = {
        v: tuple(u for u in g.adjacency[v] if u < v) for v in range(1, g.n + 1)
    }
    out = []
    assign = [0] * (g.n + 1)

    def backtrack(v: int):
        if limit is not None and len(out) >= limit:
            return
        if v > g.n:
            out.append(tuple(assign[1:]))
            return
        for c in sorted(lists[v]):
            if all(assign[u] != c for u in earlier[v]):
                assign[v] = c
                backtrack(v + 1)
        assign[v] = 0

    backtrack(1)
    return out


@dataclass(frozen=True)
class ColorClassStats:
    """The unique partition into k independent classes, with its edge counts.

    Classes are ordered by their smallest vertex; cross[(a, b)] with a < b
    (1-based class indices) counts the edges between class a and class b.
    """

    k: int
    classes: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    cross: dict[Edge, int]


def unique_k_analysis(g: Graph, k: int) -> ColorClassStats:
    """Stats for the unique partition of V into exactly k independent classes.

    Raises NotUniquelyColorable when there are zero or several such
    partitions (unordered; enumerated via restricted-growth assignments).
    """
    if k < 1:
        raise GraphError("k must be positive")
    partitions = []
    assign = {}

    def backtrack(v: int, used: int):
        if len(partitions) >= 2:
            return
        if v > g.n:
            if used == k:
                classes = [[] for _ in range(k)]
                for u, c in assign.items():
                    classes[c].append(u)
                partitions.append(tuple(tuple(sorted(c)) for c in classes))
            return
        if used + (g.n - v + 1) < k:
            return
        for c in range(min(used + 1, k)):
            if any(w in assign and assign[w] == c for w in g.adjacency[v]):
                continue
            assign[v] = c
            backtrack(v + 1, max(used, c + 1))
            del assign[v]

    backtrack(1, 0)
    if len(partitions) != 1:
        raise NotUniquelyColorable(k, len(partitions))
    classes = partitions[0]
    cross = {}
    index = {}
    for ci, cls in enumerate(classes, start=1):
        for v in cls:
            index[v] = ci
    for i, j in g.edges:
        a, b = sorted((index[i], index[j]))
        cross[(a, b)] = cross.get((a, b), 0) + 1
    return ColorClassStats(k, classes, tuple(len(c) for c in classes), cross)


# ---------------------------------------------------------------------------
# text format: '#' comments, "p <n> <m>" header, "e <i> <j>" lines, i < j

def write_graph(g: Graph) -> str:
    lines = [f"p {g.n} {len(g.edges)}"]
    lines.extend(f"e {i} {j}" for i, j in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    n = None
    m = None
    edges = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("duplicate header", ln)
            if len(parts) != 3:
                raise FormatError("header must be 'p <n> <m>'", ln)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("header counts must be integers", ln) from None
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge before header", ln)
            if len(parts) != 3:
                raise FormatError("edge must be 'e <i> <j>'", ln)
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("edge endpoints must be integers", ln) from None
            if not (1 <= i < j <= n):
                raise FormatError(f"edge ({i}, {j}) violates 1 <= i < j <= {n}", ln)
            edges.append((i, j))
        else:
            raise FormatError(f"unknown record {parts[0]!r}", ln)
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if m != len(edges):
        raise FormatError(f"header promised {m} edges, found {len(edges)}")
    try:
        return Graph(n, tuple(edges))
    except GraphError as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# tree catalog (used by the regression and acceptance suites)

def _tree_centers(n: int, edges) -> list[int]:
    if n == 1:
        return [1]
    deg = {v: 0 for v in range(1, n + 1)}
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
        deg[i] += 1
        deg[j] += 1
    alive = set(range(1, n + 1))
    layer = [v for v in alive if deg[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for w in adj[v]:
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(alive)


def _rooted_key(root: int, n: int, edges):
    adj = {v: [] for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)

    def key(v: int, parent: int):
        return tuple(sorted(key(w, v) for w in adj[v] if w != parent))

    return key(root, 0)


def tree_key(n: int, edges) -> tuple:
    """Isomorphism-invariant canonical key for a tree (center-rooted encoding)."""
    return min(_rooted_key(c, n, edges) for c in _tree_centers(n, edges))


def tree_catalog(max_n: int) -> list[Graph]:
    """All pairwise non-isomorphic trees on 1..max_n vertices.

    Grown by leaf attachment with canonical-key deduplication; within each
    size, output order follows the canonical keys, so the catalog is stable.
    """
    catalog = []
    level = {tree_key(1, ()): ()}
    if max_n >= 1:
        catalog.append(Graph(1, (), "T1.1"))
    for n in range(2, max_n + 1):
        nxt = {}
        for edges in level.values():
            for v in range(1, n):
                cand = edges + ((v, n),)
                k = tree_key(n, cand)
                if k not in nxt:
                    nxt[k] = cand
        level = {k: nxt[k] for k in sorted(nxt)}
        for idx, edges in enumerate(level.values(), start=1):
            catalog.append(Graph(n, edges, f"T{n}.{idx}"))
    return catalog
