"""Simple undirected graphs on integer-labelled points.

Everything downstream (triple systems, packings, edge colorings) is
phrased in terms of these graphs, so the representation is deliberately
boring: a sorted tuple of vertex labels and a set of edges stored as
ordered pairs (a, b) with a < b.  Graphs are immutable and hashable.

Vertex labels are arbitrary nonnegative integers; they need not be
contiguous.  Symbolic names (the point at infinity in one of the leave
constructions, say) are mapped to integers before they get here.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Point = int
Edge = tuple[int, int]


def _norm_edge(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


class Graph:
    """Immutable undirected simple graph."""

    __slots__ = ("vertices", "edges", "_edge_set", "_adj", "_hash")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        vs = sorted(set(vertices))
        for v in vs:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"vertex labels must be nonnegative integers, got {v!r}")
        vset = set(vs)
        es = set()
        for a, b in edges:
            e = _norm_edge(a, b)
            if e[0] not in vset or e[1] not in vset:
                raise ValueError(f"edge {e} has an endpoint outside the vertex set")
            es.add(e)
        self.vertices: tuple[int, ...] = tuple(vs)
        self.edges: tuple[Edge, ...] = tuple(sorted(es))
        self._edge_set = frozenset(self.edges)
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        self._hash = hash((self.vertices, self.edges))

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, a: int, b: int) -> bool:
        if a == b:
            return False
        return _norm_edge(a, b) in self._edge_set

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def edge_set(self) -> frozenset:
        return self._edge_set

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- construction ---------------------------------------------------------


def _as_points(points: int | Iterable[int]) -> list[int]:
    if isinstance(points, int):
        return list(range(points))
    return sorted(set(points))


def make_complete(points: int | Iterable[int]) -> Graph:
    """Complete graph.  ``points`` is a label iterable or a count n
    (labels 0..n-1)."""
    vs = _as_points(points)
    edges = [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]
    return Graph(vs, edges)


def make_complete_bipartite(side_a: int | Iterable[int], side_b: Iterable[int] | None = None) -> Graph:
    """Complete bipartite graph between two disjoint label sets.

    ``make_complete_bipartite(s, t)`` with two iterables joins every label
    of s to every label of t.  With two ints a, b it uses labels 0..a-1 and
    a..a+b-1.
    """
    if isinstance(side_a, int):
        if not isinstance(side_b, int):
            raise ValueError("mixed int/iterable arguments")
        a = list(range(side_a))
        b = list(range(side_a, side_a + side_b))
    else:
        a = sorted(set(side_a))
        b = sorted(set(side_b or ()))
    if set(a) & set(b):
        raise ValueError("bipartition classes must be disjoint")
    return Graph(a + b, [(x, y) for x in a for y in b])


def make_edgeless(points: int | Iterable[int]) -> Graph:
    return Graph(_as_points(points))


def join(g: Graph, h: Graph) -> Graph:
    """Graph join: g and h side by side plus every cross edge.

    Vertex sets must be disjoint.  join(edgeless Z, G) is the host whose
    triangle decompositions encode proper |Z|-edge-colorings of G.
    """
    if set(g.vertices) & set(h.vertices):
        raise ValueError("join requires disjoint vertex sets")
    edges = list(g.edges) + list(h.edges)
    edges += [(a, b) for a in g.vertices for b in h.vertices]
    return Graph(g.vertices + h.vertices, edges)


def union(g: Graph, h: Graph) -> Graph:
    """Union of vertex sets and edge sets (labels may overlap)."""
    return Graph(set(g.vertices) | set(h.vertices), list(g.edges) + list(h.edges))


def subtract(g: Graph, h: Graph) -> Graph:
    """Remove h's edges from g.  Requires V(h) ⊆ V(g) and E(h) ⊆ E(g);
    anything else is a construction bug upstream and raises."""
    if not set(h.vertices) <= set(g.vertices):
        raise ValueError("subtract: V(h) must be contained in V(g)")
    missing = [e for e in h.edges if e not in g.edge_set()]
    if missing:
        raise ValueError(f"subtract: edge {missing[0]} not present in g")
    keep = g.edge_set() - h.edge_set()
    return Graph(g.vertices, keep)


def complement(g: Graph) -> Graph:
    """Complement on the same vertex set."""
    vs = g.vertices
    edges = [
        (vs[i], vs[j])
        for i in range(len(vs))
        for j in range(i + 1, len(vs))
        if (vs[i], vs[j]) not in g.edge_set()
    ]
    return Graph(vs, edges)


def relabel(g: Graph, mapping: dict[int, int]) -> Graph:
    """Apply an injective vertex relabelling."""
    img = [mapping[v] for v in g.vertices]
    if len(set(img)) != len(img):
        raise ValueError("relabelling is not injective")
    return Graph(img, [(mapping[a], mapping[b]) for a, b in g.edges])


# -- predicates -----------------------------------------------------------


def degree(g: Graph, x: int) -> int:
    return g.degree(x)


def is_even(g: Graph) -> bool:
    """True when every vertex has even degree (necessary for any triangle
    decomposition)."""
    return all(g.degree(v) % 2 == 0 for v in g.vertices)


def is_bipartite(g: Graph) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """2-color by BFS; returns (flag, (side0, side1) or None)."""
    color: dict[int, int] = {}
    for root in g.vertices:
        if root in color:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False, None
    side0 = tuple(v for v in g.vertices if color[v] == 0)
    side1 = tuple(v for v in g.vertices if color[v] == 1)
    return True, (side0, side1)


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of connected components, each sorted, ordered by their
    smallest vertex."""
    seen: set[int] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        stack = [root]
        comp = []
        seen.add(root)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    vset = set(vs)
    return Graph(vset, [e for e in g.edges if e[0] in vset and e[1] in vset])


# -- standard graphs ------------------------------------------------------


def petersen() -> Graph:
    """The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return Graph(range(10), edges)


def k4() -> Graph:
    return make_complete(4)


def k33() -> Graph:
    return make_complete_bipartite(3, 3)


def prism(k: int) -> Graph:
    """Circular ladder: two k-cycles 0..k-1 and k..2k-1 joined by rungs."""
    if k < 3:
        raise ValueError("prism(k) requires k >= 3")
    edges = []
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((k + i, k + (i + 1) % k))
        edges.append((i, k + i))
    return Graph(range(2 * k), edges)


def moebius_ladder(k: int) -> Graph:
    """2k-cycle 0..2k-1 plus the k diameters {i, i+k}."""
    if k < 2:
        raise ValueError("moebius_ladder(k) requires k >= 2")
    n = 2 * k
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, i + k) for i in range(k)]
    return Graph(range(n), edges)


def circulant(n: int, connections: Iterable[int]) -> Graph:
    """Circulant graph on Z_n with the given connection set."""
    if n < 1:
        raise ValueError("circulant requires n >= 1")
    conns = sorted(set(connections))
    for s in conns:
        if not 1 <= s <= n // 2:
            raise ValueError(f"connection {s} outside 1..{n // 2}")
    edges = []
    for s in conns:
        for i in range(n):
            edges.append((i, (i + s) % n))
    return Graph(range(n), edges)


def standard_graph(name: str, *params: int) -> Graph:
    """Dispatch by name: petersen, k4, k33, prism(k), moebius(k),
    circulant(n, s1, s2, ...)."""
    name = name.lower()
    if name == "petersen":
        return petersen()
    if name == "k4":
        return k4()
    if name == "k33":
        return k33()
    if name == "prism":
        if len(params) != 1:
            raise ValueError("prism takes one parameter")
        return prism(params[0])
    if name in ("moebius", "moebius_ladder"):
        if len(params) != 1:
            raise ValueError("moebius takes one parameter")
        return moebius_ladder(params[0])
    if name == "circulant":
        if len(params) < 2:
            raise ValueError("circulant takes n and at least one connection")
        return circulant(params[0], params[1:])
    raise ValueError(f"unknown standard graph {name!r}")
