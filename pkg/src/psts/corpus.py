"""Exhaustive small-graph corpora for sweep tests.

connected_cubic_classes enumerates connected cubic graphs up to isomorphism
by completing vertex neighborhoods in label order.  Any connected cubic
graph can be labeled by breadth-first search so that vertex 0 sees exactly
{1,2,3} and every later vertex has an earlier neighbor; the search generates
every labeling with those two properties and collapses duplicates, so no
class is missed.  Duplicate collapsing buckets leaves by a refined
common-neighbor invariant, then runs a backtracking isomorphism test
against the bucket's representatives with candidate images restricted to
matching invariant ranks; canonical forms are reserved for the handful of
survivors (tests cross-check them via canon.canonical_form).

even_graph_classes builds even graphs (all degrees even) on n vertices by
lifting every class on n-1 vertices: attaching a new vertex to the odd set
of G yields an even graph, and deleting any vertex of an even graph H
leaves exactly such a G, so the lift reaches every class.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .canon import canonical_form
from .graphs import Graph, k4, k33, prism, moebius_ladder, petersen


def _adj_masks(g: Graph) -> list[int]:
    idx = {v: i for i, v in enumerate(g.vertices)}
    adj = [0] * g.n
    for a, b in g.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    return adj


def _mask_graph(adj: list[int]) -> Graph:
    n = len(adj)
    edges = [
        (a, b) for a in range(n) for b in range(a + 1, n) if (adj[a] >> b) & 1
    ]
    return Graph(range(n), edges)


def _neighbors_of(adj: list[int], a: int) -> list[int]:
    out = []
    row = adj[a]
    while row:
        low = row & -row
        out.append(low.bit_length() - 1)
        row ^= low
    return out


def _vertex_invariants(adj: list[int]) -> tuple:
    """Per-vertex invariant ranks: degree and common-neighbor signature,
    sharpened by two rounds of neighborhood refinement.  Equal graphs get
    equal rank vectors under any relabeling, so these both pre-filter
    isomorphism tests and partition the candidate images."""
    n = len(adj)
    nbrs = [_neighbors_of(adj, a) for a in range(n)]
    inv = [
        (len(nbrs[a]), tuple(sorted((adj[a] & adj[b]).bit_count() for b in nbrs[a])))
        for a in range(n)
    ]
    for _ in range(2):
        rank = {t: r for r, t in enumerate(sorted(set(inv)))}
        inv = [
            (rank[inv[a]], tuple(sorted(rank[inv[b]] for b in nbrs[a])))
            for a in range(n)
        ]
    rank = {t: r for r, t in enumerate(sorted(set(inv)))}
    return tuple(rank[x] for x in inv)


def _common_neighbor_profile(adj: list[int]) -> tuple:
    return tuple(sorted(_vertex_invariants(adj)))


def _iso_masks(adj_a: list[int], adj_b: list[int]) -> bool:
    if len(adj_a) != len(adj_b):
        return False
    return _iso_refined(adj_a, _vertex_invariants(adj_a), adj_b, _vertex_invariants(adj_b))


def _iso_refined(adj_a: list[int], inv_a: tuple, adj_b: list[int], inv_b: tuple) -> bool:
    n = len(adj_a)
    if sorted(inv_a) != sorted(inv_b):
        return False
    byinv: dict[int, list[int]] = {}
    for b in range(n):
        byinv.setdefault(inv_b[b], []).append(b)
    # visit the rarest invariant first, then grow along edges so every
    # placement is constrained by an already-mapped neighbor when possible
    start = min(range(n), key=lambda i: (len(byinv[inv_a[i]]), i))
    order = [start]
    seen = 1 << start
    while len(order) < n:
        nxt = -1
        for v in order:
            free = adj_a[v] & ~seen
            if free:
                nxt = (free & -free).bit_length() - 1
                break
        if nxt < 0:
            nxt = min(
                (i for i in range(n) if not (seen >> i) & 1),
                key=lambda i: (len(byinv[inv_a[i]]), i),
            )
        order.append(nxt)
        seen |= 1 << nxt

    mapping = [-1] * n
    used = [False] * n

    def rec(k: int, mapped_mask: int) -> bool:
        if k == n:
            return True
        i = order[k]
        want = 0
        for j in _neighbors_of(adj_a, i):
            if mapping[j] >= 0:
                want |= 1 << mapping[j]
        for b in byinv[inv_a[i]]:
            if used[b] or (adj_b[b] & mapped_mask) != want:
                continue
            mapping[i] = b
            used[b] = True
            if rec(k + 1, mapped_mask | (1 << b)):
                return True
            mapping[i] = -1
            used[b] = False
        return False

    return rec(0, 0)


def _cubic_leaves(n: int):
    adj = [0] * n
    deg = [0] * n

    def add(a, b):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        deg[a] += 1
        deg[b] += 1

    def pop(a, b):
        adj[a] &= ~(1 << b)
        adj[b] &= ~(1 << a)
        deg[a] -= 1
        deg[b] -= 1

    for w in (1, 2, 3):
        add(0, w)

    def rec():
        v = next((x for x in range(n) if deg[x] < 3), None)
        if v is None:
            yield list(adj)
            return
        if deg[v] == 0:
            # every edge from here on joins larger labels, so v could never
            # gain an earlier neighbor and the graph would be disconnected
            return
        need = 3 - deg[v]
        cands = [
            w for w in range(v + 1, n) if deg[w] < 3 and not (adj[v] >> w) & 1
        ]
        for chosen in combinations(cands, need):
            for w in chosen:
                add(v, w)
            yield from rec()
            for w in chosen:
                pop(v, w)

    yield from rec()


@lru_cache(maxsize=None)
def _connected_cubic_classes(n: int) -> tuple[Graph, ...]:
    buckets: dict[tuple, list[tuple[list[int], tuple]]] = {}
    reps: list[list[int]] = []
    for leaf in _cubic_leaves(n):
        inv = _vertex_invariants(leaf)
        bucket = buckets.setdefault(tuple(sorted(inv)), [])
        if not any(_iso_refined(leaf, inv, seen, seen_inv) for seen, seen_inv in bucket):
            bucket.append((list(leaf), inv))
            reps.append(list(leaf))
    return tuple(_mask_graph(adj) for adj in reps)


def connected_cubic_classes(n: int) -> list[Graph]:
    """All connected cubic graphs on n vertices, one per isomorphism class,
    in generation order."""
    if n < 4 or n % 2:
        raise ValueError("cubic graphs need even order >= 4")
    return list(_connected_cubic_classes(n))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Union with h relabeled onto fresh integers above g's largest label."""
    off = (max(g.vertices) + 1 if g.n else 0) - (min(h.vertices) if h.n else 0)
    verts = list(g.vertices) + [v + off for v in h.vertices]
    edges = list(g.edges) + [(a + off, b + off) for a, b in h.edges]
    return Graph(verts, edges)


def cubic_corpus(max_n: int = 10) -> list[tuple[str, Graph]]:
    """Named cubic graphs, connected and not, up to max_n vertices."""
    out: list[tuple[str, Graph]] = []
    for n in range(4, max_n + 1, 2):
        for i, g in enumerate(connected_cubic_classes(n), start=1):
            out.append((f"cubic{n}_{i}", g))
    if max_n >= 8:
        out.append(("k4+k4", disjoint_union(k4(), k4())))
    if max_n >= 10:
        out.append(("k4+k33", disjoint_union(k4(), k33())))
        out.append(("k4+prism3", disjoint_union(k4(), prism(3))))
    return out


@lru_cache(maxsize=None)
def _classes_of_size(size: int) -> tuple[Graph, ...]:
    if size == 0:
        return (Graph([], []),)
    seen: set = set()
    level: list[Graph] = []
    for g in _classes_of_size(size - 1):
        base_edges = list(g.edges)
        for mask in range(1 << (size - 1)):
            edges = base_edges + [
                (w, size - 1) for w in range(size - 1) if (mask >> w) & 1
            ]
            h = Graph(range(size), edges)
            cert = canonical_form(h)
            if cert in seen:
                continue
            seen.add(cert)
            level.append(h)
    return tuple(level)


def graph_classes_up_to(n: int) -> list[Graph]:
    """One representative of every isomorphism class on at most n vertices,
    grown by attaching a fresh vertex in all possible ways."""
    out: list[Graph] = []
    for size in range(n + 1):
        out.extend(_classes_of_size(size))
    return out


def even_graph_classes(n: int) -> list[Graph]:
    """Graphs on exactly n vertices with every degree even, one per class."""
    if n == 0:
        return [Graph([], [])]
    seen: set = set()
    out: list[Graph] = []
    for g in graph_classes_up_to(n - 1):
        if g.n != n - 1:
            continue
        odd = [v for v in g.vertices if g.degree(v) % 2]
        h = Graph(range(n), list(g.edges) + [(v, n - 1) for v in odd])
        cert = canonical_form(h)
        if cert not in seen:
            seen.add(cert)
            out.append(h)
    return out


def named_small_corpus() -> list[tuple[str, Graph]]:
    """The standard handful used in documentation and smoke tests."""
    return [
        ("k4", k4()),
        ("k33", k33()),
        ("prism3", prism(3)),
        ("prism4", prism(4)),
        ("prism5", prism(5)),
        ("moebius3", moebius_ladder(3)),
        ("moebius4", moebius_ladder(4)),
        ("petersen", petersen()),
    ]
