"""Canonical forms for small graphs via individualization-refinement.

Two graphs get the same certificate exactly when they are isomorphic.  The
refinement step repeatedly splits color classes by the multiset of neighbor
colors; when a stable partition still has a non-singleton cell, the search
individualizes each member of the first such cell in turn and takes the
lexicographically least certificate over all branches.  Exponential in the
worst case, entirely adequate for the vertex counts used here (<= 12 or so).
"""

from __future__ import annotations

from .graphs import Graph


def _refine(g: Graph, colors: dict) -> dict:
    verts = g.vertices
    while True:
        sig = {
            v: (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in verts
        }
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in verts}
        if new == colors:
            return colors
        colors = new


def _first_split_cell(g: Graph, colors: dict):
    cells: dict = {}
    for v in g.vertices:
        cells.setdefault(colors[v], []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _certificate(g: Graph, colors: dict) -> tuple:
    colors = _refine(g, colors)
    cell = _first_split_cell(g, colors)
    if cell is None:
        order = sorted(g.vertices, key=lambda v: colors[v])
        pos = {v: i for i, v in enumerate(order)}
        bits = 0
        for a, b in g.edges:
            i, j = pos[a], pos[b]
            if i > j:
                i, j = j, i
            bits |= 1 << (i * g.n + j)
        return (bits,)
    best = None
    for v in cell:
        branch = dict(colors)
        branch[v] = -1
        cert = _certificate(g, branch)
        if best is None or cert < best:
            best = cert
    return best


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant certificate: (n, m, adjacency bits under a
    canonical vertex order)."""
    colors = {v: 0 for v in g.vertices}
    return (g.n, g.m) + _certificate(g, colors)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g.vertices) != sorted(
        h.degree(v) for v in h.vertices
    ):
        return False
    return canonical_form(g) == canonical_form(h)
