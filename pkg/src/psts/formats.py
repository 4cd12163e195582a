"""Plain-text formats for graphs, triple systems, and edge colorings.

Emission is canonical: vertices, edges, and triples are sorted, colors are
renamed to 1..c by palette rank, and equal objects always produce
byte-identical text.  Parsing is strict (token counts, duplicate lines,
loops, undeclared endpoints, and count mismatches are all errors that name
the offending line) but order-insensitive, so emit(parse(text)) == text
exactly when text was canonical.

    graph <n> <m>          psts <u> <k>          ecol <m> <c>
    v <label>  (n lines)   p <label>  (u lines)  c <a> <b> <color>  (m lines)
    e <a> <b>  (m lines)   t <a> <b> <c>  (k lines)

Blank lines and lines starting with '#' are ignored.
"""

from __future__ import annotations

from .design import TripleSystem
from .graphs import Graph
from .coloring import EdgeColoring


class FormatError(ValueError):
    """Malformed input text; the message names the line."""


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(parts, lineno, what):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer {what}") from None


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def emit_graph(g: Graph) -> str:
    out = [f"graph {g.n} {g.m}"]
    out.extend(f"v {v}" for v in g.vertices)
    out.extend(f"e {a} {b}" for a, b in g.edges)
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    lines = _tokens(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("empty input; expected a 'graph <n> <m>' header") from None
    if len(head) != 3 or head[0] != "graph":
        raise FormatError(f"line {lineno}: expected 'graph <n> <m>'")
    n, m = _ints(head[1:], lineno, "header count")
    verts: list[int] = []
    vseen: set[int] = set()
    edges: list[tuple[int, int]] = []
    eseen: set[tuple[int, int]] = set()
    for lineno, parts in lines:
        if parts[0] == "v":
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected 'v <label>'")
            (v,) = _ints(parts[1:], lineno, "vertex label")
            if v in vseen:
                raise FormatError(f"line {lineno}: duplicate vertex {v}")
            vseen.add(v)
            verts.append(v)
        elif parts[0] == "e":
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'e <a> <b>'")
            a, b = _ints(parts[1:], lineno, "edge endpoint")
            if a == b:
                raise FormatError(f"line {lineno}: loop at {a}")
            key = (min(a, b), max(a, b))
            if key in eseen:
                raise FormatError(f"line {lineno}: duplicate edge {key}")
            if a not in vseen or b not in vseen:
                raise FormatError(f"line {lineno}: edge endpoint not declared")
            eseen.add(key)
            edges.append(key)
        else:
            raise FormatError(f"line {lineno}: unknown record '{parts[0]}'")
    if len(verts) != n or len(edges) != m:
        raise FormatError(
            f"header declared {n} vertices {m} edges, found {len(verts)} and {len(edges)}"
        )
    return Graph(verts, edges)


# ---------------------------------------------------------------------------
# Triple systems
# ---------------------------------------------------------------------------


def emit_triples(ts: TripleSystem) -> str:
    out = [f"psts {ts.order} {len(ts.triples)}"]
    out.extend(f"p {p}" for p in ts.points)
    out.extend(f"t {a} {b} {c}" for a, b, c in ts.triples)
    return "\n".join(out) + "\n"


def parse_triples(text: str) -> TripleSystem:
    lines = _tokens(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("empty input; expected a 'psts <u> <k>' header") from None
    if len(head) != 3 or head[0] != "psts":
        raise FormatError(f"line {lineno}: expected 'psts <u> <k>'")
    u, k = _ints(head[1:], lineno, "header count")
    points: list[int] = []
    pseen: set[int] = set()
    triples: list[tuple[int, int, int]] = []
    tseen: set[tuple[int, int, int]] = set()
    for lineno, parts in lines:
        if parts[0] == "p":
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected 'p <label>'")
            (p,) = _ints(parts[1:], lineno, "point label")
            if p in pseen:
                raise FormatError(f"line {lineno}: duplicate point {p}")
            pseen.add(p)
            points.append(p)
        elif parts[0] == "t":
            if len(parts) != 4:
                raise FormatError(f"line {lineno}: expected 't <a> <b> <c>'")
            abc = _ints(parts[1:], lineno, "triple point")
            if len(set(abc)) != 3:
                raise FormatError(f"line {lineno}: degenerate triple {abc}")
            key = tuple(sorted(abc))
            if key in tseen:
                raise FormatError(f"line {lineno}: duplicate triple {key}")
            if any(x not in pseen for x in key):
                raise FormatError(f"line {lineno}: triple point not declared")
            tseen.add(key)
            triples.append(key)
        else:
            raise FormatError(f"line {lineno}: unknown record '{parts[0]}'")
    if len(points) != u or len(triples) != k:
        raise FormatError(
            f"header declared {u} points {k} triples, found {len(points)} and {len(triples)}"
        )
    return TripleSystem(points, triples)


# ---------------------------------------------------------------------------
# Edge colorings
# ---------------------------------------------------------------------------


def emit_coloring(col: EdgeColoring) -> str:
    rank = {c: i + 1 for i, c in enumerate(col.palette)}
    out = [f"ecol {col.graph.m} {len(col.palette)}"]
    out.extend(
        f"c {a} {b} {rank[col.assignment[(a, b)]]}" for a, b in col.graph.edges
    )
    return "\n".join(out) + "\n"


def parse_coloring(text: str, g: Graph) -> EdgeColoring:
    """Read a coloring of g; the file carries only edge-color records, so
    the graph must be supplied."""
    lines = _tokens(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("empty input; expected an 'ecol <m> <c>' header") from None
    if len(head) != 3 or head[0] != "ecol":
        raise FormatError(f"line {lineno}: expected 'ecol <m> <c>'")
    m, c = _ints(head[1:], lineno, "header count")
    assignment: dict = {}
    for lineno, parts in lines:
        if parts[0] != "c" or len(parts) != 4:
            raise FormatError(f"line {lineno}: expected 'c <a> <b> <color>'")
        a, b, color = _ints(parts[1:], lineno, "coloring record")
        if not 1 <= color <= c:
            raise FormatError(f"line {lineno}: color {color} outside 1..{c}")
        key = (min(a, b), max(a, b))
        if key in assignment:
            raise FormatError(f"line {lineno}: edge {key} colored twice")
        if not g.has_edge(*key):
            raise FormatError(f"line {lineno}: {key} is not an edge of the graph")
        assignment[key] = color
    if len(assignment) != m:
        raise FormatError(f"header declared {m} records, found {len(assignment)}")
    palette = sorted(set(assignment.values()))
    if len(palette) > c:
        raise FormatError(
            f"header declared {c} colors, found {len(palette)} distinct"
        )
    # the palette always spans 1..c so that a file round-trips even when
    # some declared color goes unused
    return EdgeColoring(g, range(1, c + 1), assignment)


# ---------------------------------------------------------------------------
# Gadget metadata sidecar
# ---------------------------------------------------------------------------

_META_KEYS = ("n", "u", "v", "u_prime", "d")


def _span(points) -> str:
    pts = sorted(points)
    if not pts:
        return "none"
    return f"{pts[0]}..{pts[-1]}"


def emit_background_meta(inst) -> str:
    """Key=value sidecar describing a gadget's parameters and label
    layout.  The five parameter keys are authoritative for reloading; the
    label ranges are derivable and serve as a human-readable cross-check."""
    p = inst.params
    rows = [
        ("n", p.n),
        ("u", p.u),
        ("v", p.v),
        ("u_prime", p.u_prime),
        ("d", p.d),
        ("vg", _span(range(p.n))),
        ("x", p.n),
        ("d_points", _span(inst.d_points)),
        ("a_prime", _span(inst.a_prime)),
        ("z", ",".join(str(z) for z in inst.z)),
        ("padding", _span(inst.padding)),
        ("w_range", _span(range(p.u, p.v))),
    ]
    return "\n".join(f"{k}={v}" for k, v in rows) + "\n"


def parse_background_meta(text: str) -> dict:
    """Return the five integer parameters from a sidecar, validating the
    derivable entries when present."""
    kv = {}
    for lineno, parts in _tokens(text):
        if len(parts) != 1 or "=" not in parts[0]:
            raise FormatError(f"line {lineno}: expected 'key=value'")
        k, _, v = parts[0].partition("=")
        if k in kv:
            raise FormatError(f"line {lineno}: duplicate key {k}")
        kv[k] = v
    missing = [k for k in _META_KEYS if k not in kv]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}")
    try:
        out = {k: int(kv[k]) for k in _META_KEYS}
    except ValueError:
        raise FormatError("parameter keys must be integers") from None
    if out["u_prime"] + out["d"] != out["v"]:
        raise FormatError("inconsistent sidecar: u_prime + d != v")
    return out
