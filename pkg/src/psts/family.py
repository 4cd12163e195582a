"""Counterexample leaves: the order-15 system and the three-part family.

For an even w, a graph L on u points defeats the small-embedding
conditions when (i) it has exactly w(u-w+1)/2 edges, (ii) its chromatic
index is w, and (iii) every proper w-edge-coloring misses the same color
pair at two distinguished vertices d1, d2.  Any such L passes all the
divisibility and coloring conditions for decomposing L join K_w, yet no
decomposition exists: the four edges joining d1, d2 to the two missing
colors would force the same hole triangle twice.

``psts15`` is the explicit order-15 system whose leave works for w = 4.
``build_family_leave`` assembles the general family for even w >= 6 from
three vertex-disjoint parts: the dense part carrying d1, d2 (built by
``build_L1``), a w-regular-minus-4-cycle bipartite part (``build_L2``),
and a bowtie plus isolated vertices (``build_L3``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .design import TripleSystem, leave as system_leave
from .graphs import (
    Graph,
    complement,
    connected_components,
    is_even,
    join,
    make_complete,
    union,
)
from .coloring import (
    EdgeColoring,
    chromatic_index,
    enumerate_check_missing_pair,
    is_proper,
    koenig_coloring,
    missing_colors,
    vizing_coloring,
)
from .rng import derive_seed
from .solver import (
    DEFAULT_ATTEMPTS,
    SearchOutcome,
    Status,
    exact_k3_decompose,
    hill_climb,
)

_PSTS15_TRIPLES = (
    (1, 2, 7), (1, 3, 12), (1, 4, 11), (1, 8, 15), (1, 9, 10), (1, 13, 14),
    (2, 5, 10), (2, 6, 13), (2, 8, 11), (2, 9, 14), (2, 12, 15), (3, 7, 8),
    (3, 9, 15), (3, 10, 14), (3, 11, 13), (4, 7, 15), (4, 8, 14), (4, 9, 13),
    (4, 10, 12), (5, 7, 13), (5, 8, 12), (5, 9, 11), (5, 14, 15), (6, 7, 10),
    (6, 8, 9), (6, 11, 15), (6, 12, 14),
)


def psts15() -> TripleSystem:
    """The explicit 27-triple system on {1..15} whose leave defeats the
    conditions at w = 4."""
    return TripleSystem(range(1, 16), _PSTS15_TRIPLES)


# ---------------------------------------------------------------------------
# The L1 / L2 / L3 construction
# ---------------------------------------------------------------------------


def _check_even_w(w: int, low: int):
    if w % 2 != 0 or w < low:
        raise ValueError(f"w must be even and at least {low}, got {w}")


def build_L1(w: int) -> Graph:
    """Dense part on Z_{w+1} plus a point at infinity (label w+1).

    Defined as the complement, within K_{w+2}, of the graph
    C(w) = {{x, w+1-x} : 1 <= x <= w/2} + {{0,2}, {1,2}, {1,inf}}.
    Construction-time assertions pin the properties everything downstream
    relies on: |E(C(w))| = (w+6)/2, vertices 1 and 2 get degree w-2, every
    other vertex degree w.
    """
    _check_even_w(w, 4)
    inf = w + 1
    removed = {tuple(sorted((x, w + 1 - x))) for x in range(1, w // 2 + 1)}
    removed |= {(0, 2), (1, 2), (1, inf)}
    assert len(removed) == (w + 6) // 2
    full = make_complete(w + 2)
    l1 = Graph(range(w + 2), [e for e in full.edges if e not in removed])
    assert l1.m == full.m - (w + 6) // 2 == w * w // 2 + w - 2
    for v in l1.vertices:
        want = w - 2 if v in (1, 2) else w
        assert l1.degree(v) == want, f"vertex {v} has degree {l1.degree(v)}"
    return l1


def l1_canonical_coloring(w: int) -> EdgeColoring:
    """The arithmetic w-coloring of the dense part: color x+y mod (w+1) on
    plain edges, 2x on edges to infinity (x >= 2), and 2 on the edge from 0
    to infinity.  Proper, uses every color in {1..w}, and misses exactly
    {2, 3} at vertices 1 and 2."""
    l1 = build_L1(w)
    mod = w + 1
    inf = w + 1
    assignment = {}
    for a, b in l1.edges:
        if b == inf:
            assignment[(a, b)] = 2 if a == 0 else (2 * a) % mod
        else:
            assignment[(a, b)] = (a + b) % mod
    col = EdgeColoring(l1, range(1, w + 1), assignment)
    assert is_proper(col), "arithmetic coloring must be proper"
    assert col.used_colors() == frozenset(range(1, w + 1))
    assert missing_colors(col, 1) == missing_colors(col, 2) == frozenset({2, 3})
    return col


def build_L2(u: int, w: int) -> Graph:
    """Bipartite part: a w-regular circulant-style bipartite graph on
    2t points, t = (u-2w-1)/2, minus one 4-cycle.  Rows a_i take labels
    w+2+i, columns b_j take labels w+2+t+j."""
    _check_even_w(w, 4)
    if u % 2 == 0:
        raise ValueError(f"u must be odd, got {u}")
    t = (u - 2 * w - 1) // 2
    if t < w:
        raise ValueError(f"t = {t} < w = {w}; need u >= 4w+1")
    base = w + 2
    edges = set()
    for i in range(t):
        for off in range(w):
            edges.add((base + i, base + t + (i + off) % t))
    for i, j in ((0, 1), (0, 2), (1, 1), (1, 2)):
        edges.remove((base + i, base + t + j))
    g = Graph(range(base, base + 2 * t), sorted(edges))
    assert g.m == w * t - 4
    return g


def build_L3(w: int) -> Graph:
    """Bowtie (two triangles sharing a vertex) plus w-6 isolated points,
    on local labels 1..w-1."""
    _check_even_w(w, 6)
    return Graph(
        range(1, w), [(1, 2), (1, 5), (2, 5), (3, 4), (3, 5), (4, 5)]
    )


@dataclass(frozen=True)
class FamilyLeave:
    """The assembled counterexample leave and its anatomy."""

    w: int
    u: int
    t: int
    graph: Graph
    l1: Graph
    l2: Graph
    l3: Graph
    d1: int
    d2: int


def build_family_leave(u: int, w: int) -> FamilyLeave:
    """Disjoint union of the three parts on exactly u points.

    Asserts the edge-count identity |E| = w(u-w+1)/2, evenness, and
    maximum degree w.  The distinguished pair is (1, 2), the two
    degree-(w-2) vertices of the dense part.
    """
    _check_even_w(w, 6)
    if u % 2 == 0:
        raise ValueError(f"u must be odd, got {u}")
    if u < 4 * w + 1:
        raise ValueError(f"u = {u} < 4w+1 = {4 * w + 1}")
    t = (u - 2 * w - 1) // 2
    l1 = build_L1(w)
    l2 = build_L2(u, w)
    offset = w + 2 + 2 * t
    l3_local = build_L3(w)
    l3 = Graph(
        [offset + v - 1 for v in l3_local.vertices],
        [(offset + a - 1, offset + b - 1) for a, b in l3_local.edges],
    )
    g = union(union(l1, l2), l3)
    assert g.n == u, f"assembled order {g.n} != u = {u}"
    assert g.vertices == tuple(range(u))
    assert g.m == w * (u - w + 1) // 2
    assert is_even(g)
    assert g.max_degree() == w
    return FamilyLeave(w=w, u=u, t=t, graph=g, l1=l1, l2=l2, l3=l3, d1=1, d2=2)


def family_orders(w: int, count: int = 3) -> list[int]:
    """Smallest orders usable for the family at this w: odd, at least
    4w+1, with u+w admissible (1 or 3 mod 6)."""
    _check_even_w(w, 6)
    out = []
    u = 4 * w + 1
    while len(out) < count:
        if u % 2 == 1 and (u + w) % 6 in (1, 3):
            out.append(u)
        u += 2
    return out


def family_coloring(fl: FamilyLeave) -> EdgeColoring:
    """Proper w-coloring of the whole family leave, assembled from the
    arithmetic coloring on the dense part, a matching-by-matching coloring
    on the bipartite part, and the fan-method bound on the bowtie part.
    Since the maximum degree is w, this witnesses chromatic index exactly
    w."""
    w = fl.w
    c1 = l1_canonical_coloring(w)
    c2 = koenig_coloring(fl.l2)
    assert len(c2.palette) == w, "bipartite part must need exactly w matchings"
    c3 = vizing_coloring(fl.l3)
    assert len(c3.palette) <= w
    assignment = {}
    assignment.update(c1.assignment)
    assignment.update(c2.assignment)
    assignment.update(c3.assignment)
    col = EdgeColoring(fl.graph, range(1, w + 1), assignment)
    assert is_proper(col)
    return col


# ---------------------------------------------------------------------------
# Condition checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MissingPairReport:
    """Outcome of the two-vertex missing-color comparison (condition iii)."""

    verdict: bool | None
    mode: str
    detail: str
    colorings_seen: int
    counterexample: EdgeColoring | None


@dataclass(frozen=True)
class Lemma31Report:
    """Per-condition verdicts for the counterexample criteria."""

    w: int
    u: int
    edge_count: int
    expected_edges: int
    cond_i: bool
    chi: SearchOutcome
    cond_ii: bool | None
    missing_pair: MissingPairReport

    @property
    def cond_iii(self) -> bool | None:
        return self.missing_pair.verdict

    @property
    def all_hold(self) -> bool | None:
        votes = (self.cond_i, self.cond_ii, self.cond_iii)
        if any(v is False for v in votes):
            return False
        if any(v is None for v in votes):
            return None
        return True


def _structural_missing_pair(L: Graph, w: int, d1: int, d2: int) -> MissingPairReport:
    """Parity argument: if d1 and d2 share a component of order w+2 in
    which they are the only vertices of degree w-2 and all others have
    degree w, then in any proper w-coloring each color class meets the
    component in a matching, so every color misses an even number of the
    component's vertices.  Only d1 and d2 can be missed at all, so a color
    missing either misses both: the missing sets coincide.  Restricting a
    coloring of L to the component is sound because no edge leaves it."""
    comp = None
    for cc in connected_components(L):
        if d1 in cc:
            comp = cc
            break
    if comp is None or d2 not in comp:
        return MissingPairReport(
            None, "structural", "d1 and d2 are not in a common component", 0, None
        )
    problems = []
    if len(comp) != w + 2:
        problems.append(f"component order {len(comp)} != w+2 = {w + 2}")
    for v in comp:
        dv = L.degree(v)
        want = w - 2 if v in (d1, d2) else w
        if dv != want:
            problems.append(f"vertex {v} has degree {dv}, expected {want}")
    if problems:
        return MissingPairReport(
            None,
            "structural",
            "degree pattern does not match; argument inapplicable: "
            + "; ".join(problems[:4]),
            0,
            None,
        )
    return MissingPairReport(
        True,
        "structural",
        "component order w+2 is even and only d1, d2 have missing colors, "
        "so each missing color misses both",
        0,
        None,
    )


def check_lemma31(
    L: Graph,
    w: int,
    d1: int,
    d2: int,
    mode: str = "structural",
    budget: int | None = None,
    chi_witness: EdgeColoring | None = None,
) -> Lemma31Report:
    """Check the three counterexample conditions for (L, w, d1, d2).

    Condition (i) is arithmetic.  Condition (ii) uses the exact chromatic
    index search, or, when ``chi_witness`` (a proper coloring within w
    colors) is supplied and the maximum degree is w, the witness settles
    it without search.  Condition (iii) runs in the requested mode:
    ``enumerate`` sweeps every proper w-coloring (conclusive only if the
    sweep exhausts), ``structural`` applies the parity argument when the
    degree pattern supports it and refuses to guess otherwise.
    """
    if mode not in ("enumerate", "structural"):
        raise ValueError(f"unknown mode {mode!r}")
    if w % 2 != 0:
        raise ValueError("w must be even")
    if not is_even(L):
        raise ValueError("L must be an even graph")
    if L.n % 2 == 0:
        raise ValueError("L must have odd order")
    u = L.n
    expected = w * (u - w + 1) // 2
    cond_i = L.m == expected

    if chi_witness is not None:
        okw = (
            chi_witness.graph == L
            and is_proper(chi_witness)
            and len(chi_witness.used_colors()) <= w
        )
        if not okw:
            raise ValueError("chi_witness is not a proper coloring within w colors")
        chi = SearchOutcome(Status.PROVED_YES, witness=chi_witness, value=L.max_degree())
        cond_ii = L.max_degree() == w
    else:
        chi = chromatic_index(L, budget)
        cond_ii = (chi.value == w) if chi.is_yes else None

    if mode == "structural":
        mp = _structural_missing_pair(L, w, d1, d2)
    else:
        verdict, res, cex = enumerate_check_missing_pair(L, w, d1, d2, budget)
        if verdict is True:
            detail = "every proper coloring checked"
        elif verdict is False:
            detail = "counterexample coloring found"
        else:
            detail = "enumeration budget exhausted before completion"
        mp = MissingPairReport(verdict, "enumerate", detail, res.count, cex)

    return Lemma31Report(
        w=w,
        u=u,
        edge_count=L.m,
        expected_edges=expected,
        cond_i=cond_i,
        chi=chi,
        cond_ii=cond_ii,
        missing_pair=mp,
    )


@dataclass(frozen=True)
class ConjectureReport:
    """Verdicts for the four decomposition conditions on (L, w), plus the
    ground-truth search for a decomposition of L join K_w."""

    w: int
    u: int
    cond1: bool
    cond2: bool
    cond3: bool
    witness_graph: Graph | None
    cond4_i: SearchOutcome | None
    cond4_ii: bool | None
    cond4_chi: SearchOutcome | None
    cond4_iii: bool | None
    cond4: bool | None
    cond4_detail: str
    decomposition: SearchOutcome

    @property
    def conditions_hold(self) -> bool | None:
        votes = (self.cond1, self.cond2, self.cond3, self.cond4)
        if any(v is False for v in votes):
            return False
        if any(v is None for v in votes):
            return None
        return True

    @property
    def is_counterexample(self) -> bool | None:
        """True when every condition holds yet no decomposition exists."""
        cond = self.conditions_hold
        if cond is False or self.decomposition.is_yes:
            return False
        if cond is True and self.decomposition.is_no:
            return True
        return None


def _witness_subchecks(L: Graph, g: Graph, w: int, budget):
    """Evaluate the three witness conditions for one candidate subgraph:
    the rest of L decomposes, the edge-count quadratic is nonnegative, and
    the candidate is w-edge-colorable."""
    rest = Graph(L.vertices, [e for e in L.edges if e not in g.edge_set()])
    out_i = exact_k3_decompose(rest, budget)
    ok_ii = w * w - (L.n + 1) * w + 2 * g.m >= 0
    chi = chromatic_index(g, budget)
    ok_iii = (chi.value <= w) if chi.is_yes else None
    verdicts = (
        True if out_i.is_yes else (False if out_i.is_no else None),
        ok_ii,
        ok_iii,
    )
    if any(v is False for v in verdicts):
        combined = False
    elif any(v is None for v in verdicts):
        combined = None
    else:
        combined = True
    return out_i, ok_ii, chi, ok_iii, combined


def _triangle_packings(L: Graph, cap: int):
    """Yield the edge sets of triangle packings of L (the empty one first),
    each exactly once, stopping after cap packings.  Returns True when the
    enumeration ran to completion."""
    eset = L.edge_set()
    tris = []
    for a, b in L.edges:
        for c in L.neighbors(b):
            if c > b and (a, c) in eset:
                tris.append(((a, b), (a, c), (b, c)))
    seen = 0
    stack = [(0, frozenset())]
    while stack:
        start, used = stack.pop()
        seen += 1
        if seen > cap:
            return False
        yield used
        for ti in range(start, len(tris)):
            t = tris[ti]
            if not (set(t) & used):
                stack.append((ti + 1, used | set(t)))
    return True


def check_conjecture(
    L: Graph,
    w: int,
    witness: Graph | None = None,
    budget: int | None = None,
    witness_edge_limit: int = 20,
) -> ConjectureReport:
    """Evaluate the four decomposition conditions for L join K_w, then run
    the exact decomposition search as ground truth.

    Conditions (1)-(3) are arithmetic.  Condition (4) asks for a subgraph
    G of L with L - G decomposable, the edge-count quadratic nonnegative,
    and G w-edge-colorable; the default candidate is G = L itself (then
    L - G is empty and trivially decomposable).  Candidates satisfying the
    first sub-condition are exactly the graphs L minus a triangle packing,
    so when no explicit witness is given and L has at most
    ``witness_edge_limit`` edges, those are enumerated exhaustively and a
    universal failure genuinely refutes condition (4).  A failing supplied
    witness settles nothing (the condition is existential) and reports
    unknown.
    """
    u = L.n
    cond1 = all(L.degree(x) % 2 == w % 2 for x in L.vertices)
    cond2 = (u + w) % 2 == 1 if w > 0 else True
    cond3 = (L.m + u * w + w * (w - 1) // 2) % 3 == 0

    if witness is not None:
        if not set(witness.vertices) <= set(L.vertices) or not (
            witness.edge_set() <= L.edge_set()
        ):
            raise ValueError("witness must be a subgraph of L")
        g = witness
        out_i, ok_ii, chi, ok_iii, combined = _witness_subchecks(L, g, w, budget)
        if combined is True:
            cond4, detail = True, "supplied witness passes"
        elif combined is None:
            cond4, detail = None, "a sub-check on the supplied witness was budget-limited"
        else:
            cond4, detail = None, (
                "supplied witness fails, which settles nothing: the condition "
                "is existential"
            )
    else:
        g = L
        out_i, ok_ii, chi, ok_iii, combined = _witness_subchecks(L, g, w, budget)
        if combined is True:
            cond4, detail = True, "default candidate G = L passes"
        elif L.m > witness_edge_limit:
            cond4, detail = None, (
                f"G = L fails and |E(L)| = {L.m} exceeds the exhaustive-search "
                f"limit {witness_edge_limit}; supply a witness to settle (4)"
            )
        else:
            # complete enumeration: every candidate with a decomposable
            # remainder is L minus a triangle packing
            cond4, detail = False, "no candidate passes (exhaustive)"
            saw_unknown = combined is None
            gen = _triangle_packings(L, cap=200000)
            completed = True
            while True:
                try:
                    packed = next(gen)
                except StopIteration as stop:
                    completed = stop.value is True
                    break
                if not packed:
                    continue  # the empty packing is the G = L case above
                cand = Graph(L.vertices, [e for e in L.edges if e not in packed])
                ci, cii, cch, ciii, comb = _witness_subchecks(L, cand, w, budget)
                if comb is True:
                    g, out_i, ok_ii, chi, ok_iii = cand, ci, cii, cch, ciii
                    cond4, detail = True, "witness found by packing enumeration"
                    break
                if comb is None:
                    saw_unknown = True
            if cond4 is False and (saw_unknown or not completed):
                cond4, detail = None, (
                    "packing enumeration was inconclusive (budget-limited "
                    "sub-check or candidate cap reached)"
                )

    if w > 0:
        fresh = max(L.vertices) + 1 if L.n else 0
        host = join(L, make_complete(range(fresh, fresh + w)))
    else:
        host = L
    ground = exact_k3_decompose(host, budget)

    return ConjectureReport(
        w=w,
        u=u,
        cond1=cond1,
        cond2=cond2,
        cond3=cond3,
        witness_graph=g,
        cond4_i=out_i,
        cond4_ii=ok_ii,
        cond4_chi=chi,
        cond4_iii=ok_iii,
        cond4=cond4,
        cond4_detail=detail,
        decomposition=ground,
    )


def realize_as_leave(
    L: Graph,
    seed: int = 0,
    max_iters: int | None = None,
    attempts: int = DEFAULT_ATTEMPTS,
) -> SearchOutcome:
    """Find a partial triple system whose leave is exactly L.

    Preconditions (necessary): L even, odd order, |E(L)| congruent to
    binom(u,2) mod 3.  The dense-complement bound (minimum complement
    degree at least 91u/100) guarantees existence when it holds; the
    outcome's reason records whether the run was inside the guaranteed
    range.  The search itself is a hill climb on the complement.
    """
    u = L.n
    if not is_even(L):
        raise ValueError("L must be an even graph")
    if u % 2 == 0:
        raise ValueError("L must have odd order")
    if (u * (u - 1) // 2 - L.m) % 3 != 0:
        raise ValueError("binom(u,2) - |E(L)| must be divisible by 3")
    comp = complement(L)
    mindeg = min((comp.degree(v) for v in comp.vertices), default=0)
    guaranteed = 100 * mindeg >= 91 * u
    note = (
        "dense-complement bound satisfied (existence guaranteed)"
        if guaranteed
        else f"dense-complement bound not satisfied (min degree {mindeg} < 91u/100)"
    )
    if comp.m == 0:
        ts = TripleSystem(L.vertices, ())
        return SearchOutcome(Status.PROVED_YES, witness=ts, reason=note)
    total = 0
    for attempt in range(attempts):
        out = hill_climb(comp, derive_seed(seed, "leave", attempt), max_iters)
        total += out.effort
        if out.is_yes:
            ts = TripleSystem(L.vertices, out.witness.triples)
            got = system_leave(ts)
            if got.edge_set() != L.edge_set():
                raise AssertionError("realized system's leave differs from L")
            return SearchOutcome(
                Status.PROVED_YES, witness=ts, effort=total, reason=note
            )
    return SearchOutcome(
        Status.UNKNOWN,
        effort=total,
        reason=f"{note}; climb budget exhausted in {attempts} attempts",
    )
