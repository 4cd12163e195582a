"""Triangle (K3) packings and decompositions of graph hosts.

A K3-decomposition of a host graph partitions its edge set into triangles.
Two engines are provided with one honesty contract between them:

* ``exact_k3_decompose`` runs a complete exact-cover search (columns are
  host edges, rows are host triangles).  It may answer ProvedYes with a
  witness, ProvedNo after exhausting the space, or Unknown when the node
  budget runs out.  ProvedNo from this engine is a proof.
* ``hill_climb`` is stochastic and can only ever return ProvedYes (with a
  witness) or Unknown, with one exception: hosts failing the parity and
  divisibility prechecks are ProvedNo without any search.

``brute_force_k3_decompose`` is a deliberately naive third implementation
kept as an oracle for the exact engine on small instances; it shares no
code with the kernels.

Hole problems (complete host minus one or two complete "holes") come with
the classical arithmetic: the single-hole conditions are necessary and
sufficient, the double-hole conditions are sufficient only, and the
outcomes reflect exactly that asymmetry.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from . import kernels
from .graphs import Graph, make_complete
from .rng import derive_seed

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_CLIMB_ITERS = 10**7
DEFAULT_ATTEMPTS = 5

Triple = tuple[int, int, int]


def default_node_budget() -> int:
    return int(os.environ.get("PSTS_NODE_BUDGET", DEFAULT_NODE_BUDGET))


def default_climb_iters() -> int:
    return int(os.environ.get("PSTS_CLIMB_BUDGET", DEFAULT_CLIMB_ITERS))


class Status(Enum):
    PROVED_YES = "ProvedYes"
    PROVED_NO = "ProvedNo"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SearchOutcome:
    """Three-valued search result.

    ProvedYes always carries a witness that has been re-verified before
    being returned.  ProvedNo is only ever produced by a complete search or
    by a failed necessary condition.  Unknown means a budget ran out and
    carries the reason; it is never silently conflated with ProvedNo.
    """

    status: Status
    witness: object = None
    effort: int = 0
    reason: str = ""
    value: object = None

    @property
    def is_yes(self) -> bool:
        return self.status is Status.PROVED_YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.PROVED_NO

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN


class TrianglePackingProblem:
    """Host graph plus forbidden hole interiors.

    Holes are point sets whose internal pairs are not part of the problem;
    the host is expected to arrive with those edges already deleted, and
    the constructor asserts it.  Candidate triangles lying entirely inside
    a hole are excluded defensively, although with interior edges gone no
    such triangle can exist.
    """

    __slots__ = ("host", "holes")

    def __init__(self, host: Graph, forbidden_interiors: Iterable[Iterable[int]] = ()):
        self.host = host
        holes = tuple(frozenset(h) for h in forbidden_interiors)
        for hole in holes:
            for v in hole:
                if not host.has_vertex(v):
                    raise ValueError(f"hole point {v} is not a host vertex")
            for a, b in host.edges:
                if a in hole and b in hole:
                    raise ValueError(
                        f"host edge ({a},{b}) lies inside a forbidden interior"
                    )
        self.holes = holes

    def triangles(self) -> list[Triple]:
        """All host triangles (a, b, c) with a < b < c, lexicographically
        sorted, excluding any lying inside a hole."""
        g = self.host
        out: list[Triple] = []
        for a, b in g.edges:
            for c in g.neighbors(a):
                if c > b and g.has_edge(b, c):
                    if any(a in h and b in h and c in h for h in self.holes):
                        continue
                    out.append((a, b, c))
        return out


@dataclass(frozen=True)
class Packing:
    """Edge-disjoint set of host triangles."""

    host: Graph
    triples: tuple[Triple, ...]
    holes: tuple[frozenset, ...] = field(default_factory=tuple)

    def covered_edges(self) -> frozenset:
        cov = set()
        for a, b, c in self.triples:
            cov.add((a, b))
            cov.add((a, c))
            cov.add((b, c))
        return frozenset(cov)

    def leave(self) -> Graph:
        return Graph(self.host.vertices, self.host.edge_set() - self.covered_edges())

    def is_decomposition(self) -> bool:
        return len(self.covered_edges()) == self.host.m and 3 * len(self.triples) == self.host.m


def verify_packing(p: Packing) -> tuple[bool, str]:
    """Re-check a packing from scratch: triangles of the host, pairwise
    edge-disjoint, none inside a hole."""
    seen: set[tuple[int, int]] = set()
    for t in p.triples:
        a, b, c = t
        if not (a < b < c):
            return False, f"triple {t} is not sorted"
        pairs = ((a, b), (a, c), (b, c))
        for u, v in pairs:
            if not p.host.has_edge(u, v):
                return False, f"triple {t} uses non-edge ({u},{v})"
            if (u, v) in seen:
                return False, f"edge ({u},{v}) covered twice"
            seen.add((u, v))
        if any(a in h and b in h and c in h for h in p.holes):
            return False, f"triple {t} lies inside a hole"
    return True, "ok"


def necessary_conditions(host: Graph) -> tuple[bool, list[str]]:
    """Parity and divisibility prerequisites for a K3-decomposition:
    every degree even and |E| divisible by three."""
    reasons = []
    odd = [v for v in host.vertices if host.degree(v) % 2 == 1]
    if odd:
        reasons.append(f"odd degree at vertex {odd[0]} (and {len(odd) - 1} more)")
    if host.m % 3 != 0:
        reasons.append(f"|E| = {host.m} not divisible by 3")
    return not reasons, reasons


def _edge_index(host: Graph) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(host.edges)}


def exact_k3_decompose(
    problem: TrianglePackingProblem | Graph,
    budget: int | None = None,
) -> SearchOutcome:
    """Complete search for a K3-decomposition.

    Necessary conditions are checked first and short-circuit to ProvedNo.
    Otherwise the edge/triangle exact-cover instance is handed to the
    dancing-links kernel: rows (triangles) in lexicographic order, column
    selection fewest-rows-first with ties by edge order.  Deterministic;
    consumes no randomness.
    """
    if isinstance(problem, Graph):
        problem = TrianglePackingProblem(problem)
    if budget is None:
        budget = default_node_budget()
    host = problem.host
    ok, reasons = necessary_conditions(host)
    if not ok:
        return SearchOutcome(Status.PROVED_NO, reason="; ".join(reasons))
    if host.m == 0:
        out = Packing(host, (), problem.holes)
        return SearchOutcome(Status.PROVED_YES, witness=out)
    eidx = _edge_index(host)
    tris = problem.triangles()
    rows = [
        (eidx[(a, b)], eidx[(a, c)], eidx[(b, c)])
        for a, b, c in tris
    ]
    status, sol, nodes = kernels.active.exact_cover_first(host.m, rows, budget)
    if status == kernels.FOUND:
        triples = tuple(sorted(tris[r] for r in sol))
        packing = Packing(host, triples, problem.holes)
        ok, msg = verify_packing(packing)
        if not ok or not packing.is_decomposition():
            raise AssertionError(f"exact solver produced an invalid witness: {msg}")
        return SearchOutcome(Status.PROVED_YES, witness=packing, effort=nodes)
    if status == kernels.EXHAUSTED:
        return SearchOutcome(Status.PROVED_NO, effort=nodes, reason="complete search")
    return SearchOutcome(
        Status.UNKNOWN, effort=nodes, reason=f"node budget {budget} exhausted"
    )


def brute_force_k3_decompose(
    problem: TrianglePackingProblem | Graph,
    max_edges: int = 45,
) -> SearchOutcome:
    """Naive oracle: recurse on the lexicographically first uncovered edge.

    Complete and budget-free, therefore guarded to hosts with at most
    ``max_edges`` edges.  Kept independent of the kernels on purpose so it
    can vouch for them.
    """
    if isinstance(problem, Graph):
        problem = TrianglePackingProblem(problem)
    host = problem.host
    if host.m > max_edges:
        raise ValueError(f"brute force is guarded to |E| <= {max_edges}")
    ok, reasons = necessary_conditions(host)
    if not ok:
        return SearchOutcome(Status.PROVED_NO, reason="; ".join(reasons))
    edges = list(host.edges)
    covered: set[tuple[int, int]] = set()
    chosen: list[Triple] = []
    effort = 0

    def first_uncovered() -> tuple[int, int] | None:
        for e in edges:
            if e not in covered:
                return e
        return None

    def rec() -> bool:
        nonlocal effort
        e = first_uncovered()
        if e is None:
            return True
        a, b = e
        for c in host.neighbors(a):
            if c == b or not host.has_edge(b, c):
                continue
            t = tuple(sorted((a, b, c)))
            pairs = ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))
            if any(p in covered for p in pairs):
                continue
            if any(t[0] in h and t[1] in h and t[2] in h for h in problem.holes):
                continue
            effort += 1
            covered.update(pairs)
            chosen.append(t)
            if rec():
                return True
            chosen.pop()
            covered.difference_update(pairs)
        return False

    if rec():
        packing = Packing(host, tuple(sorted(chosen)), problem.holes)
        okv, msg = verify_packing(packing)
        if not okv or not packing.is_decomposition():
            raise AssertionError(f"brute force produced an invalid witness: {msg}")
        return SearchOutcome(Status.PROVED_YES, witness=packing, effort=effort)
    return SearchOutcome(Status.PROVED_NO, effort=effort, reason="complete search")


def hill_climb(
    problem: TrianglePackingProblem | Graph,
    seed: int,
    max_iters: int | None = None,
) -> SearchOutcome:
    """Stochastic climb toward a full decomposition.

    Each move picks a vertex with uncovered incident edges, two uncovered
    edges at it whose far endpoints are host-adjacent, inserts that triple
    and evicts the at most one triple in conflict.  The covered count never
    decreases.  Deterministic for a fixed seed.  Never returns ProvedNo
    except on a failed necessary condition.
    """
    if isinstance(problem, Graph):
        problem = TrianglePackingProblem(problem)
    if max_iters is None:
        max_iters = default_climb_iters()
    host = problem.host
    ok, reasons = necessary_conditions(host)
    if not ok:
        return SearchOutcome(Status.PROVED_NO, reason="; ".join(reasons))
    if host.m == 0:
        return SearchOutcome(Status.PROVED_YES, witness=Packing(host, (), problem.holes))
    # relabel to 0..n-1 for the kernel
    verts = host.vertices
    idx = {v: i for i, v in enumerate(verts)}
    edges = [(idx[a], idx[b]) for a, b in host.edges]
    status, triples, iters = kernels.active.hill_climb_full(
        len(verts), edges, seed, max_iters
    )
    if status == kernels.FOUND:
        mapped = tuple(
            sorted(tuple(sorted((verts[a], verts[b], verts[c]))) for a, b, c in triples)
        )
        packing = Packing(host, mapped, problem.holes)
        okv, msg = verify_packing(packing)
        if not okv or not packing.is_decomposition():
            raise AssertionError(f"hill climb produced an invalid witness: {msg}")
        return SearchOutcome(Status.PROVED_YES, witness=packing, effort=iters)
    return SearchOutcome(
        Status.UNKNOWN, effort=iters, reason=f"iteration budget {max_iters} exhausted"
    )


# ---------------------------------------------------------------------------
# Hole decompositions
# ---------------------------------------------------------------------------


def _complete_minus_holes(vset: list[int], holes: list[frozenset]) -> Graph:
    edges = []
    for i in range(len(vset)):
        for j in range(i + 1, len(vset)):
            a, b = vset[i], vset[j]
            if any(a in h and b in h for h in holes):
                continue
            edges.append((a, b))
    return Graph(vset, edges)


def single_hole_conditions(v: int, w: int) -> tuple[bool, list[str]]:
    """Exact existence arithmetic for K_v minus a w-point hole: v and w odd,
    v >= 2w+1, and binom(v,2) - binom(w,2) divisible by three.  Holes of
    fewer than two points have no edges, so w is normalized up to 1 first
    (the odd-w condition then reads correctly for the plain complete
    graph)."""
    w_eff = max(w, 1)
    fails = []
    if v % 2 == 0:
        fails.append(f"v = {v} is even")
    if w_eff % 2 == 0:
        fails.append(f"w = {w_eff} is even")
    if v < 2 * w_eff + 1:
        fails.append(f"v = {v} < 2w+1 = {2 * w_eff + 1}")
    diff = v * (v - 1) // 2 - w_eff * (w_eff - 1) // 2
    if diff % 3 != 0:
        fails.append(f"edge count {diff} not divisible by 3")
    return not fails, fails


def decompose_complete_minus_hole(
    v: int,
    w: int,
    seed: int = 0,
    max_iters: int | None = None,
    attempts: int = DEFAULT_ATTEMPTS,
) -> SearchOutcome:
    """Decide K3-decomposability of K_v minus a hole on points 0..w-1.

    The arithmetic conditions are exact, so failures are ProvedNo.  When
    they hold a decomposition exists and the hill climber is run (with
    derived seeds, several attempts) to produce one; if it somehow cannot,
    the honest answer is Unknown even though existence is guaranteed.
    """
    if not 0 <= w <= v:
        raise ValueError("need 0 <= w <= v")
    vset = list(range(v))
    hole = frozenset(range(w))
    host = _complete_minus_holes(vset, [hole])
    if host.m == 0:
        return SearchOutcome(
            Status.PROVED_YES,
            witness=Packing(host, (), (hole,) if w >= 2 else ()),
        )
    ok, fails = single_hole_conditions(v, w)
    if not ok:
        return SearchOutcome(Status.PROVED_NO, reason="; ".join(fails))
    problem = TrianglePackingProblem(host, [hole] if w >= 2 else [])
    total = 0
    for attempt in range(attempts):
        out = hill_climb(problem, derive_seed(seed, "hole", attempt), max_iters)
        total += out.effort
        if out.is_yes:
            return SearchOutcome(Status.PROVED_YES, witness=out.witness, effort=total)
    return SearchOutcome(
        Status.UNKNOWN,
        effort=total,
        reason="existence guaranteed by the hole arithmetic, but the climb "
        f"budget was exhausted in {attempts} attempts",
    )


def double_hole_conditions(
    vset: frozenset, a: frozenset, b: frozenset
) -> tuple[bool, list[str]]:
    """Sufficient conditions for decomposing the complete graph on vset
    minus holes on a and b (which may share points):

      (i) |B| >= |A|, (ii) |V| = 2|B| + |A| - 2|A∩B|, (iii) |A|, |B| odd,
      (iv) |A| >= 2|A∩B| + 1, (v) (|B|-|A∩B|)(|A|-2|A∩B|-1) ≡ 0 (mod 3).

    These are sufficient only; their failure proves nothing.
    """
    na, nb, ni, nv = len(a), len(b), len(a & b), len(vset)
    fails = []
    if nb < na:
        fails.append(f"(i) |B| = {nb} < |A| = {na}")
    if nv != 2 * nb + na - 2 * ni:
        fails.append(f"(ii) |V| = {nv} != 2|B|+|A|-2|A∩B| = {2 * nb + na - 2 * ni}")
    if na % 2 == 0 or nb % 2 == 0:
        fails.append(f"(iii) |A| = {na}, |B| = {nb} not both odd")
    if na < 2 * ni + 1:
        fails.append(f"(iv) |A| = {na} < 2|A∩B|+1 = {2 * ni + 1}")
    if (nb - ni) * (na - 2 * ni - 1) % 3 != 0:
        fails.append(
            f"(v) (|B|-|A∩B|)(|A|-2|A∩B|-1) = {(nb - ni) * (na - 2 * ni - 1)} "
            "not divisible by 3"
        )
    return not fails, fails


def _double_hole_structured(
    vlist: list[int],
    aset: frozenset,
    bset: frozenset,
    host: Graph,
    seed: int,
    max_iters: int | None,
    attempts: int,
) -> SearchOutcome | None:
    """Assembly for the tight cross-edge geometry of a two-hole host.

    Write C = A∩B, A' = A∖B, B' = B∖A, W = V∖(A∪B).  A triangle on an
    A'-B' edge must take its third point in W (anything else closes a pair
    inside a hole), and condition (ii) forces |W| = |B'|, which makes the
    count of W-A' edges (|W|·|A'|) equal the count of A'-B' edges
    (|A'|·|B'|) exactly: every W-A' edge is consumed by those triangles
    with no slack at all.  A blind climb almost surely strands a few cross
    edges with every W anchor spent, a state its move set cannot leave, so
    the forced part is built directly:

      * cross triangle (A'[i], B'[j], W[(i+j) mod |W|]) for all i, j: a
        proper round-robin assignment, each A'-W edge used once, B'[j]
        left with the contiguous slot run j+|A'| .. j+|W|-1 unused;
      * B'[j]'s leftover slots are paired first-with-last into triangles
        through W-W chords whose step differences are the distinct odd
        numbers, so no chord repeats (verified on the fly);
      * the remainder, the complete graph on W∪C minus the hole on C and
        minus those chords, is handed to the hill climber.  Its geometry
        matches the single-hole instances the climber handles well.

    Returns None when a hypothesis fails (sizes, parity, chord collisions,
    remainder preconditions); the caller then falls back to climbing the
    whole host.
    """
    cc = sorted(aset & bset)
    aa = sorted(aset - bset)
    bb = sorted(bset - aset)
    ww = sorted(set(vlist) - aset - bset)
    alpha, beta = len(aa), len(bb)
    if len(ww) != beta or not 0 < alpha <= beta or (beta - alpha) % 2:
        return None
    half = (beta - alpha) // 2
    triples: list[Triple] = []
    for i in range(alpha):
        for j in range(beta):
            triples.append(tuple(sorted((aa[i], bb[j], ww[(i + j) % beta]))))
    chords: set[tuple[int, int]] = set()
    for j in range(beta):
        for s in range(half):
            p = ww[(j + alpha + s) % beta]
            q = ww[(j + alpha + 2 * half - 1 - s) % beta]
            if p == q:
                return None
            e = (p, q) if p < q else (q, p)
            if e in chords:
                return None
            chords.add(e)
            triples.append(tuple(sorted((bb[j], p, q))))
    rest_pts = ww + cc
    cset = frozenset(cc)
    rest_edges = []
    for x in range(len(rest_pts)):
        for y in range(x + 1, len(rest_pts)):
            p, q = rest_pts[x], rest_pts[y]
            if p > q:
                p, q = q, p
            if (p in cset and q in cset) or (p, q) in chords:
                continue
            rest_edges.append((p, q))
    rest = Graph(rest_pts, rest_edges)
    ok, _ = necessary_conditions(rest)
    if not ok:
        return None
    rest_problem = TrianglePackingProblem(rest, [cset] if len(cset) >= 2 else [])
    total = 0
    for attempt in range(attempts):
        out = hill_climb(rest_problem, derive_seed(seed, "dholerest", attempt), max_iters)
        total += out.effort
        if out.is_yes:
            combined = tuple(sorted(triples + list(out.witness.triples)))
            packing = Packing(host, combined, (aset, bset))
            okv, msg = verify_packing(packing)
            if not okv or not packing.is_decomposition():
                raise AssertionError(
                    f"structured two-hole assembly produced an invalid witness: {msg}"
                )
            return SearchOutcome(Status.PROVED_YES, witness=packing, effort=total)
    return SearchOutcome(
        Status.UNKNOWN,
        effort=total,
        reason="conditions hold, but the climb budget on the structured "
        f"remainder was exhausted in {attempts} attempts",
    )


def decompose_double_hole(
    vset: Iterable[int],
    a: Iterable[int],
    b: Iterable[int],
    seed: int = 0,
    max_iters: int | None = None,
    attempts: int = DEFAULT_ATTEMPTS,
) -> SearchOutcome:
    """K3-decompose the complete graph on vset minus the (possibly
    overlapping) complete holes on a and b.

    Holes with fewer than two points carry no edges and are treated as
    absent: with both absent the problem is a plain complete graph (decided
    by the exact parity arithmetic), with one absent it is a single-hole
    problem (decided by the exact single-hole arithmetic).  With two real
    holes the sufficient conditions (i)-(v) are checked; if any fails the
    result is Unknown with the failures spelled out, since the conditions
    are not necessary.  When they hold, the forced cross-edge structure is
    assembled directly and only the residue is climbed (see
    ``_double_hole_structured``); hosts outside that construction's
    hypotheses fall back to a climb on the whole host.
    """
    vlist = sorted(set(vset))
    aset = frozenset(a)
    bset = frozenset(b)
    if not aset <= set(vlist) or not bset <= set(vlist):
        raise ValueError("holes must be subsets of the point set")
    real = [h for h in (aset, bset) if len(h) >= 2]
    host = _complete_minus_holes(vlist, real)
    if host.m == 0:
        return SearchOutcome(Status.PROVED_YES, witness=Packing(host, (), tuple(real)))
    if len(real) == 0:
        ok, reasons = necessary_conditions(host)
        if not ok:
            return SearchOutcome(Status.PROVED_NO, reason="; ".join(reasons))
    elif len(real) == 1:
        ok, fails = single_hole_conditions(len(vlist), len(real[0]))
        if not ok:
            return SearchOutcome(Status.PROVED_NO, reason="; ".join(fails))
    else:
        ok, fails = double_hole_conditions(frozenset(vlist), aset, bset)
        if not ok:
            return SearchOutcome(
                Status.UNKNOWN,
                reason="sufficient conditions failed (they are not necessary): "
                + "; ".join(fails),
            )
        structured = _double_hole_structured(
            vlist, aset, bset, host, seed, max_iters, attempts
        )
        if structured is not None:
            return structured
    problem = TrianglePackingProblem(host, real)
    total = 0
    for attempt in range(attempts):
        out = hill_climb(problem, derive_seed(seed, "dhole", attempt), max_iters)
        total += out.effort
        if out.is_yes:
            return SearchOutcome(Status.PROVED_YES, witness=out.witness, effort=total)
    return SearchOutcome(
        Status.UNKNOWN,
        effort=total,
        reason="conditions hold, but the climb budget was exhausted in "
        f"{attempts} attempts",
    )
