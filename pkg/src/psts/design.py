"""Partial Steiner triple systems and the small-embedding decision.

A partial Steiner triple system (PSTS) of order u is a set of 3-element
point subsets (triples) in which every pair of points lies in at most one
triple.  Its leave is the graph of uncovered pairs.  A complete system
(STS) covers every pair; STS(v) exists exactly for v ≡ 1, 3 (mod 6), the
admissible orders.

An embedding of a PSTS of order u is an STS of order v whose triples
contain the given ones.  Every admissible v >= 2u+1 works, so only the
small range u <= v < 2u+1 holds any tension; ``decide_f_embed`` therefore
answers guaranteed orders with a stochastic construction and small orders
with a complete search, and its ProvedNo answers come only from the
latter.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graphs import Graph
from .solver import (
    SearchOutcome,
    Status,
    TrianglePackingProblem,
    exact_k3_decompose,
    hill_climb,
)
from .rng import derive_seed

Triple = tuple[int, int, int]


class TripleSystem:
    """Immutable PSTS: sorted points, lexicographically sorted triples."""

    __slots__ = ("points", "triples", "_point_set", "_hash")

    def __init__(self, points, triples=()):
        pts = sorted(set(points))
        for p in pts:
            if not isinstance(p, int) or p < 0:
                raise ValueError(f"points must be nonnegative integers, got {p!r}")
        pset = set(pts)
        norm = []
        for t in triples:
            tt = tuple(sorted(t))
            if len(tt) != 3 or len(set(tt)) != 3:
                raise ValueError(f"triple {t} does not have three distinct points")
            if not set(tt) <= pset:
                raise ValueError(f"triple {t} uses a point outside the point set")
            norm.append(tt)
        if len(set(norm)) != len(norm):
            dup = sorted(t for t in set(norm) if norm.count(t) > 1)[0]
            raise ValueError(f"duplicate triple {dup}")
        self.points: tuple[int, ...] = tuple(pts)
        self.triples: tuple[Triple, ...] = tuple(sorted(norm))
        self._point_set = pset
        self._hash = hash((self.points, self.triples))

    @property
    def order(self) -> int:
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, TripleSystem):
            return NotImplemented
        return self.points == other.points and self.triples == other.triples

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TripleSystem(u={self.order}, k={len(self.triples)})"


def validate(ts: TripleSystem) -> tuple[bool, str]:
    """Check the defining property: every pair in at most one triple.
    Never raises; on failure the report names the lexicographically first
    pair covered twice."""
    seen: dict[tuple[int, int], Triple] = {}
    bad: list[tuple[int, int]] = []
    for t in ts.triples:
        a, b, c = t
        for pair in ((a, b), (a, c), (b, c)):
            if pair in seen:
                bad.append(pair)
            else:
                seen[pair] = t
    if bad:
        first = min(bad)
        return False, f"pair {first} lies in more than one triple"
    return True, "ok"


def covered_pairs(ts: TripleSystem) -> frozenset:
    cov = set()
    for a, b, c in ts.triples:
        cov.add((a, b))
        cov.add((a, c))
        cov.add((b, c))
    return frozenset(cov)


def leave(ts: TripleSystem) -> Graph:
    """Graph of uncovered pairs on the system's points."""
    ok, msg = validate(ts)
    if not ok:
        raise ValueError(f"invalid system: {msg}")
    cov = covered_pairs(ts)
    pts = ts.points
    edges = [
        (pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
        if (pts[i], pts[j]) not in cov
    ]
    return Graph(pts, edges)


def is_admissible(v: int) -> bool:
    """True iff a complete system of order v exists (v ≡ 1, 3 mod 6)."""
    return v >= 0 and v % 6 in (1, 3)


def is_complete(ts: TripleSystem) -> bool:
    ok, _ = validate(ts)
    if not ok:
        return False
    u = ts.order
    return 3 * len(ts.triples) == u * (u - 1) // 2


def is_embedding(small: TripleSystem, big: TripleSystem) -> bool:
    """True iff big is a complete system containing small: points and
    triples of small are subsets of big's and big covers every pair."""
    if not set(small.points) <= set(big.points):
        return False
    if not set(small.triples) <= set(big.triples):
        return False
    return is_complete(big)


def add_isolated_points(ts: TripleSystem, k: int) -> TripleSystem:
    """Adjoin k fresh points (smallest unused nonnegative labels) to the
    point set, leaving the triples untouched."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    have = set(ts.points)
    fresh = []
    label = 0
    while len(fresh) < k:
        if label not in have:
            fresh.append(label)
        label += 1
    return TripleSystem(list(ts.points) + fresh, ts.triples)


@dataclass(frozen=True)
class EmbedQuery:
    """Inputs of the small-embedding decision: the system, the ascending
    target orders, and search knobs."""

    system: TripleSystem
    orders: tuple[int, ...]
    seed: int = 0
    node_budget: int | None = None
    climb_iters: int | None = None
    attempts: int = 5
    jobs: int = 1


def _embedding_host(ts: TripleSystem, v: int) -> tuple[TripleSystem, Graph]:
    padded = add_isolated_points(ts, v - ts.order)
    return padded, leave(padded)


def _decide_one(args) -> SearchOutcome:
    ts, v, seed, node_budget, climb_iters, attempts = args
    u = ts.order
    padded, host = _embedding_host(ts, v)

    def to_embedding(packing) -> TripleSystem:
        emb = TripleSystem(padded.points, padded.triples + packing.triples)
        if not is_embedding(ts, emb):
            raise AssertionError("constructed embedding failed re-verification")
        return emb

    if v >= 2 * u + 1:
        total = 0
        for attempt in range(attempts):
            out = hill_climb(
                TrianglePackingProblem(host),
                derive_seed(seed, "embed", v, attempt),
                climb_iters,
            )
            total += out.effort
            if out.is_yes:
                return SearchOutcome(
                    Status.PROVED_YES, witness=to_embedding(out.witness), effort=total
                )
        return SearchOutcome(
            Status.UNKNOWN,
            effort=total,
            reason=f"order {v} is guaranteed (v >= 2u+1), but the climb budget "
            f"was exhausted in {attempts} attempts",
        )
    out = exact_k3_decompose(TrianglePackingProblem(host), node_budget)
    if out.is_yes:
        return SearchOutcome(
            Status.PROVED_YES, witness=to_embedding(out.witness), effort=out.effort
        )
    return SearchOutcome(out.status, effort=out.effort, reason=out.reason)


def decide_f_embed(q: EmbedQuery) -> list[SearchOutcome]:
    """Decide, for each target order, whether the system embeds in an STS
    of that order.

    Guaranteed orders (v >= 2u+1) are answered constructively by hill
    climbing with derived seeds; the small range runs the complete exact
    search, so ProvedNo answers occur only there.  Orders are evaluated
    independently (in parallel when jobs > 1) and results are returned in
    query order.
    """
    ok, msg = validate(q.system)
    if not ok:
        raise ValueError(f"invalid system: {msg}")
    orders = list(q.orders)
    if orders != sorted(orders):
        raise ValueError("target orders must be ascending")
    u = q.system.order
    for v in orders:
        if not is_admissible(v):
            raise ValueError(f"target order {v} is not admissible (v ≡ 1,3 mod 6)")
        if v < u:
            raise ValueError(f"target order {v} is below the system order {u}")
    argv = [
        (q.system, v, q.seed, q.node_budget, q.climb_iters, q.attempts)
        for v in orders
    ]
    if q.jobs > 1 and len(argv) > 1:
        with ProcessPoolExecutor(max_workers=q.jobs) as pool:
            return list(pool.map(_decide_one, argv))
    return [_decide_one(a) for a in argv]
