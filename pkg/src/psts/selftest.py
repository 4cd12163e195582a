"""Quick internal consistency battery behind `psts selftest`.

Each item is independent, deterministic, and cheap (the whole battery
targets a few seconds).  Failures carry a one-line detail instead of a
traceback so the battery always reports every item.
"""

from __future__ import annotations

from . import formats, kernels
from .coloring import chromatic_index, koenig_coloring, vizing_coloring
from .design import leave, validate
from .family import psts15
from .graphs import (
    connected_components,
    is_even,
    join,
    k33,
    make_complete,
    make_edgeless,
    petersen,
    prism,
)
from .solver import (
    TrianglePackingProblem,
    brute_force_k3_decompose,
    decompose_complete_minus_hole,
    exact_k3_decompose,
    hill_climb,
    verify_packing,
)


def _item(checks: list, name: str):
    def wrap(fn):
        checks.append((name, fn))
        return fn

    return wrap


def run() -> list[tuple[str, bool, str]]:
    checks: list = []

    @_item(checks, "formats_roundtrip")
    def _():
        ts = psts15()
        text = formats.emit_triples(ts)
        assert formats.emit_triples(formats.parse_triples(text)) == text
        lv = leave(ts)
        gt = formats.emit_graph(lv)
        assert formats.emit_graph(formats.parse_graph(gt)) == gt
        col = vizing_coloring(lv)
        ct = formats.emit_coloring(col)
        assert formats.emit_coloring(formats.parse_coloring(ct, lv)) == ct

    @_item(checks, "psts15_shape")
    def _():
        ts = psts15()
        ok, msg = validate(ts)
        assert ok, msg
        lv = leave(ts)
        assert lv.m == 24 and is_even(lv)
        comps = [c for c in connected_components(lv) if len(c) > 1]
        assert len(comps) == 2

    @_item(checks, "exact_vs_brute")
    def _():
        for g, expect in (
            (make_complete(7), True),
            (make_complete(5), False),
            (make_complete(3), True),
            (join(make_edgeless(range(6, 9)), prism(3)), True),
            (join(make_edgeless(range(10, 13)), petersen()), False),
        ):
            out = exact_k3_decompose(g)
            assert out.is_yes == expect and (out.is_yes or out.is_no), g
            if g.n <= 9:
                bf = brute_force_k3_decompose(g)
                assert bf.is_yes == out.is_yes
            if out.is_yes:
                ok, msg = verify_packing(out.witness)
                assert ok and out.witness.is_decomposition(), msg

    @_item(checks, "climb_deterministic")
    def _():
        p = TrianglePackingProblem(make_complete(9))
        a = hill_climb(p, seed=7)
        b = hill_climb(p, seed=7)
        assert a.is_yes and b.is_yes
        assert a.witness.triples == b.witness.triples

    @_item(checks, "edge_coloring")
    def _():
        col = koenig_coloring(k33())
        assert col.is_proper() and len(col.used_colors()) == 3
        out = chromatic_index(petersen())
        assert out.is_yes and out.value == 4
        out3 = chromatic_index(prism(3))
        assert out3.is_yes and out3.value == 3

    @_item(checks, "kernel_backends_agree")
    def _():
        g = join(make_edgeless(range(6, 9)), prism(3))
        idx = {e: i for i, e in enumerate(g.edges)}
        prob = TrianglePackingProblem(g)
        rows = [
            tuple(sorted(idx[e] for e in (tuple(sorted((a, b))),
                                          tuple(sorted((a, c))),
                                          tuple(sorted((b, c))))))
            for a, b, c in prob.triangles()
        ]
        got = {
            mod.BACKEND: mod.exact_cover_first(g.m, rows, 10**6)
            for mod in kernels.backends()
        }
        assert len({(s, tuple(r or ()), n) for s, r, n in got.values()}) == 1, got
        pet = petersen()
        counts = {
            mod.BACKEND: mod.coloring_search(
                pet.n, list(pet.edges), 4, kernels.MODE_COUNT, 10**7
            )[:2]
            for mod in kernels.backends()
        }
        assert len(set(counts.values())) == 1, counts

    @_item(checks, "hole_wrappers")
    def _():
        assert decompose_complete_minus_hole(15, 7).is_yes
        assert decompose_complete_minus_hole(13, 5).is_no

    results = []
    for name, fn in checks:
        try:
            fn()
            results.append((name, True, ""))
        except Exception as exc:  # noqa: BLE001 - battery reports, never raises
            results.append((name, False, f"{type(exc).__name__}: {exc}"))
    return results
