"""Acceptance battery: ten end-to-end criteria, one test each.

Each criterion is timed against its stated ceiling and contributes one
PASS/FAIL line to the terminal summary (see conftest).  The checks here
deliberately re-derive everything through public entry points only; unit
tests elsewhere cover the internals.
"""

import time
from contextlib import contextmanager
from math import comb

from psts import formats
from psts.canon import are_isomorphic
from psts.coloring import (
    chromatic_index,
    enumerate_check_missing_pair,
    enumerate_colorings,
    is_proper,
    missing_colors,
    prism_hamilton_coloring,
)
from psts.corpus import cubic_corpus, even_graph_classes
from psts.design import is_complete, is_embedding, leave, validate
from psts.family import (
    build_L1,
    build_family_leave,
    check_conjecture,
    check_lemma31,
    family_coloring,
    family_orders,
    l1_canonical_coloring,
    psts15,
)
from psts.graphs import (
    Graph,
    connected_components,
    induced_subgraph,
    is_even,
    join,
    k4,
    k33,
    make_edgeless,
    moebius_ladder,
    petersen,
    prism,
)
from psts.reduction import (
    build_background,
    certify_yes,
    check_params,
    extract_coloring,
    verify_background,
)
from psts.rng import SplitMix64, derive_seed
from psts.solver import (
    TrianglePackingProblem,
    brute_force_k3_decompose,
    decompose_complete_minus_hole,
    exact_k3_decompose,
    necessary_conditions,
    verify_packing,
)


@contextmanager
def criterion(record, num, label, limit_s=None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        dt = time.perf_counter() - t0
        record(f"criterion {num:>2}: FAIL  {dt:8.2f}s  {label}")
        raise
    dt = time.perf_counter() - t0
    within = limit_s is None or dt < limit_s
    bound = f" (limit {limit_s:.0f}s)" if limit_s is not None else ""
    record(f"criterion {num:>2}: {'PASS' if within else 'FAIL'}  {dt:8.2f}s{bound}  {label}")
    assert within, f"criterion {num} took {dt:.2f}s, over the {limit_s}s ceiling"


def test_criterion_01_psts15_validity(record):
    with criterion(record, 1, "stored 27-triple system and its leave", limit_s=1.0):
        ts = psts15()
        ok, msg = validate(ts)
        assert ok, msg
        assert ts.order == 15
        assert len(ts.triples) == 27
        L = leave(ts)
        assert L.m == 24
        assert is_even(L)
        comps = [c for c in connected_components(L) if len(c) > 1]
        assert len(comps) == 2
        assert sum(1 for v in L.vertices if L.degree(v) == 2) == 6


def test_criterion_02_leave_chromatic_index(record):
    with criterion(record, 2, "chi'(leave) = 4 and the missing-pair sweep", limit_s=300.0):
        L = leave(psts15())
        out = chromatic_index(L)
        assert out.is_yes and out.value == 4
        col = out.witness
        assert is_proper(col) and len(col.used_colors()) == 4
        text = formats.emit_coloring(col)
        assert is_proper(formats.parse_coloring(text, L))

        violations = []

        def visitor(candidate):
            if missing_colors(candidate, 1) != missing_colors(candidate, 2):
                violations.append(candidate)
                return False
            return True

        res = enumerate_colorings(L, 4, visitor=visitor)
        assert res.exhausted, "enumeration must sweep the whole space"
        assert not violations
        assert res.count == 960  # distinct classes up to color permutation


def test_criterion_03_counterexample_verdict(record):
    with criterion(record, 3, "all four conditions hold yet no decomposition", limit_s=3600.0):
        L = leave(psts15())
        report = check_conjecture(L, 4)
        assert report.w == 4 and report.u == 15
        assert 4 * 4 - (15 + 1) * 4 + 2 * L.m == 0
        assert report.cond1 is True
        assert report.cond2 is True
        assert report.cond3 is True
        assert report.cond4 is True
        assert report.conditions_hold is True
        assert report.decomposition.is_no, "must prove impossibility, not time out"
        assert str(report.decomposition.status) == "ProvedNo"
        assert report.is_counterexample is True


def test_criterion_04_join_equivalence_sweep(record):
    with criterion(record, 4, "cubic sweep: join decomposes iff chi' = 3", limit_s=300.0):
        corpus = cubic_corpus(10)
        assert len(corpus) == 30
        graphs = [g for _, g in corpus]
        for named in (k4(), k33(), prism(3), prism(4), prism(5),
                      moebius_ladder(4), moebius_ladder(5), petersen()):
            assert any(are_isomorphic(g, named) for g in graphs)
        for name, g in corpus:
            off = max(g.vertices) + 1
            host = join(make_edgeless(range(off, off + 3)), g)
            chi = chromatic_index(g)
            assert chi.is_yes and chi.value in (3, 4), name
            out = exact_k3_decompose(TrianglePackingProblem(host, []))
            assert out.is_yes or out.is_no, f"{name}: sweep must be decisive"
            assert out.is_yes == (chi.value == 3), name
            if are_isomorphic(g, petersen()):
                assert str(out.status) == "ProvedNo"


def test_criterion_05_exact_vs_brute_oracle(record):
    with criterion(record, 5, "exact agrees with brute force everywhere"):
        disagreements = []
        pool = 0
        for n in range(3, 9):
            for g in even_graph_classes(n):
                if not necessary_conditions(g)[0]:
                    continue
                pool += 1
                a = exact_k3_decompose(TrianglePackingProblem(g, []))
                b = brute_force_k3_decompose(TrianglePackingProblem(g, []))
                if a.status != b.status:
                    disagreements.append((n, g))
                for out in (a, b):
                    if out.is_yes:
                        assert out.witness.is_decomposition()
        assert pool >= 100

        rng = SplitMix64(derive_seed(20260816, "acceptance", "criterion5"))
        for _ in range(200):
            n = 4 + rng.randbelow(6)
            verts = range(n)
            edges = [
                (a, b)
                for i, a in enumerate(verts)
                for b in list(verts)[i + 1:]
                if rng.randbelow(100) < 50
            ]
            g = Graph(verts, edges)
            a = exact_k3_decompose(TrianglePackingProblem(g, []))
            b = brute_force_k3_decompose(TrianglePackingProblem(g, []))
            if a.status != b.status:
                disagreements.append((n, g))
        assert disagreements == []


def test_criterion_06_complete_minus_hole(record):
    with criterion(record, 6, "hole arithmetic: (15,7) yes, (13,5) and (13,7) no", limit_s=60.0):
        out = decompose_complete_minus_hole(15, 7, seed=0)
        assert out.is_yes
        okp, msg = verify_packing(out.witness)
        assert okp, msg
        assert out.witness.is_decomposition()

        no1 = decompose_complete_minus_hole(13, 5)
        assert no1.is_no and no1.reason

        no2 = decompose_complete_minus_hole(13, 7)
        assert no2.is_no and no2.reason


def _run_reduction_pipeline(seed: int):
    source = prism(37)
    inst = build_background(source, 339, 451, seed=seed, attempts=5)
    gamma = prism_hamilton_coloring(37)
    emb = certify_yes(inst, gamma, seed=seed, attempts=5)
    col = extract_coloring(inst, emb)
    return inst, emb, col


def test_criterion_07_reduction_pipeline(record):
    with criterion(record, 7, "full gadget pipeline at order 451", limit_s=1800.0):
        params = check_params(74, 339, 451)
        assert not isinstance(params, list), params
        assert params.u_prime == 325
        assert params.d == 126

        inst, emb, col = _run_reduction_pipeline(seed=0)
        ok, report = verify_background(inst)
        assert ok, report
        assert "FAIL" not in report

        # padding points sit outside every triple, so the contract reads the
        # leave on the u' working points
        working = induced_subgraph(leave(inst.system), range(params.u_prime))
        zset = set(inst.z)
        gset = set(range(74))
        expected = set()
        for a, b in inst.source.edges:
            expected.add((min(a, b), max(a, b)))
        for z in inst.z:
            for gv in gset:
                expected.add((min(z, gv), max(z, gv)))
        for ap in inst.a_prime:
            for dp in inst.d_points:
                expected.add((min(ap, dp), max(ap, dp)))
        assert set(working.edges) == expected

        for y in inst.a_prime:
            if y not in zset:
                assert working.degree(y) == 126
        for z in inst.z:
            assert working.degree(z) == 200
        for gv in gset:
            nbrs = set(working.neighbors(gv))
            assert len(nbrs & gset) == 3
            assert len(nbrs & zset) == 3
            assert len(nbrs) == 6
        assert working.degree(inst.x) == 0

        ok, msg = validate(emb)
        assert ok, msg
        assert emb.order == 451
        assert is_complete(emb)
        assert is_embedding(inst.system, emb)

        assert is_proper(col)
        assert col.graph == inst.source
        assert len(col.used_colors()) == 3


def test_criterion_08_family_arithmetic_sweep(record):
    with criterion(record, 8, "family sweep over even w in [6,40]", limit_s=60.0):
        for w in range(6, 41, 2):
            orders = family_orders(w, 3)
            assert len(orders) == 3
            for u in orders:
                assert u % 2 == 1 and u >= 4 * w + 1
                assert (u + w) % 6 in (1, 3)
                fl = build_family_leave(u, w)
                assert fl.graph.m == w * (u - w + 1) // 2
                assert is_even(fl.graph)
                assert fl.graph.max_degree() == w
                assert (comb(u, 2) - fl.graph.m) % 3 == 0
                gamma = family_coloring(fl)
                assert is_proper(gamma)
                assert len(gamma.used_colors()) == w
                lemma = check_lemma31(
                    fl.graph, w, fl.d1, fl.d2, mode="structural", chi_witness=gamma
                )
                assert lemma.cond_i is True
                assert lemma.cond_ii is True
                assert lemma.cond_iii is True
                assert lemma.all_hold is True


def test_criterion_09_dense_part_colorings(record):
    with criterion(record, 9, "dense-part enumeration and canonical colorings", limit_s=600.0):
        for w in (4, 6):
            verdict, res, cex = enumerate_check_missing_pair(build_L1(w), w, 1, 2)
            assert verdict is True
            assert res.exhausted, "verdict needs the full space"
            assert cex is None
        for w in range(4, 41, 2):
            col = l1_canonical_coloring(w)
            assert is_proper(col)
            assert len(col.used_colors()) == w
            m1 = missing_colors(col, 1)
            m2 = missing_colors(col, 2)
            assert m1 == m2
            assert len(m1) == 2


def _render_conjecture_report(report) -> str:
    rows = [
        ("w", report.w),
        ("u", report.u),
        ("cond1", report.cond1),
        ("cond2", report.cond2),
        ("cond3", report.cond3),
        ("cond4", report.cond4),
        ("cond4_detail", report.cond4_detail),
        ("conditions_hold", report.conditions_hold),
        ("decomposition", report.decomposition.status),
        ("effort", report.decomposition.effort),
        ("is_counterexample", report.is_counterexample),
    ]
    return "".join(f"{k}={v}\n" for k, v in rows)


def test_criterion_10_determinism(record):
    with criterion(record, 10, "identical seeds give identical artifacts"):
        L = leave(psts15())
        first = _render_conjecture_report(check_conjecture(L, 4))
        second = _render_conjecture_report(check_conjecture(L, 4))
        assert first.encode() == second.encode()

        runs = []
        for _ in range(2):
            inst, emb, col = _run_reduction_pipeline(seed=0)
            runs.append(
                (
                    formats.emit_triples(inst.system).encode(),
                    formats.emit_background_meta(inst).encode(),
                    formats.emit_triples(emb).encode(),
                    formats.emit_coloring(col).encode(),
                )
            )
        assert runs[0] == runs[1]
