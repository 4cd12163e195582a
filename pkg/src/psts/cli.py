"""Command-line front end.

Every subcommand prints a plain-text key=value report to stdout in a fixed
key order and returns one of four exit codes: 0 for a positive or completed
result, 1 for a proved negative (or a failed verification), 2 for a search
that ended without an answer, 3 for usage and input errors.  Wall-clock
time goes to stderr only, so identical command lines with identical seeds
produce byte-identical stdout and witness files.

All randomness flows from --seed through named derivation inside the
library; --jobs currently parallelizes the independent per-order searches
of `embed` and is echoed (but has no effect) elsewhere.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import formats
from .coloring import chromatic_index
from .design import (
    EmbedQuery,
    decide_f_embed,
    is_complete,
    leave,
    validate,
)
from .family import (
    build_family_leave,
    check_conjecture,
    check_lemma31,
    family_coloring,
    family_orders,
    psts15,
    realize_as_leave,
)
from .graphs import Graph, connected_components, is_even
from .kernels import backend_name
from .reduction import (
    BackgroundParams,
    ExtractionFailed,
    StageUnknown,
    build_background,
    certify_yes,
    check_params,
    extract_coloring,
    instance_from_parts,
    verify_background,
)
from .solver import (
    Packing,
    TrianglePackingProblem,
    exact_k3_decompose,
    hill_climb,
    verify_packing,
)
from .design import TripleSystem

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; the contract here is 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


class Report:
    """Ordered key=value lines; insertion order is the stable key order."""

    def __init__(self, argv: list[str]):
        self._rows: list[tuple[str, str]] = [("command", " ".join(argv))]

    def add(self, key: str, value) -> None:
        if value is True:
            value = "true"
        elif value is False:
            value = "false"
        elif value is None:
            value = "unknown"
        self._rows.append((key, str(value)))

    def emit(self) -> None:
        sys.stdout.write("".join(f"{k}={v}\n" for k, v in self._rows))


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path: str) -> Graph:
    return formats.parse_graph(_read(path))


def _load_triples(path: str) -> TripleSystem:
    return formats.parse_triples(_read(path))


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise ValueError(f"{flag} wants a comma-separated integer list") from None


def _outcome_exit(out) -> int:
    if out.is_yes:
        return EXIT_YES
    if out.is_no:
        return EXIT_NO
    return EXIT_UNKNOWN


def _load_background(prefix: str):
    for suffix in (".psts", ".meta"):
        if prefix.endswith(suffix):
            prefix = prefix[: -len(suffix)]
    system = _load_triples(prefix + ".psts")
    meta = formats.parse_background_meta(_read(prefix + ".meta"))
    params = BackgroundParams(
        n=meta["n"], u=meta["u"], v=meta["v"], u_prime=meta["u_prime"], d=meta["d"]
    )
    return instance_from_parts(system, params)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args, rep: Report) -> int:
    if args.psts and (args.graph or args.coloring):
        raise ValueError("verify wants either --psts or --graph [--coloring]")
    if args.coloring and not args.graph:
        raise ValueError("--coloring needs --graph to color")
    if args.psts:
        ts = _load_triples(args.psts)
        ok, msg = validate(ts)
        rep.add("kind", "psts")
        rep.add("order", ts.order)
        rep.add("triples", len(ts.triples))
        rep.add("valid", ok)
        rep.add("complete", is_complete(ts) if ok else False)
        rep.add("leave_edges", leave(ts).m if ok else "")
        if not ok:
            rep.add("violation", msg)
        rep.emit()
        return EXIT_YES if ok else EXIT_NO
    if args.graph:
        g = _load_graph(args.graph)
        if args.coloring:
            col = formats.parse_coloring(_read(args.coloring), g)
            rep.add("kind", "coloring")
            rep.add("vertices", g.n)
            rep.add("edges", g.m)
            rep.add("colors", len(col.palette))
            proper = col.is_proper()
            rep.add("proper", proper)
            rep.emit()
            return EXIT_YES if proper else EXIT_NO
        rep.add("kind", "graph")
        rep.add("vertices", g.n)
        rep.add("edges", g.m)
        rep.add("valid", True)
        rep.emit()
        return EXIT_YES
    raise ValueError("verify wants --psts or --graph")


def cmd_leave(args, rep: Report) -> int:
    ts = _load_triples(args.psts)
    ok, msg = validate(ts)
    if not ok:
        raise ValueError(f"not a valid system: {msg}")
    lv = leave(ts)
    rep.add("order", ts.order)
    rep.add("triples", len(ts.triples))
    rep.add("leave_edges", lv.m)
    rep.add("leave_even", is_even(lv))
    rep.add("components", len([c for c in connected_components(lv) if len(c) > 1]))
    if args.out:
        _write(args.out, formats.emit_graph(lv))
        rep.add("witness", args.out)
    rep.emit()
    return EXIT_YES


def cmd_embed(args, rep: Report) -> int:
    ts = _load_triples(args.psts)
    orders = _int_list(args.orders, "--orders")
    q = EmbedQuery(
        system=ts,
        orders=tuple(orders),
        seed=args.seed,
        node_budget=args.budget,
        climb_iters=args.iters,
        attempts=args.attempts,
        jobs=args.jobs,
    )
    outs = decide_f_embed(q)
    rep.add("order", ts.order)
    rep.add("orders", ",".join(str(v) for v in orders))
    rep.add("jobs", args.jobs)
    first_yes = None
    for v, out in zip(orders, outs):
        rep.add(f"order_{v}", out.status)
        rep.add(f"order_{v}_effort", out.effort)
        if out.is_yes and first_yes is None:
            first_yes = (v, out.witness)
    if first_yes and args.out:
        v, witness = first_yes
        _write(args.out, formats.emit_triples(witness))
        rep.add("witness", args.out)
        rep.add("witness_order", v)
    rep.emit()
    if any(out.is_yes for out in outs):
        return EXIT_YES
    if all(out.is_no for out in outs):
        return EXIT_NO
    return EXIT_UNKNOWN


def cmd_decompose(args, rep: Report) -> int:
    g = _load_graph(args.graph)
    holes = [frozenset(_int_list(h, "--hole")) for h in args.hole or []]
    for hole in holes:
        if not hole <= set(g.vertices):
            raise ValueError("hole points must be vertices of the graph")
    hole_sets = [set(h) for h in holes]
    host = Graph(
        g.vertices,
        [
            e
            for e in g.edges
            if not any(e[0] in h and e[1] in h for h in hole_sets)
        ],
    )
    problem = TrianglePackingProblem(host, holes)
    rep.add("vertices", g.n)
    rep.add("edges", host.m)
    rep.add("holes", ";".join(",".join(str(p) for p in sorted(h)) for h in holes))
    method = "climb" if args.climb else "exact"
    rep.add("method", method)
    if method == "exact":
        out = exact_k3_decompose(problem, args.budget)
    else:
        out = hill_climb(problem, args.seed, args.iters)
    rep.add("status", out.status)
    rep.add("effort", out.effort)
    if out.reason:
        rep.add("reason", out.reason)
    if out.is_yes:
        packing: Packing = out.witness
        okp, msg = verify_packing(packing)
        if not okp or not packing.is_decomposition():
            raise AssertionError(f"witness failed re-verification: {msg}")
        rep.add("triples", len(packing.triples))
        if args.out:
            ts = TripleSystem(host.vertices, packing.triples)
            _write(args.out, formats.emit_triples(ts))
            rep.add("witness", args.out)
    rep.emit()
    return _outcome_exit(out)


def cmd_chromatic_index(args, rep: Report) -> int:
    g = _load_graph(args.graph)
    out = chromatic_index(g, args.budget)
    rep.add("vertices", g.n)
    rep.add("edges", g.m)
    rep.add("max_degree", g.max_degree())
    rep.add("status", out.status)
    rep.add("chi", out.value if out.is_yes else None)
    rep.add("effort", out.effort)
    if out.is_yes and g.m and args.out:
        _write(args.out, formats.emit_coloring(out.witness))
        rep.add("witness", args.out)
    rep.emit()
    return EXIT_YES if out.is_yes else EXIT_UNKNOWN


def cmd_reduce(args, rep: Report) -> int:
    g = _load_graph(args.graph)
    params = check_params(g.n, args.u, args.v)
    if isinstance(params, list):
        raise ValueError("parameter check failed: " + "; ".join(params))
    inst = build_background(
        g,
        args.u,
        args.v,
        seed=args.seed,
        max_iters=args.iters,
        attempts=args.attempts,
    )
    ok, report = verify_background(inst)
    if not ok:
        raise AssertionError("gadget failed verification:\n" + report)
    p = inst.params
    rep.add("n", p.n)
    rep.add("u", p.u)
    rep.add("v", p.v)
    rep.add("u_prime", p.u_prime)
    rep.add("d", p.d)
    rep.add("triples", len(inst.system.triples))
    rep.add("verified", True)
    _write(args.out + ".psts", formats.emit_triples(inst.system))
    _write(args.out + ".meta", formats.emit_background_meta(inst))
    rep.add("witness", args.out + ".psts")
    rep.add("meta", args.out + ".meta")
    rep.emit()
    return EXIT_YES


def cmd_certify(args, rep: Report) -> int:
    inst = _load_background(args.background)
    ok, report = verify_background(inst)
    if not ok:
        rep.add("background_verified", False)
        rep.emit()
        sys.stderr.write(report + "\n")
        return EXIT_NO
    gamma = formats.parse_coloring(_read(args.coloring), inst.source)
    emb = certify_yes(
        inst,
        gamma,
        seed=args.seed,
        max_iters=args.iters,
        attempts=args.attempts,
    )
    rep.add("background_verified", True)
    rep.add("u", inst.params.u)
    rep.add("v", emb.order)
    rep.add("triples", len(emb.triples))
    rep.add("verified", True)
    _write(args.out, formats.emit_triples(emb))
    rep.add("witness", args.out)
    rep.emit()
    return EXIT_YES


def cmd_extract(args, rep: Report) -> int:
    inst = _load_background(args.background)
    ok, report = verify_background(inst)
    if not ok:
        rep.add("background_verified", False)
        rep.emit()
        sys.stderr.write(report + "\n")
        return EXIT_NO
    emb = _load_triples(args.embedding)
    try:
        col = extract_coloring(inst, emb)
    except ExtractionFailed as exc:
        rep.add("background_verified", True)
        rep.add("extracted", False)
        rep.add("reason", str(exc))
        rep.emit()
        return EXIT_NO if exc.hard else EXIT_UNKNOWN
    rep.add("background_verified", True)
    rep.add("extracted", True)
    rep.add("colors", len(col.palette))
    rep.add("proper", col.is_proper())
    _write(args.out, formats.emit_coloring(col))
    rep.add("witness", args.out)
    rep.emit()
    return EXIT_YES


def cmd_family(args, rep: Report) -> int:
    w = args.w
    u = args.u if args.u is not None else family_orders(w, 1)[0]
    fl = build_family_leave(u, w)
    gamma = family_coloring(fl)
    lemma = check_lemma31(
        fl.graph, w, fl.d1, fl.d2, mode="structural", chi_witness=gamma
    )
    rep.add("w", w)
    rep.add("u", u)
    rep.add("t", fl.t)
    rep.add("vertices", fl.graph.n)
    rep.add("edges", fl.graph.m)
    rep.add("expected_edges", lemma.expected_edges)
    rep.add("max_degree", fl.graph.max_degree())
    rep.add("d1", fl.d1)
    rep.add("d2", fl.d2)
    rep.add("cond_i", lemma.cond_i)
    rep.add("chi", len(gamma.used_colors()))
    rep.add("cond_ii", lemma.cond_ii)
    rep.add("cond_iii", lemma.cond_iii)
    rep.add("missing_pair_mode", lemma.missing_pair.mode)
    _write(args.out + ".graph", formats.emit_graph(fl.graph))
    rep.add("witness", args.out + ".graph")
    _write(args.out + ".ecol", formats.emit_coloring(gamma))
    rep.add("coloring", args.out + ".ecol")
    rep.emit()
    holds = lemma.all_hold
    if holds is True:
        return EXIT_YES
    return EXIT_UNKNOWN if holds is None else EXIT_NO


def cmd_counterexample(args, rep: Report) -> int:
    if args.w != 4:
        raise ValueError(
            "only --w 4 carries an explicit instance; use family/check-conjecture "
            "for the general machinery"
        )
    ts = psts15()
    ok, msg = validate(ts)
    if not ok:
        raise AssertionError(f"stored system failed validation: {msg}")
    L = leave(ts)
    report = check_conjecture(L, 4, budget=args.budget)
    rep.add("w", 4)
    rep.add("u", L.n)
    rep.add("leave_edges", L.m)
    rep.add("cond1", report.cond1)
    rep.add("cond2", report.cond2)
    rep.add("cond3", report.cond3)
    rep.add("cond4", report.cond4)
    rep.add("cond4_detail", report.cond4_detail)
    rep.add("conditions_hold", report.conditions_hold)
    rep.add("decomposition", report.decomposition.status)
    rep.add("effort", report.decomposition.effort)
    rep.add("is_counterexample", report.is_counterexample)
    _write(args.out + ".psts", formats.emit_triples(ts))
    rep.add("witness", args.out + ".psts")
    _write(args.out + ".graph", formats.emit_graph(L))
    rep.add("leave", args.out + ".graph")
    rep.emit()
    if report.is_counterexample is True:
        return EXIT_YES
    return EXIT_UNKNOWN if report.is_counterexample is None else EXIT_NO


def cmd_check_conjecture(args, rep: Report) -> int:
    L = _load_graph(args.graph)
    witness = _load_graph(args.witness) if args.witness else None
    report = check_conjecture(L, args.w, witness=witness, budget=args.budget)
    rep.add("w", report.w)
    rep.add("u", report.u)
    rep.add("edges", L.m)
    rep.add("cond1", report.cond1)
    rep.add("cond2", report.cond2)
    rep.add("cond3", report.cond3)
    rep.add("cond4_i", report.cond4_i.status if report.cond4_i else None)
    rep.add("cond4_ii", report.cond4_ii)
    rep.add("cond4_iii", report.cond4_iii)
    rep.add("cond4", report.cond4)
    rep.add("cond4_detail", report.cond4_detail)
    rep.add("conditions_hold", report.conditions_hold)
    rep.add("decomposition", report.decomposition.status)
    rep.add("effort", report.decomposition.effort)
    rep.add("is_counterexample", report.is_counterexample)
    rep.emit()
    return _outcome_exit(report.decomposition)


def cmd_realize_leave(args, rep: Report) -> int:
    L = _load_graph(args.graph)
    try:
        out = realize_as_leave(
            L, seed=args.seed, max_iters=args.iters, attempts=args.attempts
        )
    except ValueError as exc:
        rep.add("status", "ProvedNo")
        rep.add("reason", str(exc))
        rep.emit()
        return EXIT_NO
    rep.add("status", out.status)
    rep.add("effort", out.effort)
    if out.reason:
        rep.add("reason", out.reason)
    if out.is_yes:
        rep.add("triples", len(out.witness.triples))
        if args.out:
            _write(args.out, formats.emit_triples(out.witness))
            rep.add("witness", args.out)
    rep.emit()
    return _outcome_exit(out)


def cmd_selftest(args, rep: Report) -> int:
    from . import selftest

    results = selftest.run()
    ok = True
    for name, passed, detail in results:
        rep.add(name, passed)
        if not passed:
            ok = False
            rep.add(name + "_detail", detail)
    rep.add("backend", backend_name())
    rep.add("all_pass", ok)
    rep.emit()
    return EXIT_YES if ok else EXIT_NO


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_search_flags(p, climb=True, exact=True):
    p.add_argument("--seed", type=int, default=0)
    if exact:
        p.add_argument("--budget", type=int, default=None, help="node budget")
    if climb:
        p.add_argument("--iters", type=int, default=None, help="climb iteration budget")
        p.add_argument("--attempts", type=int, default=5)


def build_parser() -> _Parser:
    top = _Parser(prog="psts", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="re-check a system, graph, or coloring file")
    p.add_argument("--psts")
    p.add_argument("--graph")
    p.add_argument("--coloring")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("leave", help="uncovered pairs of a system")
    p.add_argument("--psts", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_leave)

    p = sub.add_parser("embed", help="decide embeddings at listed orders")
    p.add_argument("--psts", required=True)
    p.add_argument("--orders", required=True)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    _add_search_flags(p)
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("decompose", help="triangle-decompose a graph")
    p.add_argument("graph")
    p.add_argument("--hole", action="append")
    p.add_argument("--out")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true")
    group.add_argument("--climb", action="store_true")
    _add_search_flags(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("chromatic-index", help="decide chi' with witness")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    _add_search_flags(p, climb=False)
    p.set_defaults(fn=cmd_chromatic_index)

    p = sub.add_parser("reduce", help="build the embedding gadget for a cubic graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--out", default="background")
    _add_search_flags(p, exact=False)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("certify", help="turn a 3-coloring into an order-v embedding")
    p.add_argument("--background", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--out", default="embedding.psts")
    _add_search_flags(p, exact=False)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("extract", help="read a 3-coloring off an embedding")
    p.add_argument("--background", required=True)
    p.add_argument("--embedding", required=True)
    p.add_argument("--out", default="extracted.ecol")
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("family", help="build a leave from the parametric family")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--u", type=int)
    p.add_argument("--out", default="family")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("counterexample", help="emit the order-15 counterexample")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--out", default="counterexample")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_counterexample)

    p = sub.add_parser("check-conjecture", help="evaluate the decomposition conditions")
    p.add_argument("--graph", required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--witness")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_check_conjecture)

    p = sub.add_parser("realize-leave", help="find a system whose leave is the graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    _add_search_flags(p, exact=False)
    p.set_defaults(fn=cmd_realize_leave)

    p = sub.add_parser("selftest", help="quick internal consistency battery")
    p.set_defaults(fn=cmd_selftest)

    return top


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(argv)
    started = time.monotonic()
    try:
        code = args.fn(args, rep)
    except StageUnknown as exc:
        rep.add("status", "Unknown")
        rep.add("stage", exc.stage)
        rep.add("reason", exc.outcome.reason or str(exc))
        rep.add("effort", exc.outcome.effort)
        rep.emit()
        code = EXIT_UNKNOWN
    except (formats.FormatError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        code = EXIT_USAGE
    finally:
        sys.stderr.write(f"wall_time_s={time.monotonic() - started:.3f}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    return dispatch(argv)


if __name__ == "__main__":
    raise SystemExit(main())
