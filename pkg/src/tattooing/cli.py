"""Command-line front end: compute invariants, verify anchors, sweep families.

Exit codes: 0 success, 2 input or parse failure, 3 search-limit refusal,
4 witness replay mismatch.  All rationals are printed reduced, as
``p/q`` (or a bare integer when the denominator is one).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import multiprocessing
import random
import sys
import time
from fractions import Fraction

import networkx as nx

from tattooing.engine import (
    AllocationPlan,
    ColourSet,
    FireEvent,
    Mode,
    Policy,
    ReplayError,
    Witness,
    replay,
)
from tattooing.formulas import (
    cycle_tau,
    fr3_formulas,
    general_fr_formulas,
    joost_formulas,
)
from tattooing.graphs import (
    Digraph,
    Graph,
    build_family,
    orient,
    parse_edge_list,
    parse_family_spec,
)
from tattooing.oracle import connected_graph_corpus, oracle_invariants
from tattooing.search import (
    LimitError,
    Quantity,
    SearchLimits,
    best_index,
    best_index_for_orientation,
    ratio_set,
)

PASS = "PASS"
FAIL = "FAIL"
DISCREPANCY = "DISCREPANCY"

_QUANTITY_MODES = {
    "br": Mode.BRUSH,
    "btau": Mode.FSG,
    "tau": Mode.BLEND,
}


class InputError(Exception):
    """Bad user input: malformed graph, spec, flag combination, or file."""


def _rational(value: Fraction) -> str:
    return str(value)


def _scalar(value):
    return value if isinstance(value, int) else _rational(value)


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError as exc:
        raise InputError(f"bad range {text!r}: use N or A..B") from exc


def _parse_allocation(text: str, policy: Policy) -> AllocationPlan:
    pairs = []
    try:
        for clause in text.split(","):
            v, k = clause.split(":", 1)
            pairs.append((int(v), int(k)))
        return AllocationPlan(tuple(pairs), policy)
    except ValueError as exc:
        raise InputError(f"bad allocation {text!r}: use v:k[,v:k...]") from exc


def _load_graph(args) -> tuple[Graph, str | None]:
    if getattr(args, "family", None) and getattr(args, "input", None):
        raise InputError("give either --family or --input, not both")
    try:
        if getattr(args, "family", None):
            return build_family(parse_family_spec(args.family)), args.family
        if getattr(args, "input", None):
            with open(args.input, encoding="utf-8") as handle:
                return parse_edge_list(handle.read()), None
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    raise InputError("a graph is required: --family SPEC or --input FILE")


def _limits(args) -> SearchLimits:
    base = SearchLimits()
    if getattr(args, "max_edges", None) is not None:
        base = dataclasses.replace(base, max_edges=args.max_edges)
    return base


def _resolve_mode(args) -> Mode:
    implied = _QUANTITY_MODES.get(args.quantity)
    if args.mode is None:
        return implied if implied is not None else Mode.BLEND
    chosen = Mode(args.mode)
    if implied is not None and chosen is not implied:
        raise InputError(
            f"{args.quantity} is defined in {implied.value} mode"
        )
    return chosen


def _witness_doc(witness: Witness) -> dict:
    return {
        "orientation": witness.orientation,
        "policy": witness.policy.value,
        "initial": [[v, k] for v, k in witness.initial],
        "events": [
            {
                "vertex": event.vertex,
                "assignment": [
                    [arc, list(colour.members)]
                    for arc, colour in event.assignment
                ],
            }
            for event in witness.events
        ],
    }


def _witness_from_doc(doc: dict) -> Witness:
    return Witness(
        orientation=doc["orientation"],
        policy=Policy(doc["policy"]),
        initial=tuple((v, k) for v, k in doc["initial"]),
        events=tuple(
            FireEvent(
                vertex=event["vertex"],
                assignment=tuple(
                    (arc, ColourSet(tuple(members)))
                    for arc, members in event["assignment"]
                ),
            )
            for event in doc["events"]
        ),
    )


def _graph_doc(graph: Graph) -> dict:
    return {
        "vertices": graph.n,
        "edges": graph.m,
        "edge_list": [[u, v] for u, v in graph.edges],
    }


def _value_from_report(report, quantity: str):
    if quantity in _QUANTITY_MODES:
        return report.cost
    if quantity == "labelsum":
        return report.label_sum
    if quantity == "index":
        return _rational(report.index)
    return _rational(report.raw_ratio)


# ---- compute ----


def cmd_compute(args) -> int:
    if args.replay:
        return _replay_check(args.replay)
    if args.quantity is None:
        raise InputError("--quantity is required (unless --replay is given)")
    graph, family = _load_graph(args)
    mode = _resolve_mode(args)
    policy = Policy(args.policy)
    limits = _limits(args)
    started = time.monotonic()

    doc = {
        "graph": _graph_doc(graph),
        "family": family,
        "mode": mode.value,
        "policy": policy.value,
        "quantity": args.quantity,
    }

    if args.quantity == "ratio-set":
        if args.orientation is None or args.allocate is None:
            raise InputError(
                "ratio-set needs --orientation CODE and --allocate v:k[,...]"
            )
        digraph = _orientation(graph, args.orientation)
        plan = _parse_allocation(args.allocate, policy)
        values = ratio_set(digraph, mode, plan, limits)
        doc["orientation"] = args.orientation
        doc["allocation"] = [[v, k] for v, k in plan.initial]
        doc["value"] = [
            _rational(v) for v in sorted(values, reverse=True)
        ]
        doc["witness"] = None
        doc["orientations_searched"] = 1
    else:
        if args.orientation is not None:
            digraph = _orientation(graph, args.orientation)
            report = best_index_for_orientation(
                digraph, mode, policy, limits
            )
            doc["orientation"] = args.orientation
        else:
            report = best_index(
                graph, mode, policy, limits, workers=args.workers
            )
        doc["value"] = _value_from_report(report, args.quantity)
        doc["cost"] = report.cost
        doc["label_sum"] = report.label_sum
        doc["raw_ratio"] = _rational(report.raw_ratio)
        doc["index"] = _rational(report.index)
        doc["witness"] = _witness_doc(report.witness)
        doc["orientations_searched"] = report.orientations_searched

    if not args.no_timing:
        doc["elapsed_ms"] = int((time.monotonic() - started) * 1000)
    print(json.dumps(doc, indent=2))
    return 0


def _orientation(graph: Graph, code: int) -> Digraph:
    if not 0 <= code < (1 << graph.m):
        raise InputError(
            f"orientation code {code} out of range for {graph.m} edges"
        )
    digraph = orient(graph, code)
    if not digraph.is_acyclic():
        raise InputError(f"orientation code {code} has a directed cycle")
    return digraph


def _replay_check(path: str) -> int:
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot load {path}: {exc}") from exc
    if not doc.get("witness"):
        raise InputError("document carries no witness to replay")
    try:
        graph = Graph(
            doc["graph"]["vertices"],
            tuple((u, v) for u, v in doc["graph"]["edge_list"]),
        )
        witness = _witness_from_doc(doc["witness"])
        mode = Mode(doc["mode"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"malformed document: {exc}") from exc
    outcome = replay(graph, mode, witness)
    quantity = doc["quantity"]
    if quantity in _QUANTITY_MODES:
        value = outcome.primaries_used
    elif quantity == "labelsum":
        value = outcome.label_sum
    elif quantity == "index":
        value = _rational(outcome.index)
    else:
        value = _rational(outcome.raw_ratio)
    if value != doc["value"]:
        print(
            f"replay mismatch: document says {doc['value']}, "
            f"witness gives {value}",
            file=sys.stderr,
        )
        return 4
    print(f"replay OK: {quantity} = {value}")
    return 0


# ---- verify ----


class Row:
    def __init__(self, name: str, status: str, detail: str = ""):
        self.name = name
        self.status = status
        self.detail = detail


def _check(name: str, ok: bool, detail: str = "") -> Row:
    return Row(name, PASS if ok else FAIL, detail)


def _against_printed(name: str, engine, printed, detail: str = "") -> Row:
    """PASS on agreement, DISCREPANCY when the engine does strictly
    better than the printed figure (a documented inconsistency), FAIL
    otherwise."""
    if engine == printed:
        return Row(name, PASS, detail)
    if engine < printed:
        return Row(
            name,
            DISCREPANCY,
            f"engine optimum {engine} beats printed {printed}",
        )
    return Row(name, FAIL, f"engine {engine} exceeds printed {printed}")


def _family(text: str) -> Graph:
    return build_family(parse_family_spec(text))


def _suite_paper_anchors(limits: SearchLimits) -> list[Row]:
    rows: list[Row] = []
    for n in range(3, 9):
        r = best_index(_family(f"cycle:{n}"), Mode.BLEND, limits=limits)
        rows.append(_check(f"tau(C{n}) == 2", r.cost == 2))

    c7 = _family("cycle:7")
    expected = frozenset(Fraction(7, s) for s in (16, 18, 26, 30, 38, 40))
    got = ratio_set(
        Digraph(c7, c7.edges),
        Mode.BLEND,
        AllocationPlan(((0, 2),), Policy.SMALLEST),
        limits,
    )
    rows.append(
        _check(
            "C7 ratio set == {7/16,7/18,7/26,7/30,7/38,7/40}",
            got == expected,
        )
    )
    rows.append(
        _check(
            "C7 best index == 7/16",
            best_index(c7, Mode.BLEND, limits=limits).index
            == Fraction(7, 16),
        )
    )

    joost = _family("joost:4,7")
    sym = Digraph(
        joost,
        tuple((v, u) if u == 1 else (u, v) for u, v in joost.edges),
    )
    sym_report = best_index_for_orientation(sym, Mode.BLEND, limits=limits)
    rows.append(
        _check(
            "Joost(4,7) symmetric orientation label sum == 72",
            sym_report.label_sum == 72,
        )
    )
    rows.append(
        _check(
            "Joost(4,7) symmetric orientation index == 7/72",
            sym_report.index == Fraction(7, 72),
        )
    )
    joost_best = best_index(joost, Mode.BLEND, limits=limits)
    rows.append(_check("tau(Joost(4,7)) == 3", joost_best.cost == 3))
    rows.append(
        _against_printed(
            "Joost(4,7) blend label sum vs printed 72",
            joost_best.label_sum,
            72,
        )
    )

    fr6 = best_index(_family("friendship:3,6"), Mode.BLEND, limits=limits)
    rows.append(_check("tau(Fr(3,6)) == 4", fr6.cost == 4))
    rows.append(
        _check(
            "Fr(3,6) best index >= 1/14", fr6.index >= Fraction(1, 14)
        )
    )
    rows.append(
        _against_printed(
            "Fr(3,6) blend label sum vs printed 63", fr6.label_sum, 63
        )
    )

    for n in (2, 3, 4):
        r = best_index(_family(f"friendship:3,{n}"), Mode.FSG, limits=limits)
        rows.append(
            _check(f"btau(Fr(3,{n})) == {2 * (n - 1)}", r.cost == 2 * (n - 1))
        )
    rows.append(
        _check(
            "Fr(3,2) fsg index == 3/8",
            best_index(_family("friendship:3,2"), Mode.FSG, limits=limits).index
            == Fraction(3, 8),
        )
    )

    for k in (1, 2, 3):
        for n in (3, 4, 5):
            r = best_index(_family(f"joost:{n},{k}"), Mode.FSG, limits=limits)
            rows.append(_check(f"btau(Joost({n},{k})) == {k}", r.cost == k))

    from tattooing.search import min_cost_for_orientation

    star_ok = all(
        min_cost_for_orientation(
            Digraph(_family(f"star:{t}"), _family(f"star:{t}").edges),
            Mode.BLEND,
            limits=limits,
        ).value
        == t.bit_length()
        for t in range(1, 11)
    )
    rows.append(
        _check("out-star blend cost == ceil(log2(t+1)), t=1..10", star_ok)
    )

    paths_ok = all(
        best_index(_family(f"path:{n}"), Mode.BLEND, limits=limits).index == 1
        for n in range(3, 7)
    )
    rows.append(_check("paths have index 1 (n=3..6)", paths_ok))
    return rows


def _suite_closed_forms(limits: SearchLimits) -> list[Row]:
    rows: list[Row] = []
    cycles_ok = all(
        best_index(_family(f"cycle:{n}"), Mode.BLEND, limits=limits).cost
        == cycle_tau(n)
        for n in range(3, 9)
    )
    rows.append(_check("tau(C_n) == cycle closed form, n=3..8", cycles_ok))

    for n in (2, 3, 4):
        engine = best_index(
            _family(f"friendship:3,{n}"), Mode.FSG, limits=limits
        )
        printed = fr3_formulas(n)
        rows.append(
            _check(
                f"btau(Fr(3,{n})) == closed form {printed.b_tau}",
                engine.cost == printed.b_tau,
            )
        )
        rows.append(
            _against_printed(
                f"Fr(3,{n}) fsg label sum vs closed form",
                engine.label_sum,
                printed.label_sum,
            )
        )

    bowtie = best_index(_family("friendship:3,2"), Mode.FSG, limits=limits)
    general = general_fr_formulas(((3, 2),))
    rows.append(
        _against_printed(
            "Fr(3,2) fsg label sum vs general windmill form",
            bowtie.label_sum,
            general.label_sum,
        )
    )
    fr3_printed = fr3_formulas(2)
    rows.append(
        Row(
            "triangle vs general windmill forms agree on Fr(3,2)",
            PASS if fr3_printed.label_sum == general.label_sum else DISCREPANCY,
            f"{fr3_printed.label_sum} vs {general.label_sum}",
        )
    )

    for k in (1, 2, 3):
        for n in (3, 4, 5):
            engine = best_index(
                _family(f"joost:{n},{k}"), Mode.FSG, limits=limits
            )
            printed = joost_formulas(n, k)
            rows.append(
                _check(
                    f"btau(Joost({n},{k})) == closed form {printed.b_tau}",
                    engine.cost == printed.b_tau,
                )
            )
            rows.append(
                _against_printed(
                    f"Joost({n},{k}) fsg label sum vs closed form",
                    engine.label_sum,
                    printed.label_sum,
                )
            )
    return rows


def _suite_oracle(limits: SearchLimits) -> list[Row]:
    rows: list[Row] = []
    for graph in connected_graph_corpus(5):
        ok = True
        for mode in Mode:
            report = best_index(graph, mode, limits=limits)
            oracle = oracle_invariants(graph, mode)
            ok = ok and (
                report.cost == oracle.cost
                and report.label_sum == oracle.label_sum
                and report.raw_ratio == oracle.raw_ratio
                and report.index == oracle.index
                and report.orientations_searched == oracle.orientations
            )
        rows.append(
            _check(
                f"oracle == optimizer on n={graph.n} m={graph.m} "
                f"edges={list(graph.edges)}",
                ok,
            )
        )
    return rows


_SUITES = {
    "paper-anchors": _suite_paper_anchors,
    "closed-forms": _suite_closed_forms,
    "oracle": _suite_oracle,
}


def cmd_verify(args) -> int:
    suite = _SUITES.get(args.suite)
    if suite is None:
        raise InputError(
            f"unknown suite {args.suite!r}: "
            f"choose from {', '.join(sorted(_SUITES))}"
        )
    rows = suite(_limits(args))
    counts = {PASS: 0, FAIL: 0, DISCREPANCY: 0}
    for row in rows:
        counts[row.status] += 1
    if args.json:
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "rows": [
                        {
                            "name": r.name,
                            "status": r.status,
                            "detail": r.detail,
                        }
                        for r in rows
                    ],
                    "counts": counts,
                },
                indent=2,
            )
        )
    else:
        for row in rows:
            line = f"{row.name}: {row.status}"
            if row.detail:
                line += f"  ({row.detail})"
            print(line)
        print(
            f"{counts[PASS]} pass, {counts[DISCREPANCY]} discrepancy, "
            f"{counts[FAIL]} fail"
        )
    return 0 if counts[FAIL] == 0 else 1


# ---- sweep ----


def _sweep_instances(args) -> list[tuple[str, str, Graph | None, str]]:
    """(family, params, graph, build_error) per requested instance."""
    name = args.family
    out: list[tuple[str, str, Graph | None, str]] = []

    def add(spec: str, params: str) -> None:
        try:
            out.append((name, params, _family(spec), ""))
        except ValueError as exc:
            out.append((name, params, None, str(exc)))

    if name in ("cycle", "path", "star", "wheel"):
        for n in _parse_range(args.n):
            add(f"{name}:{n}", str(n))
    elif name == "friendship":
        for n in _parse_range(args.n):
            add(f"friendship:{args.q},{n}", f"{args.q},{n}")
    elif name == "joost":
        if args.k is None:
            raise InputError("joost sweeps need --k RANGE")
        for n in _parse_range(args.n):
            for k in _parse_range(args.k):
                add(f"joost:{n},{k}", f"{n},{k}")
    elif name == "genfriendship":
        if not args.blocks:
            raise InputError("genfriendship sweeps need --blocks SPEC")
        add(f"genfriendship:{args.blocks}", args.blocks)
    elif name == "random":
        if args.vertices is None or args.edges is None:
            raise InputError(
                "random sweeps need --vertices N and --edges M"
            )
        rng = random.Random(args.seed)
        produced = 0
        attempts = 0
        while produced < args.count and attempts < 1000 * args.count:
            attempts += 1
            sample = nx.gnm_random_graph(
                args.vertices, args.edges, seed=rng.randrange(2**31)
            )
            if not nx.is_connected(sample):
                continue
            graph = Graph(
                args.vertices, tuple(tuple(e) for e in sample.edges())
            )
            out.append(
                (name, f"{args.vertices},{args.edges}#{produced}", graph, "")
            )
            produced += 1
        if produced < args.count:
            raise InputError(
                "could not sample enough connected graphs; "
                "raise --edges or lower --vertices"
            )
    else:
        raise InputError(f"unknown sweep family {name!r}")
    return out


def _sweep_row(payload):
    family, params, graph, error, mode_value, policy_value, max_edges = payload
    mode = Mode(mode_value)
    policy = Policy(policy_value)
    row = {
        "family": family,
        "params": params,
        "vertices": graph.n if graph else "",
        "edges": graph.m if graph else "",
        "br": "",
        "btau": "",
        "tau": "",
        "labelsum": "",
        "index": "",
        "runtime_ms": "",
        "status": "",
    }
    if graph is None:
        row["status"] = f"refused: {error}"
        return row
    limits = SearchLimits(
        max_edges=max_edges, time_budget=SearchLimits().time_budget
    )
    started = time.monotonic()
    try:
        row["br"] = best_index(graph, Mode.BRUSH, policy, limits).cost
        row["btau"] = best_index(graph, Mode.FSG, policy, limits).cost
        row["tau"] = best_index(graph, Mode.BLEND, policy, limits).cost
        chosen = best_index(graph, mode, policy, limits)
        row["labelsum"] = chosen.label_sum
        row["index"] = _rational(chosen.index)
        row["status"] = "ok"
    except LimitError as exc:
        row["status"] = f"refused: {exc}"
    row["runtime_ms"] = int((time.monotonic() - started) * 1000)
    return row


def cmd_sweep(args) -> int:
    instances = _sweep_instances(args)
    mode = Mode(args.mode) if args.mode else Mode.BLEND
    policy = Policy(args.policy)
    max_edges = (
        args.max_edges
        if args.max_edges is not None
        else SearchLimits().max_edges
    )
    payloads = [
        (family, params, graph, error, mode.value, policy.value, max_edges)
        for family, params, graph, error in instances
    ]
    if args.workers > 1 and len(payloads) > 1:
        with multiprocessing.get_context("fork").Pool(args.workers) as pool:
            rows = pool.map(_sweep_row, payloads)
    else:
        rows = [_sweep_row(p) for p in payloads]

    columns = [
        "family",
        "params",
        "vertices",
        "edges",
        "br",
        "btau",
        "tau",
        "labelsum",
        "index",
    ]
    if not args.no_timing:
        columns.append("runtime_ms")
    columns.append("status")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    text = buffer.getvalue()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    ok = [r for r in rows if r["status"] == "ok"]
    return 0 if ok or not rows else 1


# ---- argument surface ----


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tattoo",
        description=(
            "Exact brush, tattoo, and index invariants of small connected "
            "graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser(
        "compute", help="one invariant of one graph, as JSON"
    )
    compute.add_argument("--input", help="edge-list file; one 'u v' per line")
    compute.add_argument(
        "--family", help="family spec such as cycle:7 or friendship:3,6"
    )
    compute.add_argument(
        "--mode", choices=[m.value for m in Mode], default=None
    )
    compute.add_argument(
        "--policy",
        choices=[p.value for p in Policy],
        default=Policy.SMALLEST.value,
    )
    compute.add_argument(
        "--quantity",
        choices=[q.value for q in Quantity] + ["ratio-set"],
        default=None,
    )
    compute.add_argument(
        "--orientation",
        type=int,
        default=None,
        help="restrict to one orientation (bit i flips edge i)",
    )
    compute.add_argument(
        "--allocate",
        default=None,
        help="initial allocation v:k[,v:k...] for ratio-set",
    )
    compute.add_argument("--max-edges", type=int, default=None)
    compute.add_argument("--workers", type=int, default=1)
    compute.add_argument(
        "--no-timing",
        action="store_true",
        help="omit elapsed_ms for byte-stable output",
    )
    compute.add_argument(
        "--json", action="store_true", help="accepted; output is always JSON"
    )
    compute.add_argument(
        "--replay",
        default=None,
        metavar="FILE",
        help="re-run a saved document's witness and compare values",
    )
    compute.set_defaults(func=cmd_compute)

    verify = sub.add_parser(
        "verify", help="run a verification suite with PASS/FAIL rows"
    )
    verify.add_argument(
        "--suite",
        required=True,
        help="paper-anchors, closed-forms, or oracle",
    )
    verify.add_argument("--max-edges", type=int, default=None)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser(
        "sweep", help="tabulate invariants over a family range, as CSV"
    )
    sweep.add_argument("--family", required=True)
    sweep.add_argument("--n", default=None, help="range N or A..B")
    sweep.add_argument("--k", default=None, help="range for the second slot")
    sweep.add_argument(
        "--q", type=int, default=3, help="cycle length for friendship sweeps"
    )
    sweep.add_argument("--blocks", default=None)
    sweep.add_argument("--vertices", type=int, default=None)
    sweep.add_argument("--edges", type=int, default=None)
    sweep.add_argument("--count", type=int, default=1)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument(
        "--mode", choices=[m.value for m in Mode], default=None
    )
    sweep.add_argument(
        "--policy",
        choices=[p.value for p in Policy],
        default=Policy.SMALLEST.value,
    )
    sweep.add_argument("--max-edges", type=int, default=None)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--csv", default=None, metavar="FILE")
    sweep.add_argument("--no-timing", action="store_true")
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "sweep" and args.family not in (
        "genfriendship",
        "random",
    ):
        if args.n is None:
            parser.error("sweep needs --n RANGE for this family")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except ReplayError as exc:
        print(f"inconsistent result: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
