"""Exact minimisation of cost and label sum over acyclic orientations.

The search runs in two stages.  Stage one finds the minimum cost (number
of primaries, or tokens) over all acyclic orientations by iterative
deepening: every orientation gets an admissible lower bound
``sum_v max(0, need(outdeg v) - indeg v)`` computed in one vectorised
pass, and a depth-first feasibility probe is run only on orientations
whose bound does not exceed the current target.  Stage two revisits the
surviving orientations and minimises the label sum among runs at the
optimal cost, again depth first with admissible bounds in both
coordinates.

Runs are explored through a single canonical firing order, always the
smallest ready vertex.  This loses nothing: a vertex fires exactly
once, and what it can dispatch depends only on its arrivals, not on
when unrelated vertices fired.  Under the SMALLEST policy the search
works purely with firing-time augmentation; an initial allocation at a
vertex behaves exactly like augmenting the same count at its first
firing, and the reported witness converts the first firing's
augmentation back into an initial allocation.  Under FRESH the global
numbering makes the two differ, so initial allocation counts are
enumerated explicitly.

Orientations related by a digraph isomorphism admit exactly the same
(cost, label sum) pairs, so each isomorphism class is searched once,
through its first representative in code order.  Two further sound
symmetry prunings keep the per-orientation search small:

* Arcs whose head never fires (out-degree zero) are not branched on.
  Their labels have no downstream effect, so after the live arcs are
  assigned they greedily take the cheapest remaining pool sets.
* Live heads whose reachable firing subgraphs are disjoint, isomorphic
  as decorated shapes, and fed only from inside themselves or from the
  firing vertex are interchangeable: swapping their assigned sets and
  mirroring all downstream choices yields a run of identical cost and
  label sum.  Assignments within such a group are forced ascending.

Determinism: orientations are always enumerated in ascending code
order, pool sets are ordered by (weight, cardinality, members), and the
incumbent is replaced only on strict improvement, so the reported
witness is a pure function of the input.  Every result is replayed
through the process engine before being returned.
"""

from __future__ import annotations

import multiprocessing
import os
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from tattooing.engine import (
    AllocationPlan,
    ColourSet,
    FireEvent,
    Mode,
    Outcome,
    Policy,
    ReplayError,
    Witness,
    fire,
    initial_state,
    mutate_pool,
    ready_vertices,
    replay,
    required_primaries,
    verify_outcome,
)
from tattooing.graphs import Digraph, Graph, collect_acyclic_orientation_bits


class Quantity(Enum):
    BR = "br"
    BTAU = "btau"
    TAU = "tau"
    MIN_LABEL_SUM = "labelsum"
    INDEX = "index"
    RAW_RATIO = "ratio"


_MODE_FOR_COST_QUANTITY = {
    Quantity.BR: Mode.BRUSH,
    Quantity.BTAU: Mode.FSG,
    Quantity.TAU: Mode.BLEND,
}


class LimitError(RuntimeError):
    """The requested computation exceeds the configured limits."""


def _env_max_edges() -> int:
    return int(os.environ.get("TATTOO_MAX_EDGES", "22"))


def _env_time_budget() -> float | None:
    raw = os.environ.get("TATTOO_TIME_BUDGET")
    return float(raw) if raw else None


@dataclass(frozen=True)
class SearchLimits:
    """Hard limits; exceeding them refuses the computation outright."""

    max_edges: int = field(default_factory=_env_max_edges)
    time_budget: float | None = field(default_factory=_env_time_budget)

    def check(self, graph: Graph) -> None:
        if graph.m > self.max_edges:
            raise LimitError(
                f"graph has {graph.m} edges, limit is {self.max_edges} "
                "(raise TATTOO_MAX_EDGES or pass a larger limit)"
            )


@dataclass(frozen=True)
class IndexReport:
    """Two-stage optimum for one graph and mode."""

    mode: Mode
    policy: Policy
    cost: int
    label_sum: int
    raw_ratio: Fraction
    index: Fraction
    witness: Witness
    orientations_searched: int


@dataclass(frozen=True)
class InvariantResult:
    quantity: Quantity
    mode: Mode
    policy: Policy
    value: int | Fraction
    witness: Witness
    orientations_searched: int


def _weight(mask: int) -> int:
    total = 0
    i = 1
    while mask:
        if mask & 1:
            total += i
        mask >>= 1
        i += 1
    return total


_SORT_KEY_CACHE: dict[int, tuple[int, int, tuple[int, ...]]] = {}


def _sort_key(mask: int) -> tuple[int, int, tuple[int, ...]]:
    key = _SORT_KEY_CACHE.get(mask)
    if key is None:
        members = tuple(
            i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1
        )
        key = (sum(members), len(members), members)
        _SORT_KEY_CACHE[mask] = key
    return key


_PREFIX_CACHE: dict[Mode, tuple[int, ...]] = {}


def _cheap_prefix(mode: Mode) -> tuple[int, ...]:
    """Prefix sums of the cheapest weights t distinct sets can have."""
    got = _PREFIX_CACHE.get(mode)
    if got is None:
        if mode is Mode.FSG:
            weights = list(range(1, 24))
        else:
            weights = sorted(_weight(m) for m in range(1, 1 << 9))[:23]
        prefix = [0]
        for w in weights:
            prefix.append(prefix[-1] + w)
        got = tuple(prefix)
        _PREFIX_CACHE[mode] = got
    return got


def _submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while sub:
        out.append(sub)
        sub = (sub - 1) & mask
    return out


def _grant_mask(held: int, policy: Policy, fresh: int, count: int) -> int:
    if count == 0:
        return 0
    if policy is Policy.FRESH:
        return ((1 << count) - 1) << (fresh - 1)
    granted = 0
    got = 0
    b = 0
    while got < count:
        if not (held >> b) & 1:
            granted |= 1 << b
            got += 1
        b += 1
    return granted


class _Orientation:
    """Decoded orientation with shape data for the symmetry prunings."""

    __slots__ = (
        "code",
        "arcs",
        "out_arcs",
        "in_arcs",
        "d_in",
        "live",
        "sig",
        "desc",
        "classes",
        "need_out",
        "prefix_out",
    )

    def __init__(self, graph: Graph, code: int):
        self.code = code
        n = graph.n
        arcs = []
        out_arcs: list[list[int]] = [[] for _ in range(n)]
        in_arcs: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(graph.edges):
            t, h = (v, u) if (code >> i) & 1 else (u, v)
            arcs.append((t, h))
            out_arcs[t].append(i)
            in_arcs[h].append(i)
        self.arcs = arcs
        self.out_arcs = out_arcs
        self.in_arcs = in_arcs
        self.d_in = [len(a) for a in in_arcs]
        self.live = [bool(a) for a in out_arcs]
        self.sig: dict[int, int] | None = None
        self.desc: dict[int, frozenset[int]] | None = None
        self.classes: dict[int, dict[int, int]] = {}

    def _shape_data(self) -> None:
        """Interned shape signature and firing closure per vertex."""
        if self.sig is not None:
            return
        n = len(self.out_arcs)
        intern: dict[tuple, int] = {}
        sig: dict[int, int] = {}
        desc: dict[int, frozenset[int]] = {}
        # a vertex reaches strictly fewer vertices than its ancestors,
        # so ascending reach size processes children before parents
        order = sorted(range(n), key=lambda v: len(self._reachable(v)))
        for v in order:
            if not self.live[v]:
                sig[v] = -1
                desc[v] = frozenset()
                continue
            live_children = []
            sinks = 0
            d: set[int] = {v}
            for i in self.out_arcs[v]:
                h = self.arcs[i][1]
                if self.live[h]:
                    live_children.append(sig[h])
                    d |= desc[h]
                else:
                    sinks += 1
            key = (self.d_in[v], sinks, tuple(sorted(live_children)))
            sig[v] = intern.setdefault(key, len(intern))
            desc[v] = frozenset(d)
        self.sig = sig
        self.desc = desc

    def _reachable(self, v: int) -> frozenset[int]:
        seen = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for i in self.out_arcs[w]:
                h = self.arcs[i][1]
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
        return frozenset(seen)

    def exchange_classes(self, v: int, policy: Policy) -> dict[int, int]:
        """Map each live out-arc of v to an interchangeability class.

        Classes group arcs whose heads have equal shape signatures,
        pairwise-disjoint firing closures, and no in-arcs from outside
        their own closure other than from v.  FRESH numbering depends
        on global firing order, so everything stays singleton there.
        """
        cached = self.classes.get(v)
        if cached is not None:
            return cached
        live_arcs = [
            i for i in self.out_arcs[v] if self.live[self.arcs[i][1]]
        ]
        classes: dict[int, int] = {}
        if policy is Policy.FRESH:
            for j, i in enumerate(live_arcs):
                classes[i] = -1 - j
            self.classes[v] = classes
            return classes
        self._shape_data()
        by_sig: dict[int, list[int]] = {}
        for i in live_arcs:
            by_sig.setdefault(self.sig[self.arcs[i][1]], []).append(i)
        nxt = 0
        for sig_value, arcs_here in by_sig.items():
            group = []
            for i in arcs_here:
                h = self.arcs[i][1]
                if self._closed_under(v, h):
                    group.append(i)
                else:
                    classes[i] = -1 - i
            # heads with overlapping closures cannot be interchanged
            ok = []
            taken: set[int] = set()
            for i in group:
                d = self.desc[self.arcs[i][1]]
                if d & taken:
                    classes[i] = -1 - i
                else:
                    taken |= d
                    ok.append(i)
            if len(ok) >= 2:
                for i in ok:
                    classes[i] = nxt
                nxt += 1
            else:
                for i in ok:
                    classes[i] = -1 - i
        self.classes[v] = classes
        return classes

    def _closed_under(self, v: int, h: int) -> bool:
        """True if every in-arc into h's firing closure starts at v or
        inside the closure itself."""
        closure = self.desc[h]
        for w in closure:
            for i in self.in_arcs[w]:
                t = self.arcs[i][0]
                if t != v and t not in closure:
                    return False
        return True


class _Searcher:
    def __init__(
        self, graph: Graph, mode: Mode, policy: Policy, limits: SearchLimits
    ):
        limits.check(graph)
        self.graph = graph
        self.mode = mode
        self.policy = policy
        self.limits = limits
        self.deadline = (
            time.monotonic() + limits.time_budget
            if limits.time_budget
            else None
        )
        self.ticks = 0
        self.prefix = _cheap_prefix(mode)
        self._plan: tuple[tuple[int, int], ...] = ()
        self._pools: dict = {}
        self._iso_buckets: dict[str, list[tuple[int, nx.DiGraph]]] = {}
        self._iso_rep: dict[int, int] = {}
        if graph.m == 0:
            raise ValueError("the process needs at least one edge")

    def _tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % 256 == 1:
            if time.monotonic() > self.deadline:
                raise LimitError("time budget exceeded")

    # ---- vectorised stage-one bound ----

    def _lower_bounds(self, codes: np.ndarray) -> np.ndarray:
        g = self.graph
        need_table = np.array(
            [required_primaries(t, self.mode) for t in range(g.n + 1)],
            dtype=np.int32,
        )
        lbs = np.zeros(len(codes), dtype=np.int64)
        for v in range(g.n):
            d_out = np.zeros(len(codes), dtype=np.int32)
            deg = 0
            for i, (a, b) in enumerate(g.edges):
                if a == v:
                    d_out += ((codes >> i) & 1) ^ 1
                    deg += 1
                elif b == v:
                    d_out += (codes >> i) & 1
                    deg += 1
            deficit = need_table[d_out] - (deg - d_out)
            lbs += np.maximum(deficit, 0)
        return lbs

    def _brush_costs(self, codes: np.ndarray) -> np.ndarray:
        g = self.graph
        costs = np.zeros(len(codes), dtype=np.int64)
        for v in range(g.n):
            d_out = np.zeros(len(codes), dtype=np.int32)
            deg = 0
            for i, (a, b) in enumerate(g.edges):
                if a == v:
                    d_out += ((codes >> i) & 1) ^ 1
                    deg += 1
                elif b == v:
                    d_out += (codes >> i) & 1
                    deg += 1
            costs += np.maximum(2 * d_out - deg, 0)
        return costs

    def _rep_for(self, code: int) -> int:
        """First seen code of this orientation's isomorphism class.

        Relabelling vertices maps legal runs to legal runs of the same
        cost and label sum, in both policies, so only one orientation
        per digraph isomorphism class needs searching.  Buckets are
        keyed by a Weisfeiler-Lehman hash; exact membership is settled
        by VF2.
        """
        got = self._iso_rep.get(code)
        if got is not None:
            return got
        G = nx.DiGraph()
        G.add_nodes_from(range(self.graph.n))
        for i, (u, v) in enumerate(self.graph.edges):
            if (code >> i) & 1:
                G.add_edge(v, u)
            else:
                G.add_edge(u, v)
        key = nx.weisfeiler_lehman_graph_hash(G)
        bucket = self._iso_buckets.setdefault(key, [])
        for rep, rep_graph in bucket:
            if DiGraphMatcher(G, rep_graph).is_isomorphic():
                self._iso_rep[code] = rep
                return rep
        bucket.append((code, G))
        self._iso_rep[code] = code
        return code

    # ---- full two-stage search ----

    def run(self, workers: int = 1) -> IndexReport:
        bits = collect_acyclic_orientation_bits(self.graph)
        self._tick()
        codes = np.frombuffer(bits, dtype=np.uint64).astype(np.int64)
        total = len(codes)
        m = self.graph.m
        if self.mode is Mode.BRUSH:
            costs = self._brush_costs(codes)
            cstar = int(costs.min())
            code = int(codes[int(np.argmin(costs))])
            witness = self._brush_witness(code)
            out = self._finish(cstar, m, witness)
            return self._report(out, total)
        lbs = self._lower_bounds(codes)
        cstar = None
        c = int(lbs.min())
        while cstar is None:
            for idx in np.nonzero(lbs <= c)[0]:
                self._tick()
                code = int(codes[idx])
                if self._rep_for(code) != code:
                    continue
                if self._probe(code, c, None) is not None:
                    cstar = c
                    break
            else:
                c += 1
        reps = []
        for idx in np.nonzero(lbs <= cstar)[0]:
            self._tick()
            code = int(codes[idx])
            if self._rep_for(code) == code:
                reps.append(code)
        best = self._stage_two(cstar, reps, workers)
        witness = self._events_to_witness(
            best["code"], best["events"], best["plan"]
        )
        out = self._finish(cstar, best["S"], witness)
        return self._report(out, total)

    def _stage_two(self, cstar: int, reps: list[int], workers: int) -> dict:
        """Minimum label sum at cost ``cstar`` over the representatives.

        The parallel path splits the representatives round robin and
        merges the per-worker optima by (label sum, orientation code).
        An admissible bound never prunes a completion at the final
        minimum, so the merged witness matches the serial one exactly.
        """
        if workers > 1 and len(reps) > 1:
            remaining = None
            if self.deadline is not None:
                remaining = max(0.1, self.deadline - time.monotonic())
            chunks = [
                (
                    self.graph,
                    self.mode.value,
                    self.policy.value,
                    self.limits.max_edges,
                    remaining,
                    cstar,
                    reps[w::workers],
                )
                for w in range(workers)
                if reps[w::workers]
            ]
            with _mp_context().Pool(len(chunks)) as pool:
                results = pool.map(_stage_two_chunk, chunks)
            hits = [r for r in results if r is not None]
            S, code, events, plan = min(hits, key=lambda r: (r[0], r[1]))
            return {"S": S, "code": code, "events": events, "plan": plan}
        best: dict = {"S": None, "code": None, "events": None, "plan": None}
        for code in reps:
            self._tick()
            self._probe(code, cstar, best)
        return best

    def _report(self, outcome: Outcome, total: int) -> IndexReport:
        return IndexReport(
            mode=self.mode,
            policy=self.policy,
            cost=outcome.primaries_used,
            label_sum=outcome.label_sum,
            raw_ratio=outcome.raw_ratio,
            index=outcome.index,
            witness=outcome.witness,
            orientations_searched=total,
        )

    def _finish(self, cost: int, label_sum: int, witness: Witness) -> Outcome:
        """Replay the witness through the engine and insist it matches."""
        outcome = replay(self.graph, self.mode, witness)
        if outcome.primaries_used != cost or outcome.label_sum != label_sum:
            raise ReplayError(
                f"search claims cost {cost}, label sum {label_sum}; "
                f"replay gives {outcome.primaries_used}, {outcome.label_sum}"
            )
        verify_outcome(self.graph, outcome)
        return outcome

    # ---- per-orientation depth-first search ----

    def min_cost_events(self, code: int) -> tuple[int, list]:
        """Minimum cost on one orientation, with a completing run."""
        o = _Orientation(self.graph, code)
        c = 0
        for v in range(self.graph.n):
            t = len(o.out_arcs[v])
            c += max(
                0, required_primaries(t, self.mode) - o.d_in[v]
            )
        while True:
            events = self._probe(code, c, None)
            if events is not None:
                return c, events
            c += 1

    def run_fixed(self, code: int) -> IndexReport:
        """Two-stage minimisation restricted to one orientation."""
        m = self.graph.m
        if self.mode is Mode.BRUSH:
            o = _Orientation(self.graph, code)
            cstar = sum(
                max(0, len(o.out_arcs[v]) - o.d_in[v])
                for v in range(self.graph.n)
            )
            witness = self._brush_witness(code)
            out = self._finish(cstar, m, witness)
            return self._report(out, 1)
        cstar, _ = self.min_cost_events(code)
        best: dict = {"S": None, "code": None, "events": None, "plan": None}
        self._probe(code, cstar, best)
        witness = self._events_to_witness(
            best["code"], best["events"], best["plan"]
        )
        out = self._finish(cstar, best["S"], witness)
        return self._report(out, 1)

    def _probe(self, code: int, budget: int, best: dict | None):
        """Search one orientation.

        With ``best`` None: feasibility probe, returns events of the
        first completion within ``budget`` or None.  With a ``best``
        dict: exhaustive minimisation of the label sum at cost at most
        ``budget``, updating ``best`` on strict improvement.
        """
        o = _Orientation(self.graph, code)
        n = self.graph.n
        need_out = [
            required_primaries(len(o.out_arcs[v]), self.mode)
            for v in range(n)
        ]
        prefix_out = [self.prefix[len(o.out_arcs[v])] for v in range(n)]
        o.need_out = need_out
        o.prefix_out = prefix_out
        if self.policy is Policy.SMALLEST:
            starts = [((), [0] * n, 1, 0)]
        else:
            starts = self._fresh_starts(o, budget)
        found = None
        for plan, present0, fresh0, cost0 in starts:
            self._plan = plan
            avail = [
                bin(present0[v]).count("1") + o.d_in[v] for v in range(n)
            ]
            lb_rem = sum(
                max(0, need_out[v] - avail[v])
                for v in range(n)
                if o.out_arcs[v]
            )
            floor_rest = sum(
                prefix_out[v] for v in range(n) if o.out_arcs[v]
            )
            found = self._dfs(
                o,
                list(present0),
                [frozenset()] * n,
                list(o.d_in),
                avail,
                [False] * n,
                self.graph.m,
                lb_rem,
                floor_rest,
                cost0,
                0,
                fresh0,
                [],
                budget,
                best,
            )
            if best is None and found is not None:
                return found
        return found

    def _fresh_starts(self, o: _Orientation, budget: int):
        """Initial allocation count vectors for the FRESH policy."""
        n = self.graph.n
        caps = [
            required_primaries(len(o.out_arcs[v]), self.mode)
            for v in range(n)
        ]
        spots = [v for v in range(n) if caps[v] > 0]
        out = []

        def rec(idx: int, acc: list[tuple[int, int]], used: int):
            if idx == len(spots):
                present = [0] * n
                fresh = 1
                for v, k in acc:
                    present[v] = ((1 << k) - 1) << (fresh - 1)
                    fresh += k
                out.append((tuple(acc), present, fresh, used))
                return
            v = spots[idx]
            for k in range(0, min(caps[v], budget - used) + 1):
                if k:
                    acc.append((v, k))
                rec(idx + 1, acc, used + k)
                if k:
                    acc.pop()

        rec(0, [], 0)
        out.sort(key=lambda s: (s[3], s[0]))
        return out

    def _pool_for(self, held: int, arrived: frozenset[int]):
        """Sorted pool, weights, and cheapest-k prefix sums, cached."""
        key = (held, arrived)
        got = self._pools.get(key)
        if got is None:
            if self.mode is Mode.FSG:
                pool = [
                    1 << b
                    for b in range(held.bit_length())
                    if (held >> b) & 1
                ]
            else:
                pool = _submasks(held)
                for b in arrived:
                    if b & ~held:
                        pool.append(b)
            pool.sort(key=_sort_key)
            weights = [_sort_key(c)[0] for c in pool]
            cheapest = [0]
            for w in weights:
                cheapest.append(cheapest[-1] + w)
            got = (pool, weights, cheapest)
            self._pools[key] = got
        return got

    def _dfs(
        self,
        o: _Orientation,
        present: list[int],
        blends: list[frozenset[int]],
        in_left: list[int],
        avail: list[int],
        fired: list[bool],
        remaining: int,
        lb_rem: int,
        floor_rest: int,
        cost: int,
        ssum: int,
        fresh: int,
        events: list,
        budget: int,
        best: dict | None,
    ):
        self._tick()
        if cost + lb_rem > budget:
            return None
        if (
            best is not None
            and best["S"] is not None
            and ssum + floor_rest >= best["S"]
        ):
            return None
        if remaining == 0:
            done = list(events)
            if best is None:
                return done
            if best["S"] is None or ssum < best["S"]:
                best["S"] = ssum
                best["code"] = o.code
                best["events"] = done
                best["plan"] = self._plan
            return None
        v = -1
        for w in range(self.graph.n):
            if not fired[w] and o.out_arcs[w] and in_left[w] == 0:
                v = w
                break
        if v < 0:
            return None
        todo = o.out_arcs[v]
        live = [i for i in todo if o.live[o.arcs[i][1]]]
        sinks = [i for i in todo if not o.live[o.arcs[i][1]]]
        classes = o.exchange_classes(v, self.policy) if live else {}
        old = present[v]
        arrived = blends[v]
        rest_floor = floor_rest - o.prefix_out[v]
        lb_others = lb_rem - max(0, o.need_out[v] - avail[v])
        cap = o.need_out[v]
        ctx = (
            o, v, live, sinks, classes, old, arrived, rest_floor, lb_others
        )
        state = (present, blends, in_left, avail, fired)
        for extra in range(0, cap + 1):
            if cost + extra + lb_others > budget:
                break
            granted = _grant_mask(old, self.policy, fresh, extra)
            held = old | granted
            pool, weights, cheapest = self._pool_for(held, arrived)
            if len(pool) < len(todo):
                continue
            hit = self._assignments(
                ctx,
                state,
                pool,
                weights,
                cheapest,
                granted,
                held,
                remaining,
                cost + extra,
                ssum,
                fresh + (extra if self.policy is Policy.FRESH else 0),
                events,
                budget,
                best,
            )
            if best is None and hit is not None:
                return hit
        return None

    def _assignments(
        self,
        ctx,
        state,
        pool,
        weights,
        cheapest,
        granted,
        held,
        remaining,
        cost,
        ssum,
        fresh,
        events,
        budget,
        best,
    ):
        o, v, live, sinks, classes, old, arrived, rest_floor, lb_others = ctx
        present, blends, in_left, avail, fired = state
        size = len(pool)
        used = [False] * size
        chosen: list[int] = []
        floors: dict[int, int] = {}
        n_live = len(live)
        n_sink = len(sinks)
        bound_base = ssum + rest_floor
        best_known = best is not None

        def place(pos: int, add: int):
            if best_known and best["S"] is not None:
                left = n_live - pos + n_sink
                if bound_base + add + cheapest[left] >= best["S"]:
                    return None
            if pos == n_live:
                return finish(add)
            cls = classes[live[pos]]
            start = floors.get(cls, 0)
            for pi in range(start, size):
                if used[pi]:
                    continue
                used[pi] = True
                chosen.append(pi)
                prev = floors.get(cls, 0)
                floors[cls] = pi + 1
                hit = place(pos + 1, add + weights[pi])
                floors[cls] = prev
                chosen.pop()
                used[pi] = False
                if best is None and hit is not None:
                    return hit
            return None

        def finish(add: int):
            sink_picks: list[int] = []
            if sinks:
                for pi in range(size):
                    if not used[pi]:
                        sink_picks.append(pi)
                        if len(sink_picks) == n_sink:
                            break
                if len(sink_picks) < n_sink:
                    return None
                for pi in sink_picks:
                    add += weights[pi]
            all_picks = chosen + sink_picks
            refs = 0
            for pi in all_picks:
                c = pool[pi]
                if c not in arrived:
                    refs |= c & ~old
            if refs != granted:
                return None
            new_present = list(present)
            new_blends = list(blends)
            new_in_left = list(in_left)
            new_avail = list(avail)
            new_fired = list(fired)
            new_present[v] = held
            new_fired[v] = True
            new_lb = lb_others
            assignment = []
            arcs = o.arcs
            need_out = o.need_out
            for i, pi in zip(live + sinks, all_picks):
                c = pool[pi]
                assignment.append((i, c))
                h = arcs[i][1]
                new_in_left[h] -= 1
                if c & (c - 1) == 0:
                    if new_present[h] & c:
                        merged = True
                    else:
                        new_present[h] = new_present[h] | c
                        merged = False
                else:
                    if c in new_blends[h]:
                        merged = True
                    else:
                        new_blends[h] = new_blends[h] | {c}
                        merged = False
                if merged and not new_fired[h] and o.out_arcs[h]:
                    # a merged arrival shrinks the head's future pool
                    before = max(0, need_out[h] - new_avail[h])
                    new_avail[h] -= 1
                    new_lb += max(0, need_out[h] - new_avail[h]) - before
                elif merged:
                    new_avail[h] -= 1
            assignment.sort()
            return self._dfs(
                o,
                new_present,
                new_blends,
                new_in_left,
                new_avail,
                new_fired,
                remaining - n_live - n_sink,
                new_lb,
                rest_floor,
                cost,
                ssum + add,
                fresh,
                events + [(v, tuple(assignment))],
                budget,
                best,
            )

        return place(0, 0)

    # ---- witnesses ----

    def _events_to_witness(
        self,
        code: int,
        raw_events: list,
        plan: tuple[tuple[int, int], ...],
    ) -> Witness:
        if not plan:
            # the first firing's augmentation becomes the initial
            # allocation; nothing was granted before it, so the indices
            # coincide exactly under either policy
            v0, assignment0 = raw_events[0]
            refs = 0
            for _, mask in assignment0:
                refs |= mask
            plan = ((v0, bin(refs).count("1")),)
        events = []
        for v, assignment in raw_events:
            events.append(
                FireEvent(
                    v,
                    tuple(
                        (i, ColourSet.from_mask(mask))
                        for i, mask in assignment
                    ),
                )
            )
        return Witness(code, self.policy, plan, tuple(events))

    def _brush_witness(self, code: int) -> Witness:
        o = _Orientation(self.graph, code)
        counts: dict[int, int] = {}
        for v in range(self.graph.n):
            lack = len(o.out_arcs[v]) - o.d_in[v]
            if lack > 0:
                counts[v] = lack
        done = [False] * self.graph.m
        events = []
        while True:
            v = None
            for w in range(self.graph.n):
                if any(not done[i] for i in o.out_arcs[w]) and all(
                    done[i] for i in o.in_arcs[w]
                ):
                    v = w
                    break
            if v is None:
                break
            for i in o.out_arcs[v]:
                done[i] = True
            events.append(FireEvent(v))
        return Witness(
            code,
            self.policy,
            tuple(sorted(counts.items())),
            tuple(events),
        )


def _mp_context():
    return multiprocessing.get_context("fork")


def _stage_two_chunk(args):
    """Exhaust one chunk of orientation codes in a worker process."""
    graph, mode_value, policy_value, max_edges, remaining, cstar, codes = args
    searcher = _Searcher(
        graph,
        Mode(mode_value),
        Policy(policy_value),
        SearchLimits(max_edges=max_edges, time_budget=remaining),
    )
    best: dict = {"S": None, "code": None, "events": None, "plan": None}
    for code in codes:
        searcher._tick()
        searcher._probe(code, cstar, best)
    if best["S"] is None:
        return None
    return (best["S"], best["code"], best["events"], best["plan"])


def best_index(
    graph: Graph,
    mode: Mode,
    policy: Policy = Policy.SMALLEST,
    limits: SearchLimits | None = None,
    workers: int = 1,
) -> IndexReport:
    """Minimum cost, then minimum label sum at that cost, with witness."""
    searcher = _Searcher(graph, mode, policy, limits or SearchLimits())
    return searcher.run(workers=workers)


def best_index_for_orientation(
    digraph: Digraph,
    mode: Mode,
    policy: Policy = Policy.SMALLEST,
    limits: SearchLimits | None = None,
) -> IndexReport:
    """Minimum cost, then minimum label sum, on one fixed orientation."""
    if not digraph.is_acyclic():
        raise ValueError("orientation has a directed cycle")
    searcher = _Searcher(
        digraph.graph, mode, policy, limits or SearchLimits()
    )
    return searcher.run_fixed(digraph.bits())


def min_cost_for_orientation(
    digraph: Digraph,
    mode: Mode,
    policy: Policy = Policy.SMALLEST,
    limits: SearchLimits | None = None,
) -> InvariantResult:
    """Minimum cost over all runs on one fixed acyclic orientation."""
    if not digraph.is_acyclic():
        raise ValueError("orientation has a directed cycle")
    searcher = _Searcher(
        digraph.graph, mode, policy, limits or SearchLimits()
    )
    code = digraph.bits()
    if mode is Mode.BRUSH:
        cost = 0
        for v in range(digraph.graph.n):
            cost += max(0, digraph.out_degree(v) - digraph.in_degree(v))
        witness = searcher._brush_witness(code)
        outcome = searcher._finish(cost, digraph.graph.m, witness)
    else:
        cost, events = searcher.min_cost_events(code)
        witness = searcher._events_to_witness(code, events, searcher._plan)
        outcome = replay(digraph.graph, mode, witness)
        if outcome.primaries_used != cost:
            raise ReplayError(
                f"search claims cost {cost}; replay gives "
                f"{outcome.primaries_used}"
            )
        verify_outcome(digraph.graph, outcome)
    quantity = {
        Mode.BRUSH: Quantity.BR,
        Mode.FSG: Quantity.BTAU,
        Mode.BLEND: Quantity.TAU,
    }[mode]
    return InvariantResult(
        quantity=quantity,
        mode=mode,
        policy=policy,
        value=cost,
        witness=outcome.witness,
        orientations_searched=1,
    )


def invariant(
    graph: Graph,
    quantity: Quantity,
    mode: Mode | None = None,
    policy: Policy = Policy.SMALLEST,
    limits: SearchLimits | None = None,
    workers: int = 1,
) -> InvariantResult:
    """One named quantity of a graph, with a witness run attached."""
    if quantity in _MODE_FOR_COST_QUANTITY:
        implied = _MODE_FOR_COST_QUANTITY[quantity]
        if mode is not None and mode is not implied:
            raise ValueError(
                f"{quantity.value} is defined in {implied.value} mode"
            )
        mode = implied
    elif mode is None:
        mode = Mode.BLEND
    report = best_index(graph, mode, policy, limits, workers=workers)
    value: int | Fraction
    if quantity in _MODE_FOR_COST_QUANTITY:
        value = report.cost
    elif quantity is Quantity.MIN_LABEL_SUM:
        value = report.label_sum
    elif quantity is Quantity.INDEX:
        value = report.index
    else:
        value = report.raw_ratio
    return InvariantResult(
        quantity=quantity,
        mode=mode,
        policy=policy,
        value=value,
        witness=report.witness,
        orientations_searched=report.orientations_searched,
    )


def ratio_set(
    digraph: Digraph,
    mode: Mode,
    plan: AllocationPlan,
    limits: SearchLimits | None = None,
) -> frozenset[Fraction]:
    """Every ratio edges/(cost * label sum) reachable from a fixed
    orientation and allocation without any augmentation.

    Enumerates all complete schedules through the process engine itself,
    branching over every injective pool assignment at each firing.
    Raises if no schedule completes.
    """
    (limits or SearchLimits()).check(digraph.graph)
    m = digraph.graph.m
    sums: set[int] = set()

    if mode is Mode.BRUSH:
        state = initial_state(digraph, mode, plan)
        while True:
            ready = ready_vertices(state)
            if not ready:
                break
            before = state.cost
            state = fire(state, ready[0])
            if state.cost != before:
                raise ValueError(
                    "allocation cannot cover the orientation without "
                    "augmentation"
                )
        if not state.complete:
            raise ValueError("no schedule completes from this allocation")
        return frozenset({Fraction(m, plan.total * state.label_sum)})

    def explore(state) -> None:
        ready = ready_vertices(state)
        if not ready:
            if state.complete:
                sums.add(state.label_sum)
            return
        v = ready[0]
        todo = state.untattooed_out(v)
        pool = mutate_pool(state, v)
        if len(pool) < len(todo):
            return
        for combo in permutations(pool, len(todo)):
            explore(fire(state, v, tuple(zip(todo, combo))))

    explore(initial_state(digraph, mode, plan))
    if not sums:
        raise ValueError("no schedule completes from this allocation")
    return frozenset(Fraction(m, plan.total * s) for s in sums)
