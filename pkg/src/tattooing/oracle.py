"""Brute-force evaluation of the invariants on tiny graphs.

This module deliberately repeats as little of the rest of the package as
possible: it filters orientations with its own acyclicity check, runs
the process with its own simulator over plain frozensets, and derives
primary-count requirements with its own arithmetic.  It exists to give
the optimizer something independent to agree with, so any shared bug
would have to be written twice.

The simulator always fires the smallest ready vertex.  Firing order
cannot change what a run can achieve: a vertex fires exactly once, and
the colour sets available to it depend only on its initial allocation
and on what its in-arcs carry, never on when other vertices fired.

Search space, per acyclic orientation: every initial allocation giving
each vertex at most as many primaries as its out-degree ever needs, and
at each firing every augmentation count up to that same per-vertex cap
with every injective assignment of pool sets to untattooed out-arcs.
Originating more primaries at a vertex than its out-degree needs can
only raise the cost without enabling any cheaper labelling, so the caps
do not hide any lexicographic (cost, label sum) minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

from tattooing.engine import Mode, Policy
from tattooing.graphs import Graph

MAX_ORACLE_EDGES = 6

# colour sets are bitmasks here: bit i stands for primary i + 1


def _mask_weight(mask: int) -> int:
    total = 0
    i = 1
    while mask:
        if mask & 1:
            total += i
        mask >>= 1
        i += 1
    return total


@lru_cache(maxsize=None)
def _cheapest_distinct_weights(mode: Mode) -> tuple[int, ...]:
    """Prefix sums of the smallest weights t pairwise-distinct sets can
    have, ignoring availability; an admissible label-sum bound."""
    if mode is Mode.FSG:
        weights = list(range(1, 13))
    else:
        weights = sorted(
            _mask_weight(m) for m in range(1, 1 << 8)
        )[:12]
    prefix = [0]
    for w in weights:
        prefix.append(prefix[-1] + w)
    return tuple(prefix)


@dataclass(frozen=True)
class OracleResult:
    """Lexicographic (cost, label sum) minimum over every legal run."""

    mode: Mode
    cost: int
    label_sum: int
    raw_ratio: Fraction
    index: Fraction
    orientations: int


def oracle_invariants(
    graph: Graph,
    mode: Mode,
    policy: Policy = Policy.SMALLEST,
    cost_bound: int | None = None,
) -> OracleResult:
    """Exhaustively minimise (cost, label sum) for one graph and mode.

    Refuses graphs with more than six edges; the search is meant to stay
    honest, not fast.  ``cost_bound`` caps the total primaries tried and
    defaults to the edge count, which is always enough: tattooing from
    in-arc arrivals alone costs at most one primary per arc.
    """
    m = graph.m
    if m == 0:
        raise ValueError("the process needs at least one edge")
    if m > MAX_ORACLE_EDGES:
        raise ValueError(
            f"oracle is limited to {MAX_ORACLE_EDGES} edges, got {m}"
        )
    bound = m if cost_bound is None else cost_bound
    best: list[int | None] = [None, None]  # cost, label sum
    orientations = 0
    for arcs in _acyclic_arc_lists(graph):
        orientations += 1
        if mode is Mode.BRUSH:
            cost = _brush_cost(graph.n, arcs)
            _offer(best, cost, m)
        else:
            _search_orientation(graph, arcs, mode, policy, bound, best)
    cost, label_sum = best
    if cost is None:
        raise ValueError("no run completed within the cost bound")
    return OracleResult(
        mode=mode,
        cost=cost,
        label_sum=label_sum,
        raw_ratio=Fraction(m, label_sum),
        index=Fraction(m, cost * label_sum),
        orientations=orientations,
    )


def _offer(best: list[int | None], cost: int, label_sum: int) -> None:
    if (
        best[0] is None
        or cost < best[0]
        or (cost == best[0] and label_sum < best[1])
    ):
        best[0] = cost
        best[1] = label_sum


def _acyclic_arc_lists(graph: Graph):
    """All acyclic orientations, by trying every code and topo-sorting."""
    n, edges = graph.n, graph.edges
    for code in range(1 << graph.m):
        arcs = [
            (v, u) if (code >> i) & 1 else (u, v)
            for i, (u, v) in enumerate(edges)
        ]
        indeg = [0] * n
        out: list[list[int]] = [[] for _ in range(n)]
        for t, h in arcs:
            indeg[h] += 1
            out[t].append(h)
        queue = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for h in out[v]:
                indeg[h] -= 1
                if indeg[h] == 0:
                    queue.append(h)
        if seen == n:
            yield arcs


def _needed(demand: int, mode: Mode) -> int:
    """Fewest own primaries that could ever cover this many out-arcs."""
    if demand <= 0:
        return 0
    if mode is Mode.BLEND:
        k = 0
        while (1 << k) - 1 < demand:
            k += 1
        return k
    return demand


def _brush_cost(n: int, arcs: list[tuple[int, int]]) -> int:
    """Simulate anonymous tokens, topping up whatever a firing lacks."""
    out_arcs: list[list[int]] = [[] for _ in range(n)]
    in_arcs: list[list[int]] = [[] for _ in range(n)]
    for i, (t, h) in enumerate(arcs):
        out_arcs[t].append(i)
        in_arcs[h].append(i)
    done = [False] * len(arcs)
    tokens = [0] * n
    cost = 0
    while True:
        v = _smallest_ready(n, arcs, out_arcs, in_arcs, done)
        if v is None:
            return cost
        todo = [i for i in out_arcs[v] if not done[i]]
        lack = max(0, len(todo) - tokens[v])
        cost += lack
        tokens[v] += lack - len(todo)
        for i in todo:
            done[i] = True
            tokens[arcs[i][1]] += 1


def _smallest_ready(n, arcs, out_arcs, in_arcs, done) -> int | None:
    for v in range(n):
        if all(done[i] for i in in_arcs[v]) and any(
            not done[i] for i in out_arcs[v]
        ):
            return v
    return None


def _capped_counts(caps: list[int], total: int):
    """All ways to hand out ``total`` primaries within per-vertex caps."""
    spots = [v for v, cap in enumerate(caps) if cap > 0]

    def rec(idx: int, left: int, acc: list[tuple[int, int]]):
        if idx == len(spots):
            if left == 0:
                yield tuple(acc)
            return
        v = spots[idx]
        room_after = sum(caps[w] for w in spots[idx + 1 :])
        for k in range(max(0, left - room_after), min(caps[v], left) + 1):
            if k:
                acc.append((v, k))
            yield from rec(idx + 1, left - k, acc)
            if k:
                acc.pop()

    yield from rec(0, total, [])


def _search_orientation(
    graph: Graph,
    arcs: list[tuple[int, int]],
    mode: Mode,
    policy: Policy,
    bound: int,
    best: list[int | None],
) -> None:
    n = graph.n
    out_arcs: list[list[int]] = [[] for _ in range(n)]
    in_arcs: list[list[int]] = [[] for _ in range(n)]
    for i, (t, h) in enumerate(arcs):
        out_arcs[t].append(i)
        in_arcs[h].append(i)
    caps = [_needed(len(out_arcs[v]), mode) for v in range(n)]

    for total in range(0, bound + 1):
        for plan in _capped_counts(caps, total):
            present = [0] * n
            fresh = 1
            if policy is Policy.SMALLEST:
                for v, k in plan:
                    present[v] = (1 << k) - 1
            else:
                for v, k in plan:
                    present[v] = ((1 << k) - 1) << (fresh - 1)
                    fresh += k
            _dfs(
                n,
                arcs,
                out_arcs,
                in_arcs,
                mode,
                policy,
                bound,
                best,
                [None] * len(arcs),
                present,
                [frozenset()] * n,
                [frozenset()] * n,
                total,
                0,
                fresh,
            )


def _submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while sub:
        out.append(sub)
        sub = (sub - 1) & mask
    return out


def _dfs(
    n,
    arcs,
    out_arcs,
    in_arcs,
    mode,
    policy,
    bound,
    best,
    labels,
    present,
    blends,
    used,
    cost,
    ssum,
    fresh,
) -> None:
    if cost > bound:
        return
    if best[0] is not None and cost > best[0]:
        return
    done = [s is not None for s in labels]
    if best[0] is not None and cost == best[0]:
        floor = ssum
        prefix = _cheapest_distinct_weights(mode)
        for w in range(n):
            t_w = sum(1 for i in out_arcs[w] if not done[i])
            floor += prefix[t_w]
        if floor >= best[1]:
            return
    v = _smallest_ready(n, arcs, out_arcs, in_arcs, done)
    if v is None:
        if all(done):
            _offer(best, cost, ssum)
        return
    todo = [i for i in out_arcs[v] if labels[i] is None]
    t = len(todo)
    old = present[v]
    arrived = blends[v]
    prefix = _cheapest_distinct_weights(mode)
    rest_floor = sum(
        prefix[sum(1 for i in out_arcs[w] if not done[i])]
        for w in range(n)
        if w != v
    )
    for extra in range(0, _needed(len(out_arcs[v]), mode) + 1):
        if cost + extra > bound:
            break
        if best[0] is not None and cost + extra > best[0]:
            break
        granted = _grant(old, policy, fresh, extra)
        held = old | granted
        if mode is Mode.FSG:
            pool = [1 << b for b in range(held.bit_length()) if (held >> b) & 1]
        else:
            pool = _submasks(held)
            for b in arrived:
                if b & ~held:
                    pool.append(b)
        pool = [c for c in pool if c not in used[v]]
        pool.sort(key=_mask_weight)
        if len(pool) < t:
            continue
        for chosen in combinations(pool, t):
            refs = 0
            add = 0
            for c in chosen:
                add += _mask_weight(c)
                if c not in arrived:
                    refs |= c & ~old
            if refs != granted:
                continue
            if (
                best[0] is not None
                and cost + extra == best[0]
                and ssum + add + rest_floor >= best[1]
            ):
                continue
            for order in permutations(chosen):
                new_labels = list(labels)
                new_present = list(present)
                new_blends = list(blends)
                new_used = list(used)
                new_present[v] = held
                new_used[v] = used[v] | frozenset(chosen)
                for i, c in zip(todo, order):
                    new_labels[i] = c
                    h = arcs[i][1]
                    if c & (c - 1) == 0:
                        new_present[h] = new_present[h] | c
                    else:
                        new_blends[h] = new_blends[h] | {c}
                _dfs(
                    n,
                    arcs,
                    out_arcs,
                    in_arcs,
                    mode,
                    policy,
                    bound,
                    best,
                    new_labels,
                    new_present,
                    new_blends,
                    new_used,
                    cost + extra,
                    ssum + add,
                    fresh + (extra if policy is Policy.FRESH else 0),
                )


def _grant(held: int, policy: Policy, fresh: int, count: int) -> int:
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


def connected_graph_corpus(max_edges: int) -> tuple[Graph, ...]:
    """Every connected graph with 1..max_edges edges, one per isomorphism
    class, canonically labelled, ordered by (edges, vertices, edge list).

    The canonical form is the smallest edge list over all relabellings
    that sort vertices by descending degree; restricting to
    degree-respecting relabellings is sound because isomorphisms
    preserve degrees.
    """
    if not 1 <= max_edges <= MAX_ORACLE_EDGES:
        raise ValueError(
            f"corpus covers 1..{MAX_ORACLE_EDGES} edges, got {max_edges}"
        )
    found: dict[tuple, tuple[int, tuple[tuple[int, int], ...]]] = {}
    for n in range(2, max_edges + 2):
        pairs = list(combinations(range(n), 2))
        for m in range(n - 1, max_edges + 1):
            for subset in combinations(pairs, m):
                if not _connected(n, subset):
                    continue
                code = _canonical_edges(n, subset)
                found.setdefault((n, code), (n, code))
    ordered = sorted(found.values(), key=lambda nc: (len(nc[1]), nc[0], nc[1]))
    return tuple(Graph(n, code) for n, code in ordered)


def _connected(n: int, edges: tuple[tuple[int, int], ...]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def _canonical_edges(
    n: int, edges: tuple[tuple[int, int], ...]
) -> tuple[tuple[int, int], ...]:
    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    # vertices of equal degree compete for the same block of labels
    by_degree: dict[int, list[int]] = {}
    for v in range(n):
        by_degree.setdefault(degree[v], []).append(v)
    blocks = [by_degree[d] for d in sorted(by_degree, reverse=True)]
    label_blocks = []
    start = 0
    for block in blocks:
        label_blocks.append(list(range(start, start + len(block))))
        start += len(block)
    best: tuple[tuple[int, int], ...] | None = None
    for perm_parts in product(
        *(permutations(labels) for labels in label_blocks)
    ):
        mapping = {}
        for block, labels in zip(blocks, perm_parts):
            for v, lab in zip(block, labels):
                mapping[v] = lab
        code = tuple(
            sorted(
                (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
                for u, v in edges
            )
        )
        if best is None or code < best:
            best = code
    return best
