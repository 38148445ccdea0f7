"""The colour-brush process on an oriented graph.

A vertex is ready once every in-arc is tattooed and it still has an
untattooed out-arc.  Firing a ready vertex tattoos all of its untattooed
out-arcs at once, each with a distinct colour set drawn from the pool at
the vertex.  Colour sets travel along their arcs: a singleton adds its
primary to the head's present colours, a blend arrives as an opaque unit
that can only be forwarded, never taken apart or re-blended.  Equal
colour sets arriving at a vertex merge.

Primaries enter the process in two ways, both counted by ``cost``: an
initial allocation before anything fires, or an augmentation at firing
time when the assignment refers to primaries the vertex does not hold.
Augmented indices are pinned by the naming policy: SMALLEST hands out the
smallest positive indices absent from the vertex, FRESH hands out
globally unused indices from a running counter.

Modes restrict the pool.  BLEND allows every non-empty subset of the
present primaries plus arrived blends; FSG allows singletons only; BRUSH
replaces colours with anonymous tokens, one per arc, so firing involves
no choices at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from tattooing.graphs import Digraph, Graph, orient


class Mode(Enum):
    BRUSH = "brush"
    FSG = "fsg"
    BLEND = "blend"


class Policy(Enum):
    SMALLEST = "smallest"
    FRESH = "fresh"


class EngineError(Exception):
    """Base class for violations of the process rules."""


class NotReadyError(EngineError):
    """The fired vertex has an untattooed in-arc or nothing left to tattoo."""


class IncompleteAssignmentError(EngineError):
    """The assignment does not cover exactly the untattooed out-arcs."""


class InjectivityError(EngineError):
    """Two out-arcs of one firing were given the same colour set."""


class UnavailableColourSetError(EngineError):
    """An assigned colour set is not in the pool, or names primaries the
    policy would not grant."""


class ReplayError(EngineError):
    """Replaying a witness did not reproduce the claimed outcome."""


@dataclass(frozen=True)
class ColourSet:
    """A non-empty set of primary colour indices (1-based), kept sorted.

    The label weight of a set is the sum of its member indices; an arc
    tattooed with the set contributes that weight to the label sum.
    """

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        canon = tuple(sorted(set(self.members)))
        if not canon:
            raise ValueError("colour set must be non-empty")
        if canon[0] < 1:
            raise ValueError("primary indices start at 1")
        if canon != self.members:
            object.__setattr__(self, "members", canon)

    @classmethod
    def single(cls, index: int) -> ColourSet:
        return cls((index,))

    @classmethod
    def of(cls, indices: Iterable[int]) -> ColourSet:
        return cls(tuple(indices))

    @property
    def weight(self) -> int:
        return sum(self.members)

    @property
    def is_blend(self) -> bool:
        return len(self.members) > 1

    def sort_key(self) -> tuple[int, int, tuple[int, ...]]:
        """Order pools by weight, then cardinality, then members."""
        return (self.weight, len(self.members), self.members)

    def mask(self) -> int:
        return sum(1 << (p - 1) for p in self.members)

    @classmethod
    def from_mask(cls, mask: int) -> ColourSet:
        return cls(tuple(p + 1 for p in range(mask.bit_length()) if (mask >> p) & 1))

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.members) + "}"


@dataclass(frozen=True)
class AllocationPlan:
    """Initial primaries (or brush tokens) per vertex, plus naming policy.

    ``initial`` lists (vertex, count) pairs with positive counts; at
    least one vertex must receive something before the process starts.
    """

    initial: tuple[tuple[int, int], ...]
    policy: Policy

    def __post_init__(self) -> None:
        pairs = tuple(sorted(self.initial))
        if not pairs:
            raise ValueError("allocation plan must give at least one vertex something")
        vertices = [v for v, _ in pairs]
        if len(set(vertices)) != len(vertices):
            raise ValueError("allocation plan repeats a vertex")
        for v, k in pairs:
            if v < 0:
                raise ValueError(f"bad vertex {v} in allocation plan")
            if k < 1:
                raise ValueError(f"allocation count for vertex {v} must be positive")
        object.__setattr__(self, "initial", pairs)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], policy: Policy) -> AllocationPlan:
        return cls(tuple((v, k) for v, k in sorted(counts.items()) if k), policy)

    @property
    def total(self) -> int:
        return sum(k for _, k in self.initial)


@dataclass(frozen=True)
class FireEvent:
    """One firing: a vertex and its arc-to-colour-set assignment.

    BRUSH firings carry an empty assignment; token handling is implied.
    """

    vertex: int
    assignment: tuple[tuple[int, ColourSet], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(sorted(self.assignment)))


@dataclass(frozen=True)
class DispatchSchedule:
    events: tuple[FireEvent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))


@dataclass(frozen=True)
class Witness:
    """A complete, replayable record of one run."""

    orientation: int
    policy: Policy
    initial: tuple[tuple[int, int], ...]
    events: tuple[FireEvent, ...]


@dataclass(frozen=True)
class Outcome:
    """Result of a completed run.

    ``primaries_used`` is the total cost: initial allocations plus
    augmentations (token count in BRUSH mode).  ``raw_ratio`` is
    edges over label sum; ``index`` divides that again by the cost.
    """

    mode: Mode
    primaries_used: int
    label_sum: int
    raw_ratio: Fraction
    index: Fraction
    witness: Witness


@dataclass(frozen=True)
class Deadlock:
    """The schedule ran out before every arc was tattooed."""

    state: "ProcessState"
    ready: tuple[int, ...]


@dataclass(frozen=True)
class ProcessState:
    """Immutable snapshot of a run in progress."""

    digraph: Digraph
    mode: Mode
    policy: Policy
    arc_status: tuple[ColourSet | None, ...]
    primaries_present: tuple[tuple[int, ...], ...]
    arrived_blends: tuple[tuple[ColourSet, ...], ...]
    used_labels: tuple[tuple[ColourSet, ...], ...]
    brush_tokens: tuple[int, ...]
    cost: int
    next_fresh: int

    @property
    def complete(self) -> bool:
        return all(s is not None for s in self.arc_status)

    @property
    def label_sum(self) -> int:
        return sum(s.weight for s in self.arc_status if s is not None)

    def untattooed_out(self, vertex: int) -> tuple[int, ...]:
        return tuple(
            i for i in self.digraph.out_arcs(vertex) if self.arc_status[i] is None
        )


def required_primaries(demand: int, mode: Mode) -> int:
    """Fewest primaries that can cover ``demand`` arcs with distinct sets.

    With k primaries a vertex can form 2**k - 1 distinct non-empty
    subsets in BLEND mode but only k singletons otherwise.
    """
    if demand <= 0:
        return 0
    if mode is Mode.BLEND:
        return demand.bit_length()
    return demand


def initial_state(digraph: Digraph, mode: Mode, plan: AllocationPlan) -> ProcessState:
    """Apply the initial allocation; nothing has fired yet."""
    g = digraph.graph
    if g.m == 0:
        raise ValueError("the process needs at least one edge")
    n = g.n
    for v, _ in plan.initial:
        if v >= n:
            raise ValueError(f"allocation plan names vertex {v}, graph has {n}")
    present: list[tuple[int, ...]] = [()] * n
    tokens = [0] * n
    nxt = 1
    if mode is Mode.BRUSH:
        for v, k in plan.initial:
            tokens[v] = k
    elif plan.policy is Policy.SMALLEST:
        for v, k in plan.initial:
            present[v] = tuple(range(1, k + 1))
    else:
        for v, k in plan.initial:
            present[v] = tuple(range(nxt, nxt + k))
            nxt += k
    return ProcessState(
        digraph=digraph,
        mode=mode,
        policy=plan.policy,
        arc_status=(None,) * g.m,
        primaries_present=tuple(present),
        arrived_blends=((),) * n,
        used_labels=((),) * n,
        brush_tokens=tuple(tokens),
        cost=plan.total,
        next_fresh=nxt,
    )


def ready_vertices(state: ProcessState) -> tuple[int, ...]:
    """Vertices whose in-arcs are all tattooed and that still have work."""
    out = []
    for v in range(state.digraph.graph.n):
        if not all(state.arc_status[i] is not None for i in state.digraph.in_arcs(v)):
            continue
        if state.untattooed_out(v):
            out.append(v)
    return tuple(out)


def mutate_pool(state: ProcessState, vertex: int) -> tuple[ColourSet, ...]:
    """Colour sets the vertex could dispatch right now, without augmenting.

    BLEND: every non-empty subset of the present primaries plus every
    arrived blend; FSG: singletons of the present primaries.  Sets the
    vertex has already dispatched are excluded.  Sorted by weight, then
    cardinality, then members.
    """
    if state.mode is Mode.BRUSH:
        raise ValueError("anonymous brush tokens form no colour pool")
    present = state.primaries_present[vertex]
    pool: set[ColourSet] = set()
    if state.mode is Mode.FSG:
        pool = {ColourSet.single(p) for p in present}
    else:
        for r in range(1, len(present) + 1):
            for combo in combinations(present, r):
                pool.add(ColourSet(combo))
        pool.update(state.arrived_blends[vertex])
    pool.difference_update(state.used_labels[vertex])
    return tuple(sorted(pool, key=ColourSet.sort_key))


def _policy_indices(state: ProcessState, vertex: int, count: int) -> tuple[int, ...]:
    if state.policy is Policy.FRESH:
        return tuple(range(state.next_fresh, state.next_fresh + count))
    present = set(state.primaries_present[vertex])
    out: list[int] = []
    candidate = 1
    while len(out) < count:
        if candidate not in present:
            out.append(candidate)
        candidate += 1
    return tuple(out)


def _normalise_assignment(
    assignment: Mapping[int, ColourSet] | Iterable[tuple[int, ColourSet]] | None,
) -> list[tuple[int, ColourSet]]:
    if assignment is None:
        return []
    if isinstance(assignment, Mapping):
        items = list(assignment.items())
    else:
        items = list(assignment)
    return sorted(items)


def fire(
    state: ProcessState,
    vertex: int,
    assignment: Mapping[int, ColourSet] | Iterable[tuple[int, ColourSet]] | None = None,
) -> ProcessState:
    """Fire a ready vertex, tattooing all of its untattooed out-arcs.

    For FSG and BLEND the assignment maps every untattooed out-arc to a
    distinct colour set.  Sets that name primaries the vertex lacks
    trigger an augmentation; the policy dictates which indices those new
    primaries must carry, and the assignment must match them exactly.
    For BRUSH no assignment is given: each arc takes one anonymous
    token, and missing tokens are augmented automatically.
    """
    d = state.digraph
    if vertex < 0 or vertex >= d.graph.n:
        raise ValueError(f"no vertex {vertex}")
    for i in d.in_arcs(vertex):
        if state.arc_status[i] is None:
            raise NotReadyError(f"vertex {vertex} still has untattooed in-arc {i}")
    untat = state.untattooed_out(vertex)
    if not untat:
        raise NotReadyError(f"vertex {vertex} has no untattooed out-arc")

    if state.mode is Mode.BRUSH:
        if assignment:
            raise ValueError("brush firing takes no colour assignment")
        return _fire_brush(state, vertex, untat)

    items = _normalise_assignment(assignment)
    if tuple(i for i, _ in items) != untat:
        raise IncompleteAssignmentError(
            f"vertex {vertex} must tattoo arcs {list(untat)}, "
            f"assignment covers {[i for i, _ in items]}"
        )
    sets = [c for _, c in items]
    if len(set(sets)) != len(sets):
        raise InjectivityError(f"vertex {vertex} repeats a colour set")

    present = set(state.primaries_present[vertex])
    arrived = set(state.arrived_blends[vertex])
    used = set(state.used_labels[vertex])
    new_needed: set[int] = set()
    for c in sets:
        if c in used:
            raise UnavailableColourSetError(f"vertex {vertex} already dispatched {c}")
        if c in arrived:
            continue
        if state.mode is Mode.FSG and c.is_blend:
            raise UnavailableColourSetError(
                f"{c} is a blend; blending is not allowed in this mode"
            )
        new_needed.update(set(c.members) - present)
    if new_needed:
        # every non-arrived set becomes formable once these are granted
        expected = _policy_indices(state, vertex, len(new_needed))
        if new_needed != set(expected):
            raise UnavailableColourSetError(
                f"vertex {vertex} names new primaries {sorted(new_needed)}; "
                f"{state.policy.value} policy grants {list(expected)}"
            )

    status = list(state.arc_status)
    pres = [set(p) for p in state.primaries_present]
    blends = [set(b) for b in state.arrived_blends]
    for i, c in items:
        status[i] = c
        h = d.head(i)
        if c.is_blend:
            blends[h].add(c)
        else:
            pres[h].add(c.members[0])
    pres[vertex].update(new_needed)
    used_after = list(state.used_labels)
    used_after[vertex] = tuple(
        sorted(used | set(sets), key=ColourSet.sort_key)
    )
    return ProcessState(
        digraph=d,
        mode=state.mode,
        policy=state.policy,
        arc_status=tuple(status),
        primaries_present=tuple(tuple(sorted(p)) for p in pres),
        arrived_blends=tuple(
            tuple(sorted(b, key=ColourSet.sort_key)) for b in blends
        ),
        used_labels=tuple(used_after),
        brush_tokens=state.brush_tokens,
        cost=state.cost + len(new_needed),
        next_fresh=state.next_fresh
        + (len(new_needed) if state.policy is Policy.FRESH else 0),
    )


def _fire_brush(
    state: ProcessState, vertex: int, untat: tuple[int, ...]
) -> ProcessState:
    d = state.digraph
    have = state.brush_tokens[vertex]
    need = len(untat)
    aug = max(0, need - have)
    tokens = list(state.brush_tokens)
    tokens[vertex] = have + aug - need
    status = list(state.arc_status)
    token_label = ColourSet.single(1)
    for i in untat:
        status[i] = token_label
        tokens[d.head(i)] += 1
    return ProcessState(
        digraph=d,
        mode=state.mode,
        policy=state.policy,
        arc_status=tuple(status),
        primaries_present=state.primaries_present,
        arrived_blends=state.arrived_blends,
        used_labels=state.used_labels,
        brush_tokens=tuple(tokens),
        cost=state.cost + aug,
        next_fresh=state.next_fresh,
    )


def run_schedule(
    digraph: Digraph,
    mode: Mode,
    plan: AllocationPlan,
    schedule: DispatchSchedule,
) -> Outcome | Deadlock:
    """Run a schedule from the initial allocation to its end.

    Returns an Outcome if every arc is tattooed afterwards, otherwise a
    Deadlock carrying the stuck state.  Rule violations raise.
    """
    state = initial_state(digraph, mode, plan)
    for ev in schedule.events:
        state = fire(state, ev.vertex, ev.assignment or None)
    if not state.complete:
        return Deadlock(state, ready_vertices(state))
    witness = Witness(digraph.bits(), plan.policy, plan.initial, schedule.events)
    return outcome_from_state(state, witness)


def outcome_from_state(state: ProcessState, witness: Witness) -> Outcome:
    if not state.complete:
        raise ValueError("run is not complete")
    m = len(state.arc_status)
    label_sum = state.label_sum
    return Outcome(
        mode=state.mode,
        primaries_used=state.cost,
        label_sum=label_sum,
        raw_ratio=Fraction(m, label_sum),
        index=Fraction(m, state.cost * label_sum),
        witness=witness,
    )


def replay(graph: Graph, mode: Mode, witness: Witness) -> Outcome:
    """Re-run a witness from scratch; raise ReplayError if it stalls."""
    digraph = orient(graph, witness.orientation)
    plan = AllocationPlan(witness.initial, witness.policy)
    result = run_schedule(digraph, mode, plan, DispatchSchedule(witness.events))
    if isinstance(result, Deadlock):
        raise ReplayError("witness schedule deadlocks")
    return result


def verify_outcome(graph: Graph, outcome: Outcome) -> None:
    """Replay an outcome's witness and insist every figure matches."""
    again = replay(graph, outcome.mode, outcome.witness)
    for field_name in ("primaries_used", "label_sum", "raw_ratio", "index"):
        claimed = getattr(outcome, field_name)
        seen = getattr(again, field_name)
        if claimed != seen:
            raise ReplayError(
                f"witness replay gives {field_name}={seen}, outcome claims {claimed}"
            )
