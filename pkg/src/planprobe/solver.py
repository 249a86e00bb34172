"""Constraint core: satisfiability, plan evaluation, canonical forms, scheduling.

Ordering constraints compare execution positions; extended sets add
whole-hour start bounds, task durations, a working-day horizon and the
one-at-a-time rule. Basic satisfiability is cycle detection. Extended
satisfiability searches topological orders, scheduling each task at its
earliest admissible start, with subset/time dominance pruning.
"""
from __future__ import annotations

import heapq
import time
from collections import deque
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence, Union

from .common import Mode


@dataclass(frozen=True, order=True)
class OrderBefore:
    before: str
    after: str

    def __str__(self) -> str:
        return f"order({self.before}) < order({self.after})"


@dataclass(frozen=True, order=True)
class StartBound:
    action: str
    relation: str  # "<" or ">"
    hour: int

    def __str__(self) -> str:
        return f"start({self.action}) {self.relation} {self.hour}"


@dataclass(frozen=True, order=True)
class DurationEq:
    action: str
    hours: int

    def __str__(self) -> str:
        return f"end({self.action}) = start({self.action}) + {self.hours}"


@dataclass(frozen=True, order=True)
class HorizonBound:
    start: int
    end: int

    def __str__(self) -> str:
        return f"{self.start} <= start(*), end(*) <= {self.end}"


@dataclass(frozen=True, order=True)
class MonotoneSequence:
    def __str__(self) -> str:
        return "start(next) >= end(prev)"


Constraint = Union[OrderBefore, StartBound, DurationEq, HorizonBound, MonotoneSequence]
_RANK = {OrderBefore: 0, StartBound: 1, DurationEq: 2, HorizonBound: 3, MonotoneSequence: 4}
_TAG = {OrderBefore: "order", StartBound: "start", DurationEq: "duration",
        HorizonBound: "horizon", MonotoneSequence: "monotone"}


def sort_key(c: Constraint) -> tuple:
    return (_RANK[type(c)], tuple(getattr(c, f) for f in c.__dataclass_fields__))


def constraint_to_dict(c: Constraint) -> dict[str, Any]:
    return {"type": _TAG[type(c)], **{f: getattr(c, f) for f in c.__dataclass_fields__}}


def constraint_from_dict(d: Mapping[str, Any]) -> Constraint:
    kind = {v: k for k, v in _TAG.items()}[d["type"]]
    return kind(**{k: v for k, v in d.items() if k != "type"})


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class ConstraintSet:
    actions: tuple[str, ...]
    constraints: tuple[Constraint, ...] = ()
    mode: Mode = Mode.BASIC

    def __post_init__(self) -> None:
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "constraints", tuple(dict.fromkeys(self.constraints)))
        declared = set(self.actions)
        if len(declared) != len(self.actions):
            raise ConstraintError("duplicate action ids")
        for c in self.constraints:
            if isinstance(c, OrderBefore):
                if c.before == c.after:
                    raise ConstraintError(f"{c.before} cannot precede itself")
                refs = (c.before, c.after)
            elif isinstance(c, StartBound):
                if c.relation not in ("<", ">"):
                    raise ConstraintError(f"bad relation {c.relation!r}")
                refs = (c.action,)
            elif isinstance(c, DurationEq):
                if c.hours < 1:
                    raise ConstraintError(f"duration of {c.action} must be at least one hour")
                refs = (c.action,)
            elif isinstance(c, HorizonBound):
                if c.end <= c.start:
                    raise ConstraintError("empty horizon")
                refs = ()
            else:
                refs = ()
            for a in refs:
                if a not in declared:
                    raise ConstraintError(f"undeclared action {a!r} in {c}")
        hz = self.horizon()
        if hz is not None:
            for b in self.bounds():
                if not hz[0] <= b.hour <= hz[1]:
                    raise ConstraintError(f"{b} lies outside the horizon {hz}")

    def __len__(self) -> int:
        return len(self.constraints)

    def __iter__(self) -> Iterator[Constraint]:
        return iter(self.constraints)

    def orderings(self) -> list[OrderBefore]:
        return [c for c in self.constraints if isinstance(c, OrderBefore)]

    def bounds(self) -> list[StartBound]:
        return [c for c in self.constraints if isinstance(c, StartBound)]

    def durations(self) -> dict[str, int]:
        return {c.action: c.hours for c in self.constraints if isinstance(c, DurationEq)}

    def horizon(self) -> tuple[int, int] | None:
        for c in self.constraints:
            if isinstance(c, HorizonBound):
                return c.start, c.end
        return None

    @property
    def monotone(self) -> bool:
        return any(isinstance(c, MonotoneSequence) for c in self.constraints)

    def merged(self, extra: Iterable[Constraint]) -> ConstraintSet:
        return ConstraintSet(self.actions, self.constraints + tuple(extra), self.mode)

    def restricted(self, kinds: tuple[type, ...]) -> ConstraintSet:
        return ConstraintSet(self.actions, tuple(c for c in self.constraints if isinstance(c, kinds)), self.mode)

    def to_dict(self) -> dict[str, Any]:
        return {"mode": self.mode.value, "actions": list(self.actions),
                "constraints": [constraint_to_dict(c) for c in self.constraints]}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> ConstraintSet:
        return cls(tuple(d["actions"]), tuple(constraint_from_dict(c) for c in d["constraints"]),
                   Mode(d.get("mode", "basic")))


def canonical_serialization(cs: ConstraintSet) -> list[dict[str, Any]]:
    """Sorted, de-duplicated constraint list for golden files and reports."""
    return [constraint_to_dict(c) for c in sorted(set(cs.constraints), key=sort_key)]


@dataclass(frozen=True)
class PlanAssignment:
    """Execution positions (1-based) and, in extended mode, (start, end) hours."""

    order: Mapping[str, int]
    times: Mapping[str, tuple[int, int]] | None = None

    @classmethod
    def from_sequence(cls, sequence: Sequence[str],
                      times: Mapping[str, tuple[int, int]] | None = None) -> PlanAssignment:
        return cls({a: i + 1 for i, a in enumerate(sequence)}, dict(times) if times is not None else None)

    @property
    def sequence(self) -> tuple[str, ...]:
        return tuple(sorted(self.order, key=self.order.__getitem__))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"sequence": list(self.sequence)}
        if self.times is not None:
            out["times"] = {a: list(t) for a, t in self.times.items()}
        return out

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> PlanAssignment:
        times = d.get("times")
        return cls.from_sequence(d["sequence"], {a: tuple(t) for a, t in times.items()} if times else None)


@dataclass(frozen=True)
class SatResult:
    sat: bool
    witness: PlanAssignment | None = None
    conflict: tuple[Constraint, ...] = ()

    def __bool__(self) -> bool:
        return self.sat


class IncompleteAssignment(ValueError):
    def __init__(self, missing: Iterable[str], what: str = "order"):
        self.missing = sorted(missing)
        super().__init__(f"assignment has no {what} for {self.missing}")


# -- instrumentation ------------------------------------------------------

@dataclass
class SolverMeter:
    calls: int = 0
    seconds: float = 0.0


_METER: ContextVar[SolverMeter | None] = ContextVar("solver_meter", default=None)


@contextmanager
def metered() -> Iterator[SolverMeter]:
    """Count solver calls and time spent inside them for the enclosed block."""
    meter = SolverMeter()
    token = _METER.set(meter)
    try:
        yield meter
    finally:
        _METER.reset(token)


def _metered(fn: Callable) -> Callable:
    @wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        meter = _METER.get()
        if meter is None:
            return fn(*args, **kwargs)
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            meter.calls += 1
            meter.seconds += time.perf_counter() - t0
    return wrapper


# -- graph helpers --------------------------------------------------------

def _successors(actions: Sequence[str], orderings: Iterable[OrderBefore]) -> dict[str, set[str]]:
    succ: dict[str, set[str]] = {a: set() for a in actions}
    for c in orderings:
        succ[c.before].add(c.after)
    return succ


def shortest_cycle(actions: Sequence[str], orderings: Iterable[OrderBefore]) -> list[str] | None:
    """Return one shortest directed cycle as a node list, or None if acyclic."""
    succ = _successors(actions, orderings)
    best: list[str] | None = None
    for src in actions:
        parent: dict[str, str | None] = {src: None}
        queue = deque([src])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for v in sorted(succ[u]):
                if v == src:
                    found = u
                    break
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        if found is not None:
            path = [found]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])  # type: ignore[arg-type]
            cycle = path[::-1]
            if best is None or len(cycle) < len(best):
                best = cycle
    return best


def topological_order(actions: Sequence[str], orderings: Iterable[OrderBefore]) -> list[str] | None:
    """Kahn's algorithm, ties broken by declaration order. None on a cycle."""
    rank = {a: i for i, a in enumerate(actions)}
    succ = _successors(actions, orderings)
    indeg = {a: 0 for a in actions}
    for u in actions:
        for v in succ[u]:
            indeg[v] += 1
    heap = [(rank[a], a) for a in actions if indeg[a] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, u = heapq.heappop(heap)
        out.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, (rank[v], v))
    return out if len(out) == len(actions) else None


def transitive_closure(actions: Sequence[str], orderings: Iterable[OrderBefore]) -> frozenset[tuple[str, str]]:
    succ = _successors(actions, orderings)
    pairs = set()
    for src in actions:
        stack = list(succ[src])
        seen: set[str] = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            pairs.add((src, v))
            stack.extend(succ[v])
    return frozenset(pairs)


def transitive_reduction(actions: Sequence[str], orderings: Iterable[OrderBefore]) -> list[OrderBefore]:
    closure = transitive_closure(actions, orderings)
    keep = []
    for u, v in closure:
        if not any((u, w) in closure and (w, v) in closure for w in actions if w not in (u, v)):
            keep.append(OrderBefore(u, v))
    return sorted(keep)


# -- satisfiability -------------------------------------------------------

def _cycle_conflict(cycle: list[str]) -> tuple[Constraint, ...]:
    return tuple(OrderBefore(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


@dataclass
class _Schedule:
    """Earliest-start search over topological orders."""

    actions: tuple[str, ...]
    durations: dict[str, int]
    horizon: tuple[int, int]
    orderings: list[OrderBefore]
    bounds: list[StartBound]
    failure: tuple[Constraint, ...] = field(default=())

    def __post_init__(self) -> None:
        missing = [a for a in self.actions if a not in self.durations]
        if missing:
            raise ConstraintError(f"no duration for {missing}")
        day_start, day_end = self.horizon
        self.bit = {a: 1 << i for i, a in enumerate(self.actions)}
        self.preds = {a: 0 for a in self.actions}
        for c in self.orderings:
            self.preds[c.after] |= self.bit[c.before]
        self.earliest = {a: day_start for a in self.actions}
        self.latest = {a: day_end - self.durations[a] for a in self.actions}
        self.latest_why: dict[str, Constraint] = {a: HorizonBound(*self.horizon) for a in self.actions}
        for b in self.bounds:
            if b.relation == ">":
                self.earliest[b.action] = max(self.earliest[b.action], b.hour + 1)
            elif b.hour - 1 < self.latest[b.action]:
                self.latest[b.action] = b.hour - 1
                self.latest_why[b.action] = b

    def _explain(self, action: str) -> tuple[Constraint, ...]:
        ancestors = {action}
        changed = True
        while changed:
            changed = False
            for c in self.orderings:
                if c.after in ancestors and c.before not in ancestors:
                    ancestors.add(c.before)
                    changed = True
        chain = tuple(sorted(c for c in self.orderings if c.after in ancestors))
        lower = tuple(b for b in self.bounds if b.relation == ">" and b.action in ancestors)
        return (self.latest_why[action],) + chain + tuple(sorted(lower))

    def solve(self) -> PlanAssignment | None:
        full = (1 << len(self.actions)) - 1
        best: dict[int, int] = {}
        seq: list[tuple[str, int]] = []

        def dfs(mask: int, now: int) -> bool:
            if mask == full:
                return True
            if best.get(mask, 1 << 30) <= now:
                return False
            best[mask] = now
            for a in self.actions:
                bit = self.bit[a]
                if mask & bit or self.preds[a] & ~mask:
                    continue
                start = max(now, self.earliest[a])
                if start > self.latest[a]:
                    if not self.failure:
                        self.failure = self._explain(a)
                    continue
                seq.append((a, start))
                if dfs(mask | bit, start + self.durations[a]):
                    return True
                seq.pop()
            return False

        if not dfs(0, self.horizon[0]):
            return None
        return PlanAssignment.from_sequence(
            [a for a, _ in seq], {a: (s, s + self.durations[a]) for a, s in seq})


def _search(cs: ConstraintSet, durations: Mapping[str, int], horizon: tuple[int, int]) -> _Schedule:
    return _Schedule(cs.actions, dict(durations), horizon, cs.orderings(), cs.bounds())


@_metered
def check_sat(cs: ConstraintSet) -> SatResult:
    """Decide satisfiability; return a witness or a small conflict.

    Basic sets are satisfiable iff the precedence graph is acyclic (the
    witness is a topological order). Extended sets additionally need a
    one-at-a-time schedule meeting every start bound within the horizon.
    """
    cycle = shortest_cycle(cs.actions, cs.orderings())
    if cycle is not None:
        return SatResult(False, conflict=_cycle_conflict(cycle))
    if cs.mode is Mode.BASIC:
        order = topological_order(cs.actions, cs.orderings())
        return SatResult(True, PlanAssignment.from_sequence(order))  # type: ignore[arg-type]
    horizon = cs.horizon()
    if horizon is None:
        raise ConstraintError("extended constraint sets need a horizon")
    search = _search(cs, cs.durations(), horizon)
    plan = search.solve()
    if plan is None:
        total = sum(search.durations.values())
        if total > horizon[1] - horizon[0]:
            conflict: tuple[Constraint, ...] = (HorizonBound(*horizon),) + tuple(
                sorted(DurationEq(a, d) for a, d in search.durations.items()))
        else:
            conflict = search.failure
        return SatResult(False, conflict=conflict)
    return SatResult(True, plan)


def feasible_schedule(cs: ConstraintSet, durations: Mapping[str, int] | None = None,
                      horizon: tuple[int, int] | None = None) -> PlanAssignment | None:
    """Earliest-start schedule over some admissible total order, or None if none exists."""
    durations = dict(cs.durations(), **(durations or {}))
    horizon = horizon or cs.horizon()
    if horizon is None:
        raise ConstraintError("a horizon is required to schedule")
    if shortest_cycle(cs.actions, cs.orderings()) is not None:
        return None
    return _search(cs, durations, horizon).solve()


def earliest_times(sequence: Sequence[str], durations: Mapping[str, int], day_start: int,
                   bounds: Iterable[StartBound] = ()) -> dict[str, tuple[int, int]]:
    """Pack ``sequence`` back to back from ``day_start``, honouring '>' start bounds."""
    earliest: dict[str, int] = {}
    for b in bounds:
        if b.relation == ">":
            earliest[b.action] = max(earliest.get(b.action, day_start), b.hour + 1)
    now = day_start
    out = {}
    for a in sequence:
        start = max(now, earliest.get(a, day_start))
        out[a] = (start, start + durations[a])
        now = start + durations[a]
    return out


# -- evaluation -----------------------------------------------------------

def evaluate(cs: ConstraintSet, assignment: PlanAssignment) -> list[Constraint]:
    """Constraints of ``cs`` that ``assignment`` violates (empty means correct)."""
    missing = set(cs.actions) - set(assignment.order)
    if missing:
        raise IncompleteAssignment(missing)
    positions = sorted(assignment.order[a] for a in cs.actions)
    if positions != list(range(1, len(cs.actions) + 1)):
        raise ValueError("order assignment is not a bijection onto 1..n")
    needs_times = any(not isinstance(c, OrderBefore) for c in cs.constraints)
    times = assignment.times
    if needs_times:
        if times is None:
            raise IncompleteAssignment(cs.actions, "start/end times")
        gaps = set(cs.actions) - set(times)
        if gaps:
            raise IncompleteAssignment(gaps, "start/end times")
    violated: list[Constraint] = []
    for c in cs.constraints:
        if isinstance(c, OrderBefore):
            ok = assignment.order[c.before] < assignment.order[c.after]
        elif isinstance(c, StartBound):
            start = times[c.action][0]  # type: ignore[index]
            ok = start < c.hour if c.relation == "<" else start > c.hour
        elif isinstance(c, DurationEq):
            start, end = times[c.action]  # type: ignore[index]
            ok = end - start == c.hours
        elif isinstance(c, HorizonBound):
            ok = all(c.start <= times[a][0] and times[a][1] <= c.end for a in cs.actions)  # type: ignore[index]
        else:
            seq = [a for a in assignment.sequence if a in set(cs.actions)]
            ok = all(times[b][0] >= times[a][1] for a, b in zip(seq, seq[1:]))  # type: ignore[index]
        if not ok:
            violated.append(c)
    return violated


# -- canonical forms ------------------------------------------------------

def canonicalize(cs: ConstraintSet) -> tuple[Constraint, ...]:
    """Transitive reduction of the ordering DAG over sorted action ids.

    Non-ordering constraints (extended sets) are normalised too: per action
    only the tightest start bound in each direction is kept.
    """
    if shortest_cycle(cs.actions, cs.orderings()) is not None:
        raise ConstraintError("cannot canonicalize an unsatisfiable ordering")
    reduced: tuple[Constraint, ...] = tuple(transitive_reduction(sorted(cs.actions), cs.orderings()))
    tight: dict[tuple[str, str], int] = {}
    for b in cs.bounds():
        key = (b.action, b.relation)
        pick = min if b.relation == "<" else max
        tight[key] = pick(tight.get(key, b.hour), b.hour)
    rest = [StartBound(a, r, h) for (a, r), h in tight.items()]
    rest += [c for c in cs.constraints if isinstance(c, (DurationEq, HorizonBound, MonotoneSequence))]
    return reduced + tuple(sorted(set(rest), key=sort_key))


def equivalent(a: ConstraintSet, b: ConstraintSet) -> bool:
    """Same actions and same transitive closure (plus identical normalised extras)."""
    if set(a.actions) != set(b.actions):
        return False
    return canonicalize(a) == canonicalize(b)


def completion_feasible(cs: ConstraintSet, executed: Sequence[str],
                        times: Mapping[str, tuple[int, int]] | None = None) -> bool:
    """Whether the actions not yet executed can still be completed after ``executed``."""
    done = set(executed)
    rest = tuple(a for a in cs.actions if a not in done)
    orderings = cs.orderings()
    if any(c.before in rest and c.after in done for c in orderings):
        return False
    inner = [c for c in orderings if c.before in rest and c.after in rest]
    if shortest_cycle(rest, inner) is not None:
        return False
    if cs.mode is Mode.BASIC or not rest:
        return True
    horizon = cs.horizon()
    if horizon is None:
        raise ConstraintError("extended constraint sets need a horizon")
    now = max((times[a][1] for a in executed), default=horizon[0]) if times else horizon[0]
    search = _Schedule(rest, cs.durations(), (max(now, horizon[0]), horizon[1]), inner,
                       [b for b in cs.bounds() if b.action in rest])
    return search.solve() is not None
