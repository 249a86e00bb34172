"""Scripted agents with known defects, used to self-test the oracle."""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from ..common import Mode
from ..solver import PlanAssignment, check_sat, evaluate, topological_order, transitive_reduction
from ..synthesis import QueryCase
from .protocol import AgentAdapter, FinalAnswer, PublicTool, Step, Thought, ToolCall, Turn

FAKE_TOOL = "summon_expert_consultant"


class ScriptedAgent(AgentAdapter):
    """Replays a fixed list of steps, then answers."""

    def __init__(self, steps: Sequence[Step], final: str = "All tasks are done."):
        self.steps = list(steps)
        self.final = final
        self.pos = 0

    def next_step(self, query: str, tools: Sequence[PublicTool], transcript: Sequence[Turn]) -> Step:
        if self.pos < len(self.steps):
            self.pos += 1
            return self.steps[self.pos - 1]
        return FinalAnswer(self.final)


class LoopingAgent(AgentAdapter):
    def next_step(self, query: str, tools: Sequence[PublicTool], transcript: Sequence[Turn]) -> Step:
        return Thought("still thinking")


@dataclass(frozen=True)
class Plan:
    sequence: list[str]
    starts: dict[str, int] | None = None


def witness_plan(case: QueryCase) -> Plan:
    result = check_sat(case.constraints)
    if not result:
        raise ValueError(f"case {case.id} is unsatisfiable")
    w = result.witness
    assert w is not None
    starts = {a: t[0] for a, t in w.times.items()} if w.times else None
    return Plan(list(w.sequence), starts)


def _adjacent_order(case: QueryCase, u: str, v: str) -> list[str]:
    """A valid order in which ``u`` sits right before ``v`` (u -> v must be a
    non-redundant edge, so no other path forces anything in between)."""
    cs = case.constraints
    preds = {a: {c.before for c in cs.orderings() if c.after == a} for a in cs.actions}

    def ancestors(x: str) -> set[str]:
        out: set[str] = set()
        stack = [x]
        while stack:
            for p in preds[stack.pop()]:
                if p not in out:
                    out.add(p)
                    stack.append(p)
        return out

    head = (ancestors(v) | ancestors(u)) - {u}
    head_order = topological_order([a for a in cs.actions if a in head],
                                   [c for c in cs.orderings() if c.before in head and c.after in head])
    rest = [a for a in cs.actions if a not in head and a not in (u, v)]
    tail_order = topological_order(rest, [c for c in cs.orderings() if c.before in rest and c.after in rest])
    assert head_order is not None and tail_order is not None
    return head_order + [u, v] + tail_order


def adjacent_plan(case: QueryCase) -> tuple[Plan, int] | None:
    """A correct plan whose positions i, i+1 carry a direct ordering requirement.

    None when no such plan exists (no orderings, or in extended mode no
    such order fits the day).
    """
    cs = case.constraints
    edges = transitive_reduction(cs.actions, cs.orderings())
    if case.mode is Mode.BASIC:
        if not edges:
            return None
        order = _adjacent_order(case, edges[0].before, edges[0].after)
        return Plan(order), order.index(edges[0].before)
    plan = witness_plan(case)
    closure = {(c.before, c.after) for c in cs.orderings()}
    seq = plan.sequence
    for i in range(len(seq) - 1):
        if (seq[i], seq[i + 1]) in closure:
            return plan, i
    for e in edges:
        order = _adjacent_order(case, e.before, e.after)
        starts = _extended_schedule(case, order)
        times = {a: (s, s + case.hidden_durations[a]) for a, s in starts.items()}
        if not evaluate(cs, PlanAssignment.from_sequence(order, times)):
            return Plan(order, starts), order.index(e.before)
    return None


def _calls(case: QueryCase, sequence: Sequence[str], starts: dict[str, int] | None) -> list[Step]:
    steps: list[Step] = []
    for i, a in enumerate(sequence):
        args = {"start_time": starts[a]} if starts is not None else {}
        steps.append(ToolCall(case.action(a).tool_name, args, f"call_{i}"))
    return steps


def perfect(case: QueryCase) -> AgentAdapter:
    plan = witness_plan(case)
    return ScriptedAgent(_calls(case, plan.sequence, plan.starts))


def _extended_schedule(case: QueryCase, order: list[str]) -> dict[str, int]:
    """Earliest packing of a fixed order, honouring lower start bounds."""
    lo = case.horizon[0] if case.horizon else 8
    floor: dict[str, int] = {}
    for b in case.constraints.bounds():
        if b.relation == ">":
            floor[b.action] = max(floor.get(b.action, lo), b.hour + 1)
    now, out = lo, {}
    for a in order:
        out[a] = max(now, floor.get(a, lo))
        now = out[a] + case.hidden_durations[a]
    return out


def swap_adjacent(case: QueryCase, i: int | None = None) -> AgentAdapter:
    """Swap two neighbours of a valid plan.

    Without ``i`` the pair is chosen so the swap breaks a direct ordering
    requirement. In extended mode the swapped pair keeps its combined time
    slot, so only ordering-type requirements can be broken.
    """
    found = adjacent_plan(case) if i is None else None
    plan, i = found if found is not None else (witness_plan(case), i or 0)
    order, starts = plan.sequence, plan.starts
    if not 0 <= i < len(order) - 1:
        raise ValueError(f"no adjacent pair at position {i}")
    u, v = order[i], order[i + 1]
    swapped = order[:i] + [v, u] + order[i + 2:]
    if starts is not None:
        starts = dict(starts)
        s_u = starts[u]
        starts[v] = s_u
        starts[u] = s_u + case.hidden_durations[v]
    return ScriptedAgent(_calls(case, swapped, starts))


def drop_action(case: QueryCase, action: str | None = None) -> AgentAdapter:
    plan = witness_plan(case)
    target = action or plan.sequence[-1]
    if target not in plan.sequence:
        raise ValueError(f"unknown action {target!r}")
    seq = [a for a in plan.sequence if a != target]
    return ScriptedAgent(_calls(case, seq, plan.starts))


def bad_param(case: QueryCase, offset: int = -4, position: int | None = None) -> AgentAdapter:
    """Shift one start_time by ``offset`` hours.

    A negative offset picks the first position whose shifted start overlaps
    its predecessor; a positive one the last position, pushing past the day.
    """
    plan = witness_plan(case)
    if plan.starts is None:
        return ScriptedAgent(_calls(case, plan.sequence, None))
    seq, starts = plan.sequence, dict(plan.starts)
    dur = case.hidden_durations
    if position is None:
        if offset < 0:
            position = next((k for k in range(1, len(seq))
                             if starts[seq[k]] + offset < starts[seq[k - 1]] + dur[seq[k - 1]]), 0)
        else:
            position = len(seq) - 1
    starts[seq[position]] += offset
    return ScriptedAgent(_calls(case, seq, starts))


def unknown_tool(case: QueryCase) -> AgentAdapter:
    plan = witness_plan(case)
    return ScriptedAgent([ToolCall(FAKE_TOOL, {}, "call_x")] + _calls(case, plan.sequence, plan.starts))


def never_finish(case: QueryCase) -> AgentAdapter:
    return LoopingAgent()


class CoinFactory:
    """Plays Perfect with probability 1-p, SwapAdjacent otherwise.

    Each instance draws from its own generator, seeded from the factory
    seed, the case id and how many agents this factory already made for
    that case; results therefore do not depend on scheduling order.
    """

    def __init__(self, p: float, seed: int | str = 0):
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        self.p = p
        self.seed = seed
        self._counts: dict[str, int] = {}
        self._lock = threading.Lock()

    def __call__(self, case: QueryCase) -> AgentAdapter:
        with self._lock:
            k = self._counts.get(case.id, 0)
            self._counts[case.id] = k + 1
        rng = random.Random(f"{self.seed}:{case.id}:{k}")
        return swap_adjacent(case) if rng.random() < self.p else perfect(case)


PROFILES: dict[str, Callable[..., AgentAdapter]] = {
    "perfect": perfect,
    "swap": swap_adjacent,
    "drop": drop_action,
    "badparam": bad_param,
    "unknown": unknown_tool,
    "never": never_finish,
}


def simulated_factory(spec: str, seed: int | str = 0) -> Callable[[QueryCase], AgentAdapter]:
    """Build a factory from ``perfect``, ``swap[:i]``, ``drop[:a3]``, ``badparam[:-4]``,
    ``unknown``, ``never`` or ``coin:0.5``."""
    name, _, arg = spec.partition(":")
    if name == "coin":
        return CoinFactory(float(arg or 0.5), seed)
    if name not in PROFILES:
        raise ValueError(f"unknown simulated profile {name!r}")
    fn = PROFILES[name]
    if not arg:
        return fn
    if name == "drop":
        return lambda case: fn(case, arg)
    if name in ("swap", "badparam"):
        return lambda case: fn(case, int(arg))
    raise ValueError(f"profile {name!r} takes no argument")
