"""Shared fixtures-by-function: hand-built cases and sensitivity stub agents."""
from __future__ import annotations

import random
import re
from typing import Callable, Sequence

from planprobe.common import Mode
from planprobe.grammar import (
    P_AFTER,
    Direction,
    Kind,
    ParagraphSkeleton,
    group,
    independent_clause,
    paragraph,
    sentence,
    serialize_skeleton,
    time_object,
)
from planprobe.harness.protocol import AgentAdapter
from planprobe.harness.simulated import drop_action, perfect
from planprobe.lexicon import builtin_lexicon
from planprobe.solver import canonicalize
from planprobe.synthesis import QueryCase, _assemble, make_actions, rebuild


def case_from(skeleton: ParagraphSkeleton, phrases: Sequence[str], *, topic: str = "Network Engineer",
              durations: dict[str, int] | None = None, horizon: tuple[int, int] | None = None,
              forms: Sequence[str] | None = None, seed: int = 0, case_id: str = "hand") -> QueryCase:
    """A case over a hand-written skeleton; ids a1..an follow ``phrases``."""
    actions = make_actions(phrases)
    if skeleton.mode is Mode.EXTENDED:
        horizon = horizon or (8, 18)
    return _assemble(skeleton, actions, topic, builtin_lexicon(), random.Random(seed), durations,
                     horizon, case_id, str(seed), forms=forms, task_order=[a.id for a in actions])


def chain(*ids: str, mode: Mode = Mode.BASIC) -> ParagraphSkeleton:
    """"x comes before y" for each neighbouring pair."""
    subs = [independent_clause(group(Kind.SUBJECT, [a]), Direction.BEFORE, group(Kind.OBJECT, [b]))
            for a, b in zip(ids, ids[1:])]
    return ParagraphSkeleton(paragraph([sentence([s]) for s in subs]), mode)


def with_behind(case: QueryCase) -> QueryCase | None:
    """Re-realize ``case`` with "behind" in its first P_after slot (None if it has none)."""
    classes = case.skeleton.root.keywords()
    if P_AFTER not in classes:
        return None
    forms = list(case.keyword_forms)
    forms[classes.index(P_AFTER)] = "behind"
    return rebuild(case, random.Random(0), forms=forms)


Factory = Callable[[QueryCase], AgentAdapter]


class FakeClock:
    """Advances by ``step`` seconds on every read."""

    def __init__(self, step: float = 0.5):
        self.now = 0.0
        self.step = step

    def __call__(self) -> float:
        self.now += self.step
        return self.now


def sensitive(fails: Callable[[QueryCase], bool]) -> Factory:
    """Perfect unless ``fails(case)``; then it drops an action."""
    return lambda case: drop_action(case) if fails(case) else perfect(case)


BEHIND = re.compile(r"\bbehind\b", re.IGNORECASE)


def word_sensitive() -> Factory:
    return sensitive(lambda c: bool(BEHIND.search(c.text)))


def topic_sensitive(topic: str) -> Factory:
    return sensitive(lambda c: c.topic == topic)


def structure_sensitive(skeleton: ParagraphSkeleton) -> Factory:
    target = serialize_skeleton(skeleton)
    return sensitive(lambda c: serialize_skeleton(c.skeleton) == target)


def constraint_sensitive(case: QueryCase) -> Factory:
    target = canonicalize(case.constraints)
    return sensitive(lambda c: canonicalize(c.constraints) == target)


class CountingFactory:
    """Wraps a factory and records the cases it was asked to play."""

    def __init__(self, inner: Factory):
        self.inner = inner
        self.cases: list[QueryCase] = []

    def __call__(self, case: QueryCase) -> AgentAdapter:
        self.cases.append(case)
        return self.inner(case)


def net3_case() -> QueryCase:
    """status check before diagnosis, diagnosis after router reboot."""
    subs = [independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.BEFORE, group(Kind.OBJECT, ["a2"])),
            independent_clause(group(Kind.SUBJECT, ["a2"]), Direction.AFTER, group(Kind.OBJECT, ["a3"]))]
    sk = ParagraphSkeleton(paragraph([sentence([s]) for s in subs]), Mode.BASIC)
    return case_from(sk, ["network status check", "network diagnosis", "router reboot"])


def timed_case() -> QueryCase:
    """Diagnosis (2h) before speed test (1h), which starts before 15:00; reboot after the test."""
    subs = [independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.BEFORE, group(Kind.OBJECT, ["a2"])),
            independent_clause(group(Kind.SUBJECT, ["a2"]), Direction.BEFORE, time_object(15), "prep"),
            independent_clause(group(Kind.SUBJECT, ["a3"]), Direction.AFTER, group(Kind.OBJECT, ["a2"]))]
    sk = ParagraphSkeleton(paragraph([sentence([s]) for s in subs]), Mode.EXTENDED)
    return case_from(sk, ["network diagnosis", "network speed test", "router reboot"],
                     durations={"a1": 2, "a2": 1, "a3": 1})


def generated_cases(count: int, mode: Mode = Mode.BASIC, *, salt: str = "c", n_range=(3, 5)):
    """``count`` deterministic synthesized cases."""
    from planprobe.synthesis import generate_case
    out = []
    for i in range(count):
        rng = random.Random(f"{salt}-{i}")
        out.append(generate_case(rng.randint(*n_range), mode, rng, seed=f"{salt}-{i}"))
    return out


def behind_cases(count: int, mode: Mode = Mode.BASIC):
    """Synthesized cases whose text contains "behind" as a keyword."""
    from planprobe.synthesis import generate_case
    out, i = [], 0
    while len(out) < count:
        rng = random.Random(f"behind-{i}")
        i += 1
        case = with_behind(generate_case(rng.randint(3, 5), mode, rng))
        if case is not None:
            out.append(case)
    return out
