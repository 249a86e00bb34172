"""Root-cause dissection of an erroneous case.

The ladder is: rerun the original three times, then rephrase the keywords,
then move the query to another topic, then restate the same constraints
with a different sentence structure. The first rung on which the agent
succeeds names the cause; if none does, the constraints themselves are
blamed.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

from .harness.protocol import AgentAdapter
from .harness.runner import Limits, Outcome, run_case
from .lexicon import Lexicon, LexiconError, builtin_lexicon
from .solver import canonicalize
from .synthesis import QueryCase, make_actions, rebuild, synthesize_equivalent
from .common import GenerationError

RERUNS = 3
DEFAULT_K = 5


class Cause(str, Enum):
    PROBABILITY = "Probability"
    TERMINAL = "Terminal"
    TOPIC = "Topic"
    STRUCTURE = "Structure"
    CONSTRAINT = "Constraint"


@dataclass(frozen=True)
class ErrorCause:
    label: Cause
    evidence: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if self.label is Cause.CONSTRAINT and self.evidence and self.evidence.get("flipped"):
            raise ValueError("a constraint cause has no flipping mutation")


class MutationError(RuntimeError):
    pass


class DissectionAborted(RuntimeError):
    """The agent could not be reached; no cause can be assigned."""


def _check_preserved(original: QueryCase, mutated: QueryCase) -> QueryCase:
    if canonicalize(original.constraints) != canonicalize(mutated.constraints):
        raise AssertionError("mutation changed the constraint set")
    return mutated


def terminal_substitute(case: QueryCase, rng: random.Random, lexicon: Lexicon | None = None) -> QueryCase:
    """Re-word every keyword slot that has an alternative of the same class.

    Replacements avoid every form the original query already uses for that
    class, so a word present in the original never survives the rewrite.
    """
    lexicon = lexicon or builtin_lexicon()
    classes = case.skeleton.root.keywords()
    used: dict[Any, set[str]] = {}
    for cls, form in zip(classes, case.keyword_forms):
        used.setdefault(cls, set()).add(form)
    forms, changed = [], False
    for cls, form in zip(classes, case.keyword_forms):
        fresh = [f for f in lexicon.forms(cls) if f not in used[cls]]
        alts = fresh or [f for f in lexicon.forms(cls) if f != form]
        if alts:
            forms.append(rng.choice(alts))
            changed = True
        else:
            forms.append(form)
    if not changed:
        raise MutationError("no keyword slot has an alternative surface form")
    return _check_preserved(case, rebuild(case, rng, lexicon=lexicon, forms=forms))


def topic_change(case: QueryCase, rng: random.Random, lexicon: Lexicon | None = None,
                 exclude: set[str] | frozenset[str] = frozenset()) -> QueryCase:
    """Same skeleton and action ids, activities drawn from a different topic."""
    lexicon = lexicon or builtin_lexicon()
    try:
        topic = lexicon.sample_topic(rng, set(exclude) | {case.topic})
    except LexiconError as exc:
        raise MutationError(str(exc)) from None
    phrases = lexicon.sample_activities(topic, len(case.actions), rng)
    fresh = make_actions(phrases)
    actions = tuple(type(a)(a.id, p.phrase, p.tool_name, p.description) for a, p in zip(case.actions, fresh))
    mutated = rebuild(case, rng, lexicon=lexicon, topic=topic, actions=actions,
                      forms=case.keyword_forms)
    return _check_preserved(case, mutated)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class DissectionReport:
    case_id: str
    label: Cause
    evidence: dict[str, Any] | None
    transcript_digests: list[str] = field(default_factory=list)

    @property
    def cause(self) -> ErrorCause:
        return ErrorCause(self.label, self.evidence)

    def to_dict(self) -> dict[str, Any]:
        return {"case_id": self.case_id, "label": self.label.value, "evidence": self.evidence,
                "transcript_digests": list(self.transcript_digests)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def dissect(case: QueryCase, agent: Callable[[QueryCase], AgentAdapter], K: int = DEFAULT_K, *,
            limits: Limits = Limits(), rng: random.Random | None = None,
            lexicon: Lexicon | None = None, clock: Callable[[], float] = time.monotonic,
            strict_final_loop: bool = True) -> DissectionReport:
    """Attribute the agent's failure on ``case`` to one cause.

    ``agent`` is a factory: every run gets a fresh adapter. With
    ``strict_final_loop`` the structure rung stops at its first attempt that
    still fails, as the ladder is usually written; otherwise it tries all K.
    """
    rng = rng or random.Random(case.id)
    lexicon = lexicon or builtin_lexicon()
    digests: list[str] = []

    def passes(c: QueryCase) -> bool:
        log, verdict = run_case(agent(c), c, limits, clock)
        digests.append(digest(log.to_jsonl()))
        if log.outcome is Outcome.PROTOCOL_ERROR:
            raise DissectionAborted(f"agent unreachable while dissecting {case.id}: {log.detail}")
        return verdict.correct

    def report(label: Cause, evidence: dict[str, Any] | None) -> DissectionReport:
        return DissectionReport(case.id, label, evidence, digests)

    for i in range(RERUNS):
        if passes(case):
            return report(Cause.PROBABILITY, {"flipped": True, "rerun": i + 1})

    skipped: dict[str, str] = {}
    for k in range(K):
        try:
            mutated = terminal_substitute(case, rng, lexicon)
        except MutationError as exc:
            skipped["terminal"] = str(exc)
            break
        if passes(mutated):
            return report(Cause.TERMINAL, {"flipped": True, "attempt": k + 1,
                                           "keyword_forms": list(mutated.keyword_forms)})

    seen = {case.topic}
    for k in range(K):
        try:
            mutated = topic_change(case, rng, lexicon, seen)
        except MutationError as exc:
            skipped["topic"] = str(exc)
            break
        seen.add(mutated.topic)
        if passes(mutated):
            return report(Cause.TOPIC, {"flipped": True, "attempt": k + 1, "topic": mutated.topic})

    for k in range(K):
        try:
            mutated = synthesize_equivalent(case.constraints, case.actions, case.topic, rng,
                                            lexicon=lexicon, original=case.skeleton,
                                            case_id=f"{case.id}~eq{k + 1}", seed=case.seed)
        except GenerationError as exc:
            skipped["structure"] = str(exc)
            break
        if passes(mutated):
            return report(Cause.STRUCTURE, {"flipped": True, "attempt": k + 1, "text": mutated.body})
        if strict_final_loop:
            break
    evidence: dict[str, Any] = {"flipped": False}
    if skipped:
        evidence["skipped"] = skipped
    return report(Cause.CONSTRAINT, evidence)
