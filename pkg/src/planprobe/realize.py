"""Surface realization: skeleton + phrases + keyword forms -> English text."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .common import Mode, clock_label
from .grammar import Kind, KeywordClass, Node, ParagraphSkeleton
from .lexicon import Lexicon

_SIBILANT = re.compile(r"(s|sh|ch|x|z|o)$")
_CONSONANT_Y = re.compile(r"[^aeiou]y$")


def conjugate(base: str, plural: bool) -> str:
    """Third-person present of a base-form verb phrase ("come before" -> "comes before")."""
    head, _, tail = base.partition(" ")
    if head == "be":
        head = "are" if plural else "is"
    elif not plural:
        if _CONSONANT_Y.search(head):
            head = head[:-1] + "ies"
        elif _SIBILANT.search(head):
            head += "es"
        else:
            head += "s"
    return f"{head} {tail}".strip()


def join_group(phrases: Sequence[str]) -> str:
    if len(phrases) <= 2:
        return " and ".join(phrases)
    return ", ".join(phrases[:-1]) + ", and " + phrases[-1]


class _Writer:
    def __init__(self, phrases: Mapping[str, str], forms: Sequence[str]):
        self.phrases = phrases
        self.forms = list(forms)
        self.pos = 0

    def form(self, node: Node, plural: bool = False) -> str:
        if self.pos >= len(self.forms):
            raise ValueError("fewer keyword forms than keyword slots")
        text = self.forms[self.pos]
        self.pos += 1
        cls: KeywordClass = node.payload  # type: ignore[assignment]
        return conjugate(text, plural) if cls.pos.value == "VP" else text

    def group(self, node: Node, *, closing: bool) -> tuple[str, bool]:
        """Render a Subject/Object; returns (text, plural)."""
        if node.children and node.children[0].kind is Kind.TIME_REF:
            return clock_label(node.children[0].payload), False  # type: ignore[arg-type]
        ids = [c.payload for c in node.children if c.kind is Kind.ACTION_REF]
        plural = len(ids) > 1
        text = join_group([self.phrases[a] for a in ids])  # type: ignore[index]
        rel = node.children[-1] if node.children[-1].kind is Kind.RELATIVE_CLAUSE else None
        if rel is not None:
            text += ", which " + self.relative(rel, plural)
            if closing:
                text += ","
        return text, plural

    def relative(self, node: Node, plural: bool) -> str:
        c = node.children
        if len(c) == 2:
            verb = self.form(c[0], plural)
            return f"{verb} {self.group(c[1], closing=False)[0]}"
        verb = self.form(c[0], plural)
        prep = self.form(c[1])
        return f"{verb} {prep} {self.group(c[2], closing=False)[0]}"

    def clause(self, node: Node) -> str:
        c = node.children
        if node.kind is Kind.INDEPENDENT_CLAUSE:
            if c[0].kind is Kind.KEYWORD:  # fronted: P o, s VP0
                prep = self.form(c[0])
                obj, _ = self.group(c[1], closing=False)
                subj, plural = self.group(c[2], closing=True)
                return f"{prep} {obj}, {subj} {self.form(c[3], plural)}"
            subj, plural = self.group(c[0], closing=True)
            if len(c) == 3:
                verb = self.form(c[1], plural)
                return f"{subj} {verb} {self.group(c[2], closing=False)[0]}"
            verb = self.form(c[1], plural)
            prep = self.form(c[2])
            return f"{subj} {verb} {prep} {self.group(c[3], closing=False)[0]}"
        if node.kind is Kind.MULTI_CLAUSE:
            if c[0].kind is Kind.KEYWORD:
                sc = self.form(c[0])
                return f"{sc} {self.dependent(c[1])}, {self.dependent(c[2])}"
            first = self.dependent(c[0])
            return f"{first} {self.form(c[1])} {self.dependent(c[2])}"
        raise ValueError(f"unexpected clause kind {node.kind}")

    def dependent(self, node: Node) -> str:
        subj, plural = self.group(node.children[0], closing=True)
        return f"{subj} {self.form(node.children[1], plural)}"

    def sentence(self, node: Node) -> str:
        out = ""
        for child in node.children:
            if child.kind is Kind.CONJUNCTION:
                out += f"{child.payload} "
            else:
                out += self.clause(child.children[0])
        return out[0].upper() + out[1:] + "."


def render_body(skeleton: ParagraphSkeleton, phrases: Mapping[str, str], forms: Sequence[str]) -> str:
    """Realize every sentence left to right; ``forms`` follows keyword preorder."""
    writer = _Writer(phrases, forms)
    text = " ".join(writer.sentence(s) for s in skeleton.sentences)
    if writer.pos != len(writer.forms):
        raise ValueError("more keyword forms than keyword slots")
    return text


def sample_forms(skeleton: ParagraphSkeleton, lexicon: Lexicon, rng: random.Random) -> list[str]:
    return [lexicon.sample_form(cls, rng) for cls in skeleton.root.keywords()]


def frame(body: str, task_phrases: Sequence[str], mode: Mode, horizon: tuple[int, int] | None = None) -> str:
    lines = [
        "Here is a list of tasks to get done: " + "; ".join(task_phrases) + ".",
        "Each task has its own tool. Call every tool exactly once and respect the following requirements.",
        "",
        body,
        "",
    ]
    if mode is Mode.EXTENDED:
        if horizon is None:
            raise ValueError("extended text needs a working-day horizon")
        lo, hi = horizon
        lines += [
            f"The working day starts at {clock_label(lo)} and ends at {clock_label(hi)}; "
            "every task has to start and finish inside that window.",
            "Only one task can be in progress at a time, so a task may only start once the previous one has ended.",
            "Every tool takes a start_time argument, a whole hour on the 24-hour clock, "
            "and reports how long the task took.",
            "If at some point the requirements can no longer be met, stop calling tools "
            "and reply with a message that begins with \"HALT:\" followed by the reason.",
        ]
    lines.append("When every task is done, reply with a short summary of what you did.")
    return "\n".join(lines)


@dataclass(frozen=True)
class Realization:
    text: str
    body: str
    forms: tuple[str, ...]
    task_order: tuple[str, ...]


def realize(skeleton: ParagraphSkeleton, phrases: Mapping[str, str], forms: Sequence[str],
            task_order: Sequence[str], horizon: tuple[int, int] | None = None) -> Realization:
    body = render_body(skeleton, phrases, forms)
    text = frame(body, [phrases[a] for a in task_order], skeleton.mode, horizon)
    return Realization(text, body, tuple(forms), tuple(task_order))
