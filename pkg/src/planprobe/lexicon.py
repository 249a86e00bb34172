"""Surface forms for keywords and topic-scoped activity phrases."""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Mapping

import jsonschema

from .grammar import KEYWORD_CLASSES, Direction, KeywordClass

MIN_AVERAGE_FORMS = 7
TOPIC_COUNT = 50
ACTIVITIES_PER_TOPIC = 20


class LexiconError(Exception):
    pass


class LexiconValidationError(LexiconError):
    def __init__(self, problems: list[str]):
        super().__init__("invalid lexicon: " + "; ".join(problems))
        self.problems = problems


class LexiconTransportError(LexiconError):
    """The completion endpoint failed before any content could be validated."""


def tool_name(phrase: str) -> str:
    """``"network diagnosis"`` -> ``"network_diagnosis"``."""
    return re.sub(r"[^a-z0-9]+", "_", phrase.lower()).strip("_")


@dataclass(frozen=True)
class Lexicon:
    keyword_forms: Mapping[KeywordClass, tuple[str, ...]]
    topics: Mapping[str, tuple[str, ...]]
    version: str = "1"

    def forms(self, cls: KeywordClass) -> tuple[str, ...]:
        return self.keyword_forms[cls]

    def activities(self, topic: str) -> tuple[str, ...]:
        try:
            return self.topics[topic]
        except KeyError:
            raise LexiconError(f"unknown topic {topic!r}") from None

    def sample_form(self, cls: KeywordClass, rng: random.Random) -> str:
        return rng.choice(self.keyword_forms[cls])

    def sample_topic(self, rng: random.Random, exclude: set[str] | frozenset[str] = frozenset()) -> str:
        choices = [t for t in self.topics if t not in exclude]
        if not choices:
            raise LexiconError("no topic left to sample")
        return rng.choice(choices)

    def sample_activities(self, topic: str, n: int, rng: random.Random) -> list[str]:
        pool = self.activities(topic)
        if n > len(pool):
            raise LexiconError(f"topic {topic!r} has {len(pool)} activities, {n} requested")
        return rng.sample(list(pool), n)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "keyword_forms": {c.code: list(self.keyword_forms[c]) for c in KEYWORD_CLASSES},
            "topics": {t: list(a) for t, a in self.topics.items()},
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, ensure_ascii=False) + "\n")


def check_lexicon(lex: Lexicon, *, topic_count: int | None = None,
                  activities_per_topic: int | None = None) -> list[str]:
    """Return a list of invariant breaches (empty when the lexicon is sound)."""
    problems = []
    for cls in KEYWORD_CLASSES:
        if not lex.keyword_forms.get(cls):
            problems.append(f"no surface form for {cls.code}")
    total = sum(len(lex.keyword_forms.get(c, ())) for c in KEYWORD_CLASSES)
    if total / len(KEYWORD_CLASSES) < MIN_AVERAGE_FORMS:
        problems.append(f"average forms per keyword class {total / len(KEYWORD_CLASSES):.2f} < {MIN_AVERAGE_FORMS}")
    before = {f for c in KEYWORD_CLASSES if c.direction is Direction.BEFORE for f in lex.keyword_forms.get(c, ())}
    after = {f for c in KEYWORD_CLASSES if c.direction is Direction.AFTER for f in lex.keyword_forms.get(c, ())}
    for form in sorted(before & after):
        problems.append(f"form {form!r} serves both directions")
    if topic_count is not None and len(lex.topics) != topic_count:
        problems.append(f"expected {topic_count} topics, got {len(lex.topics)}")
    for topic, acts in lex.topics.items():
        if activities_per_topic is not None and len(acts) < activities_per_topic:
            problems.append(f"topic {topic!r} has {len(acts)} activities (< {activities_per_topic})")
        names = [tool_name(a) for a in acts]
        if len(set(acts)) != len(acts) or len(set(names)) != len(names):
            problems.append(f"topic {topic!r} repeats an activity")
        if any(not n for n in names):
            problems.append(f"topic {topic!r} has an activity without a usable tool name")
        # a phrase nested in another would make mention counts in the text ambiguous
        for a in acts:
            for b in acts:
                if a != b and f" {a.lower()} " in f" {b.lower()} ":
                    problems.append(f"topic {topic!r}: {a!r} occurs inside {b!r}")
    return problems


@lru_cache(maxsize=1)
def _schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("data/lexicon.schema.json").read_text())


def lexicon_from_dict(data: dict, *, strict: bool = True) -> Lexicon:
    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        raise LexiconValidationError([exc.message]) from None
    lex = Lexicon(
        keyword_forms={KeywordClass.from_code(k): tuple(v) for k, v in data["keyword_forms"].items()},
        topics={t: tuple(a) for t, a in data["topics"].items()},
        version=data["version"],
    )
    if strict:
        problems = check_lexicon(lex)
        if problems:
            raise LexiconValidationError(problems)
    return lex


def load_lexicon(path: str | Path) -> Lexicon:
    return lexicon_from_dict(json.loads(Path(path).read_text()))


@lru_cache(maxsize=1)
def builtin_lexicon() -> Lexicon:
    text = resources.files(__package__).joinpath("data/lexicon.json").read_text()
    return lexicon_from_dict(json.loads(text))


JOBS_PROMPT = (
    "Name {count} common occupations drawn from many different industries. "
    "Reply with one occupation per line and nothing else."
)
ACTIVITIES_PROMPT = (
    "Name {count} tasks that a {role} typically handles during a working day, "
    "each written as a short noun phrase. Reply with one task per line and nothing else."
)

_BULLET = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s*")


def _lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = _BULLET.sub("", line).strip().rstrip(".")
        if line:
            out.append(line)
    return out


def regenerate_lexicon(complete: Callable[[str], str], *, topic_count: int = TOPIC_COUNT,
                       activities_per_topic: int = ACTIVITIES_PER_TOPIC,
                       keyword_source: Lexicon | None = None) -> Lexicon:
    """Ask a completion endpoint for jobs and their daily activities.

    ``complete`` takes a prompt and returns the model's text. Keyword forms
    are kept from ``keyword_source`` (the built-in lexicon by default): the
    form-to-direction mapping is what keeps the oracle sound, so it is never
    regenerated. Output that breaks an invariant is rejected, not repaired.
    """
    def ask(prompt: str) -> str:
        try:
            return complete(prompt)
        except Exception as exc:  # any endpoint failure is a transport problem
            raise LexiconTransportError(f"completion endpoint failed: {exc}") from exc

    jobs = _lines(ask(JOBS_PROMPT.format(count=topic_count)))
    problems = []
    if len(jobs) != topic_count or len(set(jobs)) != len(jobs):
        problems.append(f"expected {topic_count} distinct jobs, got {len(set(jobs))}")
    topics: dict[str, tuple[str, ...]] = {}
    for job in dict.fromkeys(jobs):
        acts = _lines(ask(ACTIVITIES_PROMPT.format(count=activities_per_topic, role=job)))
        if len(acts) != activities_per_topic or len(set(acts)) != len(acts):
            problems.append(f"job {job!r} returned {len(set(acts))} distinct activities, "
                            f"expected {activities_per_topic}")
        topics[job] = tuple(acts)
    base = keyword_source or builtin_lexicon()
    lex = Lexicon(dict(base.keyword_forms), topics, version=f"{base.version}+regenerated")
    problems += check_lexicon(lex, topic_count=topic_count, activities_per_topic=activities_per_topic)
    if problems:
        raise LexiconValidationError(list(dict.fromkeys(problems)))
    return lex
