"""Query skeleton grammar.

A skeleton is a small abstract-syntax tree over ordering keywords and
action slots. Sentences are built from independent clauses, multi-clauses
and optional relative clauses; in extended mode an object may also be a
clock time. This module owns the tree types, random expansion, grammar
conformance checking, JSON (de)serialization and the expansion-option
census.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .common import Mode


class Pos(str, Enum):
    VP = "VP"
    P = "P"
    SC = "SC"


class Direction(str, Enum):
    BEFORE = "before"
    AFTER = "after"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class KeywordClass:
    pos: Pos
    direction: Direction

    def __post_init__(self) -> None:
        if self.direction is Direction.NEUTRAL and self.pos is not Pos.VP:
            raise ValueError("only verb phrases can be direction-neutral")

    @property
    def code(self) -> str:
        return f"{self.pos.value}_{self.direction.value}"

    @classmethod
    def from_code(cls, code: str) -> KeywordClass:
        pos, _, direction = code.partition("_")
        return cls(Pos(pos), Direction(direction))

    def __str__(self) -> str:
        return self.code


VP_BEFORE = KeywordClass(Pos.VP, Direction.BEFORE)
VP_AFTER = KeywordClass(Pos.VP, Direction.AFTER)
VP_NEUTRAL = KeywordClass(Pos.VP, Direction.NEUTRAL)
P_BEFORE = KeywordClass(Pos.P, Direction.BEFORE)
P_AFTER = KeywordClass(Pos.P, Direction.AFTER)
SC_BEFORE = KeywordClass(Pos.SC, Direction.BEFORE)
SC_AFTER = KeywordClass(Pos.SC, Direction.AFTER)

KEYWORD_CLASSES = (VP_BEFORE, VP_AFTER, VP_NEUTRAL, P_BEFORE, P_AFTER, SC_BEFORE, SC_AFTER)
DIRECTIONAL = (Direction.BEFORE, Direction.AFTER)

# Clause conjunctions carry no ordering meaning.
CONJUNCTIONS = (";", ", and", ", but", ", yet", ", while", ", whereas")


class Kind(str, Enum):
    PARAGRAPH = "Paragraph"
    SENTENCE = "Sentence"
    SUB_SENTENCE = "SubSentence"
    INDEPENDENT_CLAUSE = "IndependentClause"
    MULTI_CLAUSE = "MultiClause"
    DEPENDENT_CLAUSE = "DependentClause"
    RELATIVE_CLAUSE = "RelativeClause"
    SUBJECT = "Subject"
    OBJECT = "Object"
    CONJUNCTION = "Conjunction"
    ACTION_REF = "ActionRef"
    TIME_REF = "TimeRef"
    KEYWORD = "Keyword"


Payload = str | int | KeywordClass | None


@dataclass(frozen=True)
class Node:
    kind: Kind
    children: tuple[Node, ...] = ()
    payload: Payload = None

    def walk(self) -> Iterator[Node]:
        yield self
        for child in self.children:
            yield from child.walk()

    def keywords(self) -> list[KeywordClass]:
        return [n.payload for n in self.walk() if n.kind is Kind.KEYWORD]  # type: ignore[misc]

    def action_refs(self) -> list[str]:
        return [n.payload for n in self.walk() if n.kind is Kind.ACTION_REF]  # type: ignore[misc]


@dataclass(frozen=True)
class ParagraphSkeleton:
    root: Node
    mode: Mode = Mode.BASIC

    @property
    def sentences(self) -> tuple[Node, ...]:
        return self.root.children

    def subsentences(self) -> list[Node]:
        return [n for n in self.root.walk() if n.kind is Kind.SUB_SENTENCE]

    def mentioned(self) -> set[str]:
        return set(self.root.action_refs())

    def with_sentences(self, sentences: Iterable[Node]) -> ParagraphSkeleton:
        return ParagraphSkeleton(paragraph(sentences), self.mode)


# -- constructors ---------------------------------------------------------

def keyword(cls: KeywordClass) -> Node:
    return Node(Kind.KEYWORD, payload=cls)


def action(action_id: str) -> Node:
    return Node(Kind.ACTION_REF, payload=action_id)


def time_ref(hour: int) -> Node:
    return Node(Kind.TIME_REF, payload=hour)


def conjunction(token: str) -> Node:
    return Node(Kind.CONJUNCTION, payload=token)


def group(kind: Kind, ids: Sequence[str], relative: Node | None = None) -> Node:
    children = tuple(action(a) for a in ids)
    if relative is not None:
        children += (relative,)
    return Node(kind, children)


def time_object(hour: int) -> Node:
    return Node(Kind.OBJECT, (time_ref(hour),))


def relative_clause(direction: Direction, obj: Node, *, prepositional: bool = False) -> Node:
    if prepositional:
        children = (keyword(VP_NEUTRAL), keyword(KeywordClass(Pos.P, direction)), obj)
    else:
        children = (keyword(KeywordClass(Pos.VP, direction)), obj)
    return Node(Kind.RELATIVE_CLAUSE, children)


def independent_clause(subject: Node, direction: Direction, obj: Node, shape: str = "verb") -> Node:
    """Build one of the three independent-clause shapes: verb, prep or fronted."""
    if shape == "verb":
        children = (subject, keyword(KeywordClass(Pos.VP, direction)), obj)
    elif shape == "prep":
        children = (subject, keyword(VP_NEUTRAL), keyword(KeywordClass(Pos.P, direction)), obj)
    elif shape == "fronted":
        children = (keyword(KeywordClass(Pos.P, direction)), obj, subject, keyword(VP_NEUTRAL))
    else:
        raise ValueError(f"unknown clause shape {shape!r}")
    return Node(Kind.SUB_SENTENCE, (Node(Kind.INDEPENDENT_CLAUSE, children),))


def multi_clause(main: Node, direction: Direction, other: Node, *, fronted: bool = False) -> Node:
    """``main`` is the clause whose events are ordered relative to ``other``."""
    dep_main = Node(Kind.DEPENDENT_CLAUSE, (main, keyword(VP_NEUTRAL)))
    dep_other = Node(Kind.DEPENDENT_CLAUSE, (other, keyword(VP_NEUTRAL)))
    sc = keyword(KeywordClass(Pos.SC, direction))
    children = (sc, dep_other, dep_main) if fronted else (dep_main, sc, dep_other)
    return Node(Kind.SUB_SENTENCE, (Node(Kind.MULTI_CLAUSE, children),))


def sentence(subsentences: Sequence[Node], conjunctions: Sequence[str] = ()) -> Node:
    if len(conjunctions) != max(0, len(subsentences) - 1):
        raise ValueError("need one conjunction between each pair of sub-sentences")
    children: list[Node] = []
    for i, sub in enumerate(subsentences):
        if i:
            children.append(conjunction(conjunctions[i - 1]))
        children.append(sub)
    return Node(Kind.SENTENCE, tuple(children))


def paragraph(sentences: Iterable[Node]) -> Node:
    return Node(Kind.PARAGRAPH, tuple(sentences))


# -- conformance ----------------------------------------------------------

class SkeletonError(ValueError):
    """A tree (or serialized blob) that violates a grammar production."""

    def __init__(self, message: str, path: str, production: str):
        super().__init__(f"{path}: {production}: {message}")
        self.path = path
        self.production = production


def _kinds(node: Node) -> tuple[Kind, ...]:
    return tuple(c.kind for c in node.children)


def _kw(node: Node) -> KeywordClass | None:
    return node.payload if node.kind is Kind.KEYWORD else None  # type: ignore[return-value]


def _directional(node: Node, pos: Pos) -> bool:
    cls = _kw(node)
    return cls is not None and cls.pos is pos and cls.direction in DIRECTIONAL


def _neutral(node: Node) -> bool:
    return _kw(node) == VP_NEUTRAL


class _Checker:
    def __init__(self, mode: Mode, actions: set[str] | None):
        self.mode = mode
        self.actions = actions

    def fail(self, path: str, production: str, message: str) -> None:
        raise SkeletonError(message, path, production)

    def leaf(self, node: Node, path: str) -> None:
        if node.children:
            self.fail(path, node.kind.value, "terminal node must not have children")

    def check(self, node: Node, path: str = "$") -> None:
        getattr(self, "_" + node.kind.name.lower())(node, path)

    def _children(self, node: Node, path: str) -> None:
        for i, child in enumerate(node.children):
            self.check(child, f"{path}.children[{i}]")

    def _paragraph(self, node: Node, path: str) -> None:
        if not node.children:
            self.fail(path, "Paragraph", "a paragraph needs at least one sentence")
        for i, child in enumerate(node.children):
            if child.kind is not Kind.SENTENCE:
                self.fail(f"{path}.children[{i}]", "Paragraph", f"expected Sentence, got {child.kind.value}")
        self._children(node, path)

    def _sentence(self, node: Node, path: str) -> None:
        kinds = _kinds(node)
        if not kinds or len(kinds) % 2 == 0:
            self.fail(path, "Sentence", "expected sub-sentences separated by conjunctions")
        for i, kind in enumerate(kinds):
            want = Kind.SUB_SENTENCE if i % 2 == 0 else Kind.CONJUNCTION
            if kind is not want:
                self.fail(f"{path}.children[{i}]", "Sentence", f"expected {want.value}, got {kind.value}")
        self._children(node, path)

    def _sub_sentence(self, node: Node, path: str) -> None:
        if _kinds(node) not in ((Kind.INDEPENDENT_CLAUSE,), (Kind.MULTI_CLAUSE,)):
            self.fail(path, "SubSentence", "expected exactly one IndependentClause or MultiClause")
        refs = node.action_refs()
        if len(refs) != len(set(refs)):
            dup = sorted({a for a in refs if refs.count(a) > 1})
            self.fail(path, "SubSentence", f"action referenced twice in one sub-sentence: {dup}")
        self._children(node, path)

    def _independent_clause(self, node: Node, path: str) -> None:
        c = node.children
        kinds = _kinds(node)
        S, O, K = Kind.SUBJECT, Kind.OBJECT, Kind.KEYWORD
        ok = (
            (kinds == (S, K, O) and _directional(c[1], Pos.VP))
            or (kinds == (S, K, K, O) and _neutral(c[1]) and _directional(c[2], Pos.P))
            or (kinds == (K, O, S, K) and _directional(c[0], Pos.P) and _neutral(c[3]))
        )
        if not ok:
            self.fail(path, "IndependentClause",
                      "expected 's VP<|VP> o', 's VP0 P<|P> o' or 'P<|P> o , s VP0'")
        self._children(node, path)

    def _multi_clause(self, node: Node, path: str) -> None:
        c = node.children
        kinds = _kinds(node)
        D, K = Kind.DEPENDENT_CLAUSE, Kind.KEYWORD
        ok = (kinds == (D, K, D) and _directional(c[1], Pos.SC)) or (
            kinds == (K, D, D) and _directional(c[0], Pos.SC))
        if not ok:
            self.fail(path, "MultiClause", "expected 'cd SC<|SC> cd' or 'SC<|SC> cd , cd'")
        self._children(node, path)

    def _dependent_clause(self, node: Node, path: str) -> None:
        if _kinds(node) != (Kind.SUBJECT, Kind.KEYWORD) or not _neutral(node.children[1]):
            self.fail(path, "DependentClause", "expected 's VP0'")
        self._children(node, path)

    def _relative_clause(self, node: Node, path: str) -> None:
        c = node.children
        kinds = _kinds(node)
        K, O = Kind.KEYWORD, Kind.OBJECT
        ok = (kinds == (K, O) and _directional(c[0], Pos.VP)) or (
            kinds == (K, K, O) and _neutral(c[0]) and _directional(c[1], Pos.P))
        if not ok:
            self.fail(path, "RelativeClause", "expected 'which VP<|VP> o' or 'which VP0 P<|P> o'")
        self._children(node, path)

    def _group(self, node: Node, path: str, production: str) -> None:
        kinds = _kinds(node)
        body = kinds[:-1] if kinds and kinds[-1] is Kind.RELATIVE_CLAUSE else kinds
        if not body or any(k is not Kind.ACTION_REF for k in body):
            self.fail(path, production, "expected 'a+' optionally followed by a relative clause")
        self._children(node, path)

    def _subject(self, node: Node, path: str) -> None:
        self._group(node, path, "Subject")

    def _object(self, node: Node, path: str) -> None:
        if Kind.TIME_REF in _kinds(node):
            if self.mode is not Mode.EXTENDED:
                self.fail(path, "Object", "time points are only allowed in extended mode")
            if _kinds(node) != (Kind.TIME_REF,):
                self.fail(path, "Object", "a time object is a single time point")
            self._children(node, path)
            return
        self._group(node, path, "Object")

    def _conjunction(self, node: Node, path: str) -> None:
        self.leaf(node, path)
        if node.payload not in CONJUNCTIONS:
            self.fail(path, "Conjunction", f"unknown conjunction {node.payload!r}")

    def _action_ref(self, node: Node, path: str) -> None:
        self.leaf(node, path)
        if not isinstance(node.payload, str) or not node.payload:
            self.fail(path, "Action", "action reference needs an id")
        if self.actions is not None and node.payload not in self.actions:
            self.fail(path, "Action", f"unknown action id {node.payload!r}")

    def _time_ref(self, node: Node, path: str) -> None:
        self.leaf(node, path)
        if not isinstance(node.payload, int) or isinstance(node.payload, bool) or not 0 <= node.payload <= 24:
            self.fail(path, "Time", f"time point must be a whole hour, got {node.payload!r}")

    def _keyword(self, node: Node, path: str) -> None:
        self.leaf(node, path)
        if not isinstance(node.payload, KeywordClass):
            self.fail(path, "Keyword", f"bad keyword class {node.payload!r}")


def validate_node(node: Node, mode: Mode = Mode.BASIC, actions: Iterable[str] | None = None,
                  path: str = "$") -> None:
    _Checker(mode, set(actions) if actions is not None else None).check(node, path)


def validate(skeleton: ParagraphSkeleton, actions: Iterable[str] | None = None,
             *, require_coverage: bool = False) -> None:
    if skeleton.root.kind is not Kind.PARAGRAPH:
        raise SkeletonError("root must be a Paragraph", "$", "Paragraph")
    declared = list(actions) if actions is not None else None
    validate_node(skeleton.root, skeleton.mode, declared)
    if require_coverage and declared is not None:
        missing = sorted(set(declared) - skeleton.mentioned())
        if missing:
            raise SkeletonError(f"actions never mentioned: {missing}", "$", "Paragraph")


# -- random expansion -----------------------------------------------------

@dataclass(frozen=True)
class ExpansionPolicy:
    """Caps and branch probabilities for random sentence expansion."""

    max_subsentences: int = 3
    max_group: int = 2
    max_relative_depth: int = 1
    subsentence_weights: tuple[float, ...] = (0.6, 0.3, 0.1)
    multiclause_prob: float = 0.3
    group_prob: float = 0.25
    relative_prob: float = 0.15
    time_prob: float = 0.3
    fresh_bias: float = 0.8
    horizon: tuple[int, int] = (8, 18)

    def __post_init__(self) -> None:
        if self.max_subsentences < 1 or self.max_group < 1 or self.max_relative_depth < 0:
            raise ValueError("expansion limits must be positive")


class _Pool:
    def __init__(self, ids: list[str]):
        self.ids = ids

    def __len__(self) -> int:
        return len(self.ids)

    def take(self, k: int) -> list[str]:
        out, self.ids = self.ids[:k], self.ids[k:]
        return out


class _Expander:
    def __init__(self, mode: Mode, rng: random.Random, policy: ExpansionPolicy):
        self.mode = mode
        self.rng = rng
        self.policy = policy

    @property
    def extended(self) -> bool:
        return self.mode is Mode.EXTENDED

    def hour(self) -> int:
        lo, hi = self.policy.horizon
        return self.rng.randint(lo + 1, hi - 1)

    def direction(self) -> Direction:
        return self.rng.choice(DIRECTIONAL)

    def group_size(self, pool: _Pool, reserve: int) -> int:
        size = 1
        while (size < self.policy.max_group and len(pool) - size - 1 >= reserve
               and self.rng.random() < self.policy.group_prob):
            size += 1
        return size

    def relative(self, pool: _Pool) -> Node | None:
        if self.policy.max_relative_depth < 1 or self.rng.random() >= self.policy.relative_prob:
            return None
        if self.extended and (not len(pool) or self.rng.random() < self.policy.time_prob):
            obj = time_object(self.hour())
        elif len(pool):
            obj = group(Kind.OBJECT, pool.take(self.group_size(pool, 0)))
        else:
            return None
        return relative_clause(self.direction(), obj, prepositional=self.rng.random() < 0.5)

    def subject_ids(self, pool: _Pool, reserve: int) -> list[str]:
        return pool.take(self.group_size(pool, reserve))

    def subsentence(self, pool: _Pool) -> Node:
        rng = self.rng
        if len(pool) >= 2 and rng.random() < self.policy.multiclause_prob:
            main = self.subject_ids(pool, 1)
            other = self.subject_ids(pool, 0)
            main_rel, other_rel = self.relative(pool), self.relative(pool)
            return multi_clause(group(Kind.SUBJECT, main, main_rel), self.direction(),
                                group(Kind.SUBJECT, other, other_rel), fronted=rng.random() < 0.5)

        timed = self.extended and (len(pool) < 2 or rng.random() < self.policy.time_prob)
        subj = self.subject_ids(pool, 0 if timed else 1)
        obj_ids = [] if timed else pool.take(self.group_size(pool, 0))
        subj_rel = self.relative(pool)
        if timed:
            obj = time_object(self.hour())
        else:
            obj = group(Kind.OBJECT, obj_ids, self.relative(pool))
        shape = rng.choice(("verb", "prep", "fronted"))
        return independent_clause(group(Kind.SUBJECT, subj, subj_rel), self.direction(), obj, shape)


def _pool(ids: Sequence[str], prefer: Iterable[str], rng: random.Random, bias: float) -> _Pool:
    prefer = set(prefer)
    fresh = [a for a in ids if a in prefer]
    rest = [a for a in ids if a not in prefer]
    rng.shuffle(fresh)
    rng.shuffle(rest)
    if fresh and rng.random() < bias:
        return _Pool(fresh + rest)
    merged = fresh + rest
    rng.shuffle(merged)
    return _Pool(merged)


def expand_subsentence(actions: Sequence[str], mode: Mode, rng: random.Random,
                       policy: ExpansionPolicy = ExpansionPolicy(), prefer: Iterable[str] = ()) -> Node:
    if len(actions) < 2:
        raise ValueError("at least two actions are needed to express an ordering")
    expander = _Expander(mode, rng, policy)
    return expander.subsentence(_pool(actions, prefer, rng, policy.fresh_bias))


def expand_sentence(actions: Sequence[str], mode: Mode, rng: random.Random,
                    policy: ExpansionPolicy = ExpansionPolicy(), prefer: Iterable[str] = ()) -> Node:
    """Randomly expand one Sentence over ``actions``.

    ``prefer`` lists action ids that should be picked first (typically the
    ones not yet mentioned in the paragraph).
    """
    if len(actions) < 2:
        raise ValueError("at least two actions are needed to express an ordering")
    weights = list(policy.subsentence_weights[: policy.max_subsentences])
    weights += [weights[-1]] * (policy.max_subsentences - len(weights))
    count = rng.choices(range(1, policy.max_subsentences + 1), weights=weights)[0]
    prefer = set(prefer)
    subs: list[Node] = []
    for _ in range(count):
        sub = expand_subsentence(actions, mode, rng, policy, prefer)
        prefer -= set(sub.action_refs())
        subs.append(sub)
    conj = [rng.choice(CONJUNCTIONS) for _ in range(count - 1)]
    return sentence(subs, conj)


# -- serialization --------------------------------------------------------

def node_to_dict(node: Node) -> dict[str, Any]:
    payload = node.payload.code if isinstance(node.payload, KeywordClass) else node.payload
    return {"kind": node.kind.value, "payload": payload,
            "children": [node_to_dict(c) for c in node.children]}


def skeleton_to_dict(skeleton: ParagraphSkeleton) -> dict[str, Any]:
    return {"mode": skeleton.mode.value, "root": node_to_dict(skeleton.root)}


def serialize_skeleton(skeleton: ParagraphSkeleton) -> str:
    return json.dumps(skeleton_to_dict(skeleton), separators=(",", ":"))


def node_from_dict(data: Any, path: str = "$") -> Node:
    if not isinstance(data, dict):
        raise SkeletonError("expected an object with kind/payload/children", path, "Node")
    try:
        kind = Kind(data.get("kind"))
    except ValueError:
        raise SkeletonError(f"unknown node kind {data.get('kind')!r}", path, "Node") from None
    raw = data.get("payload")
    payload: Payload
    if kind is Kind.KEYWORD:
        try:
            payload = KeywordClass.from_code(raw)
        except (ValueError, TypeError, AttributeError):
            raise SkeletonError(f"bad keyword class {raw!r}", path, "Keyword") from None
    elif kind in (Kind.ACTION_REF, Kind.TIME_REF, Kind.CONJUNCTION):
        payload = raw
    elif raw is not None:
        raise SkeletonError(f"{kind.value} nodes carry no payload", path, kind.value)
    else:
        payload = None
    children = data.get("children", [])
    if not isinstance(children, list):
        raise SkeletonError("children must be a list", path, kind.value)
    return Node(kind, tuple(node_from_dict(c, f"{path}.children[{i}]") for i, c in enumerate(children)), payload)


def skeleton_from_dict(data: Any, actions: Iterable[str] | None = None) -> ParagraphSkeleton:
    if not isinstance(data, dict) or "root" not in data:
        raise SkeletonError("expected {mode, root}", "$", "Paragraph")
    try:
        mode = Mode(data.get("mode", Mode.BASIC.value))
    except ValueError:
        raise SkeletonError(f"unknown mode {data.get('mode')!r}", "$.mode", "Paragraph") from None
    skeleton = ParagraphSkeleton(node_from_dict(data["root"], "$.root"), mode)
    if skeleton.root.kind is not Kind.PARAGRAPH:
        raise SkeletonError("root must be a Paragraph", "$.root", "Paragraph")
    _Checker(mode, set(actions) if actions is not None else None).check(skeleton.root, "$.root")
    return skeleton


def parse_skeleton(blob: str, actions: Iterable[str] | None = None) -> ParagraphSkeleton:
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise SkeletonError(f"invalid JSON at offset {exc.pos}: {exc.msg}", "$", "Paragraph") from None
    return skeleton_from_dict(data, actions)


# -- expansion-option census ----------------------------------------------

@dataclass(frozen=True)
class Grammar:
    """A finite context-free grammar: symbol -> tuple of alternatives.

    Symbols without a production are terminals. Recursion is rejected by
    :meth:`count`, so caps have to be encoded as separate symbols.
    """

    productions: Mapping[str, tuple[tuple[str, ...], ...]]
    start: str

    def count(self, symbol: str | None = None) -> int:
        """Number of distinct derivations of ``symbol`` down to terminals."""
        memo: dict[str, int] = {}

        def visit(sym: str, stack: tuple[str, ...]) -> int:
            if sym not in self.productions:
                return 1
            if sym in stack:
                raise ValueError(f"recursive symbol {sym!r} has unbounded derivations")
            if sym not in memo:
                memo[sym] = sum(self._alt(alt, visit, stack + (sym,)) for alt in self.productions[sym])
            return memo[sym]

        return visit(symbol or self.start, ())

    @staticmethod
    def _alt(alt: tuple[str, ...], visit: Any, stack: tuple[str, ...]) -> int:
        total = 1
        for sym in alt:
            total *= visit(sym, stack)
        return total

    def breakdown(self) -> list[dict[str, Any]]:
        rows = []
        for lhs, alts in self.productions.items():
            per_alt = []
            for alt in alts:
                n = 1
                for sym in alt:
                    n *= self.count(sym)
                per_alt.append({"rhs": " ".join(alt), "derivations": n})
            rows.append({"production": lhs, "alternatives": len(alts),
                         "derivations": sum(a["derivations"] for a in per_alt), "rhs": per_alt})
        return rows


def dsl_grammar(mode: Mode = Mode.BASIC) -> Grammar:
    """The skeleton grammar under the expansion caps, rooted at one sub-sentence.

    ``a+`` counts as a single option; keyword direction choices count as
    their alternative sets; relative clauses do not nest.
    """
    ext = mode is Mode.EXTENDED
    objects: tuple[tuple[str, ...], ...] = (("a+",), ("a+", ",", "relative_clause", ","))
    rc_objects: tuple[tuple[str, ...], ...] = (("a+",),)
    if ext:
        objects += (("t",),)
        rc_objects += (("t",),)
    prods: dict[str, tuple[tuple[str, ...], ...]] = {
        "sub_sentence": (("independent_clause",), ("multi_clause",)),
        "independent_clause": (
            ("subject", "VP_dir", "object"),
            ("subject", "VP_neutral", "P_dir", "object"),
            ("P_dir", "object", ",", "subject", "VP_neutral"),
        ),
        "multi_clause": (
            ("dependent_clause", "SC_dir", "dependent_clause"),
            ("SC_dir", "dependent_clause", ",", "dependent_clause"),
        ),
        "dependent_clause": (("subject", "VP_neutral"),),
        "relative_clause": (("which", "VP_dir", "rc_object"), ("which", "VP_neutral", "P_dir", "rc_object")),
        "subject": (("a+",), ("a+", ",", "relative_clause", ",")),
        "object": objects,
        "rc_object": rc_objects,
        "VP_dir": (("VP_before",), ("VP_after",)),
        "P_dir": (("P_before",), ("P_after",)),
        "SC_dir": (("SC_before",), ("SC_after",)),
    }
    return Grammar(prods, "sub_sentence")


@dataclass
class Census:
    mode: Mode
    total: int
    breakdown: list[dict[str, Any]] = field(default_factory=list)
    sentence_level: dict[str, int] = field(default_factory=dict)


@lru_cache(maxsize=None)
def _census(mode: Mode) -> tuple[int, str]:
    g = dsl_grammar(mode)
    return g.count(), json.dumps(g.breakdown())


def enumerate_expansion_options(mode: Mode = Mode.BASIC) -> Census:
    total, rows = _census(mode)
    return Census(mode, total, json.loads(rows),
                  {"conjunction": len(CONJUNCTIONS), "subsentences_per_sentence": ExpansionPolicy().max_subsentences})
