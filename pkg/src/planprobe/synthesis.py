"""Query synthesis: skeleton generation with SAT-gated acceptance, text filling,
constraint derivation, temporal extension and equivalent-query synthesis."""
from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .common import GenerationError, Mode
from .grammar import (
    CONJUNCTIONS,
    DIRECTIONAL,
    Direction,
    ExpansionPolicy,
    Kind,
    Node,
    ParagraphSkeleton,
    expand_sentence,
    group,
    independent_clause,
    multi_clause,
    paragraph,
    relative_clause,
    sentence,
    serialize_skeleton,
    skeleton_from_dict,
    skeleton_to_dict,
    time_object,
    validate,
)
from .lexicon import Lexicon, builtin_lexicon, tool_name
from .realize import realize, sample_forms
from .solver import (
    Constraint,
    ConstraintSet,
    DurationEq,
    HorizonBound,
    MonotoneSequence,
    OrderBefore,
    StartBound,
    check_sat,
    equivalent,
    transitive_closure,
    transitive_reduction,
)

DEFAULT_HORIZON = (8, 18)
DEFAULT_K = 25
DURATION_RANGE = (1, 3)


@dataclass(frozen=True)
class ActionSpec:
    id: str
    phrase: str
    tool_name: str
    description: str

    @classmethod
    def from_phrase(cls, action_id: str, phrase: str) -> ActionSpec:
        return cls(action_id, phrase, tool_name(phrase), f"Perform {phrase}.")

    def to_dict(self) -> dict[str, str]:
        return dataclasses.asdict(self)


def make_actions(phrases: Sequence[str]) -> tuple[ActionSpec, ...]:
    specs = tuple(ActionSpec.from_phrase(f"a{i + 1}", p) for i, p in enumerate(phrases))
    if len({a.tool_name for a in specs}) != len(specs):
        raise ValueError("activity phrases collide after tool-name normalisation")
    return specs


def id_key(action_id: str) -> tuple[int, str]:
    digits = "".join(ch for ch in action_id if ch.isdigit())
    return (int(digits) if digits else 0, action_id)


@dataclass(frozen=True)
class QueryCase:
    id: str
    mode: Mode
    topic: str
    actions: tuple[ActionSpec, ...]
    skeleton: ParagraphSkeleton
    text: str
    body: str
    constraints: ConstraintSet
    keyword_forms: tuple[str, ...]
    task_order: tuple[str, ...]
    hidden_durations: Mapping[str, int] = field(default_factory=dict)
    horizon: tuple[int, int] | None = None
    seed: str | None = None

    @property
    def action_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.actions)

    @property
    def phrases(self) -> dict[str, str]:
        return {a.id: a.phrase for a in self.actions}

    def action(self, action_id: str) -> ActionSpec:
        for a in self.actions:
            if a.id == action_id:
                return a
        raise KeyError(action_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "mode": self.mode.value,
            "topic": self.topic,
            "seed": self.seed,
            "actions": [a.to_dict() for a in self.actions],
            "skeleton": skeleton_to_dict(self.skeleton),
            "keyword_forms": list(self.keyword_forms),
            "task_order": list(self.task_order),
            "text": self.text,
            "body": self.body,
            "constraints": self.constraints.to_dict(),
            "hidden_durations": dict(self.hidden_durations),
            "horizon": list(self.horizon) if self.horizon else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> QueryCase:
        actions = tuple(ActionSpec(**a) for a in d["actions"])
        return cls(
            id=d["id"], mode=Mode(d["mode"]), topic=d["topic"], actions=actions,
            skeleton=skeleton_from_dict(d["skeleton"], [a.id for a in actions]),
            text=d["text"], body=d["body"], constraints=ConstraintSet.from_dict(d["constraints"]),
            keyword_forms=tuple(d["keyword_forms"]), task_order=tuple(d["task_order"]),
            hidden_durations=dict(d.get("hidden_durations") or {}),
            horizon=tuple(d["horizon"]) if d.get("horizon") else None,  # type: ignore[arg-type]
            seed=d.get("seed"),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path: str | Path) -> QueryCase:
        return cls.from_dict(json.loads(Path(path).read_text()))


# -- constraints ----------------------------------------------------------

def init_constraints(actions: Sequence[str], mode: Mode = Mode.BASIC,
                     durations: Mapping[str, int] | None = None,
                     horizon: tuple[int, int] | None = None) -> ConstraintSet:
    """Empty ordering set over a permutation domain (plus the temporal frame when extended)."""
    if len(actions) < 2:
        raise ValueError("at least two actions are required")
    base: list[Constraint] = []
    if mode is Mode.EXTENDED:
        if durations is None or horizon is None:
            raise ValueError("extended constraints need durations and a horizon")
        base = temporal_frame(actions, durations, horizon)
    return ConstraintSet(tuple(actions), tuple(base), mode)


def temporal_frame(actions: Sequence[str], durations: Mapping[str, int],
                   horizon: tuple[int, int]) -> list[Constraint]:
    frame: list[Constraint] = [DurationEq(a, durations[a]) for a in actions]
    return frame + [HorizonBound(*horizon), MonotoneSequence()]


def _ids(node: Node) -> list[str]:
    return [c.payload for c in node.children if c.kind is Kind.ACTION_REF]  # type: ignore[misc]


def _time(node: Node) -> int | None:
    if node.children and node.children[0].kind is Kind.TIME_REF:
        return node.children[0].payload  # type: ignore[return-value]
    return None


def _direction(nodes: Iterable[Node]) -> Direction:
    for n in nodes:
        if n.kind is Kind.KEYWORD and n.payload.direction in DIRECTIONAL:  # type: ignore[union-attr]
            return n.payload.direction  # type: ignore[union-attr]
    raise ValueError("clause has no directional keyword")


def _relate(subject: Sequence[str], direction: Direction, obj: Node, out: list[Constraint]) -> None:
    hour = _time(obj)
    if hour is not None:
        rel = "<" if direction is Direction.BEFORE else ">"
        out.extend(StartBound(a, rel, hour) for a in subject)
        return
    for a in subject:
        for b in _ids(obj):
            out.append(OrderBefore(a, b) if direction is Direction.BEFORE else OrderBefore(b, a))


def _group_constraints(node: Node, out: list[Constraint]) -> None:
    if not node.children or node.children[-1].kind is not Kind.RELATIVE_CLAUSE:
        return
    rel = node.children[-1]
    obj = rel.children[-1]
    _relate(_ids(node), _direction(rel.children), obj, out)
    _group_constraints(obj, out)


def subsentence_constraints(sub: Node) -> list[Constraint]:
    """Constraints one SubSentence expresses, in derivation order."""
    clause = sub.children[0]
    out: list[Constraint] = []
    if clause.kind is Kind.INDEPENDENT_CLAUSE:
        subj = next(c for c in clause.children if c.kind is Kind.SUBJECT)
        obj = next(c for c in clause.children if c.kind is Kind.OBJECT)
        _relate(_ids(subj), _direction(clause.children), obj, out)
        _group_constraints(subj, out)
        _group_constraints(obj, out)
    else:
        c = clause.children
        sc, other, main = (c[0], c[1], c[2]) if c[0].kind is Kind.KEYWORD else (c[1], c[2], c[0])
        main_subj, other_subj = main.children[0], other.children[0]
        _relate(_ids(main_subj), _direction((sc,)), other_subj, out)
        _group_constraints(main_subj, out)
        _group_constraints(other_subj, out)
    return out


def node_constraints(node: Node) -> list[Constraint]:
    out: list[Constraint] = []
    for n in node.walk():
        if n.kind is Kind.SUB_SENTENCE:
            out.extend(subsentence_constraints(n))
    return list(dict.fromkeys(out))


def derive_constraints(skeleton: ParagraphSkeleton, actions: Sequence[str] | None = None) -> ConstraintSet:
    """Ordering (and start-bound) constraints expressed by a skeleton."""
    ids = tuple(actions) if actions is not None else tuple(sorted(skeleton.mentioned(), key=id_key))
    return ConstraintSet(ids, tuple(node_constraints(skeleton.root)), skeleton.mode)


def case_constraints(skeleton: ParagraphSkeleton, actions: Sequence[str],
                     durations: Mapping[str, int] | None, horizon: tuple[int, int] | None) -> ConstraintSet:
    derived = derive_constraints(skeleton, actions)
    if skeleton.mode is Mode.BASIC:
        return derived
    return init_constraints(actions, Mode.EXTENDED, durations, horizon).merged(derived.constraints)


# -- sentence-by-sentence synthesis loop ---------------------------------

def gen_sentence(actions: Sequence[str], constraints: ConstraintSet, mode: Mode, rng: random.Random,
                 policy: ExpansionPolicy = ExpansionPolicy(),
                 prefer: Iterable[str] = ()) -> tuple[Node, list[Constraint]]:
    """One random Sentence and the constraints it derives; acceptance is the caller's call."""
    node = expand_sentence(actions, mode, rng, policy, prefer)
    return node, node_constraints(node)


def sample_durations(actions: Sequence[str], horizon: tuple[int, int], rng: random.Random,
                     tries: int = 50) -> dict[str, int]:
    lo, hi = DURATION_RANGE
    width = horizon[1] - horizon[0]
    if len(actions) * lo > width:
        raise GenerationError(f"{len(actions)} tasks cannot fit a {width}-hour day")
    for _ in range(tries):
        d = {a: rng.randint(lo, hi) for a in actions}
        if sum(d.values()) <= width:
            return d
    # capacity-aware fallback for large action counts
    d, left = {}, width
    for i, a in enumerate(actions):
        cap = min(hi, left - lo * (len(actions) - i - 1))
        d[a] = rng.randint(lo, cap)
        left -= d[a]
    return d


def _count_subs(node: Node) -> int:
    return sum(1 for n in node.walk() if n.kind is Kind.SUB_SENTENCE)


def _has_time(node: Node) -> bool:
    return any(n.kind is Kind.TIME_REF for n in node.walk())


def _clause(subject: Sequence[str], direction: Direction, obj: Node, rng: random.Random,
            allow_multi: bool = True) -> Node:
    subj = group(Kind.SUBJECT, subject)
    shapes = ["verb", "prep", "fronted"]
    if allow_multi and _time(obj) is None:
        shapes += ["multi", "multi_fronted"]
    shape = rng.choice(shapes)
    if shape.startswith("multi"):
        other = Node(Kind.SUBJECT, obj.children)
        return multi_clause(subj, direction, other, fronted=shape == "multi_fronted")
    return independent_clause(subj, direction, obj, shape)


def _time_sentence(action_id: str, rng: random.Random, horizon: tuple[int, int]) -> Node:
    hour = rng.randint(horizon[0] + 1, horizon[1] - 1)
    sub = _clause([action_id], rng.choice(DIRECTIONAL), time_object(hour), rng)
    return sentence([sub])


@dataclass
class _Paragraph:
    """Mutable state of one synthesis run."""

    actions: tuple[str, ...]
    constraints: ConstraintSet
    max_subsentences: int
    max_orderings: int
    sentences: list[Node] = field(default_factory=list)
    subsentences: int = 0
    timed: bool = False

    @property
    def mentioned(self) -> set[str]:
        return {a for s in self.sentences for a in s.action_refs()}

    def unmentioned(self, extra: Node | None = None) -> list[str]:
        seen = self.mentioned | (set(extra.action_refs()) if extra is not None else set())
        return [a for a in self.actions if a not in seen]

    def try_accept(self, node: Node, derived: Sequence[Constraint], *, reserve: bool) -> bool:
        subs = self.subsentences + _count_subs(node)
        merged = self.constraints.merged(derived)
        owed_subs = owed_orders = 0
        if reserve:
            owed_orders = math.ceil(len(self.unmentioned(node)) / 2)
            owed_subs = owed_orders + (self.constraints.mode is Mode.EXTENDED
                                       and not (self.timed or _has_time(node)))
        if subs + owed_subs > self.max_subsentences:
            return False
        if len(merged.orderings()) + owed_orders > self.max_orderings:
            return False
        if not check_sat(merged):
            return False
        assert set(self.constraints.constraints) <= set(merged.constraints)
        self.constraints = merged
        self.sentences.append(node)
        self.subsentences = subs
        self.timed = self.timed or _has_time(node)
        return True


def synthesize_paragraph(actions: Sequence[ActionSpec], N: int | None = None, K: int = DEFAULT_K,
                         mode: Mode = Mode.BASIC, rng: random.Random | None = None, *,
                         topic: str, lexicon: Lexicon | None = None,
                         policy: ExpansionPolicy | None = None,
                         horizon: tuple[int, int] = DEFAULT_HORIZON,
                         durations: Mapping[str, int] | None = None,
                         case_id: str | None = None, seed: str | None = None) -> QueryCase:
    """Build a satisfiable query paragraph sentence by sentence.

    Each candidate sentence is kept only if the merged constraint set stays
    satisfiable. After ``K`` rejected candidates for one sentence the loop
    stops early. A coverage pass then mentions any action still missing,
    and in extended mode at least one clock-time requirement is ensured.
    """
    rng = rng or random.Random()
    lexicon = lexicon or builtin_lexicon()
    ids = tuple(a.id for a in actions)
    n = len(ids)
    if n < 2:
        raise ValueError("at least two actions are required")
    N = max(2, n - 1) if N is None else N
    if N < 1 or K < 1:
        raise ValueError("N and K must be positive")
    policy = policy or ExpansionPolicy(horizon=horizon)
    if mode is Mode.EXTENDED and durations is None:
        durations = sample_durations(ids, horizon, rng)
    base = init_constraints(ids, mode, durations, horizon if mode is Mode.EXTENDED else None)
    state = _Paragraph(ids, base, max_subsentences=n + 2, max_orderings=2 * n)

    for _ in range(N):
        for _attempt in range(K):
            node, derived = gen_sentence(ids, state.constraints, mode, rng, policy, state.unmentioned())
            if state.try_accept(node, derived, reserve=True):
                break
        else:
            break

    _cover(state, rng, K, horizon)
    if mode is Mode.EXTENDED and not state.timed:
        for _ in range(K):
            node = _time_sentence(rng.choice(ids), rng, horizon)
            if state.try_accept(node, node_constraints(node), reserve=False):
                break
        else:
            raise GenerationError("no satisfiable time requirement found")

    skeleton = ParagraphSkeleton(paragraph(state.sentences), mode)
    validate(skeleton, ids, require_coverage=True)
    return _assemble(skeleton, actions, topic, lexicon, rng, durations if mode is Mode.EXTENDED else None,
                     horizon if mode is Mode.EXTENDED else None, case_id, seed, state.constraints)


def _cover(state: _Paragraph, rng: random.Random, K: int, horizon: tuple[int, int]) -> None:
    budget = K * len(state.actions)
    while state.unmentioned() and budget > 0:
        budget -= 1
        missing = state.unmentioned()
        u = rng.choice(missing)
        partners = [a for a in missing if a != u] or [a for a in state.actions if a != u]
        v = rng.choice(partners)
        direction = rng.choice(DIRECTIONAL)
        node = sentence([_clause([u], direction, group(Kind.OBJECT, [v]), rng)])
        if state.try_accept(node, node_constraints(node), reserve=False):
            continue
        if state.constraints.mode is Mode.EXTENDED:
            node = _time_sentence(u, rng, horizon)
            state.try_accept(node, node_constraints(node), reserve=False)
    if state.unmentioned():
        raise GenerationError(f"could not mention {state.unmentioned()} within the retry budget")


def _assemble(skeleton: ParagraphSkeleton, actions: Sequence[ActionSpec], topic: str, lexicon: Lexicon,
              rng: random.Random, durations: Mapping[str, int] | None, horizon: tuple[int, int] | None,
              case_id: str | None, seed: str | None, constraints: ConstraintSet | None = None,
              forms: Sequence[str] | None = None, task_order: Sequence[str] | None = None) -> QueryCase:
    ids = [a.id for a in actions]
    cs = constraints or case_constraints(skeleton, ids, durations, horizon)
    forms = list(forms) if forms is not None else sample_forms(skeleton, lexicon, rng)
    if task_order is None:
        task_order = list(ids)
        rng.shuffle(task_order)
    r = realize(skeleton, {a.id: a.phrase for a in actions}, forms, task_order, horizon)
    if case_id is None:
        digest = hashlib.sha256(serialize_skeleton(skeleton).encode() + topic.encode()).hexdigest()
        case_id = f"{skeleton.mode.value}-{len(ids)}-{digest[:10]}"
    return QueryCase(case_id, skeleton.mode, topic, tuple(actions), skeleton, r.text, r.body, cs,
                     r.forms, r.task_order, dict(durations or {}), horizon, seed)


def rebuild(case: QueryCase, rng: random.Random, *, lexicon: Lexicon | None = None,
            skeleton: ParagraphSkeleton | None = None, topic: str | None = None,
            actions: Sequence[ActionSpec] | None = None, forms: Sequence[str] | None = None,
            case_id: str | None = None) -> QueryCase:
    """Re-realize ``case`` with some parts swapped; constraints are re-derived."""
    lexicon = lexicon or builtin_lexicon()
    skeleton = skeleton or case.skeleton
    if forms is None and skeleton is case.skeleton:
        forms = case.keyword_forms
    return _assemble(skeleton, actions or case.actions, topic or case.topic, lexicon, rng,
                     case.hidden_durations or None, case.horizon, case_id or case.id, case.seed,
                     forms=forms, task_order=case.task_order)


def fill_text(skeleton: ParagraphSkeleton, topic: str, lexicon: Lexicon, rng: random.Random,
              phrases: Mapping[str, str] | None = None, horizon: tuple[int, int] | None = None) -> str:
    """Realize a skeleton with activities of ``topic`` (sampled when ``phrases`` is omitted)."""
    ids = sorted(skeleton.mentioned(), key=id_key)
    if phrases is None:
        phrases = dict(zip(ids, lexicon.sample_activities(topic, len(ids), rng)))
    if skeleton.mode is Mode.EXTENDED and horizon is None:
        horizon = DEFAULT_HORIZON
    order = list(ids)
    rng.shuffle(order)
    return realize(skeleton, phrases, sample_forms(skeleton, lexicon, rng), order, horizon).text


def generate_case(n: int, mode: Mode = Mode.BASIC, rng: random.Random | None = None, *,
                  lexicon: Lexicon | None = None, topic: str | None = None, N: int | None = None,
                  K: int = DEFAULT_K, horizon: tuple[int, int] = DEFAULT_HORIZON,
                  seed: str | None = None, case_id: str | None = None) -> QueryCase:
    """Sample a topic and ``n`` activities, then synthesize a case over them."""
    if rng is None:
        rng = random.Random(seed)
    lexicon = lexicon or builtin_lexicon()
    topic = topic or lexicon.sample_topic(rng)
    actions = make_actions(lexicon.sample_activities(topic, n, rng))
    return synthesize_paragraph(actions, N, K, mode, rng, topic=topic, lexicon=lexicon,
                                horizon=horizon, case_id=case_id, seed=seed)


# -- temporal extension ---------------------------------------------------

def extend_with_time(case: QueryCase, rng: random.Random, *, lexicon: Lexicon | None = None,
                     horizon: tuple[int, int] = DEFAULT_HORIZON, K: int = DEFAULT_K) -> QueryCase:
    """Turn a basic case into an extended one with durations and clock-time requirements."""
    if case.mode is not Mode.BASIC:
        raise ValueError("only basic cases can be extended")
    if not check_sat(case.constraints):
        raise ValueError("cannot extend an unsatisfiable case")
    ids = case.action_ids
    for _ in range(K):
        durations = sample_durations(ids, horizon, rng)
        extra = [_time_sentence(a, rng, horizon) for a in rng.sample(ids, rng.choice((1, 1, 2)))]
        skeleton = ParagraphSkeleton(paragraph(case.skeleton.sentences + tuple(extra)), Mode.EXTENDED)
        cs = case_constraints(skeleton, ids, durations, horizon)
        if check_sat(cs):
            forms = list(case.keyword_forms) + sample_forms(ParagraphSkeleton(paragraph(extra)), lexicon
                                                            or builtin_lexicon(), rng)
            return _assemble(skeleton, case.actions, case.topic, lexicon or builtin_lexicon(), rng, durations,
                             horizon, f"{case.id}+time", case.seed, cs, forms=forms, task_order=case.task_order)
    raise GenerationError("no feasible duration/time combination found")


# -- equivalent queries ---------------------------------------------------

def _pick(rng: random.Random, items: Iterable[str]) -> str | None:
    items = sorted(items, key=id_key)
    return rng.choice(items) if items else None


def _relative_for(ids: Sequence[str], used: set[str], closure: frozenset[tuple[str, str]],
                  todo: set[tuple[str, str]], actions: Sequence[str], rng: random.Random) -> Node | None:
    """A relative clause over ``ids`` that only states relations already in the closure."""
    direction = rng.choice(DIRECTIONAL)
    if direction is Direction.BEFORE:
        w = _pick(rng, (x for x in actions if x not in used and all((g, x) in closure for g in ids)))
        pairs = {(g, w) for g in ids}
    else:
        w = _pick(rng, (x for x in actions if x not in used and all((x, g) in closure for g in ids)))
        pairs = {(w, g) for g in ids}
    if w is None:
        return None
    used.add(w)
    todo -= pairs
    return relative_clause(direction, group(Kind.OBJECT, [w]), prepositional=rng.random() < 0.5)


def _equivalent_subsentences(cs: ConstraintSet, rng: random.Random, horizon: tuple[int, int]) -> list[Node]:
    actions = sorted(cs.actions, key=id_key)
    closure = transitive_closure(actions, cs.orderings())
    todo = {(c.before, c.after) for c in transitive_reduction(actions, cs.orderings())}
    implied = sorted(closure - todo)
    if implied and rng.random() < 0.3:
        todo.add(rng.choice(implied))
    subs: list[Node] = []
    while todo:
        u, v = rng.choice(sorted(todo))
        src, dst = [u], [v]
        if rng.random() < 0.3:
            extra = _pick(rng, (x for x in actions if x not in (u, v) and (x, v) in closure))
            if extra:
                src.append(extra)
        if rng.random() < 0.3:
            extra = _pick(rng, (x for x in actions if x not in src + dst and all((s, x) in closure for s in src)))
            if extra:
                dst.append(extra)
        todo -= {(s, d) for s in src for d in dst}
        direction = rng.choice(DIRECTIONAL)
        subj_ids, obj_ids = (src, dst) if direction is Direction.BEFORE else (dst, src)
        used = set(src) | set(dst)
        subj_rel = _relative_for(subj_ids, used, closure, todo, actions, rng) if rng.random() < 0.25 else None
        obj_rel = _relative_for(obj_ids, used, closure, todo, actions, rng) if rng.random() < 0.25 else None
        subj = group(Kind.SUBJECT, subj_ids, subj_rel)
        shape = rng.choice(("verb", "prep", "fronted", "multi", "multi_fronted"))
        if shape.startswith("multi"):
            subs.append(multi_clause(subj, direction, group(Kind.SUBJECT, obj_ids, obj_rel),
                                     fronted=shape == "multi_fronted"))
        else:
            subs.append(independent_clause(subj, direction, group(Kind.OBJECT, obj_ids, obj_rel), shape))
    tight: dict[tuple[str, str], int] = {}
    for b in cs.bounds():
        pick = min if b.relation == "<" else max
        tight[(b.action, b.relation)] = pick(tight.get((b.action, b.relation), b.hour), b.hour)
    for (a, rel), hour in sorted(tight.items()):
        direction = Direction.BEFORE if rel == "<" else Direction.AFTER
        subs.append(_clause([a], direction, time_object(hour), rng))
    return subs


def _split(subs: list[Node], rng: random.Random) -> list[Node]:
    rng.shuffle(subs)
    out = []
    i = 0
    while i < len(subs):
        k = min(len(subs) - i, rng.choice((1, 1, 2, 3)))
        chunk = subs[i:i + k]
        out.append(sentence(chunk, [rng.choice(CONJUNCTIONS) for _ in range(k - 1)]))
        i += k
    return out


def synthesize_equivalent(constraints: ConstraintSet, actions: Sequence[ActionSpec], topic: str,
                          rng: random.Random, *, lexicon: Lexicon | None = None,
                          original: ParagraphSkeleton | None = None, attempts: int = 50,
                          case_id: str | None = None, seed: str | None = None) -> QueryCase:
    """A new case whose constraints are equivalent to ``constraints`` but whose skeleton differs."""
    check = check_sat(constraints)
    if not check:
        raise ValueError("equivalent queries are only defined for satisfiable constraint sets")
    lexicon = lexicon or builtin_lexicon()
    mode = constraints.mode
    horizon = constraints.horizon() or DEFAULT_HORIZON
    durations = constraints.durations() if mode is Mode.EXTENDED else None
    ids = [a.id for a in actions]
    banned = serialize_skeleton(original) if original is not None else None
    for _ in range(attempts):
        subs = _equivalent_subsentences(constraints, rng, horizon)
        if not subs:
            break
        skeleton = ParagraphSkeleton(paragraph(_split(subs, rng)), mode)
        if banned is not None and serialize_skeleton(skeleton) == banned:
            continue
        if skeleton.mentioned() != set(ids):
            raise GenerationError("some actions carry no constraint and cannot be restated")
        cs = case_constraints(skeleton, ids, durations, horizon if mode is Mode.EXTENDED else None)
        if not equivalent(cs, constraints):
            continue
        return _assemble(skeleton, actions, topic, lexicon, rng, durations,
                         horizon if mode is Mode.EXTENDED else None, case_id, seed, cs)
    raise GenerationError("no structurally different equivalent query found")
