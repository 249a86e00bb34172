import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from planprobe.common import Mode
from planprobe.grammar import (
    KEYWORD_CLASSES,
    P_BEFORE,
    VP_AFTER,
    VP_NEUTRAL,
    Direction,
    ExpansionPolicy,
    Grammar,
    Kind,
    KeywordClass,
    Node,
    ParagraphSkeleton,
    Pos,
    SkeletonError,
    action,
    enumerate_expansion_options,
    expand_sentence,
    group,
    independent_clause,
    keyword,
    multi_clause,
    paragraph,
    parse_skeleton,
    relative_clause,
    sentence,
    serialize_skeleton,
    skeleton_to_dict,
    time_object,
    validate,
    validate_node,
)

IDS = ["a1", "a2", "a3", "a4", "a5"]


def para(*subs, mode=Mode.BASIC):
    return ParagraphSkeleton(paragraph([sentence(list(subs), [", and"] * (len(subs) - 1))]), mode)


def test_neutral_only_for_verb_phrases():
    with pytest.raises(ValueError):
        KeywordClass(Pos.P, Direction.NEUTRAL)
    assert VP_NEUTRAL.code == "VP_neutral"
    assert KeywordClass.from_code("SC_after") == KeywordClass(Pos.SC, Direction.AFTER)
    assert len(KEYWORD_CLASSES) == 7


def test_seeded_two_action_sentence_is_one_verb_clause():
    node = expand_sentence(["a1", "a2"], Mode.BASIC, random.Random(34))
    subs = [c for c in node.children if c.kind is Kind.SUB_SENTENCE]
    assert len(subs) == 1
    clause = subs[0].children[0]
    assert clause.kind is Kind.INDEPENDENT_CLAUSE
    assert [c.kind for c in clause.children] == [Kind.SUBJECT, Kind.KEYWORD, Kind.OBJECT]
    assert clause.children[1].payload == VP_AFTER
    assert node.action_refs() == ["a1", "a2"]
    validate_node(node, Mode.BASIC, ["a1", "a2"])


def test_seeded_extended_sentence_has_time_object():
    node = expand_sentence(["a1", "a2", "a3"], Mode.EXTENDED, random.Random(0))
    times = [n for n in node.walk() if n.kind is Kind.TIME_REF]
    assert times
    parents = [n for n in node.walk() if any(c.kind is Kind.TIME_REF for c in n.children)]
    assert all(p.kind is Kind.OBJECT for p in parents)
    validate_node(node, Mode.EXTENDED, ["a1", "a2", "a3"])


def test_too_few_actions_rejected():
    with pytest.raises(ValueError):
        expand_sentence(["a1"], Mode.BASIC, random.Random(0))


def test_policy_limits_must_be_positive():
    with pytest.raises(ValueError):
        ExpansionPolicy(max_subsentences=0)


def test_fuzz_grammar_conformance_and_caps():
    policy = ExpansionPolicy()
    for seed in range(10_000):
        rng = random.Random(seed)
        mode = Mode.EXTENDED if seed % 2 else Mode.BASIC
        ids = IDS[: 2 + seed % 4]
        node = expand_sentence(ids, mode, rng, policy)
        skel = ParagraphSkeleton(paragraph([node]), mode)
        back = parse_skeleton(serialize_skeleton(skel), ids)
        assert back == skel
        subs = [c for c in node.children if c.kind is Kind.SUB_SENTENCE]
        assert 1 <= len(subs) <= policy.max_subsentences
        for sub in subs:
            refs = sub.action_refs()
            assert len(refs) == len(set(refs))
            # every sub-sentence says something about order or time
            kws = sub.keywords()
            assert any(k.direction is not Direction.NEUTRAL for k in kws)
        for n in node.walk():
            if n.kind in (Kind.SUBJECT, Kind.OBJECT):
                assert sum(c.kind is Kind.ACTION_REF for c in n.children) <= policy.max_group
            if n.kind is Kind.RELATIVE_CLAUSE:
                assert not any(m.kind is Kind.RELATIVE_CLAUSE for m in n.walk() if m is not n)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 6), ext=st.booleans())
def test_round_trip_identity(seed, n, ext):
    mode = Mode.EXTENDED if ext else Mode.BASIC
    rng = random.Random(seed)
    ids = [f"a{i + 1}" for i in range(n)]
    skel = ParagraphSkeleton(paragraph([expand_sentence(ids, mode, rng) for _ in range(3)]), mode)
    blob = serialize_skeleton(skel)
    assert parse_skeleton(blob, ids) == skel
    assert serialize_skeleton(parse_skeleton(blob)) == blob


def test_serialization_field_order_is_stable():
    skel = para(independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.AFTER, group(Kind.OBJECT, ["a2"])))
    blob = serialize_skeleton(skel)
    assert blob.startswith('{"mode":"basic","root":{"kind":"Paragraph","payload":null,"children":[')
    assert json.loads(blob) == skeleton_to_dict(skel)


def test_missing_object_names_production():
    skel = para(independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.AFTER, group(Kind.OBJECT, ["a2"])))
    data = skeleton_to_dict(skel)
    clause = data["root"]["children"][0]["children"][0]["children"][0]
    clause["children"].pop()  # drop the Object
    with pytest.raises(SkeletonError) as err:
        parse_skeleton(json.dumps(data))
    assert err.value.production == "IndependentClause"
    assert "children[0]" in err.value.path


def test_unknown_action_rejected():
    skel = para(independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.AFTER, group(Kind.OBJECT, ["a9"])))
    with pytest.raises(SkeletonError) as err:
        parse_skeleton(serialize_skeleton(skel), ["a1", "a2"])
    assert "a9" in str(err.value)


def test_malformed_json_and_unknown_kind():
    with pytest.raises(SkeletonError):
        parse_skeleton("{not json")
    with pytest.raises(SkeletonError):
        parse_skeleton('{"mode":"basic","root":{"kind":"Banana","payload":null,"children":[]}}')


def test_time_only_in_extended_object_position():
    sub = independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.BEFORE, time_object(15), "prep")
    validate(para(sub, mode=Mode.EXTENDED))
    with pytest.raises(SkeletonError):
        validate(para(sub, mode=Mode.BASIC))
    bad_subject = Node(Kind.SUBJECT, (Node(Kind.TIME_REF, payload=15),))
    with pytest.raises(SkeletonError):
        validate_node(bad_subject, Mode.EXTENDED)


def test_self_ordering_rejected():
    sub = independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.BEFORE, group(Kind.OBJECT, ["a1"]))
    with pytest.raises(SkeletonError, match="twice"):
        validate(para(sub))


def test_wrong_keyword_class_in_slot():
    clause = Node(Kind.INDEPENDENT_CLAUSE, (group(Kind.SUBJECT, ["a1"]), keyword(P_BEFORE), group(Kind.OBJECT, ["a2"])))
    with pytest.raises(SkeletonError, match="IndependentClause"):
        validate_node(Node(Kind.SUB_SENTENCE, (clause,)))


def test_coverage_check():
    skel = para(independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.BEFORE, group(Kind.OBJECT, ["a2"])))
    validate(skel, ["a1", "a2", "a3"])
    with pytest.raises(SkeletonError, match="a3"):
        validate(skel, ["a1", "a2", "a3"], require_coverage=True)


def test_relative_clause_on_both_sides_allowed():
    rel1 = relative_clause(Direction.BEFORE, group(Kind.OBJECT, ["a3"]))
    rel2 = relative_clause(Direction.AFTER, group(Kind.OBJECT, ["a4"]), prepositional=True)
    sub = independent_clause(group(Kind.SUBJECT, ["a1"], rel1), Direction.AFTER, group(Kind.OBJECT, ["a2"], rel2))
    validate(para(sub), ["a1", "a2", "a3", "a4"])


def test_multi_clause_shapes():
    main, other = group(Kind.SUBJECT, ["a1"]), group(Kind.SUBJECT, ["a2"])
    plain = multi_clause(main, Direction.BEFORE, other)
    fronted = multi_clause(main, Direction.BEFORE, other, fronted=True)
    validate(para(plain, fronted))
    assert fronted.children[0].children[0].kind is Kind.KEYWORD


def test_sentence_needs_conjunction_per_gap():
    sub = independent_clause(group(Kind.SUBJECT, ["a1"]), Direction.BEFORE, group(Kind.OBJECT, ["a2"]))
    with pytest.raises(ValueError):
        sentence([sub, sub], [])
    bad = Node(Kind.SENTENCE, (sub, Node(Kind.CONJUNCTION, payload=", so"), sub))
    with pytest.raises(SkeletonError, match="conjunction"):
        validate_node(bad)


# -- census ---------------------------------------------------------------

def test_single_production_with_three_alternatives():
    g = Grammar({"S": (("x",), ("y",), ("z",))}, "S")
    assert g.count() == 3


def test_recursive_grammar_rejected():
    g = Grammar({"S": (("S", "x"), ("x",))}, "S")
    with pytest.raises(ValueError):
        g.count()


def test_census_is_deterministic_and_frozen():
    basic = enumerate_expansion_options(Mode.BASIC)
    ext = enumerate_expansion_options(Mode.EXTENDED)
    assert basic.total == enumerate_expansion_options(Mode.BASIC).total
    # frozen from an independent hand count, see test_census_hand_count
    assert basic.total == 250
    assert ext.total == 864
    assert ext.total >= basic.total
    rows = {r["production"]: r for r in basic.breakdown}
    assert rows["independent_clause"]["derivations"] == 150
    assert rows["multi_clause"]["derivations"] == 100


def test_census_hand_count():
    # groups: a+ or a+ with a relative clause (2 shapes x 2 directions, object a+ [or t])
    for ext, total in ((False, 250), (True, 864)):
        rc = 2 * 2 * (2 if ext else 1)
        grp = 1 + rc
        obj = grp + (1 if ext else 0)
        ic = 2 * grp * obj * 3  # three shapes, each with one directional choice
        mc = 2 * (grp * grp) * 2  # two orders, one SC choice
        assert ic + mc == total
