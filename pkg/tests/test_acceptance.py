"""Exit criteria. Each test prints one PASS/FAIL line (run with ``-s`` to see them).

    python3 -m pytest tests/test_acceptance.py -s -m acceptance
"""
import os
import random
import time
from pathlib import Path

import pytest

from planprobe.campaign import CampaignConfig, run_budgeted
from planprobe.common import Mode
from planprobe.dissect import Cause, dissect, terminal_substitute, topic_change
from planprobe.grammar import enumerate_expansion_options, serialize_skeleton
from planprobe.harness import ErrorType, Limits, run_case
from planprobe.harness.simulated import (
    CoinFactory,
    ScriptedAgent,
    bad_param,
    drop_action,
    never_finish,
    perfect,
    swap_adjacent,
    unknown_tool,
)
from planprobe.harness.protocol import ToolCall
from planprobe.solver import (
    MonotoneSequence,
    PlanAssignment,
    StartBound,
    canonicalize,
    check_sat,
    completion_feasible,
    equivalent,
    evaluate,
    feasible_schedule,
)
from planprobe.synthesis import generate_case, synthesize_equivalent

from helpers import (
    behind_cases,
    constraint_sensitive,
    generated_cases,
    net3_case,
    structure_sensitive,
    timed_case,
    topic_sensitive,
    word_sensitive,
)
from oracles import basic_sat, extended_sat, random_basic_set, random_extended_set

pytestmark = pytest.mark.acceptance
ROOT = Path(__file__).resolve().parent.parent


def verdict_line(tag: str, ok: bool, detail: str) -> None:
    print(f"\n{'PASS' if ok else 'FAIL'} [{tag}] {detail}")
    assert ok, detail


def cases(count: int, mode: Mode, salt: str):
    for i in range(count):
        rng = random.Random(f"{salt}-{i}")
        yield generate_case(rng.randint(3, 5), mode, rng, seed=f"{salt}-{i}")


def test_c1_generated_cases_are_satisfiable():
    t0 = time.perf_counter()
    failures = 0
    for mode, brute in ((Mode.BASIC, basic_sat), (Mode.EXTENDED, extended_sat)):
        failures += sum(not brute(case.constraints) for case in cases(1000, mode, f"c1{mode.value}"))
    elapsed = time.perf_counter() - t0
    verdict_line("C1 satisfiability", failures == 0 and elapsed < 60,
                 f"2000 cases, {failures} unsatisfiable by enumeration, {elapsed:.1f}s (limit 60s)")


def test_c2_solver_matches_enumeration():
    rng = random.Random("c2")
    basic_bad = unsat = 0
    for _ in range(5000):
        cs = random_basic_set(rng)
        sat = basic_sat(cs)
        unsat += not sat
        basic_bad += check_sat(cs).sat != sat
    ext_bad = 0
    for _ in range(1000):
        cs = random_extended_set(rng)
        sat = extended_sat(cs)
        ext_bad += check_sat(cs).sat != sat or (feasible_schedule(cs) is not None) != sat
    verdict_line("C2 solver/oracle", basic_bad == ext_bad == 0,
                 f"basic {5000 - basic_bad}/5000 agree ({unsat / 50:.0f}% unsat), "
                 f"extended {1000 - ext_bad}/1000 agree")


def planned_assignment(case, agent: ScriptedAgent) -> tuple[PlanAssignment, bool]:
    """The plan a scripted agent will play, judged without the harness."""
    by_tool = {a.tool_name: a for a in case.actions}
    seq, times, unknown = [], {}, False
    for step in agent.steps:
        if not isinstance(step, ToolCall) or step.name not in by_tool:
            unknown = True
            continue
        a = by_tool[step.name].id
        seq.append(a)
        if "start_time" in step.args:
            s = step.args["start_time"]
            times[a] = (s, s + case.hidden_durations[a])
    return PlanAssignment.from_sequence(seq, times or None), unknown


def test_c3_simulated_agents_flagged_exactly():
    profiles = {swap_adjacent: ErrorType.ORDER_ERROR, drop_action: ErrorType.ACTION_LOST,
                bad_param: ErrorType.PARAMETER_ERROR, unknown_tool: ErrorType.ACT_ERROR,
                never_finish: ErrorType.TIMEOUT}
    perfect_errors = misses = false_pos = applicable = 0
    limits = Limits(180, 20)
    for mode, count in ((Mode.BASIC, 500), (Mode.EXTENDED, 200)):
        for case in cases(count, mode, f"c3{mode.value}"):
            perfect_errors += not run_case(perfect(case), case, limits)[1].correct
            for profile, expected in profiles.items():
                agent = profile(case)
                if isinstance(agent, ScriptedAgent):
                    plan, unknown = planned_assignment(case, agent)
                    missing = len(plan.order) < len(case.actions)
                    defect = unknown or missing or bool(evaluate(case.constraints, plan))
                else:
                    defect = True  # loops forever
                got = run_case(agent, case, limits)[1].error_type
                applicable += defect
                if defect and got is not expected:
                    misses += 1
                if not defect and got is not None:
                    false_pos += 1
    verdict_line("C3 oracle on simulated agents", perfect_errors == misses == false_pos == 0,
                 f"perfect errors {perfect_errors}/700, {applicable} injected defects, "
                 f"{misses} misclassified, {false_pos} false positives")


def dissect_all(factories, case_list) -> int:
    hits = 0
    for case, (factory, label) in zip(case_list, factories):
        hits += dissect(case, factory, rng=random.Random(case.id)).label is label
    return hits


def test_c4_dissection_deterministic_stubs():
    results = {}
    word = behind_cases(100)
    results["word"] = dissect_all([(word_sensitive(), Cause.TERMINAL)] * 100, word)
    plain = generated_cases(100, salt="c4")
    results["topic"] = dissect_all([(topic_sensitive(c.topic), Cause.TOPIC) for c in plain], plain)
    results["structure"] = dissect_all([(structure_sensitive(c.skeleton), Cause.STRUCTURE) for c in plain], plain)
    results["constraint"] = dissect_all([(constraint_sensitive(c), Cause.CONSTRAINT) for c in plain], plain)
    verdict_line("C4 dissection (deterministic stubs)", all(v == 100 for v in results.values()),
                 ", ".join(f"{k} {v}/100" for k, v in results.items()) + " (need 100/100 each)")


def test_c4_dissection_coin():
    # Known to fall short: three reruns of a fair coin find a success only 87.5% of the time.
    plain = generated_cases(100, salt="c4coin")
    hits = dissect_all([(CoinFactory(0.5, seed=c.id), Cause.PROBABILITY) for c in plain], plain)
    verdict_line("C4 dissection (Coin 0.5)", hits >= 95, f"Probability {hits}/100 (need >= 95)")


def test_c5_mutations_preserve_semantics():
    rng = random.Random("c5")
    broken = 0
    pool = list(cases(500, Mode.BASIC, "c5b")) + list(cases(500, Mode.EXTENDED, "c5e"))
    for case in pool:
        for mutate in (terminal_substitute, topic_change):
            broken += canonicalize(mutate(case, rng).constraints) != canonicalize(case.constraints)
    bad_equiv = 0
    for case in pool[:100] + pool[500:600]:
        out = synthesize_equivalent(case.constraints, case.actions, case.topic, rng, original=case.skeleton)
        bad_equiv += not equivalent(out.constraints, case.constraints) or \
            serialize_skeleton(out.skeleton) == serialize_skeleton(case.skeleton)
    verdict_line("C5 semantic-preserving mutations", broken == bad_equiv == 0,
                 f"{2000 - broken}/2000 substitutions and topic changes keep constraints, "
                 f"{200 - bad_equiv}/200 equivalent rewrites differ in structure")


def test_c6_generator_performance():
    s = run_budgeted(CampaignConfig(max_cases=1000, seed="c6")).summary()
    verdict_line("C6 generator performance", s["mean_synthesis_ms"] <= 100 and s["solver_share"] < 0.5,
                 f"mean synthesis+SAT {s['mean_synthesis_ms']:.2f} ms (limit 100), "
                 f"solver share {s['solver_share']:.1%} (limit 50%)")


def test_c7_worked_examples():
    checks = {}
    net3 = net3_case()
    calls = [ToolCall(net3.action(a).tool_name, {}, f"c{i}") for i, a in enumerate(("a1", "a3", "a2"))]
    checks["a1,a3,a2 correct"] = run_case(ScriptedAgent(calls), net3)[1].correct

    timed = timed_case()
    late = [ToolCall(timed.action("a1").tool_name, {"start_time": 14}, "c0"),
            ToolCall(timed.action("a2").tool_name, {"start_time": 16}, "c1"),
            ToolCall(timed.action("a3").tool_name, {"start_time": 17}, "c2")]
    v = run_case(ScriptedAgent(late), timed)[1]
    checks["14:00 start infeasible"] = (
        feasible_schedule(timed.constraints) is not None
        and not completion_feasible(timed.constraints, ["a1"], {"a1": (14, 16)})
        and v.error_type is ErrorType.ORDER_ERROR and StartBound("a2", "<", 15) in v.violated)

    early = [ToolCall(timed.action("a1").tool_name, {"start_time": 10}, "c0"),
             ToolCall(timed.action("a2").tool_name, {"start_time": 8}, "c1"),
             ToolCall(timed.action("a3").tool_name, {"start_time": 13}, "c2")]
    v = run_case(ScriptedAgent(early), timed)[1]
    checks["start 8 after end 12"] = v.error_type is ErrorType.PARAMETER_ERROR and MonotoneSequence() in v.violated
    verdict_line("C7 worked examples", all(checks.values()),
                 ", ".join(f"{k}: {'ok' if ok else 'wrong'}" for k, ok in checks.items()))


def test_c8_grammar_census():
    counts = {m: enumerate_expansion_options(m) for m in Mode}
    again = {m: enumerate_expansion_options(m) for m in Mode}
    stable = all(counts[m].total == again[m].total and counts[m].breakdown == again[m].breakdown for m in Mode)
    doc = ROOT / "docs" / "grammar_census.md"
    text = doc.read_text() if doc.exists() else ""
    explained = "340" in text and all(str(c.total) in text for c in counts.values())
    verdict_line("C8 grammar census", stable and explained,
                 f"basic {counts[Mode.BASIC].total}, extended {counts[Mode.EXTENDED].total}, "
                 f"deterministic={stable}, breakdown document explains the 340 gap={explained}")


@pytest.mark.live
@pytest.mark.skipif(not os.environ.get("PLANPROBE_API_KEY"), reason="PLANPROBE_API_KEY not set")
def test_c9_live_smoke(tmp_path):
    from planprobe.report import emit_report
    model = os.environ.get("PLANPROBE_MODEL", "gpt-4o-mini")
    config = CampaignConfig(agent=f"http:{model}", max_cases=20, seed="live", dissect=True)
    report = run_budgeted(config)
    paths = emit_report(report, tmp_path)
    s = report.summary()
    verdict_line("C9 live smoke", s["cases"] == 20 and all(p.exists() for p in paths.values()),
                 f"{s['generated']} generated, {s['erroneous']} erroneous against {model}")
