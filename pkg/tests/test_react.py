import pytest

from planprobe.harness import ErrorType, Limits, Outcome, ReactAgent, run_case
from planprobe.harness.protocol import AdapterError, FinalAnswer, Halt, MalformedToolCall, Thought, ToolCall
from planprobe.harness.react import parse_args, parse_completion

from helpers import net3_case, timed_case


class Script:
    """A completion endpoint that replays fixed completions and keeps the prompts."""

    def __init__(self, *completions: str):
        self.completions = list(completions)
        self.prompts: list[str] = []

    def __call__(self, prompt: str) -> str:
        self.prompts.append(prompt)
        return self.completions.pop(0) if self.completions else "Final Answer: done"


def test_single_action_line():
    case = net3_case()
    log, _ = run_case(ReactAgent(Script("Thought: start\nAction: network_diagnosis")), case)
    assert [r.tool for r in log.records] == ["network_diagnosis"]
    assert log.records[0].call_id == "react_1"


def test_full_correct_run_and_scratchpad():
    case = net3_case()
    script = Script("Action: network_status_check[]", "Action: router_reboot[]",
                    "Action: network_diagnosis[]", "Final Answer: all three done")
    log, verdict = run_case(ReactAgent(script), case)
    assert verdict.correct
    assert "Observation: Done: router reboot has been completed successfully." in script.prompts[-1]
    assert "- network_diagnosis: Perform network diagnosis." in script.prompts[0]
    assert case.text in script.prompts[0]


def test_undeclared_tool_is_act_error():
    _, verdict = run_case(ReactAgent(Script("Action: do_magic")), net3_case())
    assert verdict.error_type is ErrorType.ACT_ERROR


def test_missing_action_counts_toward_cap():
    log, verdict = run_case(ReactAgent(Script(*["Thought: hmm"] * 10)), net3_case(), Limits(180, 4))
    assert log.outcome is Outcome.ITERATION_CAP and log.iterations == 4
    assert verdict.error_type is ErrorType.TIMEOUT


def test_unreadable_action_is_act_error():
    log, verdict = run_case(ReactAgent(Script("Action: network_diagnosis[start_time 9]")), timed_case())
    assert verdict.error_type is ErrorType.ACT_ERROR
    assert log.records[0].error == "malformed"


def test_extended_arguments():
    case = timed_case()
    script = Script("Action: network_diagnosis[start_time=8]", 'Action: network_speed_test[{"start_time": 10}]',
                    "Action: router_reboot[start_time=11:00]", "Final Answer: ok")
    log, verdict = run_case(ReactAgent(script), case)
    assert [r.start for r in log.records] == [8, 10, 11]
    assert verdict.correct


def test_completion_failure_is_protocol_error():
    def broken(prompt):
        raise TimeoutError("slow")
    log, _ = run_case(ReactAgent(broken), net3_case())
    assert log.outcome is Outcome.PROTOCOL_ERROR


def test_parse_completion_precedence():
    assert parse_completion("Thought: x\nAction: a_tool[]\nFinal Answer: y", "c") == ToolCall("a_tool", {}, "c")
    final = parse_completion("Final Answer: y\nAction: a_tool[]", "c")
    assert isinstance(final, FinalAnswer) and final.text.startswith("y")
    assert parse_completion("HALT: too late", "c") == Halt("too late")
    assert isinstance(parse_completion("just musing", "c"), Thought)
    with pytest.raises(MalformedToolCall):
        parse_completion("Action: 9lives[]", "c")
    with pytest.raises(MalformedToolCall):
        parse_completion("Action:", "c")


def test_parse_args():
    assert parse_args("") == {}
    assert parse_args('{"start_time": 9}') == {"start_time": 9}
    assert parse_args("start_time=9, note='x'") == {"start_time": 9, "note": "x"}
    with pytest.raises(ValueError):
        parse_args("{1, 2}")
    with pytest.raises(ValueError):
        parse_args("nonsense")


def test_adapter_error_type():
    assert issubclass(AdapterError, Exception)
